# -*- coding: utf-8 -*-
import logging
import sys
from datetime import datetime, timezone

from src.config import get_log_file, get_log_level

LOGGER_NAME = 'oplab'


class _UtcFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        ts = datetime.fromtimestamp(record.created, tz=timezone.utc).replace(tzinfo=None)
        return f"[{ts.isoformat()}Z] {record.getMessage()}"


def is_own_handler(handler: logging.Handler) -> bool:
    return isinstance(handler.formatter, _UtcFormatter)


def get_logger() -> logging.Logger:
    logger = logging.getLogger(LOGGER_NAME)
    own = [h for h in logger.handlers if is_own_handler(h)]
    # handlers ajenos (p. ej. los de captura de pytest) no cuentan
    if not any(type(h) is logging.StreamHandler for h in own):
        # stdout queda reservado para el JSON de la CLI
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(_UtcFormatter())
        logger.addHandler(handler)
    log_file = get_log_file()
    if log_file and not any(isinstance(h, logging.FileHandler) for h in own):
        fh = logging.FileHandler(log_file, encoding='utf-8')
        fh.setFormatter(_UtcFormatter())
        logger.addHandler(fh)
    if not own:
        logger.setLevel(getattr(logging, get_log_level(), logging.INFO))
        logger.propagate = False
    return logger


def log(msg: str, level: str = 'info'):
    getattr(get_logger(), level)(msg)
