# -*- coding: utf-8 -*-
from dotenv import load_dotenv
import os

from src.common.errors import ConfigError

DEFAULT_LOG_LEVEL = 'INFO'


def get_threads() -> int:
    """Máximo de workers paralelos (OPLAB_THREADS); 0/vacío = todos los núcleos."""
    load_dotenv()
    raw = (os.getenv('OPLAB_THREADS') or '').strip()
    if not raw:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"OPLAB_THREADS: '{raw}' no es un entero")
    if n < 0:
        raise ConfigError(f"OPLAB_THREADS: debe ser >= 0 (recibido {n})")
    return n or (os.cpu_count() or 1)


def get_log_level() -> str:
    load_dotenv()
    return (os.getenv('OPLAB_LOG_LEVEL') or DEFAULT_LOG_LEVEL).strip().upper()


def get_log_file() -> str | None:
    load_dotenv()
    path = (os.getenv('OPLAB_LOG_FILE') or '').strip()
    return path or None
