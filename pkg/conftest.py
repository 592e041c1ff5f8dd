# -*- coding: utf-8 -*-
import logging
import os

import pytest
from hypothesis import HealthCheck, settings

from src.utils import LOGGER_NAME, is_own_handler

settings.register_profile('default', max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.register_profile('ci', max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.load_profile(os.getenv('HYPOTHESIS_PROFILE', 'default'))


@pytest.fixture(autouse=True)
def _single_worker(monkeypatch):
    # los tests no levantan procesos salvo que lo pidan
    monkeypatch.setenv('OPLAB_THREADS', '1')
    monkeypatch.delenv('OPLAB_LOG_FILE', raising=False)


@pytest.fixture(autouse=True)
def _fresh_logger():
    # el handler se ata al sys.stderr vigente (capsys lo reemplaza en cada test)
    yield
    logger = logging.getLogger(LOGGER_NAME)
    for h in [h for h in logger.handlers if is_own_handler(h)]:
        logger.removeHandler(h)
        h.close()
