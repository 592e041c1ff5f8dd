# -*- coding: utf-8 -*-
"""Jerarquía de errores de oplab.

Las clases de valor heredan también de ValueError (RangeError de IndexError)
para que el llamador pueda capturar la familia estándar.
"""


class OplabError(Exception):
    """Base de todos los errores propios."""


class InvalidInputError(OplabError, ValueError):
    """Dato no finito o mal formado."""


class ShapeError(OplabError, ValueError):
    """Espacios o bloques incompatibles."""


class RangeError(OplabError, IndexError):
    """Índice de bloque o coordenada fuera de rango (1-based)."""


class DispatchError(OplabError, ValueError):
    """Regla de norma pedida para un exponente que no le corresponde."""


class SizeLimitError(OplabError, ValueError):
    """La enumeración excede el límite de tamaño."""


class ConfigError(OplabError, ValueError):
    """Configuración o parámetros inválidos."""
