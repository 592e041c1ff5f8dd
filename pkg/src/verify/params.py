# -*- coding: utf-8 -*-
"""Parámetros de las suites (pydantic v2)."""
from typing import Literal, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from src.common.errors import ConfigError
from src.common.types import U64_MAX, SolverConfig
from src.spaces import Exponent


class SuiteParams(BaseModel):
    model_config = ConfigDict(frozen=True, extra='forbid', arbitrary_types_allowed=True)

    cases: int = Field(100, ge=0)
    seed: int = Field(0, ge=0, le=U64_MAX)
    scale: float = Field(1.0, gt=0, allow_inf_nan=False)
    ensemble: Literal['uniform', 'heavy'] = 'uniform'
    solver: SolverConfig = Field(default_factory=SolverConfig)


def _exponents(v):
    if isinstance(v, str):
        v = [t for t in (s.strip() for s in v.split(',')) if t]
    if not isinstance(v, (list, tuple)) or not v:
        raise ValueError('p: expected a non-empty list of exponents')
    return tuple(Exponent.parse(x) for x in v)


class EmbeddingParams(SuiteParams):
    cases: int = Field(1000, ge=0)
    n_max: int = Field(8, ge=1)


class DeltaParams(SuiteParams):
    """Los casos recorren `p_list` en orden: con el valor por defecto salen 500 casos
    con exponente exacto (1, inf) y 750 con exponente interior."""
    cases: int = Field(1250, ge=0)
    p_list: Tuple[Exponent, ...] = _exponents(['1', 'inf', '1.5', '2', '3'])
    m_max: int = Field(3, ge=1)
    n_max: int = Field(3, ge=1)

    @field_validator('p_list', mode='before')
    @classmethod
    def _parse_p(cls, v):
        return _exponents(v)


class TongParams(SuiteParams):
    cases: int = Field(1000, ge=0)
    p_list: Tuple[Exponent, ...] = _exponents(['1', '1.5', '2', 'inf'])
    m_max: int = Field(4, ge=1)
    n_max: int = Field(3, ge=1)

    @field_validator('p_list', mode='before')
    @classmethod
    def _parse_p(cls, v):
        return _exponents(v)


class SolverSuiteParams(SuiteParams):
    """`cases` no se usa directamente: cada grupo tiene su contador."""
    cases: int = Field(0, ge=0)
    spectral_cases: int = Field(200, ge=0)
    exact_cases: int = Field(500, ge=0)
    cross_cases: int = Field(100, ge=0)
    size_max: int = Field(4, ge=1)
    m_max: int = Field(3, ge=1)
    n_max: int = Field(3, ge=1)
    cross_p: Tuple[Exponent, ...] = _exponents(['1.5', '2', '3'])
    samples: int = Field(256, ge=0)

    @field_validator('cross_p', mode='before')
    @classmethod
    def _parse_p(cls, v):
        return _exponents(v)

    @property
    def total_cases(self) -> int:
        return self.spectral_cases + self.exact_cases + self.cross_cases


class ChainParams(SuiteParams):
    cases: int = Field(4, ge=0)
    m: int = Field(8, ge=1)
    p: Exponent = Exponent.parse('2')

    @field_validator('p', mode='before')
    @classmethod
    def _parse_single(cls, v):
        return Exponent.parse(v)


def build_params(model, values: dict):
    """model_validate con los errores de pydantic convertidos a ConfigError."""
    try:
        return model.model_validate(values)
    except ValidationError as e:
        err = e.errors()[0]
        loc = '.'.join(str(x) for x in err['loc']) or model.__name__
        raise ConfigError(f'{loc}: {err["msg"]}')
