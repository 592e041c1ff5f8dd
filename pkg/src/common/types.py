# -*- coding: utf-8 -*-
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

U64_MAX = 2 ** 64 - 1


class SolverConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra='forbid')

    restarts: int = Field(32, ge=1)
    max_iters: int = Field(10000, ge=1)
    tol: float = Field(1e-10, gt=0, allow_inf_nan=False)  # umbral de estancamiento del ascenso
    seed: int = Field(0, ge=0, le=U64_MAX)
    grid_cert: bool = False
    grid_resolution: int = Field(64, ge=1)
    # semillas cerradas bajo todos los cambios de signo hasta este número de bloques activos
    mirror_max_blocks: int = Field(10, ge=0, le=20)


class Violation(BaseModel):
    case_seed: int = Field(..., ge=0, le=U64_MAX)
    desc: str
    slack: float


class CaseOutcome(BaseModel):
    """Resultado de un caso de una suite (se reduce en orden de índice)."""
    index: int
    case_seed: int
    violations: List[Violation] = Field(default_factory=list)
    max_slack: Optional[float] = None
    row: Dict[str, Any] = Field(default_factory=dict)


class VerificationReport(BaseModel):
    suite: str
    seed: int = Field(..., ge=0, le=U64_MAX)
    cases: int = Field(..., ge=0)
    violations: List[Violation] = Field(default_factory=list)
    max_slack: float = 0.0
    wall_time_s: float = Field(0.0, ge=0)
    notes: List[str] = Field(default_factory=list)

    _rows: List[Dict[str, Any]] = PrivateAttr(default_factory=list)

    @model_validator(mode='after')
    def _slack_matches_violations(self):
        if bool(self.violations) != (self.max_slack > 0):
            raise ValueError('violations must be empty iff max_slack <= 0')
        return self

    @property
    def rows(self) -> List[Dict[str, Any]]:
        """Una fila por caso con las magnitudes medidas (para CSV)."""
        return self._rows

    @property
    def ok(self) -> bool:
        return not self.violations
