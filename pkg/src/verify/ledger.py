# -*- coding: utf-8 -*-
import math
from typing import Any, Dict, List, Optional

import numpy as np

from src.common.types import CaseOutcome, Violation

# sustituto JSON de una holgura infinita o NaN
SLACK_CAP = 1.0e308


def _clamp(slack: float) -> float:
    if math.isnan(slack):
        return SLACK_CAP
    return max(-SLACK_CAP, min(SLACK_CAP, slack))


class CaseLedger:
    """Registro de comprobaciones de un caso.

    Holgura: `lhs − rhs − tol` para desigualdades, `|a − b| − tol` para
    igualdades con tolerancia y la máxima diferencia absoluta para igualdades
    exactas. Una comprobación viola si su holgura es > 0.
    """

    def __init__(self, case_seed: int):
        self.case_seed = case_seed
        self.violations: List[Violation] = []
        self.max_slack: Optional[float] = None
        self.row: Dict[str, Any] = {}

    def _record(self, desc: str, slack: float) -> float:
        slack = _clamp(float(slack))
        self.max_slack = slack if self.max_slack is None else max(self.max_slack, slack)
        if slack > 0:
            self.violations.append(Violation(case_seed=self.case_seed, desc=desc, slack=slack))
        return slack

    def le(self, desc: str, lhs: float, rhs: float, tol: float = 0.0) -> float:
        return self._record(desc, lhs - rhs - tol)

    def close(self, desc: str, a: float, b: float, tol: float) -> float:
        return self._record(desc, abs(a - b) - tol)

    def exact(self, desc: str, a, b) -> float:
        a, b = np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64)
        if a.shape != b.shape:
            return self._record(f'{desc} (shape {a.shape} vs {b.shape})', SLACK_CAP)
        if a.size == 0:
            return self._record(desc, 0.0)
        with np.errstate(invalid='ignore', over='ignore'):
            return self._record(desc, float(np.max(np.abs(a - b))))

    def fail(self, exc: BaseException):
        self._record(f'error: {type(exc).__name__}: {exc}', SLACK_CAP)

    def measure(self, key: str, value):
        self.row[key] = value

    def outcome(self, index: int) -> CaseOutcome:
        return CaseOutcome(index=index, case_seed=self.case_seed, violations=self.violations,
                           max_slack=self.max_slack, row=self.row)


def scaled(tol: float, ref: float) -> float:
    """Tolerancia absoluta escalada por max(1, |ref|)."""
    return tol * max(1.0, abs(ref))
