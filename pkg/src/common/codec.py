# -*- coding: utf-8 -*-
"""JSON de operadores y de reportes, con reales a 17 cifras significativas."""
import json
import math
from typing import Any, Dict

import numpy as np

from src.common.errors import InvalidInputError, ShapeError
from src.common.types import VerificationReport
from src.operators import BlockOperator
from src.spaces import Exponent, SpaceSpec


def fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise InvalidInputError(f'non-finite number {x} cannot be written as JSON')
    s = format(x, '.17g')
    if not any(c in s for c in '.en'):
        s += '.0'
    return s


def _encode(obj: Any, indent, level: int) -> str:
    if obj is None:
        return 'null'
    if isinstance(obj, (bool, np.bool_)):
        return 'true' if obj else 'false'
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        items = [f'{json.dumps(str(k), ensure_ascii=False)}: {_encode(v, indent, level + 1)}'
                 for k, v in obj.items()]
        return _join(items, '{', '}', indent, level)
    if isinstance(obj, (list, tuple)):
        return _join([_encode(v, indent, level + 1) for v in obj], '[', ']', indent, level)
    raise InvalidInputError(f'cannot encode {type(obj).__name__} as JSON')


def _join(items, open_, close, indent, level) -> str:
    if not items:
        return open_ + close
    if indent is None:
        return open_ + ', '.join(items) + close
    pad = ' ' * (indent * (level + 1))
    end = ' ' * (indent * level)
    return open_ + '\n' + ',\n'.join(pad + it for it in items) + '\n' + end + close


def dumps17(obj: Any, indent=None) -> str:
    """Como json.dumps, pero los reales salen con formato '.17g'."""
    return _encode(obj, indent, 0)


# --- espacios y operadores ---

def space_to_dict(spec: SpaceSpec) -> Dict[str, Any]:
    return {'p': str(spec.outer), 'blocks': list(spec.block_dims)}


def space_from_dict(d: Any, field: str = 'domain') -> SpaceSpec:
    if not isinstance(d, dict):
        raise InvalidInputError(f'{field}: expected an object with "p" and "blocks"')
    if 'p' not in d or 'blocks' not in d:
        raise InvalidInputError(f'{field}: missing "p" or "blocks"')
    blocks = d['blocks']
    if not isinstance(blocks, list) or not blocks:
        raise InvalidInputError(f'{field}.blocks: expected a non-empty list')
    for n in blocks:
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise InvalidInputError(f'{field}.blocks: {n!r} is not a positive integer')
    return SpaceSpec(outer=Exponent.parse(str(d['p'])), block_dims=tuple(blocks))


def operator_to_dict(T: BlockOperator) -> Dict[str, Any]:
    entries = []
    for i in range(1, T.codomain.m + 1):
        for j in range(1, T.domain.m + 1):
            entries.append({'i': i, 'j': j, 'matrix': T.block(i, j).tolist()})
    return {'domain': space_to_dict(T.domain), 'codomain': space_to_dict(T.codomain), 'entries': entries}


def operator_from_dict(d: Any) -> BlockOperator:
    """Valida el contrato: cada par (i, j) aparece exactamente una vez, índices 1-based."""
    if not isinstance(d, dict):
        raise InvalidInputError('operator: expected a JSON object')
    domain = space_from_dict(d.get('domain'), 'domain')
    codomain = space_from_dict(d.get('codomain'), 'codomain')
    entries = d.get('entries')
    if not isinstance(entries, list):
        raise InvalidInputError('entries: expected a list')
    grid: Dict[tuple, Any] = {}
    for k, e in enumerate(entries):
        if not isinstance(e, dict) or not {'i', 'j', 'matrix'} <= set(e):
            raise InvalidInputError(f'entries[{k}]: expected keys "i", "j", "matrix"')
        i, j = e['i'], e['j']
        if isinstance(i, bool) or isinstance(j, bool) or not isinstance(i, int) or not isinstance(j, int):
            raise InvalidInputError(f'entries[{k}]: indices must be integers')
        if not (1 <= i <= codomain.m and 1 <= j <= domain.m):
            raise InvalidInputError(f'entries[{k}]: ({i},{j}) out of range')
        if (i, j) in grid:
            raise InvalidInputError(f'entries[{k}]: duplicated entry ({i},{j})')
        try:
            arr = np.array(e['matrix'], dtype=np.float64)
        except (TypeError, ValueError):
            raise InvalidInputError(f'entries[{k}].matrix: not a numeric matrix')
        if arr.ndim != 2:
            raise ShapeError(f'entries[{k}].matrix: expected a 2-D list, got {arr.ndim} dimensions')
        grid[(i, j)] = arr
    missing = [(i, j) for i in range(1, codomain.m + 1) for j in range(1, domain.m + 1) if (i, j) not in grid]
    if missing:
        raise InvalidInputError(f'entries: missing ({missing[0][0]},{missing[0][1]})')
    rows = [[grid[(i, j)] for j in range(1, domain.m + 1)] for i in range(1, codomain.m + 1)]
    return BlockOperator.from_blocks(domain, codomain, rows)


def operator_to_json(T: BlockOperator) -> str:
    return dumps17(operator_to_dict(T), indent=2)


def operator_from_json(text: str) -> BlockOperator:
    return operator_from_dict(json.loads(text))


# --- reportes ---

def report_to_dict(report: VerificationReport) -> Dict[str, Any]:
    d = {
        'suite': report.suite,
        'seed': report.seed,
        'cases': report.cases,
        'violations': [{'case_seed': v.case_seed, 'desc': v.desc, 'slack': v.slack} for v in report.violations],
        'max_slack': report.max_slack,
        'wall_time_s': report.wall_time_s,
    }
    if report.notes:
        d['notes'] = list(report.notes)
    return d


def report_to_json(report: VerificationReport) -> str:
    return dumps17(report_to_dict(report), indent=2)


def report_from_json(text: str) -> VerificationReport:
    return VerificationReport.model_validate(json.loads(text))
