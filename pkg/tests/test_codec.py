# -*- coding: utf-8 -*-
import json

import numpy as np
import pytest
from hypothesis import given

from src.common.codec import (dumps17, fmt_float, operator_from_dict, operator_from_json, operator_to_json,
                              report_from_json, report_to_json, space_from_dict)
from src.common.errors import InvalidInputError, ShapeError
from src.common.types import VerificationReport, Violation
from src.operators import BlockOperator
from src.spaces import Exponent, SpaceSpec
from tests.strategies import operators


def payload(entries, p='2', blocks=(1, 1)):
    space = {'p': p, 'blocks': list(blocks)}
    return {'domain': space, 'codomain': space, 'entries': entries}


SCALAR_ENTRIES = [
    {'i': 1, 'j': 1, 'matrix': [[1.0]]},
    {'i': 1, 'j': 2, 'matrix': [[2.0]]},
    {'i': 2, 'j': 1, 'matrix': [[3.0]]},
    {'i': 2, 'j': 2, 'matrix': [[4.0]]},
]


class TestFloats:
    def test_seventeen_digits(self):
        assert fmt_float(0.1) == '0.10000000000000001'
        assert fmt_float(2.0) == '2.0'
        with pytest.raises(InvalidInputError):
            fmt_float(float('nan'))

    def test_dumps17(self):
        obj = {'a': 1, 'b': [0.5, np.float64(3.0)], 'c': None, 'd': True, 'e': np.array([[1.0]])}
        assert dumps17(obj) == '{"a": 1, "b": [0.5, 3.0], "c": null, "d": true, "e": [[1.0]]}'
        assert json.loads(dumps17(obj, indent=2)) == json.loads(dumps17(obj))
        with pytest.raises(InvalidInputError):
            dumps17({'x': object()})

    def test_floats_survive_parsing(self):
        vals = [0.1, 1 / 3, 2.0 ** -1074, 1.7976931348623157e308]
        assert json.loads(dumps17(vals)) == vals


class TestOperatorJson:
    def test_reads_the_documented_layout(self):
        T = operator_from_dict(payload(SCALAR_ENTRIES))
        assert T.matrix.tolist() == [[1.0, 2.0], [3.0, 4.0]]
        assert T.domain == SpaceSpec(outer=Exponent.parse('2'), block_dims=(1, 1))

    def test_entry_order_does_not_matter(self):
        assert operator_from_dict(payload(SCALAR_ENTRIES[::-1])) == operator_from_dict(payload(SCALAR_ENTRIES))

    @given(operators())
    def test_round_trip(self, T):
        assert operator_from_json(operator_to_json(T)) == T

    def test_rectangular(self):
        d = {'domain': {'p': 'inf', 'blocks': [2]}, 'codomain': {'p': '1', 'blocks': [1, 1]},
             'entries': [{'i': 1, 'j': 1, 'matrix': [[1.0, 2.0]]}, {'i': 2, 'j': 1, 'matrix': [[3.0, 4.0]]}]}
        T = operator_from_dict(d)
        assert T.codomain.dim == 2 and T.domain.outer.is_inf
        assert operator_from_json(operator_to_json(T)) == T

    @pytest.mark.parametrize('entries,msg', [
        (SCALAR_ENTRIES + [{'i': 1, 'j': 1, 'matrix': [[0.0]]}], r'duplicated entry \(1,1\)'),
        (SCALAR_ENTRIES[:3], r'missing \(2,2\)'),
        (SCALAR_ENTRIES[:3] + [{'i': 2, 'j': 3, 'matrix': [[4.0]]}], r'\(2,3\) out of range'),
        (SCALAR_ENTRIES[:3] + [{'i': 2, 'j': '2', 'matrix': [[4.0]]}], 'indices must be integers'),
        (SCALAR_ENTRIES[:3] + [{'i': 2, 'j': 2}], 'expected keys'),
        (SCALAR_ENTRIES[:3] + [{'i': 2, 'j': 2, 'matrix': [['x']]}], 'not a numeric matrix'),
    ])
    def test_contract_violations(self, entries, msg):
        with pytest.raises(InvalidInputError, match=msg):
            operator_from_dict(payload(entries))

    def test_shape_errors(self):
        with pytest.raises(ShapeError):
            operator_from_dict(payload(SCALAR_ENTRIES[:3] + [{'i': 2, 'j': 2, 'matrix': [4.0]}]))
        with pytest.raises(ShapeError):
            operator_from_dict(payload(SCALAR_ENTRIES[:3] + [{'i': 2, 'j': 2, 'matrix': [[4.0, 5.0]]}]))

    def test_space_errors(self):
        with pytest.raises(InvalidInputError, match='codomain'):
            space_from_dict({'p': '2'}, 'codomain')
        with pytest.raises(InvalidInputError, match='blocks'):
            space_from_dict({'p': '2', 'blocks': [1, 0]})
        with pytest.raises(InvalidInputError, match='p must be >= 1'):
            space_from_dict({'p': '0.5', 'blocks': [1]})
        with pytest.raises(InvalidInputError):
            operator_from_dict([1, 2, 3])

    def test_zero_operator_round_trip(self):
        T = BlockOperator.zeros(SpaceSpec(outer=Exponent.parse('3'), block_dims=(2, 1)))
        assert operator_from_json(operator_to_json(T)) == T


class TestReportJson:
    def test_key_order_and_notes(self):
        r = VerificationReport(suite='chain', seed=0, cases=4, notes=['out of scope: cited result'])
        d = json.loads(report_to_json(r))
        assert list(d) == ['suite', 'seed', 'cases', 'violations', 'max_slack', 'wall_time_s', 'notes']
        assert d['max_slack'] == 0.0 and d['wall_time_s'] == 0.0

    def test_without_notes(self):
        r = VerificationReport(suite='delta', seed=3, cases=0)
        assert 'notes' not in json.loads(report_to_json(r))

    def test_round_trip_with_violations(self):
        v = Violation(case_seed=2 ** 64 - 1, desc='lower <= upper', slack=0.25)
        r = VerificationReport(suite='solver', seed=7, cases=2, violations=[v], max_slack=0.25)
        back = report_from_json(report_to_json(r))
        assert back.model_dump() == r.model_dump()
        assert '18446744073709551615' in report_to_json(r)

    def test_invariant(self):
        with pytest.raises(ValueError):
            VerificationReport(suite='tong', seed=0, cases=1, max_slack=0.5)
        v = Violation(case_seed=1, desc='x', slack=1.0)
        with pytest.raises(ValueError):
            VerificationReport(suite='tong', seed=0, cases=1, violations=[v], max_slack=-1.0)
