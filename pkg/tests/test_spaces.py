# -*- coding: utf-8 -*-
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.common.errors import InvalidInputError, RangeError, ShapeError
from src.spaces import (INF, ONE, BlockVector, Exponent, SpaceSpec, basis_vector, dual_exponent,
                        staircase_spec, vec_lincomb, vec_norm)
from tests.strategies import reals, specs, vectors


def spec(p, *dims):
    return SpaceSpec(outer=Exponent.parse(p), block_dims=dims)


class TestExponent:
    def test_parse_decimal_is_exact(self):
        assert Exponent.parse('1.5').value == Fraction(3, 2)
        assert Exponent.parse('2').value == 2

    @pytest.mark.parametrize('raw', ['inf', 'INF', ' Infinity ', float('inf')])
    def test_parse_inf(self, raw):
        assert Exponent.parse(raw).is_inf

    @pytest.mark.parametrize('raw', ['0.5', '0', '-2', 0.99])
    def test_below_one(self, raw):
        with pytest.raises(InvalidInputError, match='p must be >= 1'):
            Exponent.parse(raw)

    @pytest.mark.parametrize('raw', ['abc', '1.5/2', '2/0', '', 'nan', float('nan')])
    def test_malformed(self, raw):
        with pytest.raises(InvalidInputError):
            Exponent.parse(raw)

    def test_dual_examples(self):
        assert dual_exponent(Exponent.parse('2')) == Exponent.parse('2')
        assert dual_exponent(ONE) == INF
        assert dual_exponent(INF) == ONE
        assert dual_exponent(Exponent.parse('3')) == Exponent.parse('1.5')

    @given(st.fractions(min_value=1, max_value=50, max_denominator=1000))
    def test_dual_is_involution(self, q):
        p = Exponent(value=q)
        assert dual_exponent(dual_exponent(p)) == p

    @pytest.mark.parametrize('raw,text', [('1.5', '1.5'), ('2', '2'), ('10', '10'), ('5/3', '5/3'),
                                          ('3.25', '3.25'), ('inf', 'inf')])
    def test_str_round_trip(self, raw, text):
        assert str(Exponent.parse(raw)) == text
        assert Exponent.parse(str(Exponent.parse(raw))) == Exponent.parse(raw)


class TestSpaceSpec:
    def test_parse_examples(self):
        s = SpaceSpec.parse('p=inf;blocks=1,2,3')
        assert s.outer.is_inf and s.block_dims == (1, 2, 3)
        s = SpaceSpec.parse('p=1.5;blocks=4')
        assert s.outer == Exponent.parse('1.5') and s.block_dims == (4,)

    def test_parse_errors_name_the_field(self):
        with pytest.raises(InvalidInputError, match='p must be >= 1'):
            SpaceSpec.parse('p=0.5;blocks=1')
        with pytest.raises(InvalidInputError, match="blocks: '2x' is not an integer"):
            SpaceSpec.parse('p=2;blocks=1,2x')
        with pytest.raises(InvalidInputError, match="missing 'blocks'"):
            SpaceSpec.parse('p=2')
        with pytest.raises(InvalidInputError, match="blocks: ''"):
            SpaceSpec.parse('p=2;blocks=')
        with pytest.raises(InvalidInputError, match='dimension 0'):
            SpaceSpec.parse('p=2;blocks=1,0')

    @given(specs(exponents=['1', '1.5', '2', '5/3', '3.25', 'inf']))
    def test_print_parse_round_trip(self, s):
        assert SpaceSpec.parse(str(s)) == s

    def test_geometry(self):
        s = spec('2', 1, 2, 3)
        assert s.m == 3 and s.dim == 6 and s.starts == (0, 1, 3)
        assert s.block_slice(3) == slice(3, 6)
        assert s.flat_index(2, 2) == 2
        assert s.locate(4) == (3, 2)
        with pytest.raises(RangeError):
            s.block_slice(4)

    def test_staircase(self):
        assert staircase_spec(3, 'inf') == spec('inf', 1, 2, 3)
        with pytest.raises(InvalidInputError):
            staircase_spec(0, '2')


class TestVectors:
    def test_norm_examples(self):
        x = BlockVector.from_blocks(spec('2', 2, 1), [(3, -1), (2,)])
        assert vec_norm(x) == pytest.approx(math.sqrt(20), rel=1e-15)
        assert vec_norm(BlockVector.zeros(spec('1.5', 2, 3))) == 0.0
        y = BlockVector.from_blocks(spec('inf', 2, 2), [(1, 1), (0, 3)])
        assert vec_norm(y) == 3.0

    def test_compensated_path(self):
        s = spec('2', 50, 50)
        x = BlockVector(s, np.ones(100))
        assert vec_norm(x) == pytest.approx(math.sqrt(2) * 50, rel=1e-15)

    def test_norm_overflow(self):
        x = BlockVector(spec('2', 2), [1e300, 1e300])
        assert vec_norm(x) == 2e300
        assert vec_norm(BlockVector(spec('2', 1, 1), [1e308, 1e308])) == pytest.approx(math.sqrt(2) * 1e308)
        with pytest.raises(InvalidInputError, match='overflows'):
            vec_norm(BlockVector(spec('2', 2), [1e308, 1e308]))
        with pytest.raises(InvalidInputError, match='overflows'):
            vec_norm(BlockVector(spec('1', 1, 1), [1e308, 1e308]))
        with pytest.raises(InvalidInputError, match='overflows'):
            vec_norm(BlockVector(spec('2', 40, 40), np.full(80, 1e307)))

    def test_basis_vector(self):
        e = basis_vector(spec('2', 1, 2), 2, 1, 1)
        assert [b.tolist() for b in e.blocks] == [[0.0], [1.0, 0.0]]
        e = basis_vector(spec('1', 3), 1, 3, -1)
        assert e.data.tolist() == [0.0, 0.0, -1.0]
        assert vec_norm(e) == 1.0
        with pytest.raises(RangeError):
            basis_vector(spec('1', 1), 2, 1)
        with pytest.raises(IndexError):
            basis_vector(spec('1', 2), 1, 3)

    def test_invalid_vectors(self):
        with pytest.raises(ShapeError):
            BlockVector(spec('2', 2), [1.0])
        with pytest.raises(InvalidInputError):
            BlockVector(spec('2', 2), [1.0, float('nan')])
        x = BlockVector(spec('2', 2), [1.0, 2.0])
        with pytest.raises(ValueError):
            x.data[0] = 5.0

    def test_lincomb_examples(self):
        s = spec('2', 2, 1)
        x = BlockVector(s, [1.0, -2.0, 3.0])
        y = BlockVector(s, [0.5, 4.0, -1.0])
        assert vec_lincomb(1.0, x, 0.0, y) == x
        assert vec_lincomb(0.5, x, 0.5, x) == x
        with pytest.raises(ShapeError):
            vec_lincomb(1.0, x, 1.0, BlockVector(spec('2', 3), [0, 0, 0]))


@given(st.data())
def test_norm_axioms(data):
    s = data.draw(specs())
    x = data.draw(vectors(s))
    y = data.draw(vectors(s))
    c = data.draw(reals)
    nx, ny = vec_norm(x), vec_norm(y)
    assert vec_norm(vec_lincomb(c, x, 0.0, x)) == pytest.approx(abs(c) * nx, rel=1e-12, abs=1e-300)
    assert vec_norm(vec_lincomb(1.0, x, 1.0, y)) <= nx + ny + 1e-12 * max(1.0, nx + ny)
    assert (nx == 0.0) == (not np.any(x.data))


@given(st.data())
def test_block_sign_flip_is_exact(data):
    s = data.draw(specs())
    x = data.draw(vectors(s))
    i = data.draw(st.integers(1, s.m))
    d = x.data.copy()
    d[s.block_slice(i)] *= -1.0
    assert vec_norm(BlockVector(s, d)) == vec_norm(x)


@given(st.data())
def test_monotone_in_p(data):
    s = data.draw(specs(exponents=['1']))
    vals = data.draw(st.lists(reals, min_size=s.dim, max_size=s.dim))
    norms = [vec_norm(BlockVector(s.with_outer(p), vals)) for p in ('1', '1.5', '2', '3', 'inf')]
    for a, b in zip(norms, norms[1:]):
        assert a >= b - 1e-12 * max(1.0, a)


@given(specs())
def test_basis_vectors_have_norm_one(s):
    for i, n in enumerate(s.block_dims, start=1):
        for k in range(1, n + 1):
            assert vec_norm(basis_vector(s, i, k, -1)) == 1.0
