# -*- coding: utf-8 -*-
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.common.errors import InvalidInputError, RangeError, ShapeError
from src.operators import (BlockOperator, agreement_mask, apply, delta, embed_f, embed_l1, first_column,
                           flip_block_column, flip_block_row, op_lincomb, project_f, tong_sequence,
                           tong_step, tong_target, xi)
from src.spaces import BlockVector, Exponent, SpaceSpec, staircase_spec, vec_norm
from tests.strategies import operators, vectors


def spec(p, *dims):
    return SpaceSpec(outer=Exponent.parse(p), block_dims=dims)


@pytest.fixture
def T22():
    s = spec('2', 1, 1)
    return BlockOperator(s, s, [[1.0, 2.0], [3.0, 4.0]])


def l1op(rows):
    n = len(rows)
    return BlockOperator(SpaceSpec.l1(n), SpaceSpec.l1(n), rows)


class TestBlockOperator:
    def test_from_blocks_accepts_scalars(self, T22):
        s = T22.domain
        assert BlockOperator.from_blocks(s, s, [[1, 2], [3, 4]]) == T22

    def test_grid_views(self):
        s = spec('2', 1, 2)
        T = BlockOperator(s, s, np.arange(9.0).reshape(3, 3))
        assert T.block(2, 2).tolist() == [[4.0, 5.0], [7.0, 8.0]]
        assert T.grid[0][1].tolist() == [[1.0, 2.0]]

    def test_invalid(self):
        s = spec('2', 1, 1)
        with pytest.raises(ShapeError):
            BlockOperator(s, s, np.zeros((2, 3)))
        with pytest.raises(InvalidInputError):
            BlockOperator(s, s, [[1.0, np.inf], [0.0, 0.0]])
        grid = [[1.0, [[2.0, 3.0]]], [[[3.0], [4.0]], np.zeros((2, 1))]]
        with pytest.raises(ShapeError, match=r'entry \(2,2\)'):
            BlockOperator.from_blocks(spec('2', 1, 2), spec('2', 1, 2), grid)

    def test_apply_examples(self, T22):
        x = BlockVector(T22.domain, [1.0, 1.0])
        assert apply(T22, x).data.tolist() == [3.0, 7.0]
        assert apply(BlockOperator.identity(T22.domain), x) == x
        assert not np.any(apply(BlockOperator.zeros(T22.domain), x).data)
        with pytest.raises(ShapeError):
            apply(T22, BlockVector(spec('2', 2), [1.0, 1.0]))

    def test_lincomb_examples(self, T22):
        assert op_lincomb(0.5, T22, 0.5, T22) == T22
        assert not np.any(op_lincomb(1.0, T22, -1.0, T22).matrix)
        other = BlockOperator.zeros(spec('2', 2))
        with pytest.raises(ShapeError):
            op_lincomb(1.0, T22, 1.0, other)


class TestEmbedding:
    def test_embed_l1(self):
        a = BlockVector(SpaceSpec.l1(3), [1.0, -2.0, 3.0])
        E = embed_l1(a)
        assert E.matrix.tolist() == [[1, 0, 0], [-2, 0, 0], [3, 0, 0]]
        assert first_column(E) == a
        e1 = BlockVector(SpaceSpec.l1(2), [1.0, 0.0])
        assert embed_l1(e1).matrix.tolist() == [[1, 0], [0, 0]]

    def test_embed_rejects_multi_block(self):
        with pytest.raises(ShapeError):
            embed_l1(BlockVector(spec('1', 1, 1), [1.0, 2.0]))

    def test_first_column(self):
        assert first_column(BlockOperator.identity(SpaceSpec.l1(3))).data.tolist() == [1, 0, 0]
        assert not np.any(first_column(BlockOperator.zeros(SpaceSpec.l1(2))).data)
        with pytest.raises(ShapeError):
            first_column(BlockOperator.zeros(spec('1', 1, 1)))

    @given(st.lists(st.lists(st.floats(-5, 5), min_size=1, max_size=4), min_size=1, max_size=4))
    def test_embed_f_project_f(self, blocks):
        fm = SpaceSpec(outer=Exponent.parse('inf'), block_dims=tuple(len(b) for b in blocks))
        x = BlockVector.from_blocks(fm, blocks)
        assert project_f(embed_f(x)) == x


class TestDelta:
    def test_identity_blocks(self):
        Ts = [BlockOperator.identity(SpaceSpec.l1(n)) for n in (1, 2, 3)]
        assert delta(Ts, '1.5') == BlockOperator.identity(spec('1.5', 1, 2, 3))

    def test_structure_and_left_inverse(self):
        Ts = [l1op([[2.0]]), l1op([[0.0, 5.0], [0.0, 0.0]])]
        D = delta(Ts, '2')
        assert D.block(1, 2).tolist() == [[0.0, 0.0]]
        assert D.block(2, 1).tolist() == [[0.0], [0.0]]
        assert xi(D) == Ts
        assert delta(xi(D), '2') == D

    def test_non_square_block(self):
        bad = BlockOperator(SpaceSpec.l1(2), SpaceSpec.l1(1), [[1.0, 2.0]])
        with pytest.raises(ShapeError):
            delta([bad], '2')

    def test_xi_examples(self):
        s = spec('2', 1, 1)
        assert [B.matrix.tolist() for B in xi(BlockOperator(s, s, np.ones((2, 2))))] == [[[1.0]], [[1.0]]]
        assert all(not np.any(B.matrix) for B in xi(BlockOperator.zeros(spec('3', 2, 1))))
        with pytest.raises(ShapeError):
            xi(BlockOperator.zeros(spec('2', 1, 1), spec('2', 2)))


class TestFlips:
    def test_examples(self, T22):
        assert flip_block_column(T22, 1).matrix.tolist() == [[-1, 2], [-3, 4]]
        assert flip_block_row(T22, 1).matrix.tolist() == [[-1, -2], [3, 4]]
        assert flip_block_column(flip_block_column(T22, 2), 2) == T22
        assert flip_block_row(flip_block_row(T22, 2), 2) == T22

    def test_out_of_range(self, T22):
        with pytest.raises(RangeError):
            flip_block_column(T22, 3)
        with pytest.raises(RangeError):
            flip_block_row(T22, 0)

    @given(st.data())
    def test_value_set_invariance(self, data):
        T = data.draw(operators())
        x = data.draw(vectors(T.domain))
        j = data.draw(st.integers(1, T.domain.m))
        d = x.data.copy()
        d[T.domain.block_slice(j)] *= -1.0
        assert vec_norm(apply(flip_block_column(T, j), x)) == vec_norm(apply(T, BlockVector(T.domain, d)))

    @given(st.data())
    def test_averaging_is_pointwise_convex(self, data):
        T = data.draw(operators())
        x = data.draw(vectors(T.domain))
        j = data.draw(st.integers(1, T.domain.m))
        S = tong_step(T, j)
        rhs = 0.5 * (vec_norm(apply(flip_block_column(T, j), x)) + vec_norm(apply(flip_block_row(T, j), x)))
        assert vec_norm(apply(S, x)) <= rhs + 1e-12 * max(1.0, rhs)


class TestTong:
    def test_step_examples(self, T22):
        S1 = tong_step(T22, 1)
        assert S1.matrix.tolist() == [[-1, 0], [0, 4]]
        assert tong_step(S1, 2).matrix.tolist() == [[-1, 0], [0, -4]]

    def test_step_on_diagonal_negates_one_block(self):
        s = spec('2', 1, 2)
        D = delta([l1op([[2.0]]), l1op([[1.0, 2.0], [3.0, 4.0]])], '2')
        assert tong_step(D, 2).matrix.tolist() == [[2, 0, 0], [0, -1, -2], [0, -3, -4]]
        with pytest.raises(ShapeError):
            tong_step(BlockOperator.zeros(s, spec('2', 3)), 1)

    def test_sequence_example(self, T22):
        trace = tong_sequence(T22)
        assert trace.source == T22
        assert [S.matrix.tolist() for S in trace.steps] == [[[-1, 0], [0, 4]], [[-1, 0], [0, -4]]]

    def test_single_block(self):
        T = l1op([[1.0, 2.0], [3.0, 4.0]])
        trace = tong_sequence(T)
        assert len(trace.steps) == 1
        assert trace.steps[0].matrix.tolist() == [[-1, -2], [-3, -4]]

    def test_mask(self):
        mask = agreement_mask(spec('2', 1, 1, 1), 1)
        assert mask.tolist() == [[True, True, True], [True, False, False], [True, False, False]]
        assert not agreement_mask(spec('2', 1, 1), 0).any()
        with pytest.raises(RangeError):
            agreement_mask(spec('2', 1), 2)

    @given(operators(m_max=4))
    def test_agreement_property(self, T):
        s = T.domain
        trace = tong_sequence(T)
        assert len(trace.steps) == s.m
        for n, S in enumerate(trace.steps, start=1):
            assert S.domain == s and S.codomain == s
            for i in range(1, s.m + 1):
                for j in range(1, s.m + 1):
                    if i <= n or j <= n:
                        want = -T.block(i, i) if i == j else np.zeros_like(T.block(i, j))
                    else:
                        want = T.block(i, j)
                    assert np.array_equal(S.block(i, j), want)
            assert S == tong_target(T, n)
        assert trace.steps[-1] == op_lincomb(-1.0, delta(xi(T), s.outer), 0.0, T)

    @given(operators(m_max=3))
    def test_diagonal_source_ends_negated(self, T):
        D = delta(xi(T), T.domain.outer)
        assert np.array_equal(tong_sequence(D).steps[-1].matrix, -D.matrix)


def test_component_domination():
    s = staircase_spec(3, '2')
    rng = np.random.default_rng(5)
    T = BlockOperator(s, s, rng.uniform(-1, 1, size=(6, 6)))
    for i in range(1, 4):
        d = np.zeros(6)
        d[s.block_slice(i)] = rng.laplace(size=i)
        img = apply(T, BlockVector(s, d))
        assert np.sum(np.abs(img.block(i))) <= vec_norm(img) * (1 + 1e-12)
