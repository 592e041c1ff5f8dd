# -*- coding: utf-8 -*-
"""Operadores por bloques entre SpaceSpecs y las construcciones de la prueba:
embebido rango uno, primera columna, Δ, Ξ, volteos de signo y la recursión
de promedios (S⁽ⁿ⁾).

Un operador se guarda como una matriz densa (N_cod × N_dom); la entrada
(i, j) de la rejilla es la vista del bloque fila i / bloque columna j.
"""
from __future__ import annotations

from typing import List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.common.errors import InvalidInputError, RangeError, ShapeError
from src.spaces import BlockVector, Exponent, SpaceSpec


class BlockOperator:
    __slots__ = ('domain', 'codomain', 'matrix')

    def __init__(self, domain: SpaceSpec, codomain: SpaceSpec, matrix):
        arr = np.array(matrix, dtype=np.float64)
        if arr.ndim != 2 or arr.shape != (codomain.dim, domain.dim):
            raise ShapeError(f'matrix shape {arr.shape} does not match '
                             f'({codomain.dim}, {domain.dim}) for {domain} -> {codomain}')
        if not np.all(np.isfinite(arr)):
            raise InvalidInputError('operator has non-finite entries')
        arr.flags.writeable = False
        self.domain = domain
        self.codomain = codomain
        self.matrix = arr

    @classmethod
    def from_blocks(cls, domain: SpaceSpec, codomain: SpaceSpec, grid) -> 'BlockOperator':
        """`grid[i][j]` es T_{i+1, j+1}, de forma (n_i del codominio) × (n_j del dominio)."""
        if len(grid) != codomain.m:
            raise ShapeError(f'grid has {len(grid)} block rows, codomain has {codomain.m}')
        rows = []
        for i, row in enumerate(grid, start=1):
            if len(row) != domain.m:
                raise ShapeError(f'grid row {i} has {len(row)} blocks, domain has {domain.m}')
            parts = []
            for j, blk in enumerate(row, start=1):
                arr = np.asarray(blk, dtype=np.float64)
                if arr.ndim == 0:
                    arr = arr.reshape(1, 1)
                want = (codomain.block_dims[i - 1], domain.block_dims[j - 1])
                if arr.shape != want:
                    raise ShapeError(f'entry ({i},{j}) has shape {arr.shape}, expected {want}')
                parts.append(arr)
            rows.append(np.hstack(parts))
        return cls(domain, codomain, np.vstack(rows))

    @classmethod
    def identity(cls, spec: SpaceSpec) -> 'BlockOperator':
        return cls(spec, spec, np.eye(spec.dim))

    @classmethod
    def zeros(cls, domain: SpaceSpec, codomain: SpaceSpec | None = None) -> 'BlockOperator':
        codomain = codomain or domain
        return cls(domain, codomain, np.zeros((codomain.dim, domain.dim)))

    @property
    def is_endomorphism(self) -> bool:
        return self.domain == self.codomain

    def block(self, i: int, j: int) -> np.ndarray:
        return self.matrix[self.codomain.block_slice(i), self.domain.block_slice(j)]

    @property
    def grid(self) -> Tuple[Tuple[np.ndarray, ...], ...]:
        return tuple(tuple(self.block(i, j) for j in range(1, self.domain.m + 1))
                     for i in range(1, self.codomain.m + 1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BlockOperator):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and np.array_equal(self.matrix, other.matrix))

    def __repr__(self) -> str:
        return f'BlockOperator({self.domain} -> {self.codomain}, {self.matrix.tolist()})'


def _require_endomorphism(T: BlockOperator, what: str):
    if not T.is_endomorphism:
        raise ShapeError(f'{what}: domain {T.domain} differs from codomain {T.codomain}')


def _require_single_block(T: BlockOperator, what: str):
    if T.domain.m != 1 or T.codomain.m != 1 or T.domain.dim != T.codomain.dim:
        raise ShapeError(f'{what}: expected a square single-block operator, got {T.domain} -> {T.codomain}')


def apply(T: BlockOperator, x: BlockVector) -> BlockVector:
    if x.spec != T.domain:
        raise ShapeError(f'vector in {x.spec}, operator domain is {T.domain}')
    return BlockVector(T.codomain, T.matrix @ x.data)


def op_lincomb(a: float, A: BlockOperator, b: float, B: BlockOperator) -> BlockOperator:
    if A.domain != B.domain or A.codomain != B.codomain:
        raise ShapeError(f'operators differ: {A.domain} -> {A.codomain} vs {B.domain} -> {B.codomain}')
    with np.errstate(over='ignore', invalid='ignore'):
        m = a * A.matrix + b * B.matrix
    return BlockOperator(A.domain, A.codomain, m)


# =========================
# ℓ₁ⁿ dentro de B(ℓ₁ⁿ)
# =========================
def embed_l1(a: BlockVector) -> BlockOperator:
    """Σ_k a_k e_k ⊗ e₁*: la primera columna es a, el resto cero."""
    if a.spec.m != 1:
        raise ShapeError(f'embed_l1: expected a single-block space, got {a.spec}')
    n = a.spec.dim
    m = np.zeros((n, n))
    m[:, 0] = a.data
    return BlockOperator(a.spec, a.spec, m)


def first_column(T: BlockOperator) -> BlockVector:
    """T·e₁; inverso por la izquierda de embed_l1 (proyección de norma 1)."""
    _require_single_block(T, 'first_column')
    return BlockVector(T.codomain, T.matrix[:, 0])


def embed_f(x: BlockVector) -> List[BlockOperator]:
    """Elemento de F_m ↦ elemento de D_m, bloque a bloque con embed_l1."""
    return [embed_l1(BlockVector(SpaceSpec.l1(n), blk)) for n, blk in zip(x.spec.block_dims, x.blocks)]


def project_f(blocks: Sequence[BlockOperator], outer=None) -> BlockVector:
    """Inverso por la izquierda de embed_f; el resultado vive en (⊕ ℓ₁^{nᵢ})_{ℓ_outer}."""
    if not blocks:
        raise ShapeError('project_f: empty block list')
    cols = [first_column(T) for T in blocks]
    spec = SpaceSpec(outer=Exponent.parse('inf' if outer is None else outer),
                     block_dims=tuple(c.spec.dim for c in cols))
    return BlockVector(spec, np.concatenate([c.data for c in cols]))


# =========================
# Δ y Ξ
# =========================
def delta(blocks: Sequence[BlockOperator], outer) -> BlockOperator:
    """diag(T₁, …, T_m) sobre (⊕ ℓ₁^{nᵢ})_{ℓ_outer}."""
    if not blocks:
        raise ShapeError('delta: empty block list')
    dims = []
    for i, T in enumerate(blocks, start=1):
        if T.domain.m != 1 or T.codomain.m != 1 or T.domain.dim != T.codomain.dim:
            raise ShapeError(f'delta: block {i} is not square on a single ℓ₁ block ({T.domain} -> {T.codomain})')
        dims.append(T.domain.dim)
    spec = SpaceSpec(outer=Exponent.parse(outer), block_dims=tuple(dims))
    m = np.zeros((spec.dim, spec.dim))
    for i, T in enumerate(blocks, start=1):
        sl = spec.block_slice(i)
        m[sl, sl] = T.matrix
    return BlockOperator(spec, spec, m)


def xi(T: BlockOperator) -> List[BlockOperator]:
    """(T₁₁, …, T_mm) como operadores sobre ℓ₁^{nᵢ}."""
    _require_endomorphism(T, 'xi')
    out = []
    for i, n in enumerate(T.domain.block_dims, start=1):
        spec = SpaceSpec.l1(n)
        out.append(BlockOperator(spec, spec, T.block(i, i)))
    return out


# =========================
# Volteos de signo y recursión de promedios
# =========================
def flip_block_column(T: BlockOperator, j: int) -> BlockOperator:
    """T∘J_j: niega la columna de bloques j."""
    if not 1 <= j <= T.domain.m:
        raise RangeError(f'block column {j} out of range 1..{T.domain.m}')
    m = T.matrix.copy()
    sl = T.domain.block_slice(j)
    m[:, sl] = -m[:, sl]
    return BlockOperator(T.domain, T.codomain, m)


def flip_block_row(T: BlockOperator, i: int) -> BlockOperator:
    """J_i∘T: niega la fila de bloques i."""
    if not 1 <= i <= T.codomain.m:
        raise RangeError(f'block row {i} out of range 1..{T.codomain.m}')
    m = T.matrix.copy()
    sl = T.codomain.block_slice(i)
    m[sl, :] = -m[sl, :]
    return BlockOperator(T.domain, T.codomain, m)


def tong_step(T: BlockOperator, idx: int) -> BlockOperator:
    """(T∘J_idx + J_idx∘T)/2.

    Se calcula con los dos volteos y op_lincomb, no escribiendo el patrón
    esperado, para que la propiedad de coincidencia siga siendo un test real.
    """
    _require_endomorphism(T, 'tong_step')
    return op_lincomb(0.5, flip_block_column(T, idx), 0.5, flip_block_row(T, idx))


class TongTrace(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    source: BlockOperator
    steps: Tuple[BlockOperator, ...]


def tong_sequence(T: BlockOperator) -> TongTrace:
    """S⁽¹⁾ = paso en el índice 1, S⁽ⁿ⁺¹⁾ = paso en n+1 aplicado a S⁽ⁿ⁾."""
    _require_endomorphism(T, 'tong_sequence')
    steps, S = [], T
    for n in range(1, T.domain.m + 1):
        S = tong_step(S, n)
        steps.append(S)
    return TongTrace(source=T, steps=tuple(steps))


def agreement_mask(spec: SpaceSpec, n: int) -> np.ndarray:
    """Rejilla m×m: True en las entradas (i, j) con i ≤ n o j ≤ n."""
    if not 0 <= n <= spec.m:
        raise RangeError(f'step {n} out of range 0..{spec.m}')
    idx = np.arange(1, spec.m + 1)
    return (idx[:, None] <= n) | (idx[None, :] <= n)


def tong_target(T: BlockOperator, n: int) -> BlockOperator:
    """Operador al que S⁽ⁿ⁾ debe ser igual: diag(−T₁₁, …, −T_nn, 0, …) en la
    máscara de coincidencia y T en el resto."""
    _require_endomorphism(T, 'tong_target')
    mask = agreement_mask(T.domain, n)
    m = T.matrix.copy()
    spec = T.domain
    for i in range(1, spec.m + 1):
        for j in range(1, spec.m + 1):
            if not mask[i - 1, j - 1]:
                continue
            si, sj = spec.block_slice(i), spec.block_slice(j)
            m[si, sj] = -T.matrix[si, sj] if i == j else 0.0
    return BlockOperator(spec, spec, m)
