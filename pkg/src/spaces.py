# -*- coding: utf-8 -*-
"""Espacios de sucesiones finitos (⊕ᵢ ℓ₁^{nᵢ})_{ℓp} y sus vectores.

Los índices externos (bloque, coordenada) son 1-based, como la notación
matricial (i, j) de los operadores.
"""
from __future__ import annotations

import math
import re
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from src.common.errors import InvalidInputError, RangeError, ShapeError

# a partir de esta dimensión la suma de potencias usa suma compensada
COMPENSATED_MIN_DIM = 64

_INT_RE = re.compile(r'^[0-9]+$')
_NUM_RE = re.compile(r"^-?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)$|^-?[0-9]+/[1-9][0-9]*$")


def _fraction_to_text(q: Fraction) -> str:
    d = q.denominator
    while d % 2 == 0:
        d //= 2
    while d % 5 == 0:
        d //= 5
    if d != 1:
        return f'{q.numerator}/{q.denominator}'
    with localcontext() as ctx:
        ctx.prec = 80
        text = format((Decimal(q.numerator) / Decimal(q.denominator)).normalize(), 'f')
    return text


class Exponent(BaseModel):
    """Exponente p ∈ [1, ∞]. `value=None` representa INF."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: Optional[Fraction] = None

    @field_validator('value')
    @classmethod
    def _check_range(cls, v):
        if v is not None and v < 1:
            raise ValueError('p must be >= 1')
        return v

    @classmethod
    def parse(cls, raw) -> 'Exponent':
        """Acepta 'inf', decimales ('1.5'), fracciones ('5/3'), int, float o Fraction."""
        if isinstance(raw, Exponent):
            return raw
        if isinstance(raw, Fraction):
            q = raw
        elif isinstance(raw, (int, float)) and not isinstance(raw, bool):
            if isinstance(raw, float) and math.isinf(raw) and raw > 0:
                return cls()
            if isinstance(raw, float) and not math.isfinite(raw):
                raise InvalidInputError(f"p: '{raw}' is not a valid exponent")
            q = Fraction(raw)
        elif isinstance(raw, str):
            text = raw.strip().lower()
            if text in ('inf', 'infinity', '+inf'):
                return cls()
            if not _NUM_RE.match(text):
                raise InvalidInputError(f"p: '{raw}' is not a decimal number or 'inf'")
            q = Fraction(text)
        else:
            raise InvalidInputError(f"p: unsupported type {type(raw).__name__}")
        if q < 1:
            raise InvalidInputError('p must be >= 1')
        return cls(value=q)

    @classmethod
    def inf(cls) -> 'Exponent':
        return cls()

    @property
    def is_inf(self) -> bool:
        return self.value is None

    @property
    def is_one(self) -> bool:
        return self.value == 1

    @property
    def is_interior(self) -> bool:
        """True para p ∈ (1, ∞)."""
        return self.value is not None and self.value > 1

    def as_float(self) -> float:
        return math.inf if self.value is None else float(self.value)

    def __str__(self) -> str:
        return 'inf' if self.value is None else _fraction_to_text(self.value)


INF = Exponent.inf()
ONE = Exponent(value=Fraction(1))


def dual_exponent(p: Exponent) -> Exponent:
    """1 ↔ INF; p > 1 ↦ p/(p−1), en aritmética racional exacta."""
    if p.is_inf:
        return ONE
    if p.is_one:
        return INF
    return Exponent(value=p.value / (p.value - 1))


class SpaceSpec(BaseModel):
    """Suma ℓp finita de bloques ℓ₁^{nᵢ}."""
    model_config = ConfigDict(frozen=True)

    outer: Exponent
    block_dims: Tuple[int, ...]

    @field_validator('block_dims')
    @classmethod
    def _check_dims(cls, v):
        if len(v) == 0:
            raise ValueError('blocks: at least one block is required')
        for n in v:
            if n < 1:
                raise ValueError(f'blocks: dimension {n} must be >= 1')
        return tuple(v)

    @classmethod
    def l1(cls, n: int) -> 'SpaceSpec':
        """ℓ₁ⁿ como espacio de un solo bloque."""
        return cls(outer=ONE, block_dims=(n,))

    @classmethod
    def parse(cls, s: str) -> 'SpaceSpec':
        """Gramática `p=<decimal|inf>;blocks=<n1>,<n2>,...`."""
        if not isinstance(s, str) or not s.strip():
            raise InvalidInputError('space: empty string')
        fields = {}
        for token in s.strip().split(';'):
            token = token.strip()
            if not token:
                continue
            if '=' not in token:
                raise InvalidInputError(f"space: '{token}' is not key=value")
            key, val = (t.strip() for t in token.split('=', 1))
            if key not in ('p', 'blocks'):
                raise InvalidInputError(f"space: unknown key '{key}'")
            if key in fields:
                raise InvalidInputError(f"space: duplicated key '{key}'")
            fields[key] = val
        if 'p' not in fields:
            raise InvalidInputError("space: missing 'p'")
        if 'blocks' not in fields:
            raise InvalidInputError("space: missing 'blocks'")
        outer = Exponent.parse(fields['p'])
        dims = []
        for tok in fields['blocks'].split(','):
            tok = tok.strip()
            if not _INT_RE.match(tok):
                raise InvalidInputError(f"blocks: '{tok}' is not an integer")
            if int(tok) < 1:
                raise InvalidInputError(f"blocks: dimension {tok} must be >= 1")
            dims.append(int(tok))
        return cls(outer=outer, block_dims=tuple(dims))

    @property
    def m(self) -> int:
        return len(self.block_dims)

    @property
    def dim(self) -> int:
        return sum(self.block_dims)

    @property
    def starts(self) -> Tuple[int, ...]:
        out, acc = [], 0
        for n in self.block_dims:
            out.append(acc)
            acc += n
        return tuple(out)

    def block_slice(self, i: int) -> slice:
        """Rebanada del bloque i (1-based) dentro del vector plano."""
        if not 1 <= i <= self.m:
            raise RangeError(f'block {i} out of range 1..{self.m}')
        start = self.starts[i - 1]
        return slice(start, start + self.block_dims[i - 1])

    def flat_index(self, block: int, coord: int) -> int:
        sl = self.block_slice(block)
        if not 1 <= coord <= self.block_dims[block - 1]:
            raise RangeError(f'coord {coord} out of range 1..{self.block_dims[block - 1]} in block {block}')
        return sl.start + coord - 1

    def locate(self, flat: int) -> Tuple[int, int]:
        """Inverso de flat_index: (bloque, coordenada), ambos 1-based."""
        for i, (start, n) in enumerate(zip(self.starts, self.block_dims), start=1):
            if start <= flat < start + n:
                return i, flat - start + 1
        raise RangeError(f'flat index {flat} out of range 0..{self.dim - 1}')

    def with_outer(self, outer) -> 'SpaceSpec':
        return SpaceSpec(outer=Exponent.parse(outer), block_dims=self.block_dims)

    def __str__(self) -> str:
        return f"p={self.outer};blocks={','.join(str(n) for n in self.block_dims)}"


def staircase_spec(m: int, outer) -> SpaceSpec:
    """(⊕_{n≤m} ℓ₁ⁿ)_{ℓp}: E_m para p finito, F_m para INF."""
    if m < 1:
        raise InvalidInputError(f'm: {m} must be >= 1')
    return SpaceSpec(outer=Exponent.parse(outer), block_dims=tuple(range(1, m + 1)))


class BlockVector:
    """Elemento de un SpaceSpec, guardado como vector plano de solo lectura."""
    __slots__ = ('spec', 'data')

    def __init__(self, spec: SpaceSpec, data):
        arr = np.array(data, dtype=np.float64).reshape(-1)
        if arr.shape[0] != spec.dim:
            raise ShapeError(f'vector length {arr.shape[0]} does not match dim {spec.dim} of {spec}')
        if not np.all(np.isfinite(arr)):
            raise InvalidInputError('vector has non-finite coordinates')
        arr.flags.writeable = False
        self.spec = spec
        self.data = arr

    @classmethod
    def from_blocks(cls, spec: SpaceSpec, blocks: Sequence[Sequence[float]]) -> 'BlockVector':
        if len(blocks) != spec.m:
            raise ShapeError(f'{len(blocks)} blocks given, spec has {spec.m}')
        parts = []
        for i, (blk, n) in enumerate(zip(blocks, spec.block_dims), start=1):
            arr = np.asarray(blk, dtype=np.float64).reshape(-1)
            if arr.shape[0] != n:
                raise ShapeError(f'block {i} has length {arr.shape[0]}, expected {n}')
            parts.append(arr)
        return cls(spec, np.concatenate(parts))

    @classmethod
    def zeros(cls, spec: SpaceSpec) -> 'BlockVector':
        return cls(spec, np.zeros(spec.dim))

    @property
    def blocks(self) -> Tuple[np.ndarray, ...]:
        return tuple(self.data[self.spec.block_slice(i)] for i in range(1, self.spec.m + 1))

    def block(self, i: int) -> np.ndarray:
        return self.data[self.spec.block_slice(i)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BlockVector):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.data, other.data)

    def __repr__(self) -> str:
        return f'BlockVector({self.spec}, {[b.tolist() for b in self.blocks]})'


# --- normas vectorizadas (también las usan los solvers) ---

def block_l1(data: np.ndarray, spec: SpaceSpec) -> np.ndarray:
    """Normas ℓ₁ por bloque a lo largo del eje 0 (acepta (N,) o (N, k))."""
    return np.add.reduceat(np.abs(data), list(spec.starts), axis=0)


def outer_norm(b: np.ndarray, outer: Exponent, axis: int = 0) -> np.ndarray:
    """Norma exterior ℓp de normas de bloque no negativas."""
    if outer.is_inf:
        return np.max(b, axis=axis)
    if outer.is_one:
        return np.sum(b, axis=axis)
    p = outer.as_float()
    s = np.max(b, axis=axis, keepdims=True)
    safe = np.where(s > 0, s, 1.0)
    r = np.sum((b / safe) ** p, axis=axis) ** (1.0 / p)
    return np.squeeze(s, axis=axis) * r


def column_norms(Y: np.ndarray, spec: SpaceSpec) -> np.ndarray:
    """Norma de `spec` de cada columna de Y (forma (N, k))."""
    return outer_norm(block_l1(Y, spec), spec.outer, axis=0)


def _outer_norm_fsum(b: Sequence[float], outer: Exponent) -> float:
    if outer.is_inf:
        return max(b)
    if outer.is_one:
        return math.fsum(b)
    p = outer.as_float()
    s = max(b)
    if s == 0.0:
        return 0.0
    return s * math.fsum((v / s) ** p for v in b) ** (1.0 / p)


def vec_norm(x: BlockVector) -> float:
    spec = x.spec
    if not np.all(np.isfinite(x.data)):
        raise InvalidInputError('vector has non-finite coordinates')
    with np.errstate(over='ignore', invalid='ignore'):
        r = _raw_norm(x.data, spec)
    # alguna suma de bloque ya desborda: la norma también
    if not math.isfinite(r):
        raise InvalidInputError('norm overflows the float range')
    return r


def _raw_norm(data: np.ndarray, spec: SpaceSpec) -> float:
    if spec.dim > COMPENSATED_MIN_DIM:
        try:
            b = [math.fsum(np.abs(data[spec.block_slice(i)])) for i in range(1, spec.m + 1)]
            return float(_outer_norm_fsum(b, spec.outer))
        except OverflowError:
            return math.inf
    return float(outer_norm(block_l1(data, spec), spec.outer))


def basis_vector(spec: SpaceSpec, block: int, coord: int, sign: int = 1) -> BlockVector:
    if sign not in (1, -1):
        raise InvalidInputError(f'sign: {sign} must be +1 or -1')
    data = np.zeros(spec.dim)
    data[spec.flat_index(block, coord)] = float(sign)
    return BlockVector(spec, data)


def vec_lincomb(a: float, x: BlockVector, b: float, y: BlockVector) -> BlockVector:
    if x.spec != y.spec:
        raise ShapeError(f'spaces differ: {x.spec} vs {y.spec}')
    with np.errstate(over='ignore', invalid='ignore'):
        data = a * x.data + b * y.data
    return BlockVector(x.spec, data)
