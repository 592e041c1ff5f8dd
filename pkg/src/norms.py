# -*- coding: utf-8 -*-
"""Norma de operador de un BlockOperator.

- dominio ℓ₁ (p = 1 o un único bloque): regla de columnas, exacta;
- dominio p = INF: enumeración exacta de puntos extremos con signos;
- p ∈ (1, ∞): intervalo certificado [lower, upper] por enumeración de
  selecciones y ascenso sobre la esfera ℓp en cada selección;
- oráculos independientes: muestreo aleatorio, iteración de potencia y
  fuerza bruta.

Reducción a selecciones (enumeración para p finito): todo x de la bola se
escribe como xᵢ = ‖xᵢ‖₁ · (combinación convexa de ±e_k del bloque i), luego
x es combinación convexa de puntos Σᵢ tᵢ e^{(i)}_{kᵢ} con ‖t‖_p ≤ 1 y signo
absorbido en t. Como x ↦ ‖Tx‖ es convexa,
    ‖T‖ = max_{selección k} max_{‖t‖_p ≤ 1} ‖A_k t‖,
con A_k la matriz cuyas columnas son T e^{(i)}_{kᵢ}.
"""
from __future__ import annotations

import itertools
import math
from typing import List, Literal, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from src.common.errors import ConfigError, DispatchError, SizeLimitError, ShapeError
from src.common.types import SolverConfig
from src.config import get_threads
from src.operators import BlockOperator, apply, xi
from src.spaces import (BlockVector, Exponent, SpaceSpec, basis_vector, block_l1,
                        dual_exponent, outer_norm, vec_norm)
from src.utils import log

LINF_MAX_BLOCKS = 24
LINF_MAX_CANDIDATES = 2 ** 26
ENUM_MAX_SELECTIONS = 10 ** 6
CHUNK_ELEMENTS = 1 << 22
ZERO_RESTART_ATTEMPTS = 8
SCHUR_MAX_ITERS = 2000

Method = Literal['exact-l1', 'exact-linf', 'extreme-enum', 'sampling']


class NormEstimate(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lower: float
    upper: float
    witness: BlockVector
    method: Method

    @model_validator(mode='after')
    def _ordered(self):
        if not (0.0 <= self.lower <= self.upper):
            raise ValueError(f'invalid interval [{self.lower}, {self.upper}]')
        return self

    @property
    def width(self) -> float:
        return self.upper - self.lower


def _as_config(cfg) -> SolverConfig:
    if cfg is None:
        return SolverConfig()
    if isinstance(cfg, SolverConfig):
        return cfg
    try:
        return SolverConfig.model_validate(cfg)
    except ValidationError as e:
        err = e.errors()[0]
        loc = ".".join(str(x) for x in err["loc"])
        raise ConfigError(f"solver config: {loc}: {err['msg']}")


def _is_l1_domain(spec: SpaceSpec) -> bool:
    return spec.outer.is_one or spec.m == 1


def _column_norm_list(T: BlockOperator) -> List[float]:
    """‖T e_k‖ para cada coordenada plana k, evaluada con vec_norm."""
    return [vec_norm(BlockVector(T.codomain, T.matrix[:, k])) for k in range(T.domain.dim)]


def _basis_best(T: BlockOperator) -> Tuple[float, BlockVector]:
    """Mejor ±e^{(i)}_k; empates: menor (bloque, coordenada), signo +1 primero."""
    norms = _column_norm_list(T)
    k = int(np.argmax(norms))
    block, coord = T.domain.locate(k)
    return norms[k], basis_vector(T.domain, block, coord, 1)


# =========================
# Reglas exactas
# =========================
def opnorm_l1_exact(T: BlockOperator) -> Tuple[float, BlockVector]:
    """Regla de columnas: el dominio es ℓ₁^N entero."""
    if not _is_l1_domain(T.domain):
        raise DispatchError(f'opnorm_l1_exact: domain outer exponent is {T.domain.outer}, expected 1')
    return _basis_best(T)


def _prune_columns(T: BlockOperator) -> List[List[int]]:
    """Índices planos de columnas útiles por bloque del dominio.

    Se descartan columnas nulas y columnas iguales, salvo signo, a otra
    anterior del mismo bloque; el máximo sobre selecciones no cambia.
    """
    kept = []
    for i in range(1, T.domain.m + 1):
        sl = T.domain.block_slice(i)
        cols: List[int] = []
        for k in range(sl.start, sl.stop):
            c = T.matrix[:, k]
            if not np.any(c):
                continue
            if any(np.array_equal(c, T.matrix[:, q]) or np.array_equal(c, -T.matrix[:, q]) for q in cols):
                continue
            cols.append(k)
        kept.append(cols)
    return kept


def _sign_patterns(m: int) -> np.ndarray:
    """Todas las combinaciones de signo con la primera coordenada en +1, en orden lexicográfico (+ antes que −)."""
    if m <= 1:
        return np.ones((1, m))
    rest = np.array(list(itertools.product((1.0, -1.0), repeat=m - 1))).reshape(-1, m - 1)
    return np.hstack([np.ones((rest.shape[0], 1)), rest])


def opnorm_linf_exact(T: BlockOperator) -> Tuple[float, BlockVector]:
    """Máximo sobre selecciones y signos σ de ‖T Σᵢ σᵢ e^{(i)}_{kᵢ}‖.

    Exacto: la bola del dominio es el producto de bolas ℓ₁ por bloque, sus
    puntos extremos son sumas de ±e por bloque y x ↦ ‖Tx‖ es convexa.
    Se fija σ₁ = +1 porque ‖T(−x)‖ = ‖Tx‖.
    """
    dom = T.domain
    if not dom.outer.is_inf:
        raise DispatchError(f'opnorm_linf_exact: domain outer exponent is {dom.outer}, expected inf')
    if dom.m > LINF_MAX_BLOCKS:
        raise SizeLimitError(f'opnorm_linf_exact: {dom.m} blocks exceed the limit of {LINF_MAX_BLOCKS}')
    kept = _prune_columns(T)
    active = [i for i, cols in enumerate(kept) if cols]
    default = np.zeros(dom.dim)
    for i in range(dom.m):
        default[dom.starts[i]] = 1.0
    if not active:
        return 0.0, BlockVector(dom, default)
    count = math.prod(len(kept[i]) for i in active) * 2 ** (len(active) - 1)
    if count > LINF_MAX_CANDIDATES:
        raise SizeLimitError(f'opnorm_linf_exact: {count} candidates exceed the limit of {LINF_MAX_CANDIDATES}')

    signs = _sign_patterns(len(active)).T  # (m', 2^(m'-1))
    best_val, best_sel, best_sig = -1.0, None, None
    for sel in itertools.product(*(kept[i] for i in active)):
        Y = T.matrix[:, list(sel)] @ signs
        vals = outer_norm(block_l1(Y, T.codomain), T.codomain.outer, axis=0)
        j = int(np.argmax(vals))
        if vals[j] > best_val:
            best_val, best_sel, best_sig = float(vals[j]), sel, signs[:, j]
    x = default.copy()
    for i, k, s in zip(active, best_sel, best_sig):
        x[dom.starts[i]] = 0.0
        x[k] = s
    w = BlockVector(dom, x)
    return vec_norm(apply(T, w)), w


def opnorm_linf_row_rule(T: BlockOperator) -> float:
    """Atajo para dominio INF y codominio ℓ∞ de escalares: max_filas Σ_bloques max_k |T|."""
    if not T.domain.outer.is_inf:
        raise DispatchError(f'row rule: domain outer exponent is {T.domain.outer}, expected inf')
    cod = T.codomain
    scalar = all(n == 1 for n in cod.block_dims)
    if not scalar or not (cod.outer.is_inf or cod.m == 1):
        raise DispatchError(f'row rule: codomain {T.codomain} is not ℓ∞ of scalars')
    per_block = np.maximum.reduceat(np.abs(T.matrix), list(T.domain.starts), axis=1)
    return float(np.max(np.sum(per_block, axis=1)))


# =========================
# p ∈ (1, ∞): ascenso sobre la esfera ℓp
# =========================
def _lp_normalize(t: np.ndarray, p: float) -> np.ndarray:
    """Normaliza cada fila a ‖·‖_p = 1 (filas nulas quedan nulas)."""
    s = np.max(np.abs(t), axis=-1, keepdims=True)
    safe = np.where(s > 0, s, 1.0)
    u = t / safe
    n = np.sum(np.abs(u) ** p, axis=-1, keepdims=True) ** (1.0 / p)
    return u / np.where(n > 0, n, 1.0)


def _cod_values(Y: np.ndarray, codomain: SpaceSpec) -> Tuple[np.ndarray, np.ndarray]:
    """Normas de filas de Y (forma (k, N)) en el codominio y normas de bloque."""
    b = np.add.reduceat(np.abs(Y), list(codomain.starts), axis=1)
    return outer_norm(b, codomain.outer, axis=1), b


def _outer_weights(b: np.ndarray, outer: Exponent) -> np.ndarray:
    """Subgradiente de la norma exterior respecto de las normas de bloque (eje 1)."""
    if outer.is_one:
        return np.ones_like(b)
    if outer.is_inf:
        w = np.zeros_like(b)
        np.put_along_axis(w, np.argmax(b, axis=1)[:, None], 1.0, axis=1)
        return w
    q = outer.as_float()
    s = np.max(b, axis=1, keepdims=True)
    r = b / np.where(s > 0, s, 1.0)
    tot = np.sum(r ** q, axis=1, keepdims=True)
    return r ** (q - 1.0) / np.where(tot > 0, tot, 1.0) ** ((q - 1.0) / q)


def _dual_step(G: np.ndarray, p: float) -> np.ndarray:
    """argmax_{‖s‖_p = 1} ⟨G, s⟩ = sign(G)|G|^{p*−1}, normalizado."""
    pstar = p / (p - 1.0)
    g = np.max(np.abs(G), axis=1, keepdims=True)
    u = np.abs(G) / np.where(g > 0, g, 1.0)
    return _lp_normalize(np.sign(G) * u ** (pstar - 1.0), p)


def _starting_points(m: int, p: float, cfg: SolverConfig, rng: np.random.Generator) -> np.ndarray:
    """Semillas: ±e_i, y muestras uniformes de la esfera ℓp con sus copias espejo de signo."""
    coords = np.vstack([np.eye(m), -np.eye(m)])
    # Muestreo de la medida de cono: |gᵢ| ~ Gamma(1/p)^{1/p}
    mags = rng.gamma(1.0 / p, 1.0, size=(cfg.restarts, m)) ** (1.0 / p)
    if m <= cfg.mirror_max_blocks:
        pats = _sign_patterns(m)
        samples = (mags[:, None, :] * pats[None, :, :]).reshape(-1, m)
    else:
        samples = mags * rng.choice((-1.0, 1.0), size=mags.shape)
    return _lp_normalize(np.vstack([coords, samples]), p)


def _ascend(A_cols: np.ndarray, t: np.ndarray, p: float, codomain: SpaceSpec, cfg: SolverConfig,
            redraw) -> Tuple[np.ndarray, np.ndarray]:
    """Ascenso por linealización sobre la esfera ℓp, una columna por semilla.

    A_cols: (K, N, m); t: (K, m). Cada paso salta al maximizador de ⟨g, s⟩
    en la esfera, con g subgradiente de t ↦ ‖At‖; el objetivo no decrece.
    Devuelve (f, t) por semilla.
    """
    dims = np.array(codomain.block_dims)
    t = t.copy()
    f, _ = _cod_values((A_cols @ t[..., None])[..., 0], codomain)

    # At = 0 (medida cero): reinicio desde una semilla aleatoria nueva
    zero = np.flatnonzero((f == 0.0) & np.any(A_cols != 0.0, axis=(1, 2)))
    for k in zero:
        for attempt in range(ZERO_RESTART_ATTEMPTS):
            cand = redraw(int(k), attempt)
            val, _ = _cod_values((A_cols[k] @ cand)[None, :], codomain)
            if val[0] > 0.0:
                t[k], f[k] = cand, val[0]
                break

    active = f > 0.0
    for _ in range(cfg.max_iters):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        A = A_cols[idx]
        Y = (A @ t[idx][..., None])[..., 0]
        _, b = _cod_values(Y, codomain)
        w = np.repeat(_outer_weights(b, codomain.outer), dims, axis=1)
        G = (np.swapaxes(A, 1, 2) @ (np.sign(Y) * w)[..., None])[..., 0]
        tn = _dual_step(G, p)
        fn, _ = _cod_values((A @ tn[..., None])[..., 0], codomain)
        fo = f[idx]
        better = fn > fo
        stalled = (fn - fo) <= cfg.tol * fo
        up = idx[better]
        t[up], f[up] = tn[better], fn[better]
        active[idx[stalled | ~better]] = False
    return f, t


def _schur_bound(M: np.ndarray, p: float, cfg: SolverConfig) -> np.ndarray:
    """Cota superior certificada de ‖M‖_{p→p} para M ≥ 0 (forma (S, r, m)).

    Test de Schur con pesos positivos h1 = s^{1/p*}, h2 = (Ms)^{1/p*}, con s
    casi óptimo por iteración de potencia no negativa; cualquier s > 0 da
    una cota válida y el óptimo la hace exacta.
    """
    pstar = p / (p - 1.0)
    S, r, m = M.shape
    pe = Exponent.parse(p)
    s = _lp_normalize(np.ones((S, m)), p)
    val = outer_norm((M @ s[..., None])[..., 0], pe, axis=1)
    active = np.ones(S, dtype=bool)
    for _ in range(min(cfg.max_iters, SCHUR_MAX_ITERS)):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        Mi = M[idx]
        y = (Mi @ s[idx][..., None])[..., 0]
        ymax = np.max(y, axis=1, keepdims=True)
        z = (np.swapaxes(Mi, 1, 2) @ ((y / np.where(ymax > 0, ymax, 1.0)) ** (p - 1.0))[..., None])[..., 0]
        zmax = np.max(z, axis=1, keepdims=True)
        sn = _lp_normalize((z / np.where(zmax > 0, zmax, 1.0)) ** (pstar - 1.0), p)
        vn = outer_norm((Mi @ sn[..., None])[..., 0], pe, axis=1)
        vo = val[idx]
        better = vn > vo
        stalled = (vn - vo) <= cfg.tol * vo
        up = idx[better]
        s[up], val[up] = sn[better], vn[better]
        active[idx[stalled | ~better]] = False

    smax = np.max(s, axis=1, keepdims=True)
    s = np.maximum(s, 1e-12 * smax)
    y = (M @ s[..., None])[..., 0]
    ymax = np.max(y, axis=1, keepdims=True)
    y = np.maximum(y, 1e-12 * ymax)
    out = np.zeros(S)
    ok = (smax[:, 0] > 0) & (ymax[:, 0] > 0)
    if not np.any(ok):
        return out
    h1 = s[ok] ** (1.0 / pstar)
    h2 = y[ok] ** (1.0 / pstar)
    Mo = M[ok]
    c1 = np.max((Mo @ (h1 ** pstar)[..., None])[..., 0] / h2 ** pstar, axis=1)
    c2 = np.max((np.swapaxes(Mo, 1, 2) @ (h2 ** p)[..., None])[..., 0] / h1 ** p, axis=1)
    out[ok] = c1 ** (1.0 / pstar) * c2 ** (1.0 / p)
    return out


def _majorant_bound(M: np.ndarray, p: Exponent, codomain: SpaceSpec, cfg: SolverConfig) -> np.ndarray:
    """‖M‖ de la mayorante no negativa M_ij = ‖bloque i de la columna j‖₁ (forma (S, r, m))."""
    pstar = dual_exponent(p)
    q = codomain.outer
    if q.is_inf:
        return np.max(outer_norm(M, pstar, axis=2), axis=1)
    if q.is_one:
        return outer_norm(np.sum(M, axis=1), pstar, axis=1)
    if q == p:
        return _schur_bound(M, p.as_float(), cfg)
    return np.full(M.shape[0], np.inf)


def _face_grid(m: int, resolution: int) -> Tuple[np.ndarray, float]:
    """Centros de celdas sobre las caras del cubo [−1,1]^m y semilado h/2."""
    if m == 1:
        return np.array([[1.0], [-1.0]]), 0.0
    h = 2.0 / resolution
    centers = -1.0 + h / 2.0 + h * np.arange(resolution)
    free = np.array(list(itertools.product(centers, repeat=m - 1)))
    pts = []
    for i in range(m):
        for sgn in (1.0, -1.0):
            pts.append(np.insert(free, i, sgn, axis=1))
    return np.vstack(pts), h / 2.0


def _grid_bound(A: np.ndarray, p: float, codomain: SpaceSpec, holder: float, resolution: int) -> float:
    """Cota por red sobre la esfera: f(s) ≤ (f(c) + Hδ)/(‖c‖_p − δ)."""
    m = A.shape[1]
    C, half = _face_grid(m, resolution)
    delta = half * (m - 1) ** (1.0 / p)
    cnorm = np.sum(np.abs(C) ** p, axis=1) ** (1.0 / p)
    denom = cnorm - delta
    if np.any(denom <= 0.0):
        return math.inf
    f, _ = _cod_values((A @ C.T).T, codomain)
    return float(np.max((f + holder * delta) / denom))


def _selection_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def _solve_selections(A: np.ndarray, indices: Sequence[int], p: Exponent, codomain: SpaceSpec,
                      cfg: SolverConfig) -> List[Tuple[float, np.ndarray, float]]:
    """Resuelve un bloque de selecciones; A: (S, N, m). Devuelve (lower, t, upper) por selección."""
    S, N, m = A.shape
    pf = p.as_float()
    starts = []
    for s_idx in indices:
        starts.append(_starting_points(m, pf, cfg, _selection_rng(cfg.seed, s_idx)))
    R = starts[0].shape[0]
    A_cols = np.repeat(A, R, axis=0)
    t0 = np.vstack(starts)

    def redraw(k: int, attempt: int) -> np.ndarray:
        rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, indices[k // R], k % R, attempt + 1]))
        g = rng.gamma(1.0 / pf, 1.0, size=m) ** (1.0 / pf) * rng.choice((-1.0, 1.0), size=m)
        return _lp_normalize(g[None, :], pf)[0]

    f, t = _ascend(A_cols, t0, pf, codomain, cfg, redraw)

    M = np.add.reduceat(np.abs(A), list(codomain.starts), axis=1)       # (S, r, m)
    colnorms = outer_norm(M, codomain.outer, axis=1)                    # (S, m)
    holder = outer_norm(colnorms, dual_exponent(p), axis=1)             # (S,)
    upper = np.minimum(holder, _majorant_bound(M, p, codomain, cfg))

    out = []
    for s in range(S):
        fs = f[s * R:(s + 1) * R]
        j = int(np.argmax(fs))
        up = float(upper[s])
        if cfg.grid_cert and m <= 3:
            up = min(up, _grid_bound(A[s], pf, codomain, float(holder[s]), cfg.grid_resolution))
        out.append((float(fs[j]), t[s * R + j].copy(), up))
    return out


def inner_max_lp(A, p, codomain: SpaceSpec, cfg=None, seed: Optional[int] = None) -> Tuple[float, np.ndarray, float]:
    """max{‖At‖_codomain : ‖t‖_p ≤ 1}: (lower, t testigo, upper)."""
    cfg = _as_config(cfg)
    p = Exponent.parse(p)
    if not p.is_interior:
        raise DispatchError(f'inner_max_lp: p={p} is not in (1, inf)')
    A = np.asarray(A, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != codomain.dim or A.shape[1] < 1:
        raise ShapeError(f'inner_max_lp: A has shape {A.shape}, expected ({codomain.dim}, m >= 1)')
    if seed is not None:
        cfg = cfg.model_copy(update={'seed': seed})
    lower, t, upper = _solve_selections(A[None, ...], [0], p, codomain, cfg)[0]
    return lower, t, max(upper, lower)


def extreme_enumeration(T: BlockOperator, cfg=None, n_jobs: Optional[int] = None) -> NormEstimate:
    cfg = _as_config(cfg)
    dom, cod = T.domain, T.codomain
    p = dom.outer
    if not p.is_interior:
        raise DispatchError(f'extreme_enumeration: domain outer exponent {p} is not in (1, inf)')
    total = math.prod(dom.block_dims)
    if total > ENUM_MAX_SELECTIONS:
        raise SizeLimitError(f'extreme_enumeration: {total} selections exceed the limit of {ENUM_MAX_SELECTIONS}')

    kept = _prune_columns(T)
    active = [i for i, cols in enumerate(kept) if cols]
    if not active:
        return NormEstimate(lower=0.0, upper=0.0, witness=basis_vector(dom, 1, 1, 1), method='extreme-enum')

    selections = list(itertools.product(*(kept[i] for i in active)))
    m = len(active)
    per_sel = (2 * m + cfg.restarts * (2 ** (m - 1) if m <= cfg.mirror_max_blocks else 1)) * cod.dim * m
    chunk = max(1, CHUNK_ELEMENTS // per_sel)
    chunks = [list(range(a, min(a + chunk, len(selections)))) for a in range(0, len(selections), chunk)]

    def run(idx: List[int]):
        A = np.stack([T.matrix[:, list(selections[s])] for s in idx])
        return _solve_selections(A, idx, p, cod, cfg)

    n_jobs = get_threads() if n_jobs is None else n_jobs
    if len(chunks) == 1 or n_jobs == 1:
        results = [run(c) for c in chunks]
    else:
        results = Parallel(n_jobs=n_jobs, prefer='threads')(delayed(run)(c) for c in chunks)
    log(f'extreme_enumeration: {len(selections)} selecciones, {len(chunks)} bloques, m activo={m}', 'debug')

    # reducción en orden de índice
    best_lower, best_s, best_t, upper = -1.0, 0, None, 0.0
    flat = [r for res in results for r in res]
    for s, (lo, t, up) in enumerate(flat):
        if lo > best_lower:
            best_lower, best_s, best_t = lo, s, t
        upper = max(upper, up)

    x = np.zeros(dom.dim)
    for k, tk in zip(selections[best_s], best_t):
        x[k] = tk
    w = BlockVector(dom, x)
    nw = vec_norm(w)
    if nw > 0:
        w = BlockVector(dom, x / nw)
        lower = vec_norm(apply(T, w))
    else:
        w, lower = basis_vector(dom, 1, 1, 1), 0.0
    return NormEstimate(lower=lower, upper=max(upper, lower), witness=w, method='extreme-enum')


def opnorm(T: BlockOperator, cfg=None, n_jobs: Optional[int] = None) -> NormEstimate:
    """Despacha según el exponente exterior del dominio y añade siempre los
    vectores ±e^{(i)}_k como candidatos a testigo."""
    cfg = _as_config(cfg)
    dom = T.domain
    if _is_l1_domain(dom):
        val, w = opnorm_l1_exact(T)
        est = NormEstimate(lower=val, upper=val, witness=w, method='exact-l1')
    elif dom.outer.is_inf:
        val, w = opnorm_linf_exact(T)
        est = NormEstimate(lower=val, upper=val, witness=w, method='exact-linf')
    else:
        est = extreme_enumeration(T, cfg, n_jobs=n_jobs)

    bval, bw = _basis_best(T)
    if bval > est.lower:
        est = NormEstimate(lower=bval, upper=max(est.upper, bval), witness=bw, method=est.method)
    return est


# =========================
# Oráculos independientes
# =========================
def sampling_oracle(T: BlockOperator, samples: int, seed: int = 0) -> Tuple[float, BlockVector]:
    """Cota inferior: mejor ‖Tx‖ sobre vectores unitarios aleatorios (Laplace por
    coordenada, normalizados) y todos los ±e^{(i)}_k."""
    if samples < 0:
        raise ConfigError(f'samples: {samples} must be >= 0')
    dom, cod = T.domain, T.codomain
    best, w = _basis_best(T)
    rng = np.random.default_rng(np.random.SeedSequence([seed]))
    done = 0
    while done < samples:
        k = min(4096, samples - done)
        X = rng.laplace(size=(dom.dim, k))
        nx = outer_norm(block_l1(X, dom), dom.outer, axis=0)
        keep = nx > 0
        X = X[:, keep] / nx[keep]
        vals = outer_norm(block_l1(T.matrix @ X, cod), cod.outer, axis=0)
        if vals.size:
            j = int(np.argmax(vals))
            if vals[j] > best:
                cand = BlockVector(dom, X[:, j])
                cand = BlockVector(dom, cand.data / vec_norm(cand))
                val = vec_norm(apply(T, cand))
                if val > best:
                    best, w = val, cand
        done += k
    return best, w


def spectral_norm(matrix, max_iter: int = 100000, tol: float = 1e-15, seed: int = 0) -> float:
    """Mayor valor singular por iteración de potencia sobre AᵀA."""
    A = np.asarray(matrix, dtype=np.float64)
    if not np.any(A):
        return 0.0
    rng = np.random.default_rng(np.random.SeedSequence([seed]))
    x = rng.standard_normal(A.shape[1])
    x /= np.linalg.norm(x)
    ratio_old = math.inf
    ratio = 0.0
    for _ in range(max_iter):
        Ax = A @ x
        ratio = float(np.linalg.norm(Ax))
        if ratio == 0.0:
            x = rng.standard_normal(A.shape[1])
            x /= np.linalg.norm(x)
            continue
        if abs(ratio - ratio_old) <= tol * ratio:
            break
        ratio_old = ratio
        x = A.T @ Ax
        x /= np.linalg.norm(x)
    return ratio


def brute_force_opnorm(T: BlockOperator) -> float:
    """Fuerza bruta con vec_norm: ±e^{(i)}_k para dominio ℓ₁, todos los puntos
    extremos con signo para dominio INF."""
    dom = T.domain
    best = 0.0
    if _is_l1_domain(dom):
        for i in range(1, dom.m + 1):
            for k in range(1, dom.block_dims[i - 1] + 1):
                for sgn in (1, -1):
                    best = max(best, vec_norm(apply(T, basis_vector(dom, i, k, sgn))))
        return best
    if not dom.outer.is_inf:
        raise DispatchError(f'brute_force_opnorm: domain outer exponent {dom.outer} has no finite extreme set')
    if dom.m > 10:
        raise SizeLimitError(f'brute_force_opnorm: {dom.m} blocks exceed the limit of 10')
    ranges = [range(st, st + n) for st, n in zip(dom.starts, dom.block_dims)]
    for sel in itertools.product(*ranges):
        for sig in itertools.product((1.0, -1.0), repeat=dom.m):
            x = np.zeros(dom.dim)
            x[list(sel)] = sig
            best = max(best, vec_norm(apply(T, BlockVector(dom, x))))
    return best


# =========================
# Normas de D y de Ξ(T)
# =========================
def d_norm(blocks: Sequence[BlockOperator]) -> float:
    """Norma de (T_n) en (⊕ B(ℓ₁ⁿ))_{ℓ∞}: max_n ‖T_n‖_{ℓ₁→ℓ₁}."""
    if not blocks:
        raise ShapeError('d_norm: empty block list')
    return max(opnorm_l1_exact(Tn)[0] for Tn in blocks)


def xi_norm(T: BlockOperator) -> float:
    """‖Ξ(T)‖ = max_i ‖T_ii‖_{ℓ₁→ℓ₁}."""
    return d_norm(xi(T))
