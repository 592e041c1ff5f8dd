# -*- coding: utf-8 -*-
"""Suites de propiedades: cada caso registra comprobaciones en un CaseLedger;
los fallos son violaciones, nunca excepciones."""
import time
from typing import Callable, Optional, Sequence

import numpy as np
from joblib import Parallel, delayed

from src.common.errors import RangeError
from src.common.types import CaseOutcome, VerificationReport
from src.config import get_threads
from src.norms import (brute_force_opnorm, d_norm, opnorm, opnorm_l1_exact, opnorm_linf_row_rule,
                       sampling_oracle, spectral_norm, xi_norm)
from src.operators import (BlockOperator, apply, delta, embed_f, embed_l1, first_column, flip_block_column,
                           flip_block_row, op_lincomb, project_f, tong_sequence, tong_target, xi)
from src.spaces import INF, ONE, BlockVector, Exponent, SpaceSpec, staircase_spec, vec_norm
from src.utils import log
from src.verify.generators import case_rng, case_seed, gen_dims, gen_operator, gen_vector
from src.verify.ledger import CaseLedger, scaled
from src.verify.params import ChainParams, DeltaParams, EmbeddingParams, SolverSuiteParams, TongParams

EXACT_TOL = 1e-12
INTERVAL_TOL = 1e-9
ORACLE_REL_TOL = 1e-6
CHAIN_NOTE = 'out of scope: cited result'
# factores ±2^k: el escalado es exacto en coma flotante
HOMOGENEITY_FACTORS = (-2.0, -0.5, 0.5, 2.0, 4.0)

CaseFn = Callable[[int, int, CaseLedger, object], None]


def _run_case(case_fn: CaseFn, index: int, params) -> CaseOutcome:
    cs = case_seed(params.seed, index)
    ledger = CaseLedger(cs)
    try:
        case_fn(index, cs, ledger, params)
    except Exception as e:
        ledger.fail(e)
    return ledger.outcome(index)


def run_cases(name: str, case_fn: CaseFn, params, cases: int, only_case: Optional[int] = None,
              n_jobs: Optional[int] = None, timing: bool = False,
              notes: Sequence[str] = ()) -> VerificationReport:
    """Ejecuta los casos (en paralelo si hay más de un worker) y reduce en orden de índice."""
    if only_case is not None and not 0 <= only_case < cases:
        raise RangeError(f'case {only_case} out of range 0..{cases - 1}')
    indices = list(range(cases)) if only_case is None else [only_case]
    n_jobs = get_threads() if n_jobs is None else n_jobs
    log(f'[{name}] inicio: {len(indices)} casos, seed={params.seed}, workers={n_jobs}')
    t0 = time.perf_counter()
    if n_jobs == 1 or len(indices) <= 1:
        outcomes = [_run_case(case_fn, k, params) for k in indices]
    else:
        outcomes = Parallel(n_jobs=n_jobs)(delayed(_run_case)(case_fn, k, params) for k in indices)
    elapsed = time.perf_counter() - t0

    violations, slacks, rows = [], [], []
    for out in sorted(outcomes, key=lambda o: o.index):
        violations.extend(out.violations)
        if out.max_slack is not None:
            slacks.append(out.max_slack)
        rows.append({'case': out.index, 'case_seed': out.case_seed, 'violations': len(out.violations),
                     'max_slack': out.max_slack if out.max_slack is not None else 0.0, **out.row})
    max_slack = max(slacks) if slacks else 0.0
    report = VerificationReport(suite=name, seed=params.seed, cases=len(indices), violations=violations,
                                max_slack=max_slack, wall_time_s=elapsed if timing else 0.0,
                                notes=list(notes))
    report.rows.extend(rows)
    log(f'[{name}] fin: {len(indices)} casos, {len(violations)} violaciones, '
        f'max_slack={max_slack:.3g}, {elapsed:.2f}s')
    return report


def _pick(items, index: int):
    return items[index % len(items)]


def _random_unit(spec: SpaceSpec, rng: np.random.Generator) -> BlockVector:
    x = BlockVector(spec, rng.laplace(size=spec.dim))
    n = vec_norm(x)
    return BlockVector(spec, x.data / n) if n > 0 else BlockVector(spec, np.eye(spec.dim)[0])


def _negate_block(x: BlockVector, j: int) -> BlockVector:
    d = x.data.copy()
    sl = x.spec.block_slice(j)
    d[sl] = -d[sl]
    return BlockVector(x.spec, d)


# =========================
# embedding
# =========================
def _embedding_case(index: int, cs: int, L: CaseLedger, params: EmbeddingParams):
    rng = case_rng(cs)
    n = int(rng.integers(1, params.n_max + 1))
    spec = SpaceSpec.l1(n)
    a = BlockVector.zeros(spec) if index == 0 else gen_vector(spec, rng, params.scale, params.ensemble)
    E = embed_l1(a)
    norm_a = vec_norm(a)
    norm_e, _ = opnorm_l1_exact(E)
    L.close('embed_l1 isometry', norm_e, norm_a, scaled(EXACT_TOL, norm_a))
    L.exact('first_column(embed_l1(a)) = a', first_column(E).data, a.data)

    T = gen_operator(spec, case_seed(cs, 1), params.scale, params.ensemble)
    fc = vec_norm(first_column(T))
    norm_t, _ = opnorm_l1_exact(T)
    L.le('|first_column(T)| <= |T|', fc, norm_t, scaled(EXACT_TOL, norm_t))

    L.measure('n', n)
    L.measure('norm_a', norm_a)
    L.measure('norm_embed', norm_e)
    L.measure('norm_first_column', fc)
    L.measure('norm_T', norm_t)


def suite_embedding(params: EmbeddingParams, only_case: Optional[int] = None, n_jobs: Optional[int] = None,
                    timing: bool = False) -> VerificationReport:
    return run_cases('embedding', _embedding_case, params, params.cases, only_case, n_jobs, timing)


# =========================
# delta
# =========================
def _delta_case(index: int, cs: int, L: CaseLedger, params: DeltaParams):
    rng = case_rng(cs)
    p = _pick(params.p_list, index)
    dims = gen_dims(rng, params.m_max, params.n_max)
    Ts = []
    for i, n in enumerate(dims, start=1):
        T = gen_operator(SpaceSpec.l1(n), case_seed(cs, i), params.scale, params.ensemble)
        Ts.append(BlockOperator.zeros(T.domain) if index == 0 else T)
    D = delta(Ts, p)
    bmax = d_norm(Ts)
    est = opnorm(D, params.solver, n_jobs=1)
    if p.is_one or p.is_inf:
        L.close(f'|delta| = max block norm (p={p}, lower)', est.lower, bmax, scaled(EXACT_TOL, bmax))
        L.close(f'|delta| = max block norm (p={p}, upper)', est.upper, bmax, scaled(EXACT_TOL, bmax))
    else:
        L.le(f'max block norm <= lower + tol (p={p})', bmax, est.lower, scaled(EXACT_TOL, bmax))
        L.le(f'max block norm <= upper (p={p})', bmax, est.upper, scaled(INTERVAL_TOL, bmax))
        L.le(f'lower <= max block norm (p={p})', est.lower, bmax, scaled(INTERVAL_TOL, bmax))
    back = xi(D)
    for i, (Ti, Bi) in enumerate(zip(Ts, back), start=1):
        L.exact(f'xi(delta(Ts))[{i}] = T{i}', Bi.matrix, Ti.matrix)

    L.measure('p', str(p))
    L.measure('m', len(dims))
    L.measure('max_block_norm', bmax)
    L.measure('lower', est.lower)
    L.measure('upper', est.upper)


def suite_delta(params: DeltaParams, only_case: Optional[int] = None, n_jobs: Optional[int] = None,
                timing: bool = False) -> VerificationReport:
    return run_cases('delta', _delta_case, params, params.cases, only_case, n_jobs, timing)


# =========================
# tong
# =========================
def _tong_case(index: int, cs: int, L: CaseLedger, params: TongParams):
    rng = case_rng(cs)
    p = _pick(params.p_list, index)
    spec = SpaceSpec(outer=p, block_dims=gen_dims(rng, params.m_max, params.n_max))
    T = gen_operator(spec, cs, params.scale, params.ensemble)
    if index == 0:
        T = BlockOperator.zeros(T.domain, T.codomain)
    m = spec.m
    trace = tong_sequence(T)

    # (a) máscaras de coincidencia
    L.exact('trace length = m', len(trace.steps), m)
    for n, S in enumerate(trace.steps, start=1):
        L.exact(f'S{n} agrees with target', S.matrix, tong_target(T, n).matrix)
    L.exact('S_m = -delta(xi(T))', trace.steps[-1].matrix, -delta(xi(T), p).matrix)

    est_t = opnorm(T, params.solver, n_jobs=1)
    Tk, Tr = flip_block_column(T, 1), flip_block_row(T, 1)
    if p.is_one or p.is_inf:
        # (b) exponentes exactos
        ref = est_t.lower
        for n, S in enumerate(trace.steps, start=1):
            L.le(f'|S{n}| <= |T| (p={p})', opnorm(S, params.solver, n_jobs=1).lower, ref, scaled(EXACT_TOL, ref))
        L.close(f'|T_k| = |T| (p={p})', opnorm(Tk, params.solver, n_jobs=1).lower, ref, scaled(EXACT_TOL, ref))
        L.close(f'|T_r| = |T| (p={p})', opnorm(Tr, params.solver, n_jobs=1).lower, ref, scaled(EXACT_TOL, ref))
    else:
        # (c) intervalos
        up = est_t.upper
        for n, S in enumerate(trace.steps, start=1):
            L.le(f'lower(S{n}) <= upper(T) (p={p})', opnorm(S, params.solver, n_jobs=1).lower, up,
                 scaled(INTERVAL_TOL, up))
        x = _random_unit(spec, rng)
        L.exact('|T_k x| = |T J_1 x|', vec_norm(apply(Tk, x)), vec_norm(apply(T, _negate_block(x, 1))))

    # promedio puntual: |((T_k + T_r)/2) x| <= (|T_k x| + |T_r x|)/2
    x = _random_unit(spec, rng)
    avg = vec_norm(apply(trace.steps[0], x))
    half = 0.5 * (vec_norm(apply(Tk, x)) + vec_norm(apply(Tr, x)))
    L.le('averaging triangle inequality', avg, half, scaled(EXACT_TOL, half))

    # (d) |Xi(T)| <= |T|, con la cota por componentes en un bloque al azar
    xmax = xi_norm(T)
    L.le('max |T_ii| <= lower(T)', xmax, est_t.lower, scaled(EXACT_TOL, xmax))
    i = int(rng.integers(1, m + 1))
    sl = spec.block_slice(i)
    yd = np.zeros(spec.dim)
    yd[sl] = rng.laplace(size=sl.stop - sl.start)
    y = BlockVector(spec, yd)
    img = apply(T, y)
    L.le(f'|T_{i}{i} x_{i}|_1 <= |T x|', float(np.sum(np.abs(img.block(i)))), vec_norm(img),
         scaled(EXACT_TOL, vec_norm(img)))

    L.measure('p', str(p))
    L.measure('m', m)
    L.measure('lower', est_t.lower)
    L.measure('upper', est_t.upper)
    L.measure('xi_norm', xmax)


def suite_tong(params: TongParams, only_case: Optional[int] = None, n_jobs: Optional[int] = None,
               timing: bool = False) -> VerificationReport:
    return run_cases('tong', _tong_case, params, params.cases, only_case, n_jobs, timing)


# =========================
# solver
# =========================
def _spectral_case(local: int, cs: int, L: CaseLedger, params: SolverSuiteParams):
    rng = case_rng(cs)
    size = int(rng.integers(1, params.size_max + 1))
    spec = SpaceSpec(outer=Exponent.parse('2'), block_dims=(1,) * size)
    T = gen_operator(spec, cs, params.scale, params.ensemble)
    if local == 0:
        T = BlockOperator.zeros(T.domain, T.codomain)
    sigma = spectral_norm(T.matrix, seed=cs)
    est = opnorm(T, params.solver, n_jobs=1)
    L.close('lower vs power iteration', est.lower, sigma, scaled(ORACLE_REL_TOL, sigma))
    L.le('power iteration <= upper', sigma, est.upper, scaled(ORACLE_REL_TOL, sigma))
    L.measure('group', 'spectral')
    L.measure('size', size)
    L.measure('sigma', sigma)
    L.measure('lower', est.lower)
    L.measure('upper', est.upper)


def _exact_case(local: int, cs: int, L: CaseLedger, params: SolverSuiteParams):
    rng = case_rng(cs)
    kind = local % 3
    spec = SpaceSpec(outer=ONE if kind == 0 else INF, block_dims=gen_dims(rng, params.m_max, params.n_max))
    codomain = spec
    if kind == 2:
        codomain = SpaceSpec(outer=INF, block_dims=(1,) * int(rng.integers(1, params.size_max + 1)))
    T = gen_operator(spec, cs, params.scale, params.ensemble, codomain=codomain)
    if local == 0:
        T = BlockOperator.zeros(T.domain, T.codomain)
    est = opnorm(T, params.solver, n_jobs=1)
    bf = brute_force_opnorm(T)
    if kind == 0:
        L.exact('column rule = signed basis enumeration', est.lower, bf)
    else:
        L.close('sign enumeration = brute force', est.lower, bf, scaled(EXACT_TOL, bf))
    L.le('exact interval width', est.width, 0.0, scaled(EXACT_TOL, est.lower))
    if kind == 2:
        L.close('row rule = sign enumeration', opnorm_linf_row_rule(T), est.lower, scaled(EXACT_TOL, bf))
    sl, _ = sampling_oracle(T, params.samples, seed=cs)
    L.le('sampling <= upper', sl, est.upper, scaled(INTERVAL_TOL, est.upper))
    L.measure('group', 'exact')
    L.measure('p', str(spec.outer))
    L.measure('lower', est.lower)
    L.measure('brute_force', bf)


def _cross_case(local: int, cs: int, L: CaseLedger, params: SolverSuiteParams):
    rng = case_rng(cs)
    p = _pick(params.cross_p, local)
    spec = SpaceSpec(outer=p, block_dims=gen_dims(rng, params.m_max, params.n_max))
    T = gen_operator(spec, cs, params.scale, params.ensemble)
    if local == 0:
        T = BlockOperator.zeros(T.domain, T.codomain)
    cfg = params.solver
    est = opnorm(T, cfg, n_jobs=1)

    sl, _ = sampling_oracle(T, params.samples, seed=cs)
    L.le('sampling <= upper', sl, est.upper, scaled(INTERVAL_TOL, est.upper))
    L.close('|witness| = 1', vec_norm(est.witness), 1.0, EXACT_TOL)
    L.le('witness attains lower', est.lower, vec_norm(apply(T, est.witness)), scaled(INTERVAL_TOL, est.lower))

    c = HOMOGENEITY_FACTORS[int(rng.integers(len(HOMOGENEITY_FACTORS)))]
    est_c = opnorm(op_lincomb(c, T, 0.0, T), cfg, n_jobs=1)
    L.close(f'homogeneity lower (c={c})', est_c.lower, abs(c) * est.lower, scaled(INTERVAL_TOL, abs(c) * est.lower))
    L.close(f'homogeneity upper (c={c})', est_c.upper, abs(c) * est.upper, scaled(INTERVAL_TOL, abs(c) * est.upper))

    j = int(rng.integers(1, spec.m + 1))
    est_f = opnorm(flip_block_column(T, j), cfg, n_jobs=1)
    L.close(f'flip invariance (j={j})', est_f.lower, est.lower, scaled(INTERVAL_TOL, est.lower))

    xmax = xi_norm(T)
    L.le('max |T_ii| <= lower(T)', xmax, est.lower, scaled(EXACT_TOL, xmax))
    L.measure('group', 'cross')
    L.measure('p', str(p))
    L.measure('lower', est.lower)
    L.measure('upper', est.upper)
    L.measure('sampling', sl)


def _solver_case(index: int, cs: int, L: CaseLedger, params: SolverSuiteParams):
    if index < params.spectral_cases:
        return _spectral_case(index, cs, L, params)
    index -= params.spectral_cases
    if index < params.exact_cases:
        return _exact_case(index, cs, L, params)
    return _cross_case(index - params.exact_cases, cs, L, params)


def suite_solver(params: SolverSuiteParams, only_case: Optional[int] = None, n_jobs: Optional[int] = None,
                 timing: bool = False) -> VerificationReport:
    return run_cases('solver', _solver_case, params, params.total_cases, only_case, n_jobs, timing)


# =========================
# chain: ℓ₁^m → D_m → B(E_m)
# =========================
def _chain_case(index: int, cs: int, L: CaseLedger, params: ChainParams):
    rng = case_rng(cs)
    m = params.m
    spec_a = SpaceSpec.l1(m)
    if index == 0:
        a = BlockVector(spec_a, np.eye(m)[0])
    else:
        a = gen_vector(spec_a, rng, params.scale, params.ensemble)
    amax = float(np.max(np.abs(a.data)))

    # a ↦ (a_n e₁)_{n≤m} ∈ F_m
    fm = staircase_spec(m, INF)
    x = BlockVector.from_blocks(fm, [np.eye(n)[0] * a.data[n - 1] for n in range(1, m + 1)])
    L.close('|(a_n e_1)|_F = max |a_n|', vec_norm(x), amax, scaled(INTERVAL_TOL, amax))

    # F_m → D_m: (a_n e₁ ⊗ e₁*)_{n≤m}
    blocks = embed_f(x)
    L.close('|D element| = max |a_n|', d_norm(blocks), amax, scaled(INTERVAL_TOL, amax))
    for n, Bn in enumerate(blocks, start=1):
        L.close(f'embed_l1 leg n={n}', opnorm_l1_exact(Bn)[0], abs(a.data[n - 1]), scaled(EXACT_TOL, amax))
    back = project_f(blocks)
    L.exact('project_f(embed_f(x)) = x', back.data, x.data)
    L.exact('coordinate recovery = a', [back.block(n)[0] for n in range(1, m + 1)], a.data)

    # D_m → B(E_m) por Δ
    D = delta(blocks, params.p)
    for n, (Bn, Xn) in enumerate(zip(blocks, xi(D)), start=1):
        L.exact(f'xi(delta)[{n}] = id', Xn.matrix, Bn.matrix)
    est = opnorm(D, params.solver, n_jobs=1)
    L.le('lower(delta) <= max |a_n|', est.lower, amax, scaled(INTERVAL_TOL, amax))
    L.le('max |a_n| <= upper(delta)', amax, est.upper, scaled(INTERVAL_TOL, amax))
    L.close('delta leg distortion (lower)', est.lower, amax, scaled(INTERVAL_TOL, amax))
    L.close('delta leg distortion (upper)', est.upper, amax, scaled(INTERVAL_TOL, amax))

    L.measure('m', m)
    L.measure('p', str(params.p))
    L.measure('max_abs_a', amax)
    L.measure('lower', est.lower)
    L.measure('upper', est.upper)


def suite_chain(params: ChainParams, only_case: Optional[int] = None, n_jobs: Optional[int] = None,
                timing: bool = False) -> VerificationReport:
    return run_cases('chain', _chain_case, params, params.cases, only_case, n_jobs, timing, notes=(CHAIN_NOTE,))


SUITES = {
    'embedding': (EmbeddingParams, suite_embedding),
    'delta': (DeltaParams, suite_delta),
    'tong': (TongParams, suite_tong),
    'solver': (SolverSuiteParams, suite_solver),
    'chain': (ChainParams, suite_chain),
}
