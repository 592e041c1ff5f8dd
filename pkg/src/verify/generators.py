# -*- coding: utf-8 -*-
import math
from typing import Tuple

import numpy as np

from src.common.errors import InvalidInputError
from src.operators import BlockOperator
from src.spaces import BlockVector, SpaceSpec

ENSEMBLES = ('uniform', 'heavy')


def case_seed(seed: int, index: int) -> int:
    """Semilla derivada de (semilla de la suite, índice de caso); permite --case k."""
    return int(np.random.SeedSequence([seed, index]).generate_state(1, np.uint64)[0])


def case_rng(cs: int, stream: int = 0) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([cs, stream]))


def _draw(rng: np.random.Generator, size, scale: float, ensemble: str) -> np.ndarray:
    if not (math.isfinite(scale) and scale > 0):
        raise InvalidInputError(f'scale: {scale} must be a finite value > 0')
    if ensemble == 'uniform':
        return rng.uniform(-scale, scale, size=size)
    if ensemble == 'heavy':
        # colas de Cauchy
        return scale * np.tan(np.pi * (rng.random(size=size) - 0.5))
    raise InvalidInputError(f"ensemble: '{ensemble}' is not one of {', '.join(ENSEMBLES)}")


def gen_operator(spec: SpaceSpec, seed: int, scale: float = 1.0, ensemble: str = 'uniform',
                 codomain: SpaceSpec | None = None) -> BlockOperator:
    """Entradas i.i.d.; mismo (spec, seed, scale, ensemble) ⇒ mismo operador."""
    codomain = codomain or spec
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    return BlockOperator(spec, codomain, _draw(rng, (codomain.dim, spec.dim), scale, ensemble))


def gen_vector(spec: SpaceSpec, rng: np.random.Generator, scale: float = 1.0,
               ensemble: str = 'uniform') -> BlockVector:
    return BlockVector(spec, _draw(rng, spec.dim, scale, ensemble))


def gen_dims(rng: np.random.Generator, m_max: int, n_max: int) -> Tuple[int, ...]:
    m = int(rng.integers(1, m_max + 1))
    return tuple(int(n) for n in rng.integers(1, n_max + 1, size=m))
