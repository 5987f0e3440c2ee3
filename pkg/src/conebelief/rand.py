"""Deterministic random instances for the conformance suites.

Every sample is drawn from a generator seeded by (seed, stream, index), so
reports are reproducible regardless of evaluation order.  Classical samples
use small integer coordinates to keep the exact LPs fast and the witnesses
readable; quantum samples use small integer real/imaginary parts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import events as ev
from . import hermitian as hm
from .errors import GenerationError
from .models import INCONSISTENT, DesirabilityModel, least_resolved, trivial_subspace
from .spaces import Space

COEFF_RANGE = 3
RESAMPLE_BUDGET = 100


@dataclass(frozen=True)
class GenConfig:
    """Sampling parameters for one suite run."""

    seed: int = 0
    trials: int = 100
    max_atoms: int = 4
    min_atoms: int = 2
    max_dim: int = 3
    min_dim: int = 2
    extra_generators: int = 3
    coeff_range: int = COEFF_RANGE


def stream_rng(seed, *stream) -> random.Random:
    tag = "/".join(str(s) for s in (seed,) + stream)
    return random.Random(tag)


def np_rng(seed, *stream) -> np.random.Generator:
    h = stream_rng(seed, *stream).getrandbits(63)
    return np.random.default_rng(h)


def rand_space(cfg: GenConfig, kind: str, rng: random.Random) -> Space:
    if kind == "classical":
        n = rng.randint(cfg.min_atoms, cfg.max_atoms)
        return Space.classical([chr(ord("a") + i) for i in range(n)])
    n = rng.randint(cfg.min_dim, cfg.max_dim)
    return Space.quantum(n)


def rand_option(space: Space, rng: random.Random, lo=None, hi=None):
    lo = -COEFF_RANGE if lo is None else lo
    hi = COEFF_RANGE if hi is None else hi
    if space.is_classical:
        return tuple(Fraction(rng.randint(lo, hi)) for _ in space.atoms)
    n = space.dim
    a = np.zeros((n, n), dtype=complex)
    for i in range(n):
        a[i, i] = rng.randint(lo, hi)
        for j in range(i + 1, n):
            a[i, j] = rng.randint(lo, hi) + 1j * rng.randint(lo, hi)
            a[j, i] = np.conj(a[i, j])
    return a


def rand_weak_option(space: Space, rng: random.Random):
    """A sample from the background cone (nonnegative gamble / PSD matrix)."""
    if space.is_classical:
        return tuple(Fraction(rng.randint(0, COEFF_RANGE)) for _ in space.atoms)
    n = space.dim
    b = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            b[i, j] = rng.randint(-COEFF_RANGE, COEFF_RANGE) + 1j * rng.randint(
                -COEFF_RANGE, COEFF_RANGE
            )
    return b.conj().T @ b


def rand_scalar(space: Space, rng: random.Random):
    if space.is_classical:
        return Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    return rng.randint(-3, 3) / rng.randint(1, 3)


def rand_event(space: Space, rng: random.Random) -> ev.Event:
    if space.is_classical:
        return ev.Event(space, subset=[a for a in space.atoms if rng.random() < 0.5])
    n = space.dim
    j = rng.randint(0, n)
    if j == 0:
        return ev.Event.null(space)
    if j == n:
        return ev.Event.unit(space)
    nrng = np.random.default_rng(rng.getrandbits(63))
    vecs = nrng.normal(size=(j, n)) + 1j * nrng.normal(size=(j, n))
    return ev.Event.from_subspace_basis(space, list(vecs))


def rand_proper_event(space: Space, rng: random.Random) -> ev.Event:
    for _ in range(RESAMPLE_BUDGET):
        e = rand_event(space, rng)
        if ev.is_proper(e):
            return e
    raise GenerationError("could not sample a proper event")


def rand_nonregular_event(space: Space, rng: random.Random) -> ev.Event:
    for _ in range(RESAMPLE_BUDGET):
        e = rand_event(space, rng)
        if not ev.is_regular(e):
            return e
    raise GenerationError("could not sample a non-regular event")


def rand_coherent_model(space: Space, rng: random.Random, k: int) -> DesirabilityModel:
    """A coherent desirable-cone model with up to k extra generators.

    Samples generators, forms the background-augmented cone and resamples
    whenever the null option slips into it (the coherence filter).
    """
    for _ in range(RESAMPLE_BUDGET):
        gens = []
        for _ in range(k):
            g = rand_option(space, rng)
            if space.is_classical and all(x == 0 for x in g):
                continue
            if not space.is_classical and np.linalg.norm(g) < 1e-12:
                continue
            gens.append(g)
        model = least_resolved(space, gens=gens, indifference=trivial_subspace(space))
        if model is not INCONSISTENT:
            return model
    raise GenerationError("coherence filter exhausted its resample budget")
