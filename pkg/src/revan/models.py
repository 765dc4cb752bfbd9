"""Seedable Erdos-Renyi and random geometric graph generators.

Every realisation draws from its own PCG64 stream. The stream is derived
with :class:`numpy.random.SeedSequence` from ``entropy=master_seed`` and
``spawn_key=(realization_index,)``, so realisation ``i`` depends on nothing
but ``(master_seed, i)``: no sequential coupling, and distinct indices get
non-overlapping generator states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.spatial.distance import pdist

from .errors import ParameterError
from .graph import Graph

__all__ = [
    "ErSpec",
    "RgSpec",
    "SeedSpec",
    "PRNG_NAME",
    "rng_for",
    "generate_er",
    "generate_rg",
    "rg_points",
    "generate",
    "SQRT2",
]

SQRT2 = math.sqrt(2.0)
PRNG_NAME = "PCG64 via SeedSequence(entropy=master_seed, spawn_key=(realization_index,))"
_U64 = 1 << 64


def _check_n(n):
    if int(n) != n or n < 1:
        raise ParameterError(f"n must be an integer >= 1, got {n!r}")


@dataclass(frozen=True)
class ErSpec:
    n: int
    p: float

    def __post_init__(self):
        _check_n(self.n)
        if not 0.0 <= self.p <= 1.0:
            raise ParameterError(f"ER probability p must lie in [0, 1], got {self.p!r}")


@dataclass(frozen=True)
class RgSpec:
    n: int
    ell: float

    def __post_init__(self):
        _check_n(self.n)
        if not 0.0 <= self.ell <= SQRT2:
            raise ParameterError(f"RG radius ell must lie in [0, sqrt(2)], got {self.ell!r}")


@dataclass(frozen=True)
class SeedSpec:
    master_seed: int
    realization_index: int = 0

    def __post_init__(self):
        if not 0 <= self.master_seed < _U64:
            raise ParameterError(f"master_seed must be a 64-bit unsigned integer, got {self.master_seed!r}")
        if self.realization_index < 0:
            raise ParameterError(f"realization_index must be >= 0, got {self.realization_index!r}")


def rng_for(seed: SeedSpec) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed.master_seed, spawn_key=(seed.realization_index,))
    return np.random.Generator(np.random.PCG64(ss))


@lru_cache(maxsize=8)
def _pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    # row-major upper triangle == lexicographic order of (u, v), u < v
    iu, iv = np.triu_indices(n, 1)
    iu = iu.astype(np.int64)
    iv = iv.astype(np.int64)
    iu.setflags(write=False)
    iv.setflags(write=False)
    return iu, iv


def _graph(n, iu, iv, keep) -> Graph:
    idx = np.flatnonzero(keep)
    return Graph(n, np.column_stack((iu[idx], iv[idx])))


def generate_er(spec: ErSpec, seed: SeedSpec) -> Graph:
    """G(n, p): one uniform draw per pair in lexicographic order, kept if ``< p``."""
    iu, iv = _pairs(spec.n)
    draws = rng_for(seed).random(iu.shape[0])
    return _graph(spec.n, iu, iv, draws < spec.p)


def rg_points(spec: RgSpec, seed: SeedSpec) -> np.ndarray:
    """The ``(n, 2)`` uniform point set underlying :func:`generate_rg`."""
    return rng_for(seed).random((spec.n, 2))


def generate_rg(spec: RgSpec, seed: SeedSpec) -> Graph:
    """Random geometric graph on the unit square; edge iff squared distance <= ell**2."""
    pts = rg_points(spec, seed)
    iu, iv = _pairs(spec.n)
    # condensed pdist output is in the same row-major pair order as _pairs
    dist2 = pdist(pts, "sqeuclidean") if spec.n > 1 else np.empty(0)
    return _graph(spec.n, iu, iv, dist2 <= spec.ell * spec.ell)


def generate(model: str, n: int, param: float, seed: SeedSpec) -> Graph:
    if model == "ER":
        return generate_er(ErSpec(n, param), seed)
    if model == "RG":
        return generate_rg(RgSpec(n, param), seed)
    raise ParameterError(f"unknown model {model!r}; expected 'ER' or 'RG'")
