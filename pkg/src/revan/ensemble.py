"""Monte Carlo ensemble averages over realisations of one random-graph spec.

Per-realisation observables are folded into streaming moment accumulators
(Welford updates, Chan et al. pairwise merge), so memory stays O(1) in the
number of realisations. Realisations are cut into fixed-size contiguous
chunks; chunks are folded independently (optionally in worker processes)
and merged in chunk order. The fold tree therefore does not depend on the
worker count and results are bit-identical for any number of workers.

Integer-valued observables additionally keep exact Python-int totals, which
makes per-realisation integer identities checkable on the ensemble means.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ParameterError, UsageError
from .graph import degree_profile
from .indices import PRODUCT_NAMES, SUM_KINDS, SUM_NAMES, full_report
from .models import SQRT2, SeedSpec, generate

__all__ = [
    "EnsembleSpec",
    "EnsembleStats",
    "BASE_QUANTITIES",
    "QUANTITIES",
    "run_ensemble",
    "run_range",
    "merge",
    "observe",
]

# "two_m_span" is 2m(Delta + delta), the right-hand side of R1 + M1 = 2m(Delta + delta)
BASE_QUANTITIES = ("edges", "d", "Delta", "delta", "r", "two_m_span")
QUANTITIES = BASE_QUANTITIES + SUM_NAMES + PRODUCT_NAMES
_POS = {q: i for i, q in enumerate(QUANTITIES)}
_INTEGER = ("edges", "Delta", "delta", "two_m_span") + tuple(
    k.name for k in SUM_KINDS if k.integer_valued
)
_INT_POS = np.array([_POS[q] for q in _INTEGER])
_PRODUCT_SLICE = slice(len(BASE_QUANTITIES) + len(SUM_NAMES), len(QUANTITIES))

DEFAULT_CHUNK = 50


@dataclass(frozen=True)
class EnsembleSpec:
    model: str
    n: int
    param: float
    realizations: int
    master_seed: int = 0

    def __post_init__(self):
        if self.model not in ("ER", "RG"):
            raise ParameterError(f"unknown model {self.model!r}; expected 'ER' or 'RG'")
        if int(self.n) != self.n or self.n < 1:
            raise ParameterError(f"n must be an integer >= 1, got {self.n!r}")
        hi = 1.0 if self.model == "ER" else SQRT2
        if not 0.0 <= self.param <= hi:
            name = "p" if self.model == "ER" else "ell"
            raise ParameterError(f"{self.model} parameter {name} must lie in [0, {hi:g}], got {self.param!r}")
        if int(self.realizations) != self.realizations or self.realizations < 1:
            raise ParameterError(f"realizations must be >= 1, got {self.realizations!r}")
        if not 0 <= self.master_seed < 1 << 64:
            raise ParameterError(f"master_seed must be a 64-bit unsigned integer, got {self.master_seed!r}")

    @property
    def key(self):
        return (self.model, int(self.n), float(self.param), int(self.master_seed))


def observe(g, profile=None, report=None) -> np.ndarray:
    """Vector of per-realisation observables in :data:`QUANTITIES` order."""
    if profile is None:
        profile = degree_profile(g)
    if report is None:
        report = full_report(g, profile)
    n, m = g.n, g.m
    span = profile.span
    base = [m, 2.0 * m / n, profile.delta_max, profile.delta_min, (n * span - 2 * m) / n, 2 * m * span]
    return np.concatenate((np.array(base, dtype=np.float64), report.sums, report.log_products))


def _ranges_union(a, b):
    spans = sorted(list(a) + list(b))
    out = []
    for lo, hi in spans:
        if out and lo < out[-1][1]:
            raise UsageError(f"realisation ranges overlap: [{out[-1][0]}, {out[-1][1]}) and [{lo}, {hi})")
        if out and lo == out[-1][1]:
            out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return tuple(out)


@dataclass
class EnsembleStats:
    """Streaming count / mean / M2 for every quantity in :data:`QUANTITIES`.

    Product quantities skip degenerate realisations, so their ``count`` may
    be below ``realizations``; the shortfall is the degenerate count.
    """

    key: tuple
    count: np.ndarray = field(default_factory=lambda: np.zeros(len(QUANTITIES), dtype=np.int64))
    mean_: np.ndarray = field(default_factory=lambda: np.zeros(len(QUANTITIES)))
    m2: np.ndarray = field(default_factory=lambda: np.zeros(len(QUANTITIES)))
    int_totals: list = field(default_factory=lambda: [0] * len(_INTEGER))
    ranges: tuple = ()
    realizations: int = 0

    @classmethod
    def empty(cls, spec: EnsembleSpec) -> "EnsembleStats":
        return cls(key=spec.key)

    def update(self, x: np.ndarray, index: Optional[int] = None) -> None:
        """Fold one realisation's observables (non-finite entries are skipped)."""
        ok = np.isfinite(x)
        self.count += ok
        delta = np.where(ok, x - self.mean_, 0.0)
        cnt = np.maximum(self.count, 1)
        self.mean_ += delta / cnt
        self.m2 += delta * np.where(ok, x - self.mean_, 0.0)
        for j, pos in enumerate(_INT_POS):
            self.int_totals[j] += int(x[pos])
        self.realizations += 1
        if index is not None:
            self.ranges = _ranges_union(self.ranges, ((index, index + 1),))

    # --- accessors -------------------------------------------------------

    def n_of(self, name: str) -> int:
        return int(self.count[_POS[name]])

    def mean(self, name: str) -> float:
        i = _POS[name]
        return float(self.mean_[i]) if self.count[i] else math.nan

    def variance(self, name: str) -> float:
        i = _POS[name]
        c = self.count[i]
        return float(self.m2[i] / (c - 1)) if c > 1 else math.nan

    def sem(self, name: str) -> float:
        i = _POS[name]
        c = self.count[i]
        if c < 2:
            return math.nan
        return math.sqrt(max(self.m2[i], 0.0) / (c - 1) / c)

    def degenerate_count(self, name: str) -> int:
        if name not in PRODUCT_NAMES:
            raise UsageError(f"{name} is not a product index")
        return self.realizations - self.n_of(name)

    def exact_total(self, name: str) -> int:
        """Exact integer sum over realisations of an integer-valued quantity."""
        try:
            return self.int_totals[_INTEGER.index(name)]
        except ValueError:
            raise UsageError(f"{name} is not integer-valued") from None

    def exact_mean(self, name: str) -> Fraction:
        return Fraction(self.exact_total(name), self.realizations)

    def means(self) -> dict[str, float]:
        return {q: self.mean(q) for q in QUANTITIES}


def merge(a: EnsembleStats, b: EnsembleStats) -> EnsembleStats:
    """Combine accumulators over disjoint realisation ranges of the same spec."""
    if a.key != b.key:
        raise UsageError(f"cannot merge statistics of different specs: {a.key} vs {b.key}")
    ranges = _ranges_union(a.ranges, b.ranges)
    na, nb = a.count, b.count
    n = na + nb
    safe = np.maximum(n, 1)
    delta = b.mean_ - a.mean_
    mean = np.where(n > 0, a.mean_ + delta * (nb / safe), 0.0)
    m2 = a.m2 + b.m2 + delta * delta * (na * nb / safe)
    # keep exact values when one side is empty
    mean = np.where(nb == 0, a.mean_, np.where(na == 0, b.mean_, mean))
    m2 = np.where(nb == 0, a.m2, np.where(na == 0, b.m2, m2))
    return EnsembleStats(
        key=a.key,
        count=n,
        mean_=mean,
        m2=m2,
        int_totals=[x + y for x, y in zip(a.int_totals, b.int_totals)],
        ranges=ranges,
        realizations=a.realizations + b.realizations,
    )


def run_range(spec: EnsembleSpec, start: int, stop: int) -> EnsembleStats:
    """Fold realisations ``start .. stop-1`` sequentially."""
    stats = EnsembleStats.empty(spec)
    for i in range(start, stop):
        g = generate(spec.model, spec.n, spec.param, SeedSpec(spec.master_seed, i))
        stats.update(observe(g))
    stats.ranges = ((start, stop),) if stop > start else ()
    return stats


def _run_chunk(args):
    return run_range(*args)


def _chunks(total, size):
    return [(lo, min(lo + size, total)) for lo in range(0, total, size)]


def _reduce(parts: Sequence[EnsembleStats], spec) -> EnsembleStats:
    out = EnsembleStats.empty(spec)
    for part in parts:
        out = merge(out, part)
    return out


def run_ensemble(
    spec: EnsembleSpec,
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK,
    executor: Optional[ProcessPoolExecutor] = None,
    progress: Optional[Callable[[int, int], None]] = None,
) -> EnsembleStats:
    """Ensemble statistics over realisations ``0 .. R-1`` of ``spec``.

    ``workers > 1`` spreads chunks over a process pool (or the supplied
    ``executor``). ``progress(done, total)`` is called after each chunk.
    """
    if workers < 1:
        raise ParameterError(f"workers must be >= 1, got {workers}")
    if chunk_size < 1:
        raise ParameterError(f"chunk_size must be >= 1, got {chunk_size}")
    jobs = [(spec, lo, hi) for lo, hi in _chunks(spec.realizations, chunk_size)]
    parts = []
    if executor is None and workers == 1:
        for job in jobs:
            parts.append(_run_chunk(job))
            if progress:
                progress(job[2], spec.realizations)
    else:
        own = executor is None
        pool = executor or ProcessPoolExecutor(max_workers=workers)
        try:
            for part in pool.map(_run_chunk, jobs):
                parts.append(part)
                if progress:
                    progress(part.ranges[-1][1], spec.realizations)
        finally:
            if own:
                pool.shutdown()
    return _reduce(parts, spec)
