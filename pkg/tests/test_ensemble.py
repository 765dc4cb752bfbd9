import math
import random
from fractions import Fraction

import numpy as np
import pytest

from revan.ensemble import QUANTITIES, EnsembleSpec, EnsembleStats, merge, observe, run_ensemble, run_range
from revan.errors import ParameterError, UsageError
from revan.graph import path_graph
from revan.models import SeedSpec, generate

SMALL = EnsembleSpec("ER", 30, 0.2, 1000, master_seed=42)


@pytest.fixture(scope="module")
def sequential():
    """Single-pass reference fold of SMALL, realisation by realisation."""
    stats = EnsembleStats.empty(SMALL)
    for i in range(SMALL.realizations):
        g = generate("ER", SMALL.n, SMALL.param, SeedSpec(SMALL.master_seed, i))
        stats.update(observe(g), index=i)
    return stats


def _close_means(a, b, tol):
    for q in QUANTITIES:
        x, y = a.mean(q), b.mean(q)
        if math.isnan(x) or math.isnan(y):
            assert math.isnan(x) and math.isnan(y), q
        else:
            assert x == pytest.approx(y, rel=tol, abs=tol), q


def test_complete_graph_ensemble():
    stats = run_ensemble(EnsembleSpec("ER", 10, 1.0, 5, master_seed=123))
    for q in ("d", "Delta", "delta", "r"):
        assert stats.mean(q) == 9
        assert stats.sem(q) == 0
    assert stats.realizations == 5 and stats.n_of("lnR1Pi") == 5


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(model="ER", n=10, param=0.5, realizations=0),
        dict(model="ER", n=10, param=1.5, realizations=5),
        dict(model="RG", n=10, param=1.5, realizations=5),
        dict(model="XY", n=10, param=0.5, realizations=5),
        dict(model="ER", n=0, param=0.5, realizations=5),
    ],
)
def test_invalid_specs(kwargs):
    with pytest.raises(ParameterError):
        EnsembleSpec(**kwargs)


def test_observables_of_one_graph():
    x = dict(zip(QUANTITIES, observe(path_graph(4))))
    assert x["edges"] == 3 and x["d"] == 1.5 and x["r"] == 1.5
    assert x["two_m_span"] == 18 and x["R1"] == 8 and x["M1"] == 10


def test_merge_contiguous_halves():
    a = run_range(SMALL, 0, 100)
    b = run_range(SMALL, 100, 200)
    whole = run_range(SMALL, 0, 200)
    merged = merge(a, b)
    assert merged.ranges == ((0, 200),)
    assert np.array_equal(merged.count, whole.count)
    assert merged.int_totals == whole.int_totals
    _close_means(merged, whole, 1e-12)


def test_merge_empty_is_identity():
    x = run_range(SMALL, 0, 50)
    for m in (merge(x, EnsembleStats.empty(SMALL)), merge(EnsembleStats.empty(SMALL), x)):
        assert np.array_equal(m.mean_, x.mean_) and np.array_equal(m.m2, x.m2)
        assert m.realizations == x.realizations and m.ranges == x.ranges


def test_random_splits_match_single_pass(sequential):
    rng = random.Random(7)
    for _ in range(5):
        cuts = sorted(rng.sample(range(1, SMALL.realizations), 6))
        bounds = [0] + cuts + [SMALL.realizations]
        parts = [run_range(SMALL, lo, hi) for lo, hi in zip(bounds[:-1], bounds[1:])]
        rng.shuffle(parts)
        total = EnsembleStats.empty(SMALL)
        for part in parts:
            total = merge(total, part)
        assert total.ranges == ((0, SMALL.realizations),)
        _close_means(total, sequential, 1e-12)
        for q in ("d", "R1", "lnRSOPi"):
            assert total.variance(q) == pytest.approx(sequential.variance(q), rel=1e-10)


def test_merge_commutes_and_associates():
    a, b, c = run_range(SMALL, 0, 30), run_range(SMALL, 30, 70), run_range(SMALL, 70, 75)
    _close_means(merge(a, b), merge(b, a), 1e-12)
    _close_means(merge(merge(a, b), c), merge(a, merge(b, c)), 1e-12)


def test_merge_rejects_mismatch_and_overlap():
    other = EnsembleSpec("ER", 30, 0.3, 10, master_seed=42)
    with pytest.raises(UsageError):
        merge(run_range(SMALL, 0, 5), run_range(other, 5, 10))
    with pytest.raises(UsageError, match="overlap"):
        merge(run_range(SMALL, 0, 10), run_range(SMALL, 5, 15))


def test_worker_count_does_not_change_results():
    spec = EnsembleSpec("RG", 40, 0.3, 230, master_seed=9)
    one = run_ensemble(spec, workers=1, chunk_size=25)
    three = run_ensemble(spec, workers=3, chunk_size=25)
    assert np.array_equal(one.mean_, three.mean_)
    assert np.array_equal(one.m2, three.m2)
    assert one.int_totals == three.int_totals
    # a different fold tree changes only floating-point reassociation
    _close_means(one, run_ensemble(spec, chunk_size=7), 1e-10)


def test_reproducible():
    spec = EnsembleSpec("ER", 25, 0.15, 120, master_seed=5)
    assert np.array_equal(run_ensemble(spec).mean_, run_ensemble(spec).mean_)


def test_identity_propagates_exactly(sequential):
    lhs = sequential.exact_mean("R1") + sequential.exact_mean("M1")
    assert lhs == sequential.exact_mean("two_m_span")
    assert isinstance(lhs, Fraction)
    with pytest.raises(UsageError):
        sequential.exact_total("SO")


def test_mean_revan_decomposition(sequential):
    s = sequential
    assert s.mean("r") == pytest.approx(s.mean("Delta") + s.mean("delta") - s.mean("d"), rel=1e-12)


def test_degenerate_products_are_excluded_per_index():
    # sparse ER: isolated vertices make some Revan factors zero
    spec = EnsembleSpec("ER", 20, 0.08, 300, master_seed=3)
    stats = run_ensemble(spec)
    assert stats.degenerate_count("lnR2Pi") > 0
    assert stats.degenerate_count("lnPi1") == 0
    assert stats.n_of("lnPi1") == spec.realizations
    assert stats.n_of("lnR2Pi") == spec.realizations - stats.degenerate_count("lnR2Pi")
    assert math.isfinite(stats.mean("lnR2Pi"))
    assert stats.n_of("R1") == spec.realizations
    with pytest.raises(UsageError):
        stats.degenerate_count("R1")


def test_sem_shrinks_like_inverse_sqrt():
    ratios = []
    for seed in range(12):
        small = run_ensemble(EnsembleSpec("ER", 40, 0.1, 200, master_seed=seed))
        large = run_ensemble(EnsembleSpec("ER", 40, 0.1, 400, master_seed=1000 + seed))
        ratios.append(small.sem("d") / large.sem("d"))
    assert np.mean(ratios) == pytest.approx(math.sqrt(2), rel=0.2)


@pytest.fixture(scope="module")
def dense_er():
    return run_ensemble(EnsembleSpec("ER", 500, 0.5, 200, master_seed=2022))


def test_dense_er_revan_tracks_degree(dense_er):
    s = dense_er
    assert 0.98 <= s.mean("r") / s.mean("d") <= 1.02
    assert abs((s.mean("Delta") + s.mean("delta")) / 2 - s.mean("d")) <= 0.02 * s.mean("d")
