import warnings

import numpy as np
import pytest

from evopareto import indicators, pareto
from evopareto.environments import make_env
from evopareto.rng import RandomStream


def random_min_front(stream, n, k):
    """Nondominated minimization points inside the unit box."""
    pts = stream.uniform_vector(n * k).reshape(n, k)
    keep = pareto.nondominated_mask(-pts)  # maximize negation = minimize
    return pts[keep]


def test_hv_exact_worked_examples():
    assert indicators.hypervolume_exact([(0.0, 0.0)], (1.0, 1.0)) == 1.0
    assert indicators.hypervolume_exact([(0.0, 0.5), (0.5, 0.0)], (1.0, 1.0)) == pytest.approx(0.75, abs=1e-12)
    assert indicators.hypervolume_exact([(0.0, 0.0, 0.0)], (1.0, 1.0, 1.0)) == 1.0


def test_hv_exact_drops_noncontributing_points():
    assert indicators.hypervolume_exact([(1.0, 0.0), (2.0, -1.0)], (1.0, 1.0)) == 0.0
    out = indicators.hypervolume_exact([(0.5, 0.5), (0.5, 2.0)], (1.0, 1.0))
    assert out == pytest.approx(0.25, abs=1e-12)


def test_hv_exact_rejects_bad_dimensions():
    with pytest.raises(ValueError):
        indicators.hypervolume_exact([(0.0,) * 4], (1.0,) * 4)
    with pytest.raises(ValueError):
        indicators.hypervolume_exact([(0.0, 0.0)], (1.0, 1.0, 1.0))


def test_hv_exact_permutation_invariant():
    stream = RandomStream(5)
    front = random_min_front(stream, 12, 3)
    ref = np.full(3, 1.1)
    base = indicators.hypervolume_exact(front, ref)
    assert indicators.hypervolume_exact(front[::-1], ref) == pytest.approx(base, abs=1e-12)


def test_hv_exact_monotone_in_new_points():
    front = np.array([(0.4, 0.6), (0.6, 0.4)])
    ref = np.array([1.0, 1.0])
    base = indicators.hypervolume_exact(front, ref)
    grown = indicators.hypervolume_exact(np.vstack([front, [(0.1, 0.9)]]), ref)
    assert grown > base


def test_hv_mc_trivial_cases():
    assert indicators.hypervolume_mc([(1.0, 1.0)], (1.0, 1.0), 1000, seed=3) == 0.0
    assert indicators.hypervolume_mc([(0.0, 0.0)], (1.0, 1.0), 100_000, seed=3) == 1.0


def test_hv_mc_matches_exact_within_binomial_bound():
    stream = RandomStream(11)
    samples = 100_000
    for k in (2, 3):
        for trial in range(5):
            front = random_min_front(stream, 5, k)
            ref = np.full(k, 1.0)
            exact = indicators.hypervolume_exact(front, ref)
            mc = indicators.hypervolume_mc(front, ref, samples, seed=1000 + trial)
            box = np.prod(ref - front.min(axis=0))
            p = exact / box if box > 0 else 0.0
            sigma = box * np.sqrt(max(p * (1 - p), 1e-12) / samples)
            assert abs(mc - exact) < max(3 * sigma, 1e-3)


def test_hv_contributions_worked_example():
    contrib = indicators.hypervolume_contributions(
        [(0.0, 0.9), (0.5, 0.5), (0.9, 0.0)], (1.0, 1.0))
    assert contrib[1] == pytest.approx(0.16, abs=1e-12)
    assert contrib[0] == pytest.approx(0.05, abs=1e-12)
    assert contrib[2] == pytest.approx(0.05, abs=1e-12)


def test_gd_igd_examples():
    assert indicators.gd([(0.0, 0.0)], [(1.0, 0.0), (0.0, 1.0)]) == pytest.approx(1.0)
    assert indicators.gd([(1.0, 0.0), (0.0, 1.0)], [(0.0, 0.0)]) == pytest.approx(1.0)
    assert indicators.igd([(0.0, 0.0)], [(1.0, 0.0), (0.0, 1.0)]) == pytest.approx(1.0)
    front = [(0.3, 0.7), (0.7, 0.3)]
    assert indicators.gd(front, front) == 0.0
    assert indicators.igd(front, front) == 0.0


def test_gd_zero_iff_subset():
    reference = np.array([(0.0, 1.0), (0.5, 0.5), (1.0, 0.0)])
    assert indicators.gd(reference[:2], reference) < 1e-12
    assert indicators.gd([(0.25, 0.75)], reference) > 1e-6


def test_igd_never_increases_when_covering_reference_point():
    approx = np.array([(0.2, 0.8)])
    reference = np.array([(0.0, 1.0), (1.0, 0.0)])
    before = indicators.igd(approx, reference)
    after = indicators.igd(np.vstack([approx, reference[:1]]), reference)
    assert after <= before


def test_gd_rejects_empty_or_mismatched():
    with pytest.raises(ValueError):
        indicators.gd(np.empty((0, 2)), [(0.0, 1.0)])
    with pytest.raises(ValueError):
        indicators.gd([(0.0, 1.0)], [(0.0, 1.0, 2.0)])


def test_build_reference_front_single_and_union():
    single = indicators.build_reference_front([[(1.0, 2.0), (0.0, 0.0)]])
    assert single.tolist() == [[1.0, 2.0]]
    both = indicators.build_reference_front([[(1.0, 2.0)], [(2.0, 1.0)]])
    assert sorted(map(tuple, both)) == [(1.0, 2.0), (2.0, 1.0)]


def test_build_reference_front_deduplicates():
    front = indicators.build_reference_front([[(1.0, 2.0)], [(1.0, 2.0), (2.0, 1.0)]])
    assert sorted(map(tuple, front)) == [(1.0, 2.0), (2.0, 1.0)]


def test_build_reference_front_matches_bruteforce_union():
    stream = RandomStream(8)
    runs = [stream.uniform_vector(12).reshape(6, 2) for _ in range(5)]
    got = sorted(map(tuple, indicators.build_reference_front(runs)))
    combined = np.vstack(runs)
    survivors = [tuple(p) for p in combined
                 if not any(all(q >= p) and any(q > p) for q in combined)]
    expected = sorted(set(survivors))
    assert got == expected


def test_indicator_series_perfect_generation():
    reference = np.array([(0.0, 1.0), (0.5, 0.5), (1.0, 0.0)])
    series = indicators.indicator_series([reference.copy()], reference, "X")
    report = series[0]
    ideal, nadir = reference.max(axis=0), reference.min(axis=0)
    assert report.hv == pytest.approx(
        indicators.normalized_hypervolume(reference, ideal, nadir), abs=1e-12)
    assert report.gd == 0.0 and report.igd == 0.0
    assert report.algorithm == "X" and report.generation == 0


def test_indicator_series_length_and_order():
    reference = np.array([(0.0, 1.0), (1.0, 0.0)])
    pops = [np.array([(0.1, 0.1)]), np.array([(0.2, 0.2)]), np.array([(0.3, 0.3)])]
    series = indicators.indicator_series(pops, reference, "Y")
    assert [r.generation for r in series] == [0, 1, 2]


def test_indicator_series_degenerate_reference_warns_and_nans_hv():
    reference = np.array([(0.5, 0.5)])
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        series = indicators.indicator_series([np.array([(0.5, 0.5)])], reference, "Z")
    assert any("degenerate" in str(w.message) for w in caught)
    assert np.isnan(series[0].hv)
    assert series[0].igd == 0.0


def test_analytic_front_normalized_hv_near_half():
    front = make_env("TradeoffBandit").analytic_front(1001)
    hv = indicators.normalized_hypervolume(front, front.max(axis=0), front.min(axis=0))
    assert abs(hv - 0.5) < 1e-3
    assert indicators.gd(front, front) <= 1e-12
    assert indicators.igd(front, front) <= 1e-12


def test_normalized_hv_clips_points_outside_unit_box():
    # One point dominates the normalization box entirely: clipped to the
    # ideal corner, the reported value saturates at 1 instead of exceeding it.
    ideal, nadir = np.array([1.0, 1.0]), np.array([0.0, 0.0])
    hv = indicators.normalized_hypervolume([(2.0, 2.0)], ideal, nadir)
    assert hv == pytest.approx(1.0, abs=1e-12)
