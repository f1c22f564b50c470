import numpy as np

from evopareto.rng import RandomStream, derive_seed, mix64


def test_same_seed_same_sequence():
    a = RandomStream(2024)
    b = RandomStream(2024)
    assert [a.next_u64() for _ in range(16)] == [b.next_u64() for _ in range(16)]


def test_golden_first_output():
    # Frozen once from this implementation; guards cross-platform drift.
    assert RandomStream(99).next_u64() == 4824385676517010403
    assert abs(RandomStream(7).normal() - 1.3649922974572282) < 1e-15


def test_scalar_and_vector_uniform_paths_agree():
    scalar = RandomStream(5)
    values = [scalar.uniform() for _ in range(32)]
    assert np.array_equal(RandomStream(5).uniform_vector(32), np.array(values))
    # Interleaved use keeps one shared counter.
    s = RandomStream(5)
    head = s.uniform_vector(10)
    tail = [s.uniform() for _ in range(22)]
    assert np.array_equal(np.concatenate([head, tail]), np.array(values))


def test_uniform_range_and_mapping():
    s = RandomStream(1)
    draws = s.uniform_vector(10_000)
    assert np.all((0.0 <= draws) & (draws < 1.0))
    t = RandomStream(1)
    mapped = t.uniform_vector(10_000, -0.05, 0.05)
    assert np.allclose(mapped, -0.05 + 0.1 * draws)


def test_normal_moments():
    s = RandomStream(31)
    draws = np.array([s.normal() for _ in range(20_000)])
    assert abs(draws.mean()) < 0.03
    assert 0.97 < draws.std() < 1.03


def test_normal_scale_and_shift():
    a = RandomStream(8)
    b = RandomStream(8)
    raw = [a.normal() for _ in range(10)]
    shifted = [b.normal(2.0, 3.0) for _ in range(10)]
    assert np.allclose(shifted, [2.0 + 3.0 * z for z in raw])


def test_below_in_range_and_deterministic():
    s = RandomStream(12)
    draws = [s.below(7) for _ in range(100)]
    assert all(0 <= d < 7 for d in draws)
    assert draws == [RandomStream(12).below(7) for _ in [None]] + draws[1:]


def test_derive_seed_distinguishes_paths():
    root = 424242
    seeds = {
        derive_seed(root, "alg", 0),
        derive_seed(root, "alg", 1),
        derive_seed(root, "eval", 0),
        derive_seed(root, 0, "alg"),
        derive_seed(root + 1, "alg", 0),
    }
    assert len(seeds) == 5
    assert derive_seed(root, "alg", 0) == derive_seed(root, "alg", 0)


def test_spawn_matches_derive():
    s = RandomStream(77)
    child = s.spawn("x", 3)
    assert child.key == derive_seed(77, "x", 3)


def test_mix64_bijective_sample():
    xs = [0, 1, 2, 2**63, 2**64 - 1]
    assert len({mix64(x) for x in xs}) == len(xs)
