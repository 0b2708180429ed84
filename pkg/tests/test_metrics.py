import math

import numpy as np
import pytest

from tritwalk import (
    CoinProfile,
    Distribution,
    WalkKind,
    diffusion_distance,
    evolve,
    initial_state,
    series,
    similarity,
)

from oracles import classical_stay_right_converted, fit_power_law


def dist_from(mapping, step=0):
    lo = min(mapping)
    hi = max(mapping)
    probs = np.zeros(hi - lo + 1)
    for x, p in mapping.items():
        probs[x - lo] = p
    return Distribution(lo, probs, step=step)


# ---------------------------------------------------------- diffusion distance


def test_diffusion_of_point_mass_is_zero():
    assert diffusion_distance(dist_from({0: 1.0})) == 0.0


def test_diffusion_of_symmetric_pair():
    assert diffusion_distance(dist_from({-1: 0.5, 1: 0.5})) == pytest.approx(1.0)


def test_diffusion_of_half_step():
    d = diffusion_distance(dist_from({0: 0.5, 1: 0.5}))
    assert d == pytest.approx(math.sqrt(0.5), abs=1e-12)


def test_diffusion_rejects_subnormalized_input():
    with pytest.raises(ValueError, match="sub-normalized"):
        diffusion_distance(dist_from({0: 0.9}))


def test_diffusion_is_reflection_invariant():
    rng = np.random.default_rng(2)
    probs = rng.random(9)
    probs /= probs.sum()
    fwd = Distribution(-4, probs)
    rev = Distribution(-4, probs[::-1])
    assert diffusion_distance(fwd) == pytest.approx(
        diffusion_distance(rev), abs=1e-12
    )


# ------------------------------------------------------------------ similarity


def test_similarity_of_identical_distributions_is_one():
    rng = np.random.default_rng(4)
    probs = rng.random(7)
    probs /= probs.sum()
    d = Distribution(-3, probs)
    assert similarity(d, d) == pytest.approx(1.0, abs=1e-12)


def test_similarity_of_disjoint_supports_is_zero():
    a = dist_from({0: 1.0})
    b = dist_from({5: 1.0})
    assert similarity(a, b) == 0.0


def test_similarity_half_overlap():
    a = dist_from({0: 1.0})
    b = dist_from({0: 0.5, 1: 0.5})
    assert similarity(a, b) == pytest.approx(0.5, abs=1e-12)


def test_similarity_is_symmetric():
    rng = np.random.default_rng(6)
    pa = rng.random(5)
    pa /= pa.sum()
    pb = rng.random(8)
    pb /= pb.sum()
    a = Distribution(-2, pa)
    b = Distribution(-4, pb)
    assert similarity(a, b) == pytest.approx(similarity(b, a), abs=1e-14)


def test_similarity_translation_invariant():
    rng = np.random.default_rng(8)
    pa = rng.random(5)
    pa /= pa.sum()
    pb = rng.random(5)
    pb /= pb.sum()
    base = similarity(Distribution(0, pa), Distribution(0, pb))
    shifted = similarity(Distribution(37, pa), Distribution(37, pb))
    assert shifted == pytest.approx(base, abs=1e-14)


def test_similarity_below_one_iff_different():
    a = dist_from({0: 0.6, 1: 0.4})
    b = dist_from({0: 0.4, 1: 0.6})
    assert similarity(a, b) < 1.0


def test_similarity_continuity_under_small_perturbation():
    probs = np.full(5, 0.2)
    delta = 1e-6
    perturbed = probs.copy()
    perturbed[0] += delta
    perturbed[1] -= delta
    sim = similarity(Distribution(0, probs), Distribution(0, perturbed))
    assert 1.0 - sim < 10.0 * delta


# ---------------------------------------------------------------------- series


def test_series_identity_coin_walk_is_linear():
    dists = evolve(
        initial_state([(0, 0.0, 1.0)]),
        CoinProfile.homogeneous(0.0),
        WalkKind.UNIDIRECTIONAL,
        6,
    )
    rows = series(dists, diffusion_distance)
    for t, value in rows:
        assert value == pytest.approx(float(t), abs=1e-12)


def test_series_classical_control_has_square_root_exponent():
    ts = [4, 8, 16, 32, 64]
    ys = []
    for t in ts:
        ys.append(diffusion_distance(dist_from(classical_stay_right_converted(t))))
        assert ys[-1] == pytest.approx(math.sqrt(t), abs=1e-9)
    assert fit_power_law(ts, ys) == pytest.approx(0.5, abs=1e-9)


def test_series_rejects_non_increasing_steps():
    a = dist_from({0: 1.0}, step=2)
    b = dist_from({0: 1.0}, step=2)
    with pytest.raises(ValueError, match="strictly increasing"):
        series([a, b], diffusion_distance)
