import math

import numpy as np
import pytest

from tritwalk import (
    CoinProfile,
    Distribution,
    EdgeStateSpec,
    SweepPlan,
    WalkKind,
    WalkState,
    decay_ratio,
    domain_profile,
    edge_eigenphase,
    edge_state,
    initial_state,
    matched_interface_state,
    numeric_overlap_p0,
    overlap_p0,
    p_edge,
    run_sweep,
    stationarity_defect,
    step,
    truncation_deficit,
)

PI4 = math.pi / 4.0
SQ2 = math.sqrt(2.0)


# ------------------------------------------------------------------ edge_state


def test_edge_state_quarter_angle_amplitudes():
    spec = EdgeStateSpec(0.0, PI4, -PI4)
    state = edge_state(spec)
    assert abs(state.norm() - 1.0) < 1e-12
    pair0 = state.amplitude(0)
    # raw amplitudes a_0 = 1, b_0 = sqrt(2)-1, then 1/N overall with N^2 = 2*sqrt(2)
    n = math.sqrt(2.0 * SQ2)
    assert pair0[1] == pytest.approx(1.0 / n, abs=1e-12)
    assert pair0[0] == pytest.approx(1j * (SQ2 - 1.0) / n, abs=1e-12)
    # cross-check N^2 against the amplitude normalization constant
    assert abs(pair0[1]) ** 2 * 2.0 * SQ2 == pytest.approx(1.0, abs=1e-11)


def test_edge_state_pi_label_alternates_sign():
    even = edge_state(EdgeStateSpec(0.0, PI4, -PI4, window=20))
    odd = edge_state(EdgeStateSpec(math.pi, PI4, -PI4, window=20))
    for x in range(-6, 7):
        expected = even.amplitude(x) * (-1) ** x
        assert np.allclose(odd.amplitude(x), expected, atol=1e-12)


def test_edge_state_pair_is_orthonormal():
    even = edge_state(EdgeStateSpec(0.0, PI4, -PI4))
    odd = edge_state(EdgeStateSpec(math.pi, PI4, -PI4))
    assert abs(even.inner(odd)) < 1e-12
    assert abs(even.inner(even) - 1.0) < 1e-12


def test_edge_state_fully_localizes_at_max_angle():
    state = edge_state(EdgeStateSpec(0.0, math.pi / 2.0, -PI4))
    dist = state.distribution()
    assert sum(dist.prob(x) for x in range(1, 40)) == pytest.approx(0.0, abs=1e-15)


def test_edge_state_two_sided_exponential_decay():
    spec = EdgeStateSpec(0.0, 0.6, -0.5, window=40)
    state = edge_state(spec)
    xs_right = np.arange(1, 15)
    log_right = np.log([abs(state.amplitude(x)[1]) for x in xs_right])
    slope_r, _ = np.polyfit(xs_right, log_right, 1)
    resid_r = log_right - np.polyval([slope_r, log_right[0] - slope_r * xs_right[0]], xs_right)
    assert slope_r == pytest.approx(math.log(decay_ratio(0.6)), abs=1e-9)
    assert np.abs(resid_r).max() < 1e-9
    xs_left = np.arange(-15, 0)
    log_left = np.log([abs(state.amplitude(x)[1]) for x in xs_left])
    slope_l, _ = np.polyfit(xs_left, log_left, 1)
    assert slope_l == pytest.approx(math.log(decay_ratio(-0.5)), abs=1e-9)


def test_edge_state_rejects_bad_domains():
    with pytest.raises(ValueError, match="undefined at theta_plus = 0"):
        EdgeStateSpec(0.0, 0.0, -PI4)
    with pytest.raises(ValueError, match="theta_minus"):
        EdgeStateSpec(0.0, PI4, 0.3)
    with pytest.raises(ValueError, match="omega"):
        EdgeStateSpec(1.0, PI4, -PI4)


def test_edge_state_window_too_small_suggests_fix():
    with pytest.raises(ValueError, match="window 3 too small"):
        edge_state(EdgeStateSpec(0.0, 0.2, -0.2, window=3))


def test_truncation_deficit_matches_brute_force():
    spec = EdgeStateSpec(0.0, 0.5, -0.3)
    big = edge_state(EdgeStateSpec(0.0, 0.5, -0.3, window=120))
    # mass outside |x| <= w of the un-renormalized state, computed by summation
    dist = big.distribution()
    for w in (8, 12, 20):
        outside = sum(dist.prob(x) for x in dist.positions() if abs(x) > w)
        assert truncation_deficit(spec, w) == pytest.approx(outside, rel=1e-6)


def test_auto_window_keeps_tail_below_target():
    for tp, tm in [(0.2, -0.15), (PI4, -PI4), (1.4, -0.9)]:
        spec = EdgeStateSpec(0.0, tp, tm)
        state = edge_state(spec)
        w = (state.amps.shape[0] - 1) // 2
        assert truncation_deficit(spec, w) < 1e-12


# ---------------------------------------------------------------- stationarity


@pytest.mark.parametrize("omega", [0.0, math.pi])
def test_edge_states_are_stationary(omega):
    spec = EdgeStateSpec(omega, PI4, -PI4, window=30)
    assert stationarity_defect(spec) <= 1e-6


def test_eigenphases_differ_by_half_turn():
    even = edge_eigenphase(EdgeStateSpec(0.0, PI4, -PI4, window=30))
    odd = edge_eigenphase(EdgeStateSpec(math.pi, PI4, -PI4, window=30))
    diff = abs(abs(odd - even) - math.pi)
    assert diff < 1e-6


def test_asymmetric_domains_are_also_stationary():
    spec = EdgeStateSpec(0.0, 0.9, -0.35)
    assert stationarity_defect(spec) < 1e-9


def test_random_state_is_far_from_stationary():
    rng = np.random.default_rng(0)
    amps = rng.normal(size=(7, 2)) + 1j * rng.normal(size=(7, 2))
    amps /= np.linalg.norm(amps)
    state = WalkState(-3, amps)
    profile = domain_profile(-PI4, PI4)
    evolved = step(state, profile, WalkKind.BIDIRECTIONAL, 1)
    defect = 1.0 - abs(state.inner(evolved))
    assert defect > 1e-3


def test_domain_profile_doubles_the_half_angle():
    profile = domain_profile(-0.3, 0.8)
    assert profile.angle(-1) == pytest.approx(-0.6)
    assert profile.angle(0) == pytest.approx(1.6)


def test_undoubled_profile_is_not_stationary():
    # regression guard for the half-angle convention: feeding the domain
    # parameters straight into the engine profile loses stationarity
    state = edge_state(EdgeStateSpec(0.0, PI4, -PI4, window=30))
    wrong = CoinProfile.two_domain(-PI4, PI4)
    evolved = step(state, wrong, WalkKind.BIDIRECTIONAL, 1)
    assert 1.0 - abs(state.inner(evolved)) > 0.05


# --------------------------------------------------------------------- overlap


def test_overlap_closed_form_values():
    expected = {
        0.2: 0.109881065465,
        0.4: 0.314214876605,
        PI4: 0.686291501015,
        1.0: 0.835234686109,
        1.4: 0.985396805242,
    }
    for theta, value in expected.items():
        assert overlap_p0(theta) == pytest.approx(value, abs=1e-10)


def test_overlap_vanishes_at_zero():
    assert overlap_p0(0.0) == 0.0


def test_overlap_approaches_one_near_max_angle():
    assert overlap_p0(math.pi / 2.0 - 1e-6) == pytest.approx(1.0, abs=1e-5)


def test_overlap_rejects_angles_past_max():
    with pytest.raises(ValueError):
        overlap_p0(math.pi / 2.0)


def test_matched_state_at_quarter_angle_is_phi_ce():
    chi = matched_interface_state(PI4)
    ce = initial_state("phi_ce")
    assert np.allclose(chi.amps, ce.amps, atol=1e-15)


def test_numeric_overlap_matches_closed_form():
    for theta in (0.2, 0.4, PI4, 1.0, 1.4):
        assert numeric_overlap_p0(theta) == pytest.approx(
            overlap_p0(theta), abs=1e-9
        )


def test_validated_reading_documented_by_example():
    # with the fixed pi/4 interface state the raw projection weight onto the
    # edge pair is 2*(sqrt(2)-1); the closed form is its square, and the
    # matched-state reading reproduces it at every angle while the
    # fixed-state readings do not away from pi/4
    ce = initial_state("phi_ce")
    pair = [edge_state(EdgeStateSpec(w, PI4, -PI4)) for w in (0.0, math.pi)]
    projection = sum(abs(e.inner(ce)) ** 2 for e in pair)
    assert projection == pytest.approx(2.0 * (SQ2 - 1.0), abs=1e-11)
    assert projection**2 == pytest.approx(overlap_p0(PI4), abs=1e-10)
    pair_1 = [edge_state(EdgeStateSpec(w, 1.0, -1.0)) for w in (0.0, math.pi)]
    fixed_projection = sum(abs(e.inner(ce)) ** 2 for e in pair_1)
    assert abs(fixed_projection**2 - overlap_p0(1.0)) > 1e-3
    assert abs(fixed_projection - overlap_p0(1.0)) > 1e-3


# ---------------------------------------------------------------------- p_edge


def test_p_edge_point_mass():
    assert p_edge(Distribution(0, np.array([1.0]))) == 1.0


def test_p_edge_uniform_window_share():
    dist = Distribution(-2, np.full(5, 0.2))
    assert p_edge(dist) == pytest.approx(0.4)


def test_p_edge_eight_step_golden():
    profile = domain_profile(-PI4, PI4)
    state = initial_state("phi_ce")
    for tau in range(1, 9):
        state = step(state, profile, WalkKind.BIDIRECTIONAL, tau)
    assert p_edge(state.distribution()) == pytest.approx(0.667393803681, abs=1e-9)


# -------------------------------------------------------------------- sweeps


def test_sweep_interface_contrast():
    plan = SweepPlan(
        mode="fix-plus-vary-minus",
        grid=(-PI4, PI4),
        steps=(5,),
        fixed=PI4,
    )
    rows = run_sweep(plan)
    by_theta = {round(r.theta, 6): r.p_edge for r in rows}
    assert by_theta[round(-PI4, 6)] > by_theta[round(PI4, 6)]


def test_sweep_antisymmetric_is_increasing():
    plan = SweepPlan(mode="antisymmetric", grid=(0.1, PI4, 1.4), steps=(8,))
    rows = run_sweep(plan)
    values = [r.p_edge for r in rows]
    assert values[0] < values[1] < values[2]


def test_sweep_empty_grid_gives_empty_table():
    plan = SweepPlan(mode="antisymmetric", grid=(), steps=(5,))
    assert run_sweep(plan) == []


def test_sweep_rejects_non_monotone_grid():
    with pytest.raises(ValueError, match="strictly monotone"):
        SweepPlan(mode="antisymmetric", grid=(0.1, 0.5, 0.3), steps=(5,))


def test_sweep_rejects_non_positive_steps():
    with pytest.raises(ValueError, match="steps must be positive"):
        SweepPlan(mode="antisymmetric", grid=(0.1,), steps=(0,))


def test_sweep_rejects_unknown_mode():
    with pytest.raises(ValueError, match="unknown sweep mode"):
        SweepPlan(mode="vary-everything", grid=(0.1,), steps=(5,))


def test_parallel_sweep_matches_serial():
    plan = SweepPlan(mode="antisymmetric", grid=(0.2, 0.6, 1.0, 1.3), steps=(5, 8))
    serial = run_sweep(plan)
    parallel = run_sweep(plan, max_workers=4)
    assert serial == parallel


def test_sweep_rows_are_grid_ordered_with_ascending_steps():
    plan = SweepPlan(mode="antisymmetric", grid=(0.3, 0.9), steps=(8, 5))
    rows = run_sweep(plan)
    assert [(round(r.theta, 3), r.steps) for r in rows] == [
        (0.3, 5), (0.3, 8), (0.9, 5), (0.9, 8),
    ]


def test_mirrored_domains_give_mirrored_populations():
    # negating both half-angles is equivalent to reflecting about the bond
    # between sites -1 and 0 and swapping the coin roles; the interface
    # window maps to itself, so mirrored sweeps agree once the prepared
    # state is mirrored the same way
    r = SQ2 - 1.0
    norm = math.sqrt(4.0 - 2.0 * SQ2)
    mirrored_ce = WalkState(
        -1, np.array([[1.0, 1j * r]], dtype=complex) / norm
    )
    for theta in (0.3, 0.7, 1.1):
        for t in (5, 8):
            fwd = initial_state("phi_ce")
            mir = mirrored_ce
            prof_fwd = domain_profile(-theta, theta)
            prof_mir = domain_profile(theta, -theta)
            for tau in range(1, t + 1):
                fwd = step(fwd, prof_fwd, WalkKind.BIDIRECTIONAL, tau)
                mir = step(mir, prof_mir, WalkKind.BIDIRECTIONAL, tau)
            d_fwd = fwd.distribution()
            d_mir = mir.distribution()
            for x in range(-t - 1, t + 2):
                assert d_fwd.prob(x) == pytest.approx(
                    d_mir.prob(-1 - x), abs=1e-12
                )
