import math

import numpy as np
import pytest

from parrondo.classical import (
    AlwaysA,
    AlwaysB,
    ClassicalGameParams,
    DegenerateChainError,
    Periodic,
    RandomMixture,
    SingularPotentialError,
    default_params,
    distribution_steps,
    losing_threshold,
    play_trajectory,
    propagate_distribution,
    ratchet_potential,
    stationary_drift,
)

DEFAULTS = default_params(0.01)


# --- losing threshold and stationary drift ----------------------------------

def test_losing_threshold_at_three_quarters_is_one_tenth():
    assert losing_threshold(0.75) == 0.1


def test_losing_threshold_frozen_value():
    assert abs(losing_threshold(0.74) - 0.10988296488946683) < 1e-15


def test_losing_threshold_rejects_out_of_range():
    with pytest.raises(ValueError):
        losing_threshold(1.5)


def test_stationary_drift_vanishes_at_the_threshold_point():
    assert abs(stationary_drift(ClassicalGameParams(0.5, 0.1, 0.75))) < 1e-12


def test_stationary_drift_frozen_value_with_default_bias():
    drift = stationary_drift(ClassicalGameParams(0.5, 0.09, 0.74))
    assert abs(drift - (-0.017384877771461114)) < 1e-12


@pytest.mark.parametrize("p0,p1", [(1.0, 0.0), (0.0, 1.0)])
def test_stationary_drift_rejects_reducible_chain(p0, p1):
    with pytest.raises(DegenerateChainError):
        stationary_drift(ClassicalGameParams(0.5, p0, p1))


@pytest.mark.parametrize("p0,p1", [(1.0, 1.0), (0.0, 0.0), (1.0, 0.5),
                                   (0.0, 0.5), (0.5, 0.0), (0.5, 1.0)])
def test_stationary_drift_handles_other_boundary_chains(p0, p1):
    # periodic but still irreducible chains have a unique stationary state
    stationary_drift(ClassicalGameParams(0.5, p0, p1))


def test_stationary_drift_agrees_with_power_iteration():
    # lazy-chain power iteration as an independent route to the
    # stationary state, plus the sign predicted by the threshold
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        p0, p1 = rng.uniform(0.05, 0.95, size=2)
        drift = stationary_drift(ClassicalGameParams(0.5, p0, p1))
        t = np.zeros((3, 3))
        for i, p in enumerate((p0, p1, p1)):
            t[i, (i + 1) % 3] = p
            t[i, (i - 1) % 3] = 1 - p
        lazy = 0.5 * (np.eye(3) + t)
        pi = np.full(3, 1 / 3)
        for _ in range(500):
            pi = pi @ lazy
        oracle = pi @ (2 * np.array([p0, p1, p1]) - 1)
        assert abs(drift - oracle) < 1e-8
        gap = p0 - losing_threshold(p1)
        if abs(gap) > 1e-6:
            assert np.sign(drift) == np.sign(gap)


# --- exact distribution propagation ------------------------------------------

def test_always_a_capital_and_moment_are_analytic():
    # i.i.d. steps of mean 2p - 1: c(n) = n (2p - 1),
    # v(n) = n (1 - (2p-1)^2) + c(n)^2
    s = propagate_distribution(DEFAULTS, AlwaysA(), 100)
    assert abs(s.expected_capital[100] - (-2.0)) < 1e-10
    assert abs(s.second_moment[100] - 103.96) < 1e-10


def test_schedule_capitals_match_frozen_values_at_100_steps():
    frozen = {
        "B": -2.263333619456863,
        "AABB": 0.4063820289789753,
        "random": 0.3185599551596582,
    }
    for name, schedule in (("B", AlwaysB()), ("AABB", Periodic("AABB")),
                           ("random", RandomMixture(0.5))):
        s = propagate_distribution(DEFAULTS, schedule, 100)
        assert abs(s.expected_capital[100] - frozen[name]) < 1e-10, name


def test_losing_strategies_combine_into_winning_mixtures():
    losing_a = propagate_distribution(DEFAULTS, AlwaysA(), 200)
    losing_b = propagate_distribution(DEFAULTS, AlwaysB(), 200)
    periodic = propagate_distribution(DEFAULTS, Periodic("AABB"), 200)
    mixed = propagate_distribution(DEFAULTS, RandomMixture(0.5), 200)
    assert losing_a.expected_capital[200] < 0
    assert losing_b.expected_capital[200] < 0
    assert periodic.expected_capital[200] > 0
    assert mixed.expected_capital[200] > 0


def test_distribution_is_normalized_and_light_cone_bounded():
    for dist in distribution_steps(DEFAULTS, RandomMixture(0.5), 30,
                                   initial_capital=2):
        assert abs(dist.probs.sum() - 1.0) < 1e-12
        xs = dist.xs
        outside = np.abs(xs - 2) > dist.step
        assert np.all(dist.probs[outside] == 0.0)


def test_distribution_parity_sites_are_exactly_empty():
    for dist in distribution_steps(DEFAULTS, Periodic("AB"), 15):
        odd = (dist.xs + dist.step) % 2 == 1
        assert np.all(dist.probs[odd] == 0.0)


def test_full_mixture_weight_reduces_to_pure_strategy():
    a = propagate_distribution(DEFAULTS, AlwaysA(), 40)
    m = propagate_distribution(DEFAULTS, RandomMixture(1.0), 40)
    np.testing.assert_array_equal(a.expected_capital, m.expected_capital)


def test_as_dict_drops_zero_entries():
    dists = list(distribution_steps(DEFAULTS, AlwaysB(), 2))
    d = dists[2].as_dict()
    assert set(d) == {-2, 0, 2}
    assert abs(sum(d.values()) - 1.0) < 1e-12


def test_distribution_steps_rejects_negative_steps():
    with pytest.raises(ValueError):
        list(distribution_steps(DEFAULTS, AlwaysA(), -1))


# --- schedules ----------------------------------------------------------------

def test_periodic_pattern_is_validated():
    with pytest.raises(ValueError):
        Periodic("")
    with pytest.raises(ValueError):
        Periodic("AXB")


def test_periodic_weight_follows_the_pattern():
    sched = Periodic("AAB")
    assert [sched.weight_a(n) for n in range(6)] == [1, 1, 0, 1, 1, 0]


def test_random_mixture_rejects_bad_probability():
    with pytest.raises(ValueError):
        RandomMixture(1.5)


def test_game_params_reject_out_of_range_probabilities():
    with pytest.raises(ValueError):
        ClassicalGameParams(1.2, 0.5, 0.5)


# --- sampled trajectories -------------------------------------------------------

def test_trajectory_is_deterministic_per_seed():
    a = play_trajectory(DEFAULTS, RandomMixture(0.5), 100, rng_seed=5)
    b = play_trajectory(DEFAULTS, RandomMixture(0.5), 100, rng_seed=5)
    c = play_trajectory(DEFAULTS, RandomMixture(0.5), 100, rng_seed=6)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)


def test_trajectory_moves_one_unit_per_step():
    path = play_trajectory(DEFAULTS, Periodic("AB"), 200, initial_capital=3,
                           rng_seed=1)
    assert path[0] == 3
    assert np.all(np.abs(np.diff(path)) == 1)


def test_always_a_fast_path_matches_sequential_draws():
    # Periodic("A") walks the slow branch but plays the same strategy
    fast = play_trajectory(DEFAULTS, AlwaysA(), 500, rng_seed=11)
    slow = play_trajectory(DEFAULTS, Periodic("A"), 500, rng_seed=11)
    np.testing.assert_array_equal(fast, slow)


def test_trajectory_ensemble_agrees_with_exact_mean():
    exact = propagate_distribution(DEFAULTS, AlwaysB(), 50)
    finals = np.array([play_trajectory(DEFAULTS, AlwaysB(), 50, rng_seed=s)[-1]
                       for s in range(2000)])
    se = finals.std(ddof=1) / np.sqrt(len(finals))
    assert abs(finals.mean() - exact.expected_capital[50]) < 4 * se


def test_trajectory_rejects_negative_steps():
    with pytest.raises(ValueError):
        play_trajectory(DEFAULTS, AlwaysA(), -1)


# --- ratchet potential -----------------------------------------------------------

def test_potential_of_a_fair_coin_is_flat():
    v = ratchet_potential({x: 0.5 for x in range(8)}, 7)
    assert all(val == 0.0 for val in v.values())


def test_potential_of_a_biased_coin_is_linear():
    p = 0.49
    v = ratchet_potential({x: p for x in range(6)}, 5)
    slope = -0.5 * math.log(p / (1 - p))
    for x in range(6):
        assert abs(v[x] - slope * x) < 1e-12


def test_conditioned_potential_is_periodic_at_the_fair_point():
    probs = {x: (0.1 if x % 3 == 0 else 0.75) for x in range(10)}
    v = ratchet_potential(probs, 9)
    assert v[0] == 0.0
    for x in (3, 6, 9):
        assert abs(v[x]) < 1e-12
    # within a period the potential actually moves (a ratchet tooth)
    assert abs(v[1]) > 0.4


def test_conditioned_potential_tilts_upward_off_the_fair_point():
    probs = {x: (0.09 if x % 3 == 0 else 0.74) for x in range(7)}
    v = ratchet_potential(probs, 6)
    assert v[3] > 0 and abs(v[6] - 2 * v[3]) < 1e-12


def test_potential_rejects_certain_outcomes():
    with pytest.raises(SingularPotentialError):
        ratchet_potential({0: 0.5, 1: 1.0, 2: 0.5}, 2)
    with pytest.raises(SingularPotentialError):
        ratchet_potential({0: 0.0}, 0)


def test_potential_rejects_negative_domain():
    with pytest.raises(ValueError):
        ratchet_potential({0: 0.5}, -1)
