"""Brute-force optimization oracles against the analytic claims."""

import numpy as np
import pytest

from swapwitness.oracle import (EPSILON_GRID, guessing_probability_bruteforce,
                                noisy_separable_p1, verify_guessing_probability,
                                verify_min_concurrence,
                                verify_noisy_separable_max,
                                verify_separable_max, verify_werner_max)
from swapwitness.photonic import NoiseModel, noisy_p1_closed_form
from swapwitness.qstate import bell_state, PureTwoQubitState
from swapwitness.witness import effective_threshold

HARDWARE = NoiseModel(0.48, 0.52, 0.1)


def test_separable_max_is_half():
    report = verify_separable_max("max")
    assert report.found_value == pytest.approx(0.5, abs=1e-6)
    # the sharp point (alpha,beta,gamma,delta) = (1,-1,1,-1)/2 attains it:
    # product angles a = b = pi/4, phase difference pi between the factors
    state = PureTwoQubitState(0.5, 0.5, -0.5, -0.5)
    assert 0.5 * abs(state.gamma - state.delta) ** 2 == pytest.approx(0.5, abs=1e-15)


def test_separable_min_is_zero():
    report = verify_separable_max("min")
    assert report.found_value == pytest.approx(0.0, abs=1e-6)
    state = PureTwoQubitState(0.5, 0.5, 0.5, 0.5)
    assert 0.5 * abs(state.gamma - state.delta) ** 2 == pytest.approx(0.0, abs=1e-15)


def test_separable_max_rejects_bad_mode():
    with pytest.raises(ValueError):
        verify_separable_max("sideways")


def test_min_concurrence_matches_epsilon():
    for eps in (1.0, 0.5, 1e-3):
        report = verify_min_concurrence(eps)
        assert report.found_value == pytest.approx(eps, abs=1e-6)
    with pytest.raises(ValueError):
        verify_min_concurrence(0.0)
    with pytest.raises(ValueError):
        verify_min_concurrence(1.5)


def test_min_concurrence_monotone_in_epsilon():
    values = [verify_min_concurrence(float(eps)).found_value for eps in EPSILON_GRID]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_werner_maxima():
    report = verify_werner_max("separable_p1")
    assert report.found_value == pytest.approx(0.5, abs=1e-6)
    report = verify_werner_max("reduced_real")
    assert report.found_value == pytest.approx(1.0, abs=1e-6)
    with pytest.raises(ValueError):
        verify_werner_max("imaginary")


def test_werner_minimum_is_trivial():
    # p = 1 with (alpha,beta,gamma,delta) = (1,1,1,1)/2 gives P(1) = 0
    gamma_minus_delta = 0.5 - 0.5
    assert 0.25 + 1.0 / 2.0 * (abs(gamma_minus_delta) ** 2 - 0.5) == 0.0


def test_noisy_separable_max_hits_shifted_threshold():
    report = verify_noisy_separable_max(HARDWARE)
    assert report.found_value == pytest.approx(effective_threshold(HARDWARE), abs=1e-6)
    assert report.found_value == pytest.approx((1 + 0.004) / 2, abs=1e-4)
    worst = NoiseModel(0.44, 0.56, 0.1)
    report = verify_noisy_separable_max(worst)
    assert report.found_value == pytest.approx(0.5085, abs=5e-4)
    ideal = verify_noisy_separable_max(NoiseModel(0.5, 0.5, 0.0))
    assert ideal.found_value == pytest.approx(0.5, abs=1e-9)


def test_noisy_objective_cross_checks_photonic_closed_form():
    # the oracle's inline objective and the photonic closed form are written
    # independently; they must agree on random product states
    rng = np.random.default_rng(3)
    for _ in range(500):
        a, b = rng.uniform(0, np.pi / 2, 2)
        pa, pb = rng.uniform(0, 2 * np.pi, 2)
        d43, d65 = rng.uniform(-HARDWARE.sigma, HARDWARE.sigma, 2)
        psi = pb - pa
        value = noisy_separable_p1((a, b, psi, d43, d65), HARDWARE)
        vec = np.array([np.cos(a) * np.cos(b),
                        np.cos(a) * np.sin(b) * np.exp(1j * pb),
                        np.sin(a) * np.cos(b) * np.exp(1j * pa),
                        np.sin(a) * np.sin(b) * np.exp(1j * (pa + pb))])
        state = PureTwoQubitState.from_vector(vec)
        # delta21 = delta87 = sigma in the oracle's reduced objective
        deltas = np.array([0.0, HARDWARE.sigma, 0.0, d43, 0.0, d65, 0.0, HARDWARE.sigma])
        assert value == pytest.approx(noisy_p1_closed_form(state, HARDWARE, deltas),
                                      abs=1e-12)


def test_guessing_probability_trivial_states():
    assert guessing_probability_bruteforce(bell_state("psi_minus").to_vector()) == pytest.approx(0.5, abs=1e-9)
    assert guessing_probability_bruteforce(np.array([1, 0, 0, 0], dtype=complex)) == pytest.approx(1.0, abs=1e-9)


def test_guessing_probability_matches_schmidt_angle():
    rng = np.random.default_rng(4)
    report = verify_guessing_probability(300, rng)
    assert report.found_value < 1e-4


def test_refinement_never_loses_the_grid_optimum():
    # found value is at least as good as any coarse grid evaluation
    report = verify_separable_max("max")
    rng = np.random.default_rng(5)
    a, b = rng.uniform(0, np.pi / 2, (2, 1000))
    pa, pb = rng.uniform(0, 2 * np.pi, (2, 1000))
    gamma = np.sin(a) * np.cos(b) * np.exp(1j * pa)
    delta = np.cos(a) * np.sin(b) * np.exp(1j * pb)
    samples = 0.5 * np.abs(gamma - delta) ** 2
    assert report.found_value >= samples.max() - 1e-9
