"""Witness operations: P(1), thresholds, concurrence bounds, randomness."""

import numpy as np
import pytest
from scipy.optimize import minimize

from swapwitness.oracle import guessing_probability_bruteforce
from swapwitness.photonic import NoiseModel
from swapwitness.qstate import (DensityMatrix4, PureTwoQubitState,
                                WernerLikeState, bell_state, concurrence_mixed,
                                concurrence_pure, random_pure_state,
                                schmidt_rank)
from swapwitness.witness import (bound_f, bound_f_tilde, effective_threshold,
                                 p1_mixed, p1_pure, randomness_bound,
                                 threshold_shift, witness,
                                 witness_with_preprocessing)

HARDWARE = NoiseModel(t2=0.48, r2=0.52, sigma=0.1)
WORST_CASE = NoiseModel(t2=0.44, r2=0.56, sigma=0.1)
S2 = 1.0 / np.sqrt(2.0)


def test_p1_pure_bell_states():
    assert p1_pure(bell_state("psi_minus")) == pytest.approx(1.0, abs=1e-12)
    for kind in ("phi_plus", "phi_minus", "psi_plus"):
        assert p1_pure(bell_state(kind)) == pytest.approx(0.0, abs=1e-12)


def test_p1_pure_omega_family():
    omega = np.pi / 2
    s = PureTwoQubitState(0.0, S2 * np.exp(1j * omega), S2, 0.0)
    assert p1_pure(s) == pytest.approx(0.5, abs=1e-12)


def test_p1_mixed_matches_pure():
    rng = np.random.default_rng(2)
    for _ in range(200):
        s = random_pure_state(rng)
        assert p1_mixed(s.density()) == pytest.approx(p1_pure(s), abs=1e-12)


def test_p1_mixed_werner_lines():
    psim = bell_state("psi_minus")
    phip = bell_state("phi_plus")
    for p in np.linspace(0.0, 1.0, 11):
        rho = WernerLikeState(psim, float(p)).to_density()
        assert p1_mixed(rho) == pytest.approx(0.75 * p + 0.25, abs=1e-12)
        rho = WernerLikeState(phip, float(p)).to_density()
        assert p1_mixed(rho) == pytest.approx((1.0 - p) / 4.0, abs=1e-12)


def test_p1_mixed_is_affine():
    rng = np.random.default_rng(9)
    for _ in range(50):
        r1 = random_pure_state(rng).density()
        r2 = random_pure_state(rng).density()
        lam = rng.uniform()
        mix = DensityMatrix4(lam * r1.matrix + (1 - lam) * r2.matrix)
        expected = lam * p1_mixed(r1) + (1 - lam) * p1_mixed(r2)
        assert p1_mixed(mix) == pytest.approx(expected, abs=1e-12)


def test_bound_f_values():
    assert bound_f(0.5) == 0.0
    assert bound_f(1.0) == pytest.approx(1.0, abs=1e-15)
    assert bound_f(0.75) == pytest.approx(0.5, abs=1e-15)
    assert bound_f(0.2) == 0.0


def test_bound_f_is_convex():
    xs = np.linspace(0.0, 1.0, 21)
    for lam in np.linspace(0.0, 1.0, 11):
        for x in xs:
            for y in xs:
                left = bound_f(lam * x + (1 - lam) * y)
                right = lam * bound_f(x) + (1 - lam) * bound_f(y)
                assert left <= right + 1e-12


def test_threshold_shift_values():
    assert threshold_shift(HARDWARE) == pytest.approx(0.004, abs=5e-4)
    assert threshold_shift(HARDWARE) == pytest.approx(0.004093920693209574, abs=1e-15)
    assert threshold_shift(WORST_CASE) == pytest.approx(0.017, abs=5e-4)
    assert effective_threshold(WORST_CASE) == pytest.approx(0.5085, abs=5e-4)
    assert threshold_shift(NoiseModel(0.5, 0.5, 0.0)) == pytest.approx(0.0, abs=1e-15)


def test_threshold_shift_rejects_bad_coefficients():
    with pytest.raises(ValueError):
        NoiseModel(t2=1.2, r2=-0.2, sigma=0.1)


def test_bound_f_tilde_reduces_to_ideal():
    ideal = NoiseModel(0.5, 0.5, 0.0)
    for x in np.arange(0.0, 1.0 + 1e-9, 1e-3):
        assert bound_f_tilde(float(x), ideal) == pytest.approx(bound_f(float(x)), abs=1e-12)


def test_bound_f_tilde_worst_case_values():
    # exact threshold (1+c)/2 = 0.50843...; the paper's quoted 0.5085 is a
    # rounding of it, so f-tilde there is positive but below 1.5e-4
    assert bound_f_tilde(effective_threshold(WORST_CASE), WORST_CASE) == 0.0
    assert 0.0 <= bound_f_tilde(0.5085, WORST_CASE) < 1.5e-4
    assert bound_f_tilde(0.6, WORST_CASE) == pytest.approx(0.1862790807003713, abs=1e-12)


def test_bound_f_tilde_respected_by_noisy_states():
    # brute-force: minimize concurrence over states and clamped errors whose
    # noisy P(1) is 0.6; the bound must sit at or below the found minimum
    nm = WORST_CASE
    target = 0.6
    sigma = nm.sigma

    def noisy_p1(x):
        re = x[:4]
        im = np.array([0.0, x[4], x[5], x[6]])
        amps = re + 1j * im
        amps = amps / np.linalg.norm(amps)
        a, g, d, b = amps
        d43, d65 = sigma * np.sin(x[7]), sigma * np.sin(x[8])
        mid1 = abs(d * nm.t2 - g * nm.r2 * np.exp(1j * d43)) ** 2
        mid2 = abs(g * nm.t2 - d * nm.r2 * np.exp(1j * d65)) ** 2
        c = nm.t2 ** 2 + nm.r2 ** 2 - 2 * nm.t2 * nm.r2 * np.cos(sigma)
        return (abs(a) ** 2 + abs(b) ** 2) * c + mid1 + mid2

    def conc(x):
        re = x[:4]
        im = np.array([0.0, x[4], x[5], x[6]])
        amps = re + 1j * im
        amps = amps / np.linalg.norm(amps)
        a, g, d, b = amps
        return 2.0 * abs(a * b - g * d)

    rng = np.random.default_rng(31)
    best = np.inf
    for _ in range(25):
        x0 = rng.standard_normal(9)
        res = minimize(conc, x0, method="SLSQP",
                       constraints=[{"type": "eq",
                                     "fun": lambda x: noisy_p1(x) - target}],
                       options={"maxiter": 500, "ftol": 1e-12})
        if res.success and abs(noisy_p1(res.x) - target) < 1e-7:
            best = min(best, conc(res.x))
    assert np.isfinite(best)
    # valid (never above the achievable minimum) and tight at this P(1)
    assert bound_f_tilde(target, nm) <= best + 1e-6
    assert bound_f_tilde(target, nm) == pytest.approx(best, abs=1e-6)


def test_witness_verdicts():
    v = witness(1.0)
    assert v.entangled and v.concurrence_lower_bound == pytest.approx(1.0, abs=1e-12)
    v = witness(0.5)
    assert not v.entangled and v.concurrence_lower_bound == 0.0
    v = witness(0.505, threshold=0.5085)
    assert not v.entangled and v.concurrence_lower_bound == 0.0
    with pytest.raises(ValueError):
        witness(1.2)


def test_witness_with_preprocessing_bell_states():
    for kind in ("phi_plus", "phi_minus", "psi_plus", "psi_minus"):
        v = witness_with_preprocessing(bell_state(kind), p1_pure)
        assert v.entangled
        assert v.p1 == pytest.approx(1.0, abs=1e-12)
    v = witness_with_preprocessing(PureTwoQubitState(1, 0, 0, 0), p1_pure)
    assert not v.entangled


def test_witness_with_preprocessing_detection_rate():
    rng = np.random.default_rng(17)
    hits = sum(witness_with_preprocessing(random_pure_state(rng), p1_pure).entangled
               for _ in range(100_000))
    assert hits / 100_000 == pytest.approx(0.5, abs=0.01)


def test_preprocessing_never_flags_separable_states():
    rng = np.random.default_rng(19)
    for _ in range(20_000):
        q1 = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        q2 = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        vec = np.kron(q1 / np.linalg.norm(q1), q2 / np.linalg.norm(q2))
        s = PureTwoQubitState.from_vector(vec)
        assert not witness_with_preprocessing(s, p1_pure).entangled


def test_theorem1_soundness_and_theorem2_bound():
    rng = np.random.default_rng(13)
    n = 200_000
    z = rng.standard_normal((n, 4)) + 1j * rng.standard_normal((n, 4))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    p1 = 0.5 * np.abs(z[:, 2] - z[:, 1]) ** 2
    conc = 2.0 * np.abs(z[:, 0] * z[:, 3] - z[:, 1] * z[:, 2])
    assert np.all(conc >= np.maximum(0.0, 2.0 * p1 - 1.0) - 1e-10)
    flagged = p1 > 0.5
    # every flagged state must be entangled (Schmidt rank 2)
    assert np.all(conc[flagged] > 1e-8)


def test_theorem2_bound_mixed_states():
    rng = np.random.default_rng(29)
    for _ in range(2000):
        k = rng.integers(1, 5)
        weights = rng.dirichlet(np.ones(k))
        m = np.zeros((4, 4), dtype=complex)
        for w in weights:
            v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            v /= np.linalg.norm(v)
            m += w * np.outer(v, v.conj())
        rho = DensityMatrix4(m)
        assert concurrence_mixed(rho) >= bound_f(p1_mixed(rho)) - 1e-10


def test_flagged_states_have_schmidt_rank_two():
    rng = np.random.default_rng(37)
    found = 0
    while found < 200:
        s = random_pure_state(rng)
        if p1_pure(s) > 0.5:
            assert schmidt_rank(s) == 2
            found += 1


def test_randomness_bound_values():
    rb = randomness_bound(1.0)
    assert rb.guessing_probability_upper == pytest.approx(0.5, abs=1e-12)
    assert rb.min_entropy_lower == pytest.approx(1.0, abs=1e-12)
    rb = randomness_bound(0.4)
    assert rb.guessing_probability_upper == 1.0
    assert rb.min_entropy_lower == 0.0
    rb = randomness_bound(0.9)
    assert rb.guessing_probability_upper == pytest.approx(0.8, abs=1e-12)
    assert rb.min_entropy_lower == pytest.approx(0.3219280948873623, abs=1e-12)
    assert rb.min_entropy_lower == pytest.approx(-np.log2(rb.guessing_probability_upper), abs=1e-12)


def test_randomness_bound_dominates_bruteforce_guessing():
    rng = np.random.default_rng(41)
    checked = 0
    while checked < 40:
        s = random_pure_state(rng)
        p1 = p1_pure(s)
        if p1 <= 0.5:
            continue
        g = guessing_probability_bruteforce(s.to_vector())
        assert g <= randomness_bound(p1).guessing_probability_upper + 1e-9
        checked += 1
