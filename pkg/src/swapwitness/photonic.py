"""Exact statevector model of the 8-waveguide swap-test photonic circuit.

Encoding and stages
-------------------
A single photon in 8 waveguides encodes three qubits by the binary digits
of the waveguide index: waveguide w <-> |q1 q2 a> with w = 4*q1 + 2*q2 + a,
where (q1, q2) are the two data qubits and `a` is the auxiliary qubit.

The preparation stage is a triangular arrangement of three Mach-Zehnder
interferometers and six phase shifters acting on four waveguides; light
enters the second waveguide (state |01>).  Its output is routed onto the
even waveguides of the swap stage, which passively sets the auxiliary
qubit to |0>.  The swap stage is

    (1 x U_MMI) . PS3(theta_s) . CSWAP . (1 x U_MMI),

a layer of 2x2 couplers on pairs (0,1)(2,3)(4,5)(6,7), eight phase
shifters, and a crossing network that exchanges waveguides 3 and 5.

Because the couplers square to i*sigma_x rather than identity, the raw
outcome roles are exchanged: the *reported* P(1) is the total probability
on the even-numbered outputs, P(x) = N_{1-x} / (N_0 + N_1).

Noise model
-----------
Couplers deviate from 50:50 with power coefficients (t^2, r^2); every
phase shifter in both stages carries an additive Gaussian phase error.
The error spread `sigma` of `NoiseModel` is the standard deviation of the
*relative* phase error between any two shifters, so individual shifters
are drawn with standard deviation sigma/sqrt(2).  All couplers in one run
share one (t, r) value, and one `run_circuit` call is one noise draw.
Lossy couplers (t^2 + r^2 < 1) are renormalized to t^2 + r^2 = 1: every
output amplitude is homogeneous of degree two in (t, r), so uniform loss
rescales all outputs equally and leaves every reported probability
unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .qstate import PureTwoQubitState

SQRT1_2 = 1.0 / np.sqrt(2.0)

# Even waveguides carry the prepared two-qubit state (ancilla |0>):
# |00>|0> -> 0, |01>|0> -> 2, |10>|0> -> 4, |11>|0> -> 6.
EVEN_OUTPUTS = np.array([0, 2, 4, 6])
ODD_OUTPUTS = np.array([1, 3, 5, 7])


@dataclass(frozen=True)
class PrepPhases:
    """The twelve preparation-stage phases, as (arm 1, arm 2) pairs.

    theta* are MZI arm phases, phi* are the phase-shifter pairs that
    follow each MZI.  MZI 1 (theta1, phi1) acts on waveguides (1, 2),
    MZI 2 (theta21, phi21) on (0, 1) and MZI 3 (theta22, phi22) on (2, 3).
    """

    theta1: tuple[float, float]
    phi1: tuple[float, float]
    theta21: tuple[float, float]
    phi21: tuple[float, float]
    theta22: tuple[float, float]
    phi22: tuple[float, float]

    def __post_init__(self):
        for name in ("theta1", "phi1", "theta21", "phi21", "theta22", "phi22"):
            pair = tuple(float(x) for x in getattr(self, name))
            if len(pair) != 2 or not all(np.isfinite(pair)):
                raise ValueError(f"{name} must be a pair of finite angles")
            object.__setattr__(self, name, pair)

    def as_array(self) -> np.ndarray:
        """Flatten to the canonical 12-vector (theta1, phi1, theta21, phi21, theta22, phi22)."""
        return np.array(self.theta1 + self.phi1 + self.theta21 + self.phi21
                        + self.theta22 + self.phi22)

    @classmethod
    def from_array(cls, arr) -> "PrepPhases":
        a = np.asarray(arr, dtype=float).reshape(12)
        return cls(theta1=(a[0], a[1]), phi1=(a[2], a[3]),
                   theta21=(a[4], a[5]), phi21=(a[6], a[7]),
                   theta22=(a[8], a[9]), phi22=(a[10], a[11]))

    def perturbed(self, errors) -> "PrepPhases":
        return PrepPhases.from_array(self.as_array() + np.asarray(errors, dtype=float))


@dataclass(frozen=True)
class SwapStagePhases:
    """Nominal settings of the eight PS3 trim phase shifters."""

    theta_s: tuple[float, ...] = (0.0,) * 8

    def __post_init__(self):
        ts = tuple(float(x) for x in self.theta_s)
        if len(ts) != 8 or not all(np.isfinite(ts)):
            raise ValueError("theta_s must be eight finite angles")
        object.__setattr__(self, "theta_s", ts)

    def as_array(self) -> np.ndarray:
        return np.array(self.theta_s)


# PS3 setting that exchanges the even and odd outputs of every coupler
# pair, used by the four-detector readout.
OUTPUT_SWAP_PHASES = SwapStagePhases(theta_s=(np.pi, 0.0) * 4)


@dataclass(frozen=True)
class NoiseModel:
    """Coupler power coefficients and phase-error spread.

    `sigma` is the standard deviation (rad) of the relative phase error
    between any two shifters; each shifter is drawn at sigma/sqrt(2).
    (t2, r2) are renormalized to t2 + r2 = 1, which leaves all reported
    probabilities unchanged under the equal-loss assumption.
    """

    t2: float = 0.5
    r2: float = 0.5
    sigma: float = 0.0

    def __post_init__(self):
        t2, r2, sigma = float(self.t2), float(self.r2), float(self.sigma)
        if not (0.0 <= t2 <= 1.0 and 0.0 <= r2 <= 1.0):
            raise ValueError(f"t2 and r2 must lie in [0, 1], got ({t2}, {r2})")
        if t2 + r2 > 1.0 + 1e-9:
            raise ValueError(f"t2 + r2 must not exceed 1, got {t2 + r2}")
        if t2 + r2 <= 0.0:
            raise ValueError("t2 + r2 must be positive")
        if sigma < 0.0:
            raise ValueError("sigma must be non-negative")
        total = t2 + r2
        object.__setattr__(self, "t2", t2 / total)
        object.__setattr__(self, "r2", r2 / total)
        object.__setattr__(self, "sigma", sigma)

    @property
    def t(self) -> float:
        return float(np.sqrt(self.t2))

    @property
    def r(self) -> float:
        return float(np.sqrt(self.r2))

    @property
    def shifter_sigma(self) -> float:
        """Per-shifter standard deviation realizing relative errors of std sigma."""
        return self.sigma / np.sqrt(2.0)


@dataclass(frozen=True)
class PhaseErrorDraw:
    """One realization of the additive phase errors of a run."""

    prep: np.ndarray | None = None   # 12 preparation-stage errors
    ps3: np.ndarray | None = None    # 8 swap-stage errors

    def __post_init__(self):
        for name, size in (("prep", 12), ("ps3", 8)):
            v = getattr(self, name)
            if v is not None:
                v = np.asarray(v, dtype=float).reshape(size)
                object.__setattr__(self, name, v)

    @classmethod
    def sample(cls, nm: NoiseModel, rng: np.random.Generator) -> "PhaseErrorDraw":
        s = nm.shifter_sigma
        return cls(prep=rng.normal(0.0, s, 12), ps3=rng.normal(0.0, s, 8))


@dataclass(frozen=True)
class PathState8:
    """Complex amplitudes over the eight output waveguides."""

    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex).reshape(8)
        object.__setattr__(self, "amplitudes", a)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True)
class ShotRecord:
    """Photon counts per output waveguide; n0/n1 group even/odd outputs."""

    counts: np.ndarray
    n0: int = field(init=False)
    n1: int = field(init=False)

    def __post_init__(self):
        c = np.asarray(self.counts, dtype=np.int64).reshape(8)
        if np.any(c < 0):
            raise ValueError("counts must be non-negative")
        object.__setattr__(self, "counts", c)
        object.__setattr__(self, "n0", int(c[EVEN_OUTPUTS].sum()))
        object.__setattr__(self, "n1", int(c[ODD_OUTPUTS].sum()))


# --------------------------------------------------------------------------
# preparation stage

def mzi_matrix(theta: tuple[float, float]) -> np.ndarray:
    """2x2 MZI with arm phases theta = (theta(1), theta(2))."""
    half_sum = (theta[0] + theta[1]) / 2.0
    half_diff = (theta[0] - theta[1]) / 2.0
    return 1j * np.exp(1j * half_sum) * np.array(
        [[np.sin(half_diff), np.cos(half_diff)],
         [np.cos(half_diff), -np.sin(half_diff)]])


def ps_matrix(phi: tuple[float, float]) -> np.ndarray:
    return np.diag([np.exp(1j * phi[0]), np.exp(1j * phi[1])]).astype(complex)


def _embed4(block: np.ndarray, first_row: int) -> np.ndarray:
    m = np.eye(4, dtype=complex)
    m[first_row:first_row + 2, first_row:first_row + 2] = block
    return m


def prep_stage_unitary(ph: PrepPhases) -> np.ndarray:
    """4x4 unitary of the preparation stage (the literal matrix product)."""
    rot1 = ps_matrix(ph.phi1) @ mzi_matrix(ph.theta1)
    rot21 = ps_matrix(ph.phi21) @ mzi_matrix(ph.theta21)
    rot22 = ps_matrix(ph.phi22) @ mzi_matrix(ph.theta22)
    return _embed4(rot22, 2) @ _embed4(rot21, 0) @ _embed4(rot1, 1)


def _prep_amplitudes(phases: np.ndarray) -> np.ndarray:
    """Closed-form prepared amplitudes, basis order (|00>,|01>,|10>,|11>).

    Equals prep_stage_unitary @ |01> up to the dropped global phase
    -exp(i*(theta1(1)+theta1(2))/2).  Vectorized: `phases` may be (12,) or
    (n, 12); returns (4,) or (n, 4).
    """
    p = np.asarray(phases, dtype=float)
    t1a, t1b, f1a, f1b = p[..., 0], p[..., 1], p[..., 2], p[..., 3]
    t21a, t21b, f21a, f21b = p[..., 4], p[..., 5], p[..., 6], p[..., 7]
    t22a, t22b, f22a, f22b = p[..., 8], p[..., 9], p[..., 10], p[..., 11]
    dt1 = (t1a - t1b) / 2.0
    dt21 = (t21a - t21b) / 2.0
    dt22 = (t22a - t22b) / 2.0
    s21 = (t21a + t21b) / 2.0
    s22 = (t22a + t22b) / 2.0
    upper = np.exp(1j * (s21 + f1a)) * np.sin(dt1)
    lower = np.exp(1j * (s22 + f1b)) * np.cos(dt1)
    a00 = upper * np.exp(1j * f21a) * np.cos(dt21)
    a01 = -upper * np.exp(1j * f21b) * np.sin(dt21)
    a10 = lower * np.exp(1j * f22a) * np.sin(dt22)
    a11 = lower * np.exp(1j * f22b) * np.cos(dt22)
    return np.stack([a00, a01, a10, a11], axis=-1)


def prepare_state(ph: PrepPhases) -> PureTwoQubitState:
    """Two-qubit state produced by the preparation stage (global phase dropped)."""
    return PureTwoQubitState.from_vector(_prep_amplitudes(ph.as_array()))


_DEGENERATE_EPS = 1e-15


def solve_phases(target: PureTwoQubitState) -> PrepPhases:
    """Preparation phases reproducing `target` up to a global phase.

    Closed-form inversion of prepare_state.  The free gauge is pinned
    deterministically: MZI arm pairs are (d, -d), phi1 = (0, 0), and any
    phase shifter whose amplitude vanishes is set to 0.
    """
    v = target.to_vector()   # (a00, a01, a10, a11)
    m1 = np.sqrt(abs(v[0]) ** 2 + abs(v[1]) ** 2)
    dt1 = np.arcsin(min(1.0, m1))

    if m1 > _DEGENERATE_EPS:
        dt21 = np.arctan2(abs(v[1]), abs(v[0]))
        f21a = float(np.angle(v[0])) if abs(v[0]) > _DEGENERATE_EPS else 0.0
        f21b = float(np.angle(-v[1])) if abs(v[1]) > _DEGENERATE_EPS else 0.0
    else:
        dt21, f21a, f21b = 0.0, 0.0, 0.0

    if m1 < 1.0 - _DEGENERATE_EPS:
        dt22 = np.arctan2(abs(v[2]), abs(v[3]))
        f22a = float(np.angle(v[2])) if abs(v[2]) > _DEGENERATE_EPS else 0.0
        f22b = float(np.angle(v[3])) if abs(v[3]) > _DEGENERATE_EPS else 0.0
    else:
        dt22, f22a, f22b = 0.0, 0.0, 0.0

    return PrepPhases(theta1=(dt1, -dt1), phi1=(0.0, 0.0),
                      theta21=(dt21, -dt21), phi21=(f21a, f21b),
                      theta22=(dt22, -dt22), phi22=(f22a, f22b))


def separable_prep_overlap(ph: PrepPhases) -> float:
    """|<psi|xi>|^2 of the two factors of a separable preparation.

    Requires the separability condition dtheta22 = dtheta21 - pi/2 and
    phi21 = phi22 (relative phases modulo 2*pi).
    """
    dt21 = (ph.theta21[0] - ph.theta21[1]) / 2.0
    dt22 = (ph.theta22[0] - ph.theta22[1]) / 2.0
    mism = (dt22 - (dt21 - np.pi / 2.0) + np.pi) % (2.0 * np.pi) - np.pi
    dphi_mism = ((ph.phi21[0] - ph.phi21[1]) - (ph.phi22[0] - ph.phi22[1])
                 + np.pi) % (2.0 * np.pi) - np.pi
    if abs(mism) > 1e-9 or abs(dphi_mism) > 1e-9:
        raise ValueError("phases do not satisfy the separability condition")
    dt1 = (ph.theta1[0] - ph.theta1[1]) / 2.0
    dt2 = dt22
    dphi1 = ph.phi1[0] - ph.phi1[1]
    dphi2 = ph.phi22[0] - ph.phi22[1]
    s21 = (ph.theta21[0] + ph.theta21[1]) / 2.0
    s22 = (ph.theta22[0] + ph.theta22[1]) / 2.0
    # relative phase between the |1> coefficients of the two factors
    x = dphi1 - dphi2 - (s22 - s21) + np.pi
    return float(np.cos(dt1 - dt2) ** 2 * np.cos(x / 2.0) ** 2
                 + np.cos(dt1 + dt2) ** 2 * np.sin(x / 2.0) ** 2)


# --------------------------------------------------------------------------
# swap stage

def mmi_layer(t: float = SQRT1_2, r: float = SQRT1_2) -> np.ndarray:
    """Block-diagonal layer of 2x2 couplers [[t, ir], [ir, t]] on pairs."""
    block = np.array([[t, 1j * r], [1j * r, t]])
    m = np.zeros((8, 8), dtype=complex)
    for k in range(0, 8, 2):
        m[k:k + 2, k:k + 2] = block
    return m


def cswap_matrix() -> np.ndarray:
    """Crossing network exchanging waveguides 3 (|011>) and 5 (|101>)."""
    m = np.eye(8, dtype=complex)
    m[[3, 5]] = m[[5, 3]]
    return m


def ps3_matrix(theta_s) -> np.ndarray:
    return np.diag(np.exp(1j * np.asarray(theta_s, dtype=float))).astype(complex)


def swap_stage_unitary(sp: SwapStagePhases | None = None,
                       nm: NoiseModel | None = None,
                       ps3_errors=None) -> np.ndarray:
    """8x8 matrix (1 x U_MMI) . PS3 . CSWAP . (1 x U_MMI).

    Unitary in the ideal case; with `nm` the couplers use (t, r) and the
    PS3 phases are shifted by `ps3_errors`.
    """
    theta = (sp or SwapStagePhases()).as_array()
    if ps3_errors is not None:
        theta = theta + np.asarray(ps3_errors, dtype=float).reshape(8)
    if nm is None:
        mmi = mmi_layer()
    else:
        mmi = mmi_layer(nm.t, nm.r)
    return mmi @ ps3_matrix(theta) @ cswap_matrix() @ mmi


def embed_even(state: PureTwoQubitState) -> PathState8:
    """Route the prepared state onto the even waveguides (ancilla |0>)."""
    v8 = np.zeros(8, dtype=complex)
    v8[EVEN_OUTPUTS] = state.to_vector()
    return PathState8(v8)


def run_circuit(ph: PrepPhases,
                sp: SwapStagePhases | None = None,
                nm: NoiseModel | None = None,
                rng: np.random.Generator | None = None,
                draws: PhaseErrorDraw | None = None) -> PathState8:
    """One run of the full circuit; with `nm`, one call is one noise draw."""
    if nm is None:
        state = prepare_state(ph)
        unitary = swap_stage_unitary(sp)
    else:
        if draws is None:
            if rng is None:
                raise ValueError("rng is required when a noise model is given")
            draws = PhaseErrorDraw.sample(nm, rng)
        state = prepare_state(ph.perturbed(draws.prep))
        unitary = swap_stage_unitary(sp, nm, draws.ps3)
    return PathState8(unitary @ embed_even(state).amplitudes)


# --------------------------------------------------------------------------
# readout

def estimate_p1(out: PathState8 | ShotRecord) -> float:
    """Reported P(1) with the output relabeling P(x) = N_{1-x}/(N0+N1).

    Exact mode sums the even-output probabilities (normalized, so uniform
    loss cancels); shot mode uses n0/(n0+n1).
    """
    if isinstance(out, ShotRecord):
        total = out.n0 + out.n1
        if total == 0:
            raise ValueError("cannot estimate P(1) from zero total counts")
        return out.n0 / total
    probs = out.probabilities()
    total = probs.sum()
    if total <= 0.0:
        raise ValueError("cannot estimate P(1) from a zero state")
    return float(probs[EVEN_OUTPUTS].sum() / total)


def sample_shots(out: PathState8, shots: int, rng: np.random.Generator) -> ShotRecord:
    """Multinomial photon counting over the eight output probabilities."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    probs = out.probabilities()
    probs = probs / probs.sum()
    return ShotRecord(rng.multinomial(shots, probs))


def estimate_p1_sampled(ph: PrepPhases, shots: int, rng: np.random.Generator,
                        sp: SwapStagePhases | None = None,
                        nm: NoiseModel | None = None,
                        four_detector: bool = False) -> float:
    """Finite-shot P(1) estimate from one run (or two in four-detector mode).

    The four-detector readout samples only the even outputs and repeats
    the run with the PS3 output-swapping configuration to collect what
    the odd detectors would have seen.
    """
    if not four_detector:
        rec = sample_shots(run_circuit(ph, sp, nm, rng), shots, rng)
        return estimate_p1(rec)
    base = (sp or SwapStagePhases()).as_array()
    swapped = SwapStagePhases(tuple(base + OUTPUT_SWAP_PHASES.as_array()))
    n_even = sample_shots(run_circuit(ph, sp, nm, rng), shots, rng).n0
    n_even_swapped = sample_shots(run_circuit(ph, swapped, nm, rng), shots, rng).n0
    total = n_even + n_even_swapped
    if total == 0:
        raise ValueError("cannot estimate P(1) from zero total counts")
    return n_even / total


def noisy_p1_closed_form(s: PureTwoQubitState, nm: NoiseModel, deltas) -> float:
    """Reported P(1) with swap-stage noise only, from the analytic output rows.

    `deltas` are the eight PS3 phase errors; the preparation is exact and
    the nominal trim phases are zero.
    """
    d = np.asarray(deltas, dtype=float).reshape(8)
    e = np.exp(1j * d)
    t2, r2 = nm.t2, nm.r2
    return float(abs(s.alpha) ** 2 * abs(t2 * e[0] - r2 * e[1]) ** 2
                 + abs(s.beta) ** 2 * abs(t2 * e[6] - r2 * e[7]) ** 2
                 + abs(s.delta * t2 * e[2] - s.gamma * r2 * e[3]) ** 2
                 + abs(s.gamma * t2 * e[4] - s.delta * r2 * e[5]) ** 2)


# --------------------------------------------------------------------------
# vectorized noisy-run engine

def batch_output_probs(prep_phases: np.ndarray, t, r,
                       ps3_phases: np.ndarray) -> np.ndarray:
    """Output probabilities for a batch of runs, shape (n, 8).

    `prep_phases` is (n, 12) with the PrepPhases canonical order,
    `ps3_phases` is (n, 8) total PS3 phases (nominal plus errors), and
    t, r are scalars or (n,) coupler amplitude coefficients.  Matches the
    matrix route of run_circuit row by row.
    """
    amps = _prep_amplitudes(prep_phases)       # (n, 4): a00, a01, a10, a11
    t = np.asarray(t, dtype=float)
    r = np.asarray(r, dtype=float)
    t2, r2, tr = t * t, r * r, t * r
    e = np.exp(1j * np.asarray(ps3_phases, dtype=float))
    a00, a01, a10, a11 = amps[..., 0], amps[..., 1], amps[..., 2], amps[..., 3]
    rows = np.stack([
        a00 * (t2 * e[..., 0] - r2 * e[..., 1]),
        1j * tr * a00 * (e[..., 0] + e[..., 1]),
        a01 * t2 * e[..., 2] - a10 * r2 * e[..., 3],
        1j * tr * (a01 * e[..., 2] + a10 * e[..., 3]),
        a10 * t2 * e[..., 4] - a01 * r2 * e[..., 5],
        1j * tr * (a10 * e[..., 4] + a01 * e[..., 5]),
        a11 * (t2 * e[..., 6] - r2 * e[..., 7]),
        1j * tr * a11 * (e[..., 6] + e[..., 7]),
    ], axis=-1)
    return np.abs(rows) ** 2


def batch_p1(prep_phases: np.ndarray, t, r, ps3_phases: np.ndarray) -> np.ndarray:
    """Reported P(1) per run of a batch (normalized even-output mass)."""
    probs = batch_output_probs(prep_phases, t, r, ps3_phases)
    return probs[..., EVEN_OUTPUTS].sum(axis=-1) / probs.sum(axis=-1)


def _noisy_p1_draws(nominal: np.ndarray, n: int, nm: NoiseModel,
                    rng: np.random.Generator) -> np.ndarray:
    """n reported-P(1) values for one nominal setting, fresh errors per run."""
    s = nm.shifter_sigma
    prep = nominal[None, :] + rng.normal(0.0, s, (n, 12))
    ps3 = rng.normal(0.0, s, (n, 8))
    return batch_p1(prep, nm.t, nm.r, ps3)


# --------------------------------------------------------------------------
# Werner-like mixed-state runs

WERNER_STRATEGIES = ("real_time", "post_processing")

_BASIS_STATES = (
    PureTwoQubitState(1, 0, 0, 0),   # |00>
    PureTwoQubitState(0, 0, 1, 0),   # |01>
    PureTwoQubitState(0, 1, 0, 0),   # |10>
    PureTwoQubitState(0, 0, 0, 1),   # |11>
)


def _outcome_bits(nominal: np.ndarray, n: int, nm: NoiseModel | None,
                  rng: np.random.Generator) -> np.ndarray:
    """n single-shot relabeled outcomes (1 = even output) for one setting."""
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    if nm is None:
        p1 = float(batch_p1(nominal, SQRT1_2, SQRT1_2, np.zeros(8)))
        return (rng.random(n) < p1).astype(np.int64)
    return (rng.random(n) < _noisy_p1_draws(nominal, n, nm, rng)).astype(np.int64)


def werner_run(phi: PureTwoQubitState, p: float, strategy: str, shots: int,
               nm: NoiseModel | None = None,
               rng: np.random.Generator | None = None) -> float:
    """Estimate P(1) of the Werner-like mixture p|phi><phi| + (1-p)/4 * 1.

    real_time: every shot first draws one of {phi, |00>, |01>, |10>, |11>}
    with weights {p, (1-p)/4 x4} and programs the preparation for it.
    post_processing: collects a pool of `shots` outcomes per pure state at
    fixed settings, then resamples outcomes from the pools with the same
    multinomial weights.
    """
    if strategy not in WERNER_STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {WERNER_STRATEGIES}")
    if not 0.0 <= p <= 1.0:
        raise ValueError("mixing weight p must lie in [0, 1]")
    if shots < 1:
        raise ValueError("shots must be >= 1")
    if rng is None:
        raise ValueError("werner_run requires an rng")
    settings = [solve_phases(s).as_array() for s in (phi,) + _BASIS_STATES]
    weights = np.array([p] + [(1.0 - p) / 4.0] * 4)

    if strategy == "real_time":
        per_state = rng.multinomial(shots, weights)
        ones = sum(int(_outcome_bits(settings[i], int(per_state[i]), nm, rng).sum())
                   for i in range(5))
        return ones / shots

    pools = [_outcome_bits(settings[i], shots, nm, rng) for i in range(5)]
    per_state = rng.multinomial(shots, weights)
    ones = 0
    for i in range(5):
        k = int(per_state[i])
        if k:
            ones += int(pools[i][rng.integers(0, shots, size=k)].sum())
    return ones / shots
