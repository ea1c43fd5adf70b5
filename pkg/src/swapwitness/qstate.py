"""Two-qubit pure and mixed states with exact entanglement quantities.

Conventions
-----------
- A pure state is stored by the four complex amplitudes named
  (alpha, gamma, delta, beta), attached to the computational basis as

      |Phi> = alpha|00> + gamma|10> + delta|01> + beta|11>.

- Matrices (density operators, partial transposes, unitaries) always use
  the computational basis ordered (|00>, |01>, |10>, |11>).
  ``PureTwoQubitState.to_vector`` / ``from_vector`` are the single
  authority for the mapping between the amplitude names and that basis
  order; no other code reorders amplitudes.
- Eigenvalues below ``RANK_EPS`` count as zero wherever a rank or
  positivity decision is made.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-12
RANK_EPS = 1e-10

BELL_KINDS = ("phi_plus", "phi_minus", "psi_plus", "psi_minus")
LOCAL_UNITARIES = ("U1", "U2", "U3", "U4")

_ID2 = np.eye(2, dtype=complex)
_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SZ = np.array([[1, 0], [0, -1]], dtype=complex)

# Pre-processing unitaries of the four-run protocol, as 4x4 matrices in
# the (|00>,|01>,|10>,|11>) basis (first qubit is the left kron factor).
_LOCAL_UNITARY_MATRICES = {
    "U1": np.kron(_ID2, _ID2),
    "U2": np.kron(_ID2, _SZ),
    "U3": np.kron(_ID2, _SX),
    "U4": np.kron(_SX, _SZ),
}

_SPIN_FLIP = np.kron(_SY, _SY)


@dataclass(frozen=True)
class PureTwoQubitState:
    """Normalized two-qubit pure state |Phi> = a|00> + g|10> + d|01> + b|11>."""

    alpha: complex
    gamma: complex
    delta: complex
    beta: complex

    def __post_init__(self):
        for name in ("alpha", "gamma", "delta", "beta"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if abs(self.norm() - 1.0) > NORM_TOL:
            raise ValueError(f"state not normalized: |norm - 1| = {abs(self.norm() - 1.0):.3e}")

    def norm(self) -> float:
        return float(np.sqrt(abs(self.alpha) ** 2 + abs(self.gamma) ** 2
                             + abs(self.delta) ** 2 + abs(self.beta) ** 2))

    def to_vector(self) -> np.ndarray:
        """Amplitudes in the basis order (|00>, |01>, |10>, |11>)."""
        return np.array([self.alpha, self.delta, self.gamma, self.beta], dtype=complex)

    @classmethod
    def from_vector(cls, vec, normalize: bool = False) -> "PureTwoQubitState":
        """Build from a length-4 vector ordered (|00>, |01>, |10>, |11>)."""
        v = np.asarray(vec, dtype=complex).reshape(4)
        if normalize:
            n = np.linalg.norm(v)
            if n == 0:
                raise ValueError("cannot normalize the zero vector")
            v = v / n
        return cls(alpha=v[0], gamma=v[2], delta=v[1], beta=v[3])

    def density(self) -> "DensityMatrix4":
        v = self.to_vector()
        return DensityMatrix4(np.outer(v, v.conj()))


@dataclass(frozen=True)
class DensityMatrix4:
    """4x4 density matrix in the (|00>,|01>,|10>,|11>) basis."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > NORM_TOL:
            raise ValueError("density matrix is not Hermitian within 1e-12")
        if abs(np.trace(m).real - 1.0) > NORM_TOL:
            raise ValueError("density matrix trace differs from 1 by more than 1e-12")
        if np.min(np.linalg.eigvalsh(m)) < -RANK_EPS:
            raise ValueError("density matrix has an eigenvalue below -1e-10")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_pure(cls, s: PureTwoQubitState) -> "DensityMatrix4":
        return s.density()

    @classmethod
    def maximally_mixed(cls) -> "DensityMatrix4":
        return cls(np.eye(4, dtype=complex) / 4.0)


@dataclass(frozen=True)
class WernerLikeState:
    """Mixture p|Phi><Phi| + (1-p)/4 * identity."""

    phi: PureTwoQubitState
    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"mixing weight p must lie in [0, 1], got {self.p}")

    def to_density(self) -> DensityMatrix4:
        v = self.phi.to_vector()
        m = self.p * np.outer(v, v.conj()) + (1.0 - self.p) / 4.0 * np.eye(4)
        return DensityMatrix4(m)


def bell_state(kind: str) -> PureTwoQubitState:
    """One of the four Bell states with the textbook signs.

    phi_plus/minus = (|00> +- |11>)/sqrt(2), psi_plus/minus = (|01> +- |10>)/sqrt(2).
    """
    s = 1.0 / np.sqrt(2.0)
    table = {
        "phi_plus": (s, 0.0, 0.0, s),
        "phi_minus": (s, 0.0, 0.0, -s),
        "psi_plus": (0.0, s, s, 0.0),
        "psi_minus": (0.0, s, -s, 0.0),
    }
    if kind not in table:
        raise ValueError(f"unknown Bell state {kind!r}; expected one of {BELL_KINDS}")
    a, g, d, b = table[kind]
    return PureTwoQubitState(alpha=a, gamma=g, delta=d, beta=b)


def concurrence_pure(s: PureTwoQubitState) -> float:
    """Concurrence 2|alpha*beta - gamma*delta| of a pure state."""
    return 2.0 * abs(s.alpha * s.beta - s.gamma * s.delta)


def concurrence_mixed(rho: DensityMatrix4) -> float:
    """Concurrence of a mixed state via the spin-flip eigenvalue formula.

    Exact for two qubits: max(0, l1 - l2 - l3 - l4) with l_i the decreasing
    square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy).
    Evaluated as the singular values of sqrt(rho) (sy x sy) conj(sqrt(rho)),
    which equals the same spectrum without squaring rounding noise.
    """
    m = rho.matrix
    evals, vecs = np.linalg.eigh(m)
    root = (vecs * np.sqrt(np.clip(evals, 0.0, None))) @ vecs.conj().T
    lam = np.linalg.svd(root @ _SPIN_FLIP @ root.conj(), compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def schmidt_rank(s: PureTwoQubitState) -> int:
    """Schmidt rank (1 = product state, 2 = entangled).

    Counts the strictly positive eigenvalues (1 +- sqrt(1 - C^2))/2 of the
    coefficient Gram matrix, with eigenvalues below RANK_EPS counted as zero.
    """
    c = concurrence_pure(s)
    lam_minus = (1.0 - np.sqrt(max(0.0, 1.0 - c * c))) / 2.0
    return 2 if lam_minus > RANK_EPS else 1


def partial_transpose(matrix: np.ndarray) -> np.ndarray:
    """Partial transpose over the second qubit, basis (|00>,|01>,|10>,|11>)."""
    m = np.asarray(matrix, dtype=complex).reshape(2, 2, 2, 2)
    return m.transpose(0, 3, 2, 1).reshape(4, 4)


def ppt_is_separable(rho: DensityMatrix4) -> bool:
    """PPT criterion; exact for two qubits."""
    eigs = np.linalg.eigvalsh(partial_transpose(rho.matrix))
    return bool(eigs.min() >= -RANK_EPS)


def random_pure_state(rng: np.random.Generator) -> PureTwoQubitState:
    """Haar-uniform pure state: four standard complex Gaussians, normalized."""
    z = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    return PureTwoQubitState.from_vector(z, normalize=True)


def apply_local_unitary(s: PureTwoQubitState, u: str) -> PureTwoQubitState:
    """Apply one of the pre-processing unitaries U1..U4 (see LOCAL_UNITARIES)."""
    if u not in _LOCAL_UNITARY_MATRICES:
        raise ValueError(f"unknown local unitary {u!r}; expected one of {LOCAL_UNITARIES}")
    return PureTwoQubitState.from_vector(_LOCAL_UNITARY_MATRICES[u] @ s.to_vector())
