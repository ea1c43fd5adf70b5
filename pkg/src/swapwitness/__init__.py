"""SWAP-test entanglement witness for two-qubit states.

Ideal gate-level witness with a concurrence lower bound, an exact model
of the 8-waveguide photonic implementation with its noise model, and
brute-force plus Monte Carlo verification of every quantitative claim.
"""

__version__ = "0.1.0"

from .qstate import (BELL_KINDS, DensityMatrix4, PureTwoQubitState,
                     WernerLikeState, apply_local_unitary, bell_state,
                     concurrence_mixed, concurrence_pure, partial_transpose,
                     ppt_is_separable, random_pure_state, schmidt_rank)
from .witness import (RandomnessBound, WitnessVerdict, bound_f, bound_f_tilde,
                      effective_threshold, p1_mixed, p1_pure, randomness_bound,
                      threshold_shift, witness, witness_with_preprocessing)
from .photonic import (NoiseModel, PathState8, PhaseErrorDraw, PrepPhases,
                       ShotRecord, SwapStagePhases, estimate_p1,
                       estimate_p1_sampled, prepare_state, run_circuit,
                       sample_shots, solve_phases, swap_stage_unitary,
                       werner_run)

__all__ = [
    "BELL_KINDS", "DensityMatrix4", "PureTwoQubitState", "WernerLikeState",
    "apply_local_unitary", "bell_state", "concurrence_mixed",
    "concurrence_pure", "partial_transpose", "ppt_is_separable",
    "random_pure_state", "schmidt_rank",
    "RandomnessBound", "WitnessVerdict", "bound_f", "bound_f_tilde",
    "effective_threshold", "p1_mixed", "p1_pure", "randomness_bound",
    "threshold_shift", "witness", "witness_with_preprocessing",
    "NoiseModel", "PathState8", "PhaseErrorDraw", "PrepPhases", "ShotRecord",
    "SwapStagePhases", "estimate_p1", "estimate_p1_sampled", "prepare_state",
    "run_circuit", "sample_shots", "solve_phases", "swap_stage_unitary",
    "werner_run",
]
