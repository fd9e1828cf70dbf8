"""Entanglement detection for spin ensembles with half-integer total spin.

The package builds a collective sign-measurement witness from K equally
spaced transverse directions, provides exact detection bounds as rationals,
closed-form noise robustness, a classical (measure-and-prepare) baseline,
a see-saw certification of the separable bound over every bipartition, and
a counter-based Monte-Carlo measurement protocol with Wilson confidence
intervals.
"""

from .classical import ClassicalVector, classical_score, classical_sweep_max
from .linalg import (
    EigenDecomposition,
    assert_hermitian,
    binomial_exact,
    hermitian_eigendecompose,
    kron,
    partial_trace,
)
from .noise import (
    NoiseModel,
    apply_depolarizing,
    detection_thresholds,
    noisy_score_global,
    noisy_score_local,
)
from .protocol import (
    ProtocolConfig,
    ProtocolEstimate,
    rounds_needed,
    run_protocol,
    run_protocol_subensembles,
    time_schedule,
    wilson_interval,
)
from .seesaw import (
    Bipartition,
    SeeSawResult,
    conditioned_operator,
    enumerate_bipartitions,
    grid_certify,
    seesaw_maximize,
)
from .spin import (
    CollectiveOperator,
    SpinEnsemble,
    collective_operator,
    direction_operator,
    rotate_about_z,
    spin_matrices,
)
from .states import QuantumState, ghz_like, ghz_mixture, product_state, random_ket
from .witness import (
    GeneralizedWitness,
    WitnessOperator,
    WitnessReport,
    build_qk_closed_form,
    build_qk_direct,
    generalized_witness,
    phase_for_ghz,
    pos_operator,
    score,
    witness_report,
)

__version__ = "0.1.0"

__all__ = [
    "Bipartition",
    "ClassicalVector",
    "CollectiveOperator",
    "EigenDecomposition",
    "GeneralizedWitness",
    "NoiseModel",
    "ProtocolConfig",
    "ProtocolEstimate",
    "QuantumState",
    "SeeSawResult",
    "SpinEnsemble",
    "WitnessOperator",
    "WitnessReport",
    "apply_depolarizing",
    "assert_hermitian",
    "binomial_exact",
    "build_qk_closed_form",
    "build_qk_direct",
    "classical_score",
    "classical_sweep_max",
    "collective_operator",
    "conditioned_operator",
    "detection_thresholds",
    "direction_operator",
    "enumerate_bipartitions",
    "generalized_witness",
    "ghz_like",
    "ghz_mixture",
    "grid_certify",
    "hermitian_eigendecompose",
    "kron",
    "partial_trace",
    "phase_for_ghz",
    "pos_operator",
    "product_state",
    "random_ket",
    "rotate_about_z",
    "rounds_needed",
    "run_protocol",
    "run_protocol_subensembles",
    "score",
    "seesaw_maximize",
    "spin_matrices",
    "time_schedule",
    "wilson_interval",
    "witness_report",
    "__version__",
]
