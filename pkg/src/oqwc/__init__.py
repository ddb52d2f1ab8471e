"""Dissipative-walk simulation and distance-based classification.

The package simulates walks on finite graphs whose node transitions are
driven entirely by labeled-edge Kraus families, provides the closed-form
analytics of the linear chain (stationary law, step estimates, expected
repetitions), and implements a binary distance-based classifier that the
chain executes dissipatively. A scikit-learn facade and a CLI harness sit on
top.
"""

from .chain import (
    LinearChainSpec,
    build_linear_chain,
    expected_repetitions,
    is_absorbing,
    iterations_estimate,
    steady_state,
    transition_matrix,
)
from .classifier import (
    TIE,
    ClassifierInstance,
    ClassifierOutcome,
    LabeledDataset,
    angles_from_triple,
    build_classifier_unitaries,
    classical_classify,
    expectation_identity_check,
    kernel,
    omega_prime_from_t,
    quantum_exact_probabilities,
    ratio_t,
    run_circuit_reference,
    run_classifier_oqw,
    sample_outcome,
    tangent_half_angle_identity,
)
from .datasets import (
    DataError,
    PreparedDataset,
    RawDataset,
    Triple,
    bundled_data_path,
    load_csv,
    load_prepared,
    sample_triples,
    standardize,
    standardize_normalize,
)
from .estimators import QuantumDistanceClassifier, StandardizeNormalize
from .quantum import (
    apply_channel,
    check_density_block,
    check_kraus_completeness,
    dagger,
    fidelity_pure,
    gate_cnot,
    gate_hadamard,
    gate_identity,
    gate_ry,
    kron,
    matmul,
)
from .walk import (
    OqwState,
    PostSelectionError,
    TransitionOperatorSet,
    conditional_state,
    evolve,
    node_distribution,
    oqw_step,
    steps_to_convergence,
    total_variation,
)

__version__ = "0.1.0"

__all__ = [
    "ClassifierInstance",
    "ClassifierOutcome",
    "DataError",
    "LabeledDataset",
    "LinearChainSpec",
    "OqwState",
    "PostSelectionError",
    "PreparedDataset",
    "QuantumDistanceClassifier",
    "RawDataset",
    "StandardizeNormalize",
    "TIE",
    "TransitionOperatorSet",
    "Triple",
    "angles_from_triple",
    "apply_channel",
    "build_classifier_unitaries",
    "build_linear_chain",
    "bundled_data_path",
    "check_density_block",
    "check_kraus_completeness",
    "classical_classify",
    "conditional_state",
    "dagger",
    "evolve",
    "expectation_identity_check",
    "expected_repetitions",
    "fidelity_pure",
    "gate_cnot",
    "gate_hadamard",
    "gate_identity",
    "gate_ry",
    "is_absorbing",
    "iterations_estimate",
    "kernel",
    "kron",
    "load_csv",
    "load_prepared",
    "matmul",
    "node_distribution",
    "omega_prime_from_t",
    "oqw_step",
    "quantum_exact_probabilities",
    "ratio_t",
    "run_circuit_reference",
    "run_classifier_oqw",
    "sample_outcome",
    "sample_triples",
    "standardize",
    "standardize_normalize",
    "steady_state",
    "steps_to_convergence",
    "tangent_half_angle_identity",
    "total_variation",
    "transition_matrix",
]
