"""Distance-based classification, three equivalent ways.

``classical_classify`` applies the kernel inference rule directly.
``quantum_exact_probabilities`` evaluates the closed-form outcome
distribution of the interference-based classifier for any training-set size
and feature dimension. For two training points with two features the
classifier reduces to a two-qubit circuit (``run_circuit_reference``) which
embeds into a four-node linear walk (``run_classifier_oqw``); all routes
produce the same class distribution.

Class labels are -1 and +1; the class register maps label -1 to ket |0> and
label +1 to ket |1>. A prediction of 0 denotes an exact tie.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chain import LinearChainSpec, build_linear_chain
from .quantum import NORM_ATOL, gate_cnot, gate_hadamard, gate_ry, kron
from .walk import EPS_POSTSELECT, OqwState, PostSelectionError, conditional_state, evolve

# Probability differences below this count as a tie.
TIE_TOL = 1e-12

# Threshold on the quarter-angle cosine below which the probability ratio is
# treated as singular.
SINGULAR_ATOL = 1e-9

TIE = 0


def _check_unit(x, name: str) -> np.ndarray:
    v = np.asarray(x, dtype=float).reshape(-1)
    if abs(np.linalg.norm(v) - 1.0) > NORM_ATOL:
        raise ValueError(f"{name} must have unit Euclidean norm")
    return v


def _sign_with_tie(value: float, tol: float = TIE_TOL) -> int:
    if abs(value) < tol:
        return TIE
    return 1 if value > 0 else -1


@dataclass(frozen=True)
class LabeledDataset:
    """Training set of unit feature vectors with labels in {-1, +1}."""

    vectors: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=float)
        y = np.asarray(self.labels, dtype=int)
        if v.ndim != 2 or v.shape[0] < 1:
            raise ValueError("vectors must form a nonempty (M, F) array")
        if y.shape != (v.shape[0],):
            raise ValueError("need one label per vector")
        if not np.all(np.isin(y, (-1, 1))):
            raise ValueError("labels must be -1 or +1")
        norms = np.linalg.norm(v, axis=1)
        if np.abs(norms - 1.0).max() > 1e-10:
            raise ValueError("all vectors must have unit Euclidean norm")
        object.__setattr__(self, "vectors", v)
        object.__setattr__(self, "labels", y)

    @property
    def num_points(self) -> int:
        return self.vectors.shape[0]


@dataclass(frozen=True)
class ClassifierOutcome:
    """Post-selected class distribution of one classification run.

    ``prediction`` is -1 or +1, or 0 for an exact tie. ``p_post_accept`` is
    the probability that the ancilla post-selection succeeds.
    """

    p_post_accept: float
    p_class_minus: float
    p_class_plus: float
    prediction: int


def kernel(x, x2, num_points: int) -> float:
    """Similarity ``1 - |x - x'|^2 / (4 M)`` of two unit vectors.

    Ranges over [1 - 1/M, 1]; the offset keeps the weighted kernel sum
    aligned with the interference-based outcome distribution.
    """
    if num_points < 1:
        raise ValueError("num_points must be at least 1")
    x = _check_unit(x, "x")
    x2 = _check_unit(x2, "x2")
    return 1.0 - float(((x - x2) ** 2).sum()) / (4.0 * num_points)


def classical_classify(dataset: LabeledDataset, x_test) -> int:
    """Sign of the label-weighted kernel sum; 0 on an exact tie."""
    x = _check_unit(x_test, "x_test")
    m = dataset.num_points
    total = sum(
        int(y) * kernel(v, x, m) for v, y in zip(dataset.vectors, dataset.labels)
    )
    return _sign_with_tie(total)


def quantum_exact_probabilities(dataset: LabeledDataset, x_test) -> tuple[float, float, float]:
    """Closed-form outcome of the interference classifier: ``(p_acc, p_minus, p_plus)``.

    ``p_acc`` is the ancilla post-selection probability
    ``sum_m |x + x_m|^2 / (4 M)``; the class probabilities are the relative
    post-selected weights of the two label groups. Works for any number of
    training points and any feature dimension; no state vector is built.
    """
    x = _check_unit(x_test, "x_test")
    if x.shape[0] != dataset.vectors.shape[1]:
        raise ValueError("x_test dimension does not match the dataset")
    weights = ((x[None, :] + dataset.vectors) ** 2).sum(axis=1)
    m = dataset.num_points
    p_acc = float(weights.sum()) / (4.0 * m)
    if p_acc <= EPS_POSTSELECT:
        raise PostSelectionError("x_test is antipodal to every training point")
    w_minus = float(weights[dataset.labels == -1].sum())
    w_plus = float(weights[dataset.labels == 1].sum())
    total = w_minus + w_plus
    return p_acc, w_minus / total, w_plus / total


def expectation_identity_check(dataset: LabeledDataset, x_test) -> tuple[float, float]:
    """Both sides of the agreement identity between the two inference rules.

    Returns the label-weighted kernel sum and ``p_acc * (p_plus - p_minus)``.
    The two coincide whenever the labels are balanced, which is what makes the
    classical and post-selected predictions agree.
    """
    x = _check_unit(x_test, "x_test")
    m = dataset.num_points
    lhs = sum(
        int(y) * kernel(v, x, m) for v, y in zip(dataset.vectors, dataset.labels)
    )
    p_acc, p_minus, p_plus = quantum_exact_probabilities(dataset, x)
    return float(lhs), p_acc * (p_plus - p_minus)


@dataclass(frozen=True)
class ClassifierInstance:
    """One two-point classification task with its derived circuit parameters.

    ``x0`` carries label -1 and ``x1`` label +1. The angles place the encoded
    points on the Bloch circle relative to ``x0``; ``t`` is the ratio of the
    two post-selected class probabilities and ``omega_prime`` the rotation
    angle of the reduced circuit reproducing it.
    """

    x0: np.ndarray
    x1: np.ndarray
    x_test: np.ndarray
    phi: float
    gamma: float
    t: float
    omega_prime: float

    @classmethod
    def from_triple(cls, x0, x1, x_test) -> "ClassifierInstance":
        x0 = _check_unit(x0, "x0")
        x1 = _check_unit(x1, "x1")
        x_test = _check_unit(x_test, "x_test")
        phi, gamma = angles_from_triple(x0, x1, x_test)
        t = ratio_t(gamma, phi)
        return cls(
            x0=x0,
            x1=x1,
            x_test=x_test,
            phi=phi,
            gamma=gamma,
            t=t,
            omega_prime=omega_prime_from_t(t),
        )


def angles_from_triple(x0, x1, x_test) -> tuple[float, float]:
    """Rotation angles encoding ``x1`` and ``x_test`` once ``x0`` is the reference.

    The frame is rotated so that ``x0`` encodes to ket |0>; the returned
    principal-branch angles lie in (-2 pi, 2 pi] and satisfy
    ``<x0|x1> = cos(phi/2)`` and ``<x0|x_test> = cos(gamma/2)``.
    """
    x0 = _check_unit(x0, "x0")
    x1 = _check_unit(x1, "x1")
    x_test = _check_unit(x_test, "x_test")
    if not (x0.shape == x1.shape == x_test.shape == (2,)):
        raise ValueError("angle extraction needs two-feature vectors")
    c, s = x0
    rot = np.array([[c, s], [-s, c]])
    v1 = rot @ x1
    vt = rot @ x_test
    phi = 2.0 * math.atan2(v1[1], v1[0])
    gamma = 2.0 * math.atan2(vt[1], vt[0])
    return phi, gamma


def ratio_t(gamma: float, phi: float) -> float:
    """Ratio of the post-selected class probabilities, ``P(-1) / P(+1)``."""
    denom = math.cos((gamma - phi) / 4.0)
    if abs(denom) <= SINGULAR_ATOL:
        raise ValueError("probability ratio is singular (test point antipodal to x1)")
    return (math.cos(gamma / 4.0) / denom) ** 2


def omega_prime_from_t(t: float) -> float:
    """Circuit rotation angle realizing class-probability ratio ``t``.

    Inverts ``(1 - sin(w/2))^2 / cos^2(w/2) = t`` on the principal branch;
    the result lies in (-pi, pi].
    """
    if t < 0:
        raise ValueError("ratio must be nonnegative")
    r = math.sqrt(t)
    return 4.0 * math.atan((1.0 - r) / (1.0 + r))


def tangent_half_angle_identity(x: float) -> tuple[float, float]:
    """Evaluate ``(1 - tan(x/2)) / (1 + tan(x/2))`` and ``(1 - sin x) / cos x``.

    The two expressions agree away from the poles of either side; the pair is
    returned for property testing.
    """
    tan_half = math.tan(x / 2.0)
    denom_lhs = 1.0 + tan_half
    cos_x = math.cos(x)
    if denom_lhs == 0.0 or cos_x == 0.0 or not math.isfinite(tan_half):
        raise ValueError(f"x={x} is at a pole")
    lhs = (1.0 - tan_half) / denom_lhs
    rhs = (1.0 - math.sin(x)) / cos_x
    if not (math.isfinite(lhs) and math.isfinite(rhs)):
        raise ValueError(f"x={x} is at a pole")
    return lhs, rhs


def build_classifier_unitaries(omega_prime: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The three two-qubit circuit layers for rotation angle ``omega_prime``.

    The leading qubit is the ancilla (Hadamard and control), the second the
    class register (counter-rotation, target, rotation).
    """
    h = gate_hadamard()
    return (
        kron(h, gate_ry(-omega_prime / 2.0)),
        gate_cnot(),
        kron(h, gate_ry(omega_prime / 2.0)),
    )


def _outcome_from_two_qubit_weights(w00: float, w01: float) -> ClassifierOutcome:
    p_acc = float(w00 + w01)
    if p_acc <= EPS_POSTSELECT:
        raise PostSelectionError("ancilla post-selection probability is zero")
    p_minus = float(w00) / p_acc
    p_plus = float(w01) / p_acc
    return ClassifierOutcome(
        p_post_accept=p_acc,
        p_class_minus=p_minus,
        p_class_plus=p_plus,
        prediction=_sign_with_tie(p_plus - p_minus),
    )


def run_circuit_reference(omega_prime: float) -> ClassifierOutcome:
    """Exact outcome of the reduced two-qubit circuit by direct state-vector math.

    Applies the three layers to |00>, post-selects the ancilla on |0> and
    reads the class register.
    """
    u1, u2, u3 = build_classifier_unitaries(omega_prime)
    psi = np.zeros(4, dtype=complex)
    psi[0] = 1.0
    psi = u3 @ (u2 @ (u1 @ psi))
    return _outcome_from_two_qubit_weights(abs(psi[0]) ** 2, abs(psi[1]) ** 2)


def run_classifier_oqw(omega_prime: float, omega: float, steps: int) -> ClassifierOutcome:
    """Outcome of the classifier embedded in a four-node linear walk.

    The walker starts as |00> on the first node and evolves for ``steps``
    steps; the result is read from the last node, post-selecting the ancilla
    on |0>. The class distribution is independent of ``omega`` and of the step
    count (once the last node is occupied, i.e. after three steps); those
    parameters only set how much probability accumulates at the last node.
    Accepts ``omega = 1``, where the walk is a one-way conveyor.
    """
    if not 0.0 < omega <= 1.0:
        raise ValueError(f"omega must lie in (0, 1], got {omega}")
    if steps < 1:
        raise ValueError("need at least one step")
    spec = LinearChainSpec(unitaries=build_classifier_unitaries(omega_prime), omega=omega)
    ops = build_linear_chain(spec)
    start = OqwState.from_pure(np.array([1, 0, 0, 0], dtype=complex), 0, spec.num_nodes)
    state = evolve(ops, start, steps)
    rho = conditional_state(state, spec.num_nodes - 1)
    return _outcome_from_two_qubit_weights(rho[0, 0].real, rho[1, 1].real)


def sample_outcome(
    outcome: ClassifierOutcome, shots: int, rng: np.random.Generator
) -> ClassifierOutcome:
    """Empirical outcome from ``shots`` simulated runs of the classifier.

    Each run accepts with probability ``p_post_accept``; accepted runs measure
    the class register. With zero accepted runs the result is an uninformative
    tie.
    """
    if shots < 1:
        raise ValueError("need at least one shot")
    accepted = int(rng.binomial(shots, outcome.p_post_accept))
    if accepted == 0:
        return ClassifierOutcome(0.0, 0.5, 0.5, TIE)
    plus = int(rng.binomial(accepted, outcome.p_class_plus))
    p_plus = plus / accepted
    p_minus = 1.0 - p_plus
    return ClassifierOutcome(
        p_post_accept=accepted / shots,
        p_class_minus=p_minus,
        p_class_plus=p_plus,
        prediction=_sign_with_tie(p_plus - p_minus),
    )
