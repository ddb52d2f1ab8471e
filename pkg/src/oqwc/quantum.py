"""Dense complex linear algebra, standard gates, and quantum-channel primitives.

Matrices are plain ``numpy`` arrays of complex128. Every dimension in this
package stays small (at most 16), so all storage is dense and all operations
eager.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

# Channel/state tolerances. Comfortably above double-precision accumulation
# error for the dimensions used here.
TOL_CPTP = 1e-10
TOL_HERM = 1e-10
TOL_PSD = 1e-9
TOL_TRACE = 1e-10

# Looser admission tolerance for caller-supplied "normalized" inputs.
NORM_ATOL = 1e-8


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a square complex matrix with finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def matmul(a, b) -> np.ndarray:
    """Matrix product of two square matrices of equal dimension."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return a @ b


def dagger(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T


def kron(a, b) -> np.ndarray:
    """Kronecker product; the first factor indexes the slow (leading) subsystem."""
    return np.kron(as_matrix(a), as_matrix(b))


def gate_identity(dim: int) -> np.ndarray:
    if dim < 1:
        raise ValueError("dimension must be positive")
    return np.eye(dim, dtype=complex)


def gate_hadamard() -> np.ndarray:
    return np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)


def gate_ry(angle: float) -> np.ndarray:
    """Rotation about the y axis: ``gate_ry(a) @ |0> = cos(a/2)|0> + sin(a/2)|1>``."""
    c, s = np.cos(angle / 2.0), np.sin(angle / 2.0)
    return np.array([[c, -s], [s, c]], dtype=complex)


def gate_cnot() -> np.ndarray:
    """Controlled-NOT with the leading qubit as control."""
    return np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    )


def is_hermitian(a, tol: float = TOL_HERM) -> bool:
    a = as_matrix(a)
    return bool(np.abs(a - a.conj().T).max() <= tol)


def is_unitary(u, tol: float = 1e-12) -> bool:
    u = as_matrix(u)
    return bool(np.abs(u.conj().T @ u - np.eye(u.shape[0])).max() <= tol)


def min_eigenvalue(a) -> float:
    """Smallest eigenvalue of the Hermitized matrix (a + a^dag)/2."""
    a = as_matrix(a)
    return float(np.linalg.eigvalsh((a + a.conj().T) / 2.0).min())


def check_density_block(
    rho,
    tol_herm: float = TOL_HERM,
    tol_psd: float = TOL_PSD,
    tol_trace: float = TOL_TRACE,
) -> np.ndarray:
    """Validate an (unnormalized) density block and return it coerced.

    A density block must be Hermitian, positive semidefinite, and have a trace
    in [0, 1]; its trace may be strictly below one because blocks carry
    unnormalized post-selection weight.
    """
    rho = as_matrix(rho)
    if not is_hermitian(rho, tol_herm):
        raise ValueError("density block is not Hermitian")
    if min_eigenvalue(rho) < -tol_psd:
        raise ValueError("density block is not positive semidefinite")
    tr = rho.trace()
    if abs(tr.imag) > tol_trace or not -tol_trace <= tr.real <= 1.0 + tol_trace:
        raise ValueError(f"density block trace {tr} outside [0, 1]")
    return rho


def check_kraus_completeness(operators: Sequence[np.ndarray], tol: float = TOL_CPTP) -> bool:
    """True iff ``sum_i K_i^dag K_i`` equals the identity within ``tol`` (max norm)."""
    if len(operators) == 0:
        raise ValueError("empty Kraus set")
    ops = [as_matrix(k) for k in operators]
    dim = ops[0].shape[0]
    if any(k.shape[0] != dim for k in ops):
        raise ValueError("Kraus operators must share one dimension")
    acc = sum(k.conj().T @ k for k in ops)
    return bool(np.abs(acc - np.eye(dim)).max() <= tol)


def apply_channel(operators: Sequence[np.ndarray], rho) -> np.ndarray:
    """Apply the channel ``rho -> sum_i K_i rho K_i^dag`` defined by a Kraus set."""
    if not check_kraus_completeness(operators):
        raise ValueError("Kraus set is not complete (channel would not preserve trace)")
    rho = as_matrix(rho)
    dim = as_matrix(operators[0]).shape[0]
    if rho.shape[0] != dim:
        raise ValueError(f"dimension mismatch: state {rho.shape[0]}, operators {dim}")
    out = np.zeros_like(rho)
    for k in operators:
        k = as_matrix(k)
        out += k @ rho @ k.conj().T
    return out


def fidelity_pure(rho, psi) -> float:
    """Overlap ``<psi|rho|psi>`` of a normalized state with a unit vector."""
    rho = as_matrix(rho)
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.shape[0] != rho.shape[0]:
        raise ValueError("state-vector dimension does not match the density matrix")
    if abs(rho.trace().real - 1.0) > NORM_ATOL:
        raise ValueError("density matrix is not normalized")
    if abs(np.linalg.norm(psi) - 1.0) > NORM_ATOL:
        raise ValueError("state vector is not normalized")
    return float(np.real(psi.conj() @ rho @ psi))
