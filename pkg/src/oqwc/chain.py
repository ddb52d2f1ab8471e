"""Linear-chain walks and their classical birth-death analytics.

A chain on ``N`` nodes applies circuit layer ``U_i`` on each rightward hop
``i -> i+1`` (probability ``omega``) and undoes it on the leftward hop
(probability ``1 - omega``); the endpoints carry matching self-loops. Because
every edge operator is proportional to a unitary, node occupation follows a
classical tridiagonal Markov chain whose stationary law has a closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quantum import as_matrix, dagger, gate_identity, is_unitary
from .walk import TransitionOperatorSet

UNITARY_ATOL = 1e-10

# Slack when turning the real-valued step estimate into an integer, so that
# values like 10.000000000000002 round to 10 rather than 11.
_CEIL_SLACK = 1e-9


@dataclass(frozen=True)
class LinearChainSpec:
    """Layer unitaries ``[U_0, ..., U_{N-2}]`` plus the rightward hop probability."""

    unitaries: tuple[np.ndarray, ...]
    omega: float

    def __post_init__(self):
        if len(self.unitaries) < 1:
            raise ValueError("need at least one unitary (two nodes)")
        if not 0.0 <= self.omega <= 1.0:
            raise ValueError(f"omega must lie in [0, 1], got {self.omega}")
        coerced = []
        dim = None
        for k, u in enumerate(self.unitaries):
            m = as_matrix(u)
            if dim is None:
                dim = m.shape[0]
            elif m.shape[0] != dim:
                raise ValueError("unitaries must share one dimension")
            if not is_unitary(m, UNITARY_ATOL):
                raise ValueError(f"layer {k} is not unitary")
            coerced.append(m)
        object.__setattr__(self, "unitaries", tuple(coerced))

    @property
    def lam(self) -> float:
        """Leftward/stay probability, always the exact complement of omega."""
        return 1.0 - self.omega

    @property
    def num_nodes(self) -> int:
        return len(self.unitaries) + 1

    @property
    def internal_dim(self) -> int:
        return self.unitaries[0].shape[0]


def build_linear_chain(spec: LinearChainSpec) -> TransitionOperatorSet:
    """Edge operators of the chain; zero-probability edges are omitted."""
    n = spec.num_nodes
    eye = gate_identity(spec.internal_dim)
    sqrt_om = math.sqrt(spec.omega)
    sqrt_lam = math.sqrt(spec.lam)
    ops: dict[tuple[int, int], np.ndarray] = {}
    if spec.lam > 0.0:
        ops[(0, 0)] = sqrt_lam * eye
        for i, u in enumerate(spec.unitaries):
            ops[(i + 1, i)] = sqrt_lam * dagger(u)
    if spec.omega > 0.0:
        for i, u in enumerate(spec.unitaries):
            ops[(i, i + 1)] = sqrt_om * u
        ops[(n - 1, n - 1)] = sqrt_om * eye
    return TransitionOperatorSet(num_nodes=n, internal_dim=spec.internal_dim, ops=ops)


def _check_chain_args(num_nodes: int, omega: float) -> None:
    if num_nodes < 2:
        raise ValueError("need at least two nodes")
    if not 0.0 <= omega <= 1.0:
        raise ValueError(f"omega must lie in [0, 1], got {omega}")


def transition_matrix(num_nodes: int, omega: float) -> np.ndarray:
    """Column-stochastic transition matrix of the induced node-occupation chain."""
    _check_chain_args(num_nodes, omega)
    lam = 1.0 - omega
    t = np.zeros((num_nodes, num_nodes))
    t[0, 0] = lam
    t[num_nodes - 1, num_nodes - 1] = omega
    for i in range(num_nodes - 1):
        t[i + 1, i] = omega
        t[i, i + 1] = lam
    return t


def is_absorbing(omega: float) -> bool:
    """True when the chain is a one-way conveyor (omega 0 or 1) and the
    stationary law degenerates to a point mass."""
    return omega <= 0.0 or omega >= 1.0


def steady_state(num_nodes: int, omega: float) -> np.ndarray:
    """Stationary node distribution of the chain.

    For ``0 < omega < 1`` the law is geometric in the hop ratio
    ``a = omega / (1 - omega)``, proportional to ``a^m``; at ``omega = 1/2``
    this reduces exactly to the uniform distribution. The absorbing endpoints
    (``omega`` 0 or 1, see ``is_absorbing``) yield the point mass at the first
    or last node.
    """
    _check_chain_args(num_nodes, omega)
    point = np.zeros(num_nodes)
    if omega <= 0.0:
        point[0] = 1.0
        return point
    if omega >= 1.0:
        point[-1] = 1.0
        return point
    a = omega / (1.0 - omega)
    # Reference the geometric weights to the heavier end so they never overflow.
    exponents = np.arange(num_nodes, dtype=float)
    if a >= 1.0:
        exponents -= num_nodes - 1
    weights = a**exponents
    return weights / weights.sum()


def iterations_estimate(num_nodes: int, omega: float) -> int:
    """Step count after which the rightward-biased chain is close to stationary.

    Only defined for ``omega > 1/2``; slower chains need the empirical
    convergence detector (``walk.steps_to_convergence``) instead.
    """
    if num_nodes < 2:
        raise ValueError("need at least two nodes")
    if not 0.5 < omega <= 1.0:
        raise ValueError("estimate requires omega > 1/2")
    return math.ceil(num_nodes / (2.0 * omega - 1.0) - _CEIL_SLACK)


def expected_repetitions(num_nodes: int, omega: float, postselect_prob: float) -> float:
    """Expected number of full runs until the walker is caught at the last node
    and the subsequent post-selection succeeds.

    Models repetitions as independent trials at stationarity: the success
    probability per run is ``pi[last] * postselect_prob``.
    """
    if not 0.0 < omega < 1.0:
        raise ValueError("omega must lie strictly between 0 and 1")
    if not 0.0 < postselect_prob <= 1.0:
        raise ValueError("post-selection probability must lie in (0, 1]")
    pi_last = steady_state(num_nodes, omega)[-1]
    return 1.0 / (pi_last * postselect_prob)
