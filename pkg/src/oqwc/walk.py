"""Dissipative walks on finite graphs: labeled-edge operator sets and the
one-step evolution of block-diagonal walker states.

The walker state keeps one unnormalized density block per node; coherences
between nodes are never stored because a single step of the dynamics destroys
them. A step maps the block at node ``j`` to ``sum_i B[i,j] rho_i B[i,j]^dag``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quantum import (
    TOL_CPTP,
    TOL_HERM,
    TOL_PSD,
    TOL_TRACE,
    as_matrix,
    check_density_block,
)

# Below this occupation probability, conditioning on a node is numerically
# meaningless.
EPS_POSTSELECT = 1e-12

# Successive node distributions closer than this (total variation) count as
# converged.
CONVERGENCE_TV = 1e-8


class PostSelectionError(ValueError):
    """Conditioning on an outcome whose probability is (near) zero."""


@dataclass(frozen=True)
class TransitionOperatorSet:
    """Labeled-edge operators of a dissipative walk on ``num_nodes`` nodes.

    ``ops[(i, j)]`` acts on the internal state when the walker jumps from node
    ``i`` to node ``j``; absent edges are zero operators and are simply not
    stored. Construction fails unless every node's outgoing family resolves
    the identity, which is what makes the one-step map trace preserving.
    """

    num_nodes: int
    internal_dim: int
    ops: dict[tuple[int, int], np.ndarray]

    def __post_init__(self):
        if self.num_nodes < 1:
            raise ValueError("need at least one node")
        if self.internal_dim < 1:
            raise ValueError("internal dimension must be positive")
        coerced = {}
        for (i, j), op in self.ops.items():
            if not (0 <= i < self.num_nodes and 0 <= j < self.num_nodes):
                raise ValueError(f"edge ({i}, {j}) outside node range")
            m = as_matrix(op)
            if m.shape[0] != self.internal_dim:
                raise ValueError(
                    f"operator on edge ({i}, {j}) has dimension {m.shape[0]}, "
                    f"expected {self.internal_dim}"
                )
            coerced[(i, j)] = m
        object.__setattr__(self, "ops", coerced)
        eye = np.eye(self.internal_dim)
        for i in range(self.num_nodes):
            acc = np.zeros((self.internal_dim, self.internal_dim), dtype=complex)
            for (src, _), op in self.ops.items():
                if src == i:
                    acc += op.conj().T @ op
            if np.abs(acc - eye).max() > TOL_CPTP:
                raise ValueError(f"outgoing operators of node {i} do not resolve the identity")


@dataclass(frozen=True)
class OqwState:
    """Block-diagonal walker state: an unnormalized density block per node.

    Nodes absent from ``blocks`` carry zero weight. The block traces must sum
    to one.
    """

    num_nodes: int
    blocks: dict[int, np.ndarray]

    def __post_init__(self):
        if self.num_nodes < 1:
            raise ValueError("need at least one node")
        coerced = {}
        dim = None
        for node, block in self.blocks.items():
            if not 0 <= node < self.num_nodes:
                raise ValueError(f"node {node} outside range")
            m = as_matrix(block)
            if dim is None:
                dim = m.shape[0]
            elif m.shape[0] != dim:
                raise ValueError("blocks must share one internal dimension")
            coerced[node] = m
        if not coerced:
            raise ValueError("state has no blocks")
        object.__setattr__(self, "blocks", coerced)
        total = sum(b.trace().real for b in coerced.values())
        if abs(total - 1.0) > 1e-8:
            raise ValueError(f"block traces sum to {total}, expected 1")

    @property
    def internal_dim(self) -> int:
        return next(iter(self.blocks.values())).shape[0]

    @classmethod
    def from_pure(cls, psi, node: int, num_nodes: int) -> "OqwState":
        """Point-mass state |psi><psi| located at ``node``."""
        psi = np.asarray(psi, dtype=complex).reshape(-1)
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise ValueError("zero state vector")
        psi = psi / norm
        return cls(num_nodes=num_nodes, blocks={node: np.outer(psi, psi.conj())})

    def validate(self) -> None:
        """Enforce the full density-block invariants at the strict tolerances."""
        total = 0.0
        for block in self.blocks.values():
            check_density_block(block, TOL_HERM, TOL_PSD, TOL_TRACE)
            total += block.trace().real
        if abs(total - 1.0) > TOL_TRACE:
            raise ValueError(f"block traces sum to {total}, expected 1")


def oqw_step(ops: TransitionOperatorSet, state: OqwState) -> OqwState:
    """Advance the walker by one step of the dissipative dynamics."""
    if state.num_nodes != ops.num_nodes:
        raise ValueError("state and operator set disagree on the node count")
    if state.internal_dim != ops.internal_dim:
        raise ValueError("state and operator set disagree on the internal dimension")
    new: dict[int, np.ndarray] = {}
    for (i, j), op in ops.ops.items():
        block = state.blocks.get(i)
        if block is None:
            continue
        contrib = op @ block @ op.conj().T
        if j in new:
            new[j] = new[j] + contrib
        else:
            new[j] = contrib
    return OqwState(num_nodes=state.num_nodes, blocks=new)


def evolve(ops: TransitionOperatorSet, state: OqwState, steps: int) -> OqwState:
    """Apply ``oqw_step`` the given number of times (zero steps is a no-op)."""
    if steps < 0:
        raise ValueError("step count must be nonnegative")
    for _ in range(steps):
        state = oqw_step(ops, state)
    return state


def node_distribution(state: OqwState) -> np.ndarray:
    """Occupation probabilities ``p_i = tr(rho_i)`` over all nodes."""
    p = np.zeros(state.num_nodes)
    for node, block in state.blocks.items():
        p[node] = block.trace().real
    return p


def conditional_state(state: OqwState, node: int) -> np.ndarray:
    """Normalized internal state given that the walker is found at ``node``."""
    block = state.blocks.get(node)
    weight = block.trace().real if block is not None else 0.0
    if weight <= EPS_POSTSELECT:
        raise PostSelectionError(f"node {node} occupation {weight} is below threshold")
    return block / weight


def total_variation(p, q) -> float:
    """Total-variation distance between two distributions of equal length."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise ValueError(f"length mismatch: {p.shape} vs {q.shape}")
    return float(0.5 * np.abs(p - q).sum())


def steps_to_convergence(
    ops: TransitionOperatorSet,
    state: OqwState,
    tol: float = CONVERGENCE_TV,
    max_steps: int | None = None,
) -> int:
    """Steps until successive node distributions differ by less than ``tol``.

    Capped at ``max_steps`` (default ``10 * num_nodes``); the cap is returned
    when the criterion is not met earlier.
    """
    if max_steps is None:
        max_steps = 10 * ops.num_nodes
    dist = node_distribution(state)
    for n in range(1, max_steps + 1):
        state = oqw_step(ops, state)
        new_dist = node_distribution(state)
        if total_variation(new_dist, dist) < tol:
            return n
        dist = new_dist
    return max_steps
