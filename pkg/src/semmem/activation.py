"""Spreading activation over the semantic network.

The update rule per iteration is

    a_i <- clamp_[0, a_max]( d * a_i + g * sum_j pol * w_ji * a_j / sqrt(outdeg(j) * indeg(i)) )

followed by zeroing entries below the threshold.  Inhibitory edges enter
the sum with negative sign.  Degree normalization keeps hub nodes from
swamping the state.  Iteration is synchronous (Jacobi style): both terms
read the previous iteration's values, so per-node updates may be computed
in parallel without changing the result.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import NotFound
from .network import INHIBITORY, SemanticNetwork

# Column-block width is fixed so the same BLAS calls happen for every
# worker count; threads only decide who computes which block.
_BLOCK = 64


@dataclass(frozen=True)
class ActivationConfig:
    decay: float = 0.7
    gain: float = 0.6
    threshold: float = 1e-3
    a_max: float = 1.0
    tol: float = 1e-6
    max_iter: int = 500

    def __post_init__(self):
        if not 0.0 <= self.decay < 1.0:
            raise ValueError("decay must be in [0, 1)")
        if self.gain <= 0.0:
            raise ValueError("gain must be > 0")
        if self.threshold < 0.0:
            raise ValueError("threshold must be >= 0")
        if self.a_max <= 0.0:
            raise ValueError("a_max must be > 0")
        if self.tol <= 0.0:
            raise ValueError("tol must be > 0")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")


@dataclass
class ActivationState:
    activations: dict[str, float]
    iteration: int = 0
    converged: bool = False


@dataclass(frozen=True)
class ActivationVector:
    """Sparse snapshot of node activations (only nonzero entries stored)."""

    coefficients: dict[str, float] = field(default_factory=dict)

    def to_json_dict(self) -> dict[str, float]:
        return dict(sorted(self.coefficients.items()))

    @classmethod
    def from_json_dict(cls, data: dict[str, float]) -> "ActivationVector":
        return cls({k: float(v) for k, v in data.items() if v})


def coupling_matrix(net: SemanticNetwork) -> tuple[list[str], np.ndarray]:
    """Dense signed, degree-normalized weight matrix W with W[j, i] the
    contribution of node j to node i.  Node order is sorted concept id."""
    nodes = net.node_ids
    index = {cid: k for k, cid in enumerate(nodes)}
    n = len(nodes)
    W = np.zeros((n, n), dtype=np.float64)
    for cid in nodes:
        for rel in net.out_edges.get(cid, ()):
            j, i = index[rel.source], index[rel.target]
            norm = np.sqrt(net.out_degree(rel.source) * net.in_degree(rel.target))
            sign = -1.0 if rel.polarity == INHIBITORY else 1.0
            W[j, i] = sign * rel.weight / norm
    return nodes, W


def _step(a: np.ndarray, W: np.ndarray, cfg: ActivationConfig, workers: int) -> np.ndarray:
    n = a.shape[0]
    incoming = np.empty(n, dtype=np.float64)
    blocks = [(s, min(s + _BLOCK, n)) for s in range(0, n, _BLOCK)]
    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            def fill(bounds):
                s, e = bounds
                incoming[s:e] = a @ W[:, s:e]
            list(pool.map(fill, blocks))
    else:
        for s, e in blocks:
            incoming[s:e] = a @ W[:, s:e]
    new = np.clip(cfg.decay * a + cfg.gain * incoming, 0.0, cfg.a_max)
    new[new < cfg.threshold] = 0.0
    return new


def propagate(
    net: SemanticNetwork,
    seeds: dict[str, float],
    cfg: ActivationConfig | None = None,
    workers: int = 1,
) -> ActivationState:
    """Iterate the update rule from seed activations until convergence
    (max absolute change below tol) or max_iter.

    The returned state carries every network node, including zeros, so
    group operations can validate membership without the network.
    """
    cfg = cfg or ActivationConfig()
    for cid, value in seeds.items():
        if cid not in net.concepts:
            raise NotFound(f"unknown seed concept {cid!r}")
        if not (0.0 < value <= cfg.a_max):
            raise ValueError(f"seed {cid!r}: value {value} outside (0, a_max]")

    nodes, W = coupling_matrix(net)
    index = {cid: k for k, cid in enumerate(nodes)}
    a = np.zeros(len(nodes), dtype=np.float64)
    for cid, value in seeds.items():
        a[index[cid]] = value

    converged = False
    iteration = 0
    for iteration in range(1, cfg.max_iter + 1):
        new = _step(a, W, cfg, workers)
        if not np.all(np.isfinite(new)):
            raise ArithmeticError("non-finite activation; invariant violation")
        delta = float(np.max(np.abs(new - a))) if len(nodes) else 0.0
        a = new
        if delta < cfg.tol:
            converged = True
            break
    if not nodes:
        return ActivationState(activations={}, iteration=1, converged=True)
    return ActivationState(
        activations={cid: float(a[index[cid]]) for cid in nodes},
        iteration=iteration,
        converged=converged,
    )


def snapshot(state: ActivationState) -> ActivationVector:
    """Copy nonzero activations into a sparse vector."""
    return ActivationVector({cid: v for cid, v in state.activations.items() if v != 0.0})


def overlap(u: ActivationVector, v: ActivationVector) -> float:
    """Dot product of two snapshots over the shared concept basis."""
    if len(u.coefficients) > len(v.coefficients):
        u, v = v, u
    return sum(val * v.coefficients.get(cid, 0.0) for cid, val in u.coefficients.items())


def winner_take_most(state: ActivationState, group: set[str], kappa: float) -> ActivationState:
    """Suppress all but the most active member of a competing group.

    The winner (ties broken toward the lexicographically smallest id) is
    unchanged; every other group member is scaled by kappa.  kappa=0
    reproduces winner-takes-all.
    """
    if not group:
        raise ValueError("group must be non-empty")
    if not 0.0 <= kappa <= 1.0:
        raise ValueError("kappa must be in [0, 1]")
    for cid in group:
        if cid not in state.activations:
            raise NotFound(f"unknown concept {cid!r} in group")
    winner = max(sorted(group), key=lambda cid: state.activations[cid])
    activations = dict(state.activations)
    for cid in group:
        if cid != winner:
            activations[cid] *= kappa
    return ActivationState(
        activations=activations, iteration=state.iteration, converged=state.converged
    )
