"""Scalar-message quaternary belief propagation over a DS Tanner graph.

Two schedules are provided.  The parallel (flooding) schedule updates all
check-to-variable messages from the previous iteration's state; the serial
schedule walks the check nodes in index order and lets each check see the
freshest messages from every other check before it fires.  Both end each
iteration with a hard decision and halt as soon as the estimate reproduces
the observed syndrome.

Message semantics per edge (m, n):

    d[e]      variable-to-check: q0 - q1, where q0 is the belief mass on
              symbols commuting with the edge label (identity included)
              and q1 the mass on the two anticommuting symbols; for a
              syndrome variable simply p(0) - p(1).
    delta[e]  check-to-variable: (-1)^z_m times the product of d over the
              check's other edges.

A converged result always satisfies the full syndrome equation; callers
can re-verify it independently from the returned estimates.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .pauli import PauliString
from .tanner import TannerGraph

__all__ = [
    "PRIOR_FLOOR",
    "Priors",
    "BpState",
    "DecodeResult",
    "DegenerateNodeError",
    "init_priors",
    "decode_parallel",
    "decode_serial",
    "marginals",
]

# Probability floor applied when messages are initialized, so priors with
# exact zeros (eps = 0) cannot zero out every belief of a node mid-decode.
PRIOR_FLOOR = 1e-30


class DegenerateNodeError(RuntimeError):
    """All four beliefs of one node vanished during message passing."""

    def __init__(self, node: int):
        super().__init__(f"all beliefs vanished at variable node {node}")
        self.node = node


@dataclass(frozen=True)
class Priors:
    """Per-node prior error distributions.

    data: shape (N, 4) rows (p_I, p_X, p_Y, p_Z); synd: shape (M, 2) rows
    (p_0, p_1).  Every row must be normalized to 1 within 1e-12.
    """

    data: np.ndarray
    synd: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.float64)
        synd = np.asarray(self.synd, dtype=np.float64)
        if data.ndim != 2 or data.shape[1] != 4:
            raise ValueError("data priors must have shape (N, 4)")
        if synd.ndim != 2 or synd.shape[1] != 2:
            raise ValueError("syndrome priors must have shape (M, 2)")
        if (data < 0).any() or (synd < 0).any():
            raise ValueError("priors must be nonnegative")
        if (np.abs(data.sum(axis=1) - 1.0) > 1e-12).any():
            raise ValueError("data priors must sum to 1")
        if synd.size and (np.abs(synd.sum(axis=1) - 1.0) > 1e-12).any():
            raise ValueError("syndrome priors must sum to 1")
        data.setflags(write=False)
        synd.setflags(write=False)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "synd", synd)

    @property
    def n_data(self) -> int:
        return self.data.shape[0]

    @property
    def n_synd(self) -> int:
        return self.synd.shape[0]


def init_priors(n: int, m: int, eps_d: float, eps_s: float) -> Priors:
    """Depolarizing priors on data nodes, symmetric-channel priors on
    syndrome nodes."""
    if not 0.0 <= eps_d < 1.0:
        raise ValueError(f"eps_d must be in [0, 1), got {eps_d}")
    if not 0.0 <= eps_s < 1.0:
        raise ValueError(f"eps_s must be in [0, 1), got {eps_s}")
    data = np.tile(
        np.array([1.0 - eps_d, eps_d / 3.0, eps_d / 3.0, eps_d / 3.0]), (n, 1)
    )
    synd = np.tile(np.array([1.0 - eps_s, eps_s]), (m, 1))
    return Priors(data, synd)


@dataclass(frozen=True)
class BpState:
    """Final message state of one decode, for inspection and tracing."""

    graph: TannerGraph
    d_msg: np.ndarray
    delta_msg: np.ndarray
    priors: Priors
    iteration: int


@dataclass(frozen=True)
class DecodeResult:
    data_est: PauliString
    synd_est: np.ndarray
    converged: bool
    iterations: int
    state: BpState


def _run(kernel, graph: TannerGraph, syndrome, priors: Priors, max_iter: int,
         trace: list | None) -> DecodeResult:
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    z = np.asarray(syndrome, dtype=np.uint8) & 1
    if z.shape != (graph.n_synd,):
        raise ValueError(
            f"syndrome length {z.shape} does not match {graph.n_synd} checks"
        )
    if priors.n_data != graph.n_data or priors.n_synd != graph.n_synd:
        raise ValueError("prior dimensions do not match the graph")

    p_data = np.maximum(priors.data, PRIOR_FLOOR)
    p_synd = np.maximum(priors.synd, PRIOR_FLOOR)

    n_edges = graph.n_edges
    d = np.empty(n_edges, dtype=np.float64)
    delta = np.empty(n_edges, dtype=np.float64)
    hard_data = np.zeros(graph.n_data, dtype=np.uint8)
    hard_synd = np.zeros(graph.n_synd, dtype=np.uint8)
    if trace is not None:
        trace_hard = np.zeros((max_iter, graph.n_vars), dtype=np.uint8)
        trace_mismatch = np.zeros(max_iter, dtype=np.int64)
    else:
        trace_hard = np.zeros((0, 0), dtype=np.uint8)
        trace_mismatch = np.zeros(0, dtype=np.int64)

    status, iterations, bad_node = kernel(
        graph.chk_ptr, graph.edge_var, graph.edge_label,
        graph.var_ptr, graph.var_edges,
        graph.n_data, z, p_data, p_synd, max_iter, _kernels.COMM_TABLE,
        d, delta, hard_data, hard_synd, trace_hard, trace_mismatch,
    )
    if status < 0:
        raise DegenerateNodeError(bad_node)

    if trace is not None:
        for it in range(iterations):
            trace.append(
                {
                    "iteration": it + 1,
                    "data_est": PauliString.from_codes(
                        trace_hard[it, : graph.n_data]
                    ),
                    "synd_est": trace_hard[it, graph.n_data :].copy(),
                    "mismatches": int(trace_mismatch[it]),
                }
            )

    state = BpState(
        graph=graph,
        d_msg=d,
        delta_msg=delta,
        priors=priors,
        iteration=iterations,
    )
    return DecodeResult(
        data_est=PauliString.from_codes(hard_data),
        synd_est=hard_synd,
        converged=status == 1,
        iterations=iterations,
        state=state,
    )


def decode_parallel(graph: TannerGraph, syndrome, priors: Priors,
                    max_iter: int = 12, trace: list | None = None) -> DecodeResult:
    """Flooding schedule: one horizontal step over all checks, one vertical
    step over all edges, then a hard decision, per iteration."""
    return _run(_kernels.run_parallel, graph, syndrome, priors, max_iter, trace)


def decode_serial(graph: TannerGraph, syndrome, priors: Priors,
                  max_iter: int = 12, trace: list | None = None) -> DecodeResult:
    """Serial schedule along check nodes: deltas start at zero and each
    check refreshes its incoming messages before firing, so later checks
    in a sweep already see this sweep's updates."""
    return _run(_kernels.run_serial, graph, syndrome, priors, max_iter, trace)


def marginals(state: BpState) -> tuple[np.ndarray, np.ndarray]:
    """Unnormalized per-node beliefs from the final message state.

    Returns (data_beliefs, synd_beliefs) of shapes (N, 4) and (M, 2),
    computed from the caller's priors, so exact zeros in the priors yield
    exact zeros in the beliefs.
    """
    g = state.graph
    comm = _kernels.COMM_TABLE
    data = np.array(state.priors.data, dtype=np.float64)
    synd = np.array(state.priors.synd, dtype=np.float64)
    r0 = 0.5 * (1.0 + state.delta_msg)
    r1 = 0.5 * (1.0 - state.delta_msg)
    for v in range(g.n_data):
        lo, hi = int(g.var_ptr[v]), int(g.var_ptr[v + 1])
        for j in range(lo, hi):
            e = int(g.var_edges[j])
            lab = int(g.edge_label[e])
            for w in range(4):
                data[v, w] *= r1[e] if comm[w, lab] else r0[e]
    for s in range(g.n_synd):
        v = g.n_data + s
        lo, hi = int(g.var_ptr[v]), int(g.var_ptr[v + 1])
        for j in range(lo, hi):
            e = int(g.var_edges[j])
            synd[s, 0] *= r0[e]
            synd[s, 1] *= r1[e]
    return data, synd
