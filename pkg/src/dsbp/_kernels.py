"""JIT message-passing kernels shared by both decoding schedules.

Everything here operates on the flat CSR arrays of a TannerGraph plus
per-edge message arrays d (variable to check) and delta (check to
variable).  Scalars only: d is the difference of the two folded
probabilities q0 - q1, delta the signed product of incoming d values.

Status codes returned by the drivers: 1 converged, 0 iteration limit,
-1 degenerate node (all four beliefs vanished; node index in the third
slot of the result tuple).
"""
from __future__ import annotations

import numpy as np
from numba import njit

# COMM[a, b] = 1 iff Pauli symbols a, b anticommute (I=0, X=1, Y=2, Z=3).
COMM_TABLE = np.array(
    [
        [0, 0, 0, 0],
        [0, 0, 1, 1],
        [0, 1, 0, 1],
        [0, 1, 1, 0],
    ],
    dtype=np.uint8,
)


@njit(cache=True)
def _init_messages(chk_ptr, edge_var, edge_label, n_data, p_data, p_synd, d):
    for e in range(edge_var.shape[0]):
        v = edge_var[e]
        if v < n_data:
            lab = edge_label[e]
            tot = p_data[v, 0] + p_data[v, 1] + p_data[v, 2] + p_data[v, 3]
            q0 = p_data[v, 0] + p_data[v, lab]
            d[e] = (2.0 * q0 - tot) / tot
        else:
            s = v - n_data
            d[e] = (p_synd[s, 0] - p_synd[s, 1]) / (p_synd[s, 0] + p_synd[s, 1])


@njit(cache=True)
def _check_deltas(lo, hi, sign, d, delta, buf):
    """delta[e] = sign * prod of d over the check's other edges."""
    deg = hi - lo
    buf[0] = 1.0
    for i in range(deg):
        buf[i + 1] = buf[i] * d[lo + i]
    suffix = 1.0
    for i in range(deg - 1, -1, -1):
        delta[lo + i] = sign * buf[i] * suffix
        suffix *= d[lo + i]


@njit(cache=True)
def _vertical_edge(e, v, n_data, edge_label, var_ptr, var_edges,
                   p_data, p_synd, delta, d):
    """Recompute d[e] from priors and the deltas of the other checks.

    Returns -1 - v when all folded beliefs vanish, else 0.
    """
    if v >= n_data:
        s = v - n_data
        d[e] = (p_synd[s, 0] - p_synd[s, 1]) / (p_synd[s, 0] + p_synd[s, 1])
        return 0
    q0 = p_data[v, 0]
    q1 = p_data[v, 1]
    q2 = p_data[v, 2]
    q3 = p_data[v, 3]
    for j in range(var_ptr[v], var_ptr[v + 1]):
        e2 = var_edges[j]
        if e2 == e:
            continue
        dl = delta[e2]
        r0 = 0.5 * (1.0 + dl)
        r1 = 0.5 * (1.0 - dl)
        lab2 = edge_label[e2]
        if lab2 == 1:
            q0 *= r0
            q1 *= r0
            q2 *= r1
            q3 *= r1
        elif lab2 == 2:
            q0 *= r0
            q1 *= r1
            q2 *= r0
            q3 *= r1
        else:
            q0 *= r0
            q1 *= r1
            q2 *= r1
            q3 *= r0
    lab = edge_label[e]
    if lab == 1:
        qc = q0 + q1
        qa = q2 + q3
    elif lab == 2:
        qc = q0 + q2
        qa = q1 + q3
    else:
        qc = q0 + q3
        qa = q1 + q2
    tot = qc + qa
    if tot <= 0.0 or np.isnan(tot):
        return -1 - v
    d[e] = (qc - qa) / tot
    return 0


@njit(cache=True)
def _hard_decision(n_data, n_synd, edge_label, var_ptr, var_edges,
                   p_data, p_synd, delta, hard_data, hard_synd):
    for v in range(n_data):
        q0 = p_data[v, 0]
        q1 = p_data[v, 1]
        q2 = p_data[v, 2]
        q3 = p_data[v, 3]
        for j in range(var_ptr[v], var_ptr[v + 1]):
            e2 = var_edges[j]
            dl = delta[e2]
            r0 = 0.5 * (1.0 + dl)
            r1 = 0.5 * (1.0 - dl)
            lab2 = edge_label[e2]
            if lab2 == 1:
                q0 *= r0
                q1 *= r0
                q2 *= r1
                q3 *= r1
            elif lab2 == 2:
                q0 *= r0
                q1 *= r1
                q2 *= r0
                q3 *= r1
            else:
                q0 *= r0
                q1 *= r1
                q2 *= r1
                q3 *= r0
        # first strict maximum wins, so exact ties prefer I, then X, Y, Z
        best = q0
        code = 0
        if q1 > best:
            best = q1
            code = 1
        if q2 > best:
            best = q2
            code = 2
        if q3 > best:
            best = q3
            code = 3
        hard_data[v] = code
    for s in range(n_synd):
        v = n_data + s
        q0 = p_synd[s, 0]
        q1 = p_synd[s, 1]
        for j in range(var_ptr[v], var_ptr[v + 1]):
            dl = delta[var_edges[j]]
            q0 *= 0.5 * (1.0 + dl)
            q1 *= 0.5 * (1.0 - dl)
        hard_synd[s] = 0 if q0 > q1 else 1


@njit(cache=True)
def _mismatch_count(chk_ptr, edge_var, edge_label, n_data, z, comm,
                    hard_data, hard_synd):
    bad = 0
    for m in range(chk_ptr.shape[0] - 1):
        acc = 0
        for e in range(chk_ptr[m], chk_ptr[m + 1]):
            v = edge_var[e]
            if v < n_data:
                acc ^= comm[hard_data[v], edge_label[e]]
            else:
                acc ^= hard_synd[v - n_data]
        if acc != z[m]:
            bad += 1
    return bad


@njit(cache=True)
def run_parallel(chk_ptr, edge_var, edge_label, var_ptr, var_edges,
                 n_data, z, p_data, p_synd, max_iter, comm,
                 d, delta, hard_data, hard_synd, trace_hard, trace_mismatch):
    n_checks = chk_ptr.shape[0] - 1
    n_synd = n_checks
    maxdeg = 0
    for m in range(n_checks):
        deg = chk_ptr[m + 1] - chk_ptr[m]
        if deg > maxdeg:
            maxdeg = deg
    buf = np.empty(maxdeg + 1, dtype=np.float64)

    _init_messages(chk_ptr, edge_var, edge_label, n_data, p_data, p_synd, d)
    for it in range(1, max_iter + 1):
        for m in range(n_checks):
            sign = -1.0 if z[m] else 1.0
            _check_deltas(chk_ptr[m], chk_ptr[m + 1], sign, d, delta, buf)
        for e in range(edge_var.shape[0]):
            status = _vertical_edge(e, edge_var[e], n_data, edge_label,
                                    var_ptr, var_edges, p_data, p_synd,
                                    delta, d)
            if status < 0:
                return -1, it, -1 - status
        _hard_decision(n_data, n_synd, edge_label, var_ptr, var_edges,
                       p_data, p_synd, delta, hard_data, hard_synd)
        bad = _mismatch_count(chk_ptr, edge_var, edge_label, n_data, z, comm,
                              hard_data, hard_synd)
        if trace_mismatch.shape[0]:
            trace_mismatch[it - 1] = bad
            for v in range(n_data):
                trace_hard[it - 1, v] = hard_data[v]
            for s in range(n_synd):
                trace_hard[it - 1, n_data + s] = hard_synd[s]
        if bad == 0:
            return 1, it, -1
    return 0, max_iter, -1


@njit(cache=True)
def run_serial(chk_ptr, edge_var, edge_label, var_ptr, var_edges,
               n_data, z, p_data, p_synd, max_iter, comm,
               d, delta, hard_data, hard_synd, trace_hard, trace_mismatch):
    n_checks = chk_ptr.shape[0] - 1
    n_synd = n_checks
    maxdeg = 0
    for m in range(n_checks):
        deg = chk_ptr[m + 1] - chk_ptr[m]
        if deg > maxdeg:
            maxdeg = deg
    buf = np.empty(maxdeg + 1, dtype=np.float64)

    for e in range(delta.shape[0]):
        delta[e] = 0.0
    for it in range(1, max_iter + 1):
        for m in range(n_checks):
            lo = chk_ptr[m]
            hi = chk_ptr[m + 1]
            # refresh this check's incoming messages from the latest deltas
            # of all other checks, then its outgoing deltas
            for e in range(lo, hi):
                status = _vertical_edge(e, edge_var[e], n_data, edge_label,
                                        var_ptr, var_edges, p_data, p_synd,
                                        delta, d)
                if status < 0:
                    return -1, it, -1 - status
            sign = -1.0 if z[m] else 1.0
            _check_deltas(lo, hi, sign, d, delta, buf)
        _hard_decision(n_data, n_synd, edge_label, var_ptr, var_edges,
                       p_data, p_synd, delta, hard_data, hard_synd)
        bad = _mismatch_count(chk_ptr, edge_var, edge_label, n_data, z, comm,
                              hard_data, hard_synd)
        if trace_mismatch.shape[0]:
            trace_mismatch[it - 1] = bad
            for v in range(n_data):
                trace_hard[it - 1, v] = hard_data[v]
            for s in range(n_synd):
                trace_hard[it - 1, n_data + s] = hard_synd[s]
        if bad == 0:
            return 1, it, -1
    return 0, max_iter, -1
