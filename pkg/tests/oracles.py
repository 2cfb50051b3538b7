"""Slow, independent reference implementations used as test oracles.

Everything here is written dict-of-edges style straight from the update
equations, with no shared code or data layout with the package internals.
"""
from __future__ import annotations

import itertools

import numpy as np

SYMS = "IXYZ"


def sym_commute(a: str, b: str) -> int:
    return 0 if a == "I" or b == "I" or a == b else 1


def string_syndrome(err: str, rows: list[str]) -> tuple[int, ...]:
    return tuple(
        sum(sym_commute(e, s) for e, s in zip(err, row)) % 2 for row in rows
    )


def mul_strings(a: str, b: str) -> str:
    out = []
    for x, y in zip(a, b):
        if x == "I":
            out.append(y)
        elif y == "I" or x == y:
            out.append("I" if x == y else x)
        else:
            out.append(({"X", "Y", "Z"} - {x, y}).pop())
    return "".join(out)


def brute_force_ml(rows: list[str], z, eps_d: float, eps_s: float):
    """argmax_(E,e) P(E)P(e) subject to syndrome(E) xor e = z.

    Enumerates all 4^N data errors; e is determined by z.  Returns
    (E, e, probability).
    """
    n = len(rows[0])
    m = len(rows)
    z = tuple(int(b) for b in z)
    best = None
    for combo in itertools.product(SYMS, repeat=n):
        err = "".join(combo)
        s = string_syndrome(err, rows)
        e = tuple(a ^ b for a, b in zip(s, z))
        p = 1.0
        for sym in combo:
            p *= (1.0 - eps_d) if sym == "I" else eps_d / 3.0
        for bit in e:
            p *= eps_s if bit else (1.0 - eps_s)
        if best is None or p > best[2]:
            best = (err, e, p)
    return best


def posterior_marginals(rows: list[str], z, eps_d: float, eps_s: float):
    """Exact per-node posteriors given the observed syndrome.

    Enumerates all (E, e) jointly; returns (data_marginals, synd_marginals)
    as arrays of shape (N, 4) and (M, 2), each row normalized.
    """
    n = len(rows[0])
    m = len(rows)
    z = tuple(int(b) for b in z)
    data = np.zeros((n, 4))
    synd = np.zeros((m, 2))
    total = 0.0
    for combo in itertools.product(range(4), repeat=n):
        err = "".join(SYMS[c] for c in combo)
        s = string_syndrome(err, rows)
        for flips in itertools.product((0, 1), repeat=m):
            if tuple(a ^ b for a, b in zip(s, flips)) != z:
                continue
            p = 1.0
            for c in combo:
                p *= (1.0 - eps_d) if c == 0 else eps_d / 3.0
            for bit in flips:
                p *= eps_s if bit else (1.0 - eps_s)
            total += p
            for i, c in enumerate(combo):
                data[i, c] += p
            for j, bit in enumerate(flips):
                synd[j, bit] += p
    if total > 0:
        data /= total
        synd /= total
    return data, synd


class ReferenceDsBp:
    """Dictionary-based DS quaternary BP, both schedules.

    Messages live in dicts keyed by (check, node); node indices count data
    nodes first, then one syndrome node per check.  Priors may be scalar
    rates or explicit per-node tables.
    """

    def __init__(self, rows: list[str], eps_d: float, eps_s: float,
                 prior_floor: float = 1e-30):
        self.rows = rows
        self.n = len(rows[0])
        self.m = len(rows)
        self.p_data = [
            {
                "I": max(1.0 - eps_d, prior_floor),
                "X": max(eps_d / 3.0, prior_floor),
                "Y": max(eps_d / 3.0, prior_floor),
                "Z": max(eps_d / 3.0, prior_floor),
            }
            for _ in range(self.n)
        ]
        self.p_synd = [
            (max(1.0 - eps_s, prior_floor), max(eps_s, prior_floor))
            for _ in range(self.m)
        ]
        # neighbors of check m: data nodes with non-identity labels, then
        # the syndrome node self.n + m
        self.nbrs = []
        for row in rows:
            lst = [i for i, sym in enumerate(row) if sym != "I"]
            lst.append(self.n + len(self.nbrs))
            self.nbrs.append(lst)
        self.checks_of = {v: [] for v in range(self.n + self.m)}
        for m_i, lst in enumerate(self.nbrs):
            for v in lst:
                self.checks_of[v].append(m_i)

    def _init_d(self):
        d = {}
        for m_i, lst in enumerate(self.nbrs):
            for v in lst:
                if v < self.n:
                    lab = self.rows[m_i][v]
                    pd = self.p_data[v]
                    tot = sum(pd.values())
                    q0 = pd["I"] + pd[lab]
                    d[(m_i, v)] = (2 * q0 - tot) / tot
                else:
                    p0, p1 = self.p_synd[v - self.n]
                    d[(m_i, v)] = (p0 - p1) / (p0 + p1)
        return d

    def _delta_for_check(self, m_i, d, z):
        out = {}
        for v in self.nbrs[m_i]:
            prod = 1.0
            for u in self.nbrs[m_i]:
                if u != v:
                    prod *= d[(m_i, u)]
            out[(m_i, v)] = (-1.0) ** z[m_i] * prod
        return out

    def _vertical_one(self, m_i, v, delta):
        if v >= self.n:
            p0, p1 = self.p_synd[v - self.n]
            return (p0 - p1) / (p0 + p1)
        lab = self.rows[m_i][v]
        q = dict(self.p_data[v])
        for m2 in self.checks_of[v]:
            if m2 == m_i or (m2, v) not in delta:
                continue
            dl = delta[(m2, v)]
            lab2 = self.rows[m2][v]
            for w in SYMS:
                r = 0.5 * (1 - dl) if sym_commute(w, lab2) else 0.5 * (1 + dl)
                q[w] *= r
        qc = q["I"] + q[lab]
        qa = sum(q[w] for w in "XYZ" if w != lab)
        return (qc - qa) / (qc + qa)

    def _beliefs(self, delta):
        data = np.zeros((self.n, 4))
        for v in range(self.n):
            for wi, w in enumerate(SYMS):
                q = self.p_data[v][w]
                for m2 in self.checks_of[v]:
                    dl = delta.get((m2, v), 0.0)
                    lab2 = self.rows[m2][v]
                    q *= 0.5 * (1 - dl) if sym_commute(w, lab2) else 0.5 * (1 + dl)
                data[v, wi] = q
        synd = np.zeros((self.m, 2))
        for s in range(self.m):
            p0, p1 = self.p_synd[s]
            for m2 in self.checks_of[self.n + s]:
                dl = delta.get((m2, self.n + s), 0.0)
                p0 *= 0.5 * (1 + dl)
                p1 *= 0.5 * (1 - dl)
            synd[s] = (p0, p1)
        return data, synd

    def _hard(self, delta):
        data, synd = self._beliefs(delta)
        est = "".join(SYMS[int(np.argmax(row))] for row in data)
        flips = tuple(0 if p0 > p1 else 1 for p0, p1 in synd)
        return est, flips

    def _matches(self, est, flips, z):
        s = string_syndrome(est, self.rows)
        return all((a + b) % 2 == c for a, b, c in zip(s, flips, z))

    def decode(self, z, schedule: str, max_iter: int = 12):
        """Returns (est, flips, converged, iterations, d, delta)."""
        z = tuple(int(b) for b in z)
        if schedule == "parallel":
            d = self._init_d()
            delta = {}
            for it in range(1, max_iter + 1):
                new_delta = {}
                for m_i in range(self.m):
                    new_delta.update(self._delta_for_check(m_i, d, z))
                delta = new_delta
                for m_i in range(self.m):
                    for v in self.nbrs[m_i]:
                        d[(m_i, v)] = self._vertical_one(m_i, v, delta)
                est, flips = self._hard(delta)
                if self._matches(est, flips, z):
                    return est, flips, True, it, d, delta
            return est, flips, False, max_iter, d, delta
        if schedule == "serial":
            d = {}
            delta = {
                (m_i, v): 0.0
                for m_i in range(self.m)
                for v in self.nbrs[m_i]
            }
            for it in range(1, max_iter + 1):
                for m_i in range(self.m):
                    for v in self.nbrs[m_i]:
                        d[(m_i, v)] = self._vertical_one(m_i, v, delta)
                    delta.update(self._delta_for_check(m_i, d, z))
                est, flips = self._hard(delta)
                if self._matches(est, flips, z):
                    return est, flips, True, it, d, delta
            return est, flips, False, max_iter, d, delta
        raise ValueError(schedule)


def plain_bp4(rows: list[str], z, eps_d: float, schedule: str,
              max_iter: int = 12):
    """Quaternary BP on the bare check matrix, no syndrome nodes at all.

    Used to confirm that running the DS decoder with eps_s = 0 reproduces
    ordinary BP4 exactly.  Returns (est, converged, iterations).
    """
    n = len(rows[0])
    m = len(rows)
    z = tuple(int(b) for b in z)
    p_data = [
        {"I": 1.0 - eps_d, "X": eps_d / 3, "Y": eps_d / 3, "Z": eps_d / 3}
        for _ in range(n)
    ]
    nbrs = [[i for i, sym in enumerate(row) if sym != "I"] for row in rows]
    checks_of = {v: [m_i for m_i, lst in enumerate(nbrs) if v in lst]
                 for v in range(n)}

    def vertical_one(m_i, v, delta):
        lab = rows[m_i][v]
        q = dict(p_data[v])
        for m2 in checks_of[v]:
            if m2 == m_i or (m2, v) not in delta:
                continue
            dl = delta[(m2, v)]
            lab2 = rows[m2][v]
            for w in SYMS:
                q[w] *= 0.5 * (1 - dl) if sym_commute(w, lab2) else 0.5 * (1 + dl)
        qc = q["I"] + q[lab]
        qa = sum(q[w] for w in "XYZ" if w != lab)
        return (qc - qa) / (qc + qa)

    def delta_for_check(m_i, d):
        out = {}
        for v in nbrs[m_i]:
            prod = 1.0
            for u in nbrs[m_i]:
                if u != v:
                    prod *= d[(m_i, u)]
            out[(m_i, v)] = (-1.0) ** z[m_i] * prod
        return out

    def hard(delta):
        est = []
        for v in range(n):
            best_w, best_q = "I", -1.0
            for w in SYMS:
                q = p_data[v][w]
                for m2 in checks_of[v]:
                    dl = delta.get((m2, v), 0.0)
                    lab2 = rows[m2][v]
                    q *= 0.5 * (1 - dl) if sym_commute(w, lab2) else 0.5 * (1 + dl)
                if q > best_q:
                    best_w, best_q = w, q
            est.append(best_w)
        return "".join(est)

    if schedule == "parallel":
        d = {}
        for m_i in range(m):
            for v in nbrs[m_i]:
                pd = p_data[v]
                q0 = pd["I"] + pd[rows[m_i][v]]
                d[(m_i, v)] = 2 * q0 - 1
        delta = {}
        for it in range(1, max_iter + 1):
            new_delta = {}
            for m_i in range(m):
                new_delta.update(delta_for_check(m_i, d))
            delta = new_delta
            for m_i in range(m):
                for v in nbrs[m_i]:
                    d[(m_i, v)] = vertical_one(m_i, v, delta)
            est = hard(delta)
            if string_syndrome(est, rows) == z:
                return est, True, it
        return est, False, max_iter
    d = {}
    delta = {(m_i, v): 0.0 for m_i in range(m) for v in nbrs[m_i]}
    for it in range(1, max_iter + 1):
        for m_i in range(m):
            for v in nbrs[m_i]:
                d[(m_i, v)] = vertical_one(m_i, v, delta)
            delta.update(delta_for_check(m_i, d))
        est = hard(delta)
        if string_syndrome(est, rows) == z:
            return est, True, it
    return est, False, max_iter
