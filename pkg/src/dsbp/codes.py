"""Stabilizer, CSS, hypergraph-product and data-syndrome code construction.

The data-syndrome (DS) view extends an M-row check matrix S so that row m
is paired with the m-th unit syndrome vector: measurement bit flips become
additional binary error coordinates decoded jointly with the data error.
The identity extension is kept implicit; only S is stored.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import gf2
from .pauli import COMM, DsError, PauliString, syndrome as pauli_syndrome

__all__ = [
    "StabilizerCode",
    "CssPair",
    "DsCheckMatrix",
    "bch_parity_matrix",
    "hypergraph_product",
    "fix_column_weights",
    "css_to_stabilizer",
    "ds_extend",
    "distance3_conditions",
    "ConditionReport",
    "ds_min_distance_bounded",
    "hp_129_28",
    "built_in_code",
    "BUILT_IN_CODES",
    "save_code_text",
    "load_code_text",
]


class StabilizerCode:
    """An M-row check matrix over {I,X,Y,Z}, stored as (x|z) bit blocks.

    Rows must pairwise commute.  The number of logical qubits K is derived
    from the rank of the binary symplectic image, so redundant rows
    (M > N - K) are allowed.
    """

    def __init__(self, check_x, check_z, *, validate: bool = True):
        cx = gf2.as_bit_matrix(check_x).copy()
        cz = gf2.as_bit_matrix(check_z).copy()
        if cx.shape != cz.shape:
            raise ValueError("check_x and check_z must have identical shapes")
        cx.setflags(write=False)
        cz.setflags(write=False)
        self.check_x = cx
        self.check_z = cz
        if validate:
            bad = self._noncommuting_pairs()
            if bad:
                raise ValueError(f"check rows do not commute: pairs {bad[:5]}")

    def _noncommuting_pairs(self) -> list[tuple[int, int]]:
        g = self.check_x.astype(np.int64) @ self.check_z.astype(np.int64).T
        g += self.check_z.astype(np.int64) @ self.check_x.astype(np.int64).T
        g &= 1
        idx = np.argwhere(g)
        return [(int(i), int(j)) for i, j in idx if i < j]

    @property
    def n(self) -> int:
        """Number of physical qubits N."""
        return self.check_x.shape[1]

    @property
    def m(self) -> int:
        """Number of check rows M."""
        return self.check_x.shape[0]

    @cached_property
    def symplectic(self) -> np.ndarray:
        """Binary image [x-block | z-block], shape (M, 2N)."""
        s = np.hstack([self.check_x, self.check_z])
        s.setflags(write=False)
        return s

    @cached_property
    def span(self) -> gf2.SpanChecker:
        """Membership tester for the stabilizer row space (symplectic view)."""
        return gf2.SpanChecker(self.symplectic)

    @cached_property
    def k(self) -> int:
        """Number of logical qubits: N minus the symplectic rank."""
        return self.n - self.span.rank

    @cached_property
    def symbols(self) -> np.ndarray:
        """Symbol codes (I=0, X=1, Y=2, Z=3), shape (M, N)."""
        x = self.check_x.astype(np.int64)
        z = self.check_z.astype(np.int64)
        out = (x + 3 * z - 2 * x * z).astype(np.uint8)
        out.setflags(write=False)
        return out

    def row(self, m: int) -> PauliString:
        return PauliString(self.check_x[m], self.check_z[m])

    def rows(self):
        return [self.row(m) for m in range(self.m)]

    def contains(self, e: PauliString) -> bool:
        """True iff ``e`` is generated by the check rows (phases ignored)."""
        return self.span.contains(np.concatenate([e.x, e.z]))

    @classmethod
    def from_strings(cls, rows, *, validate: bool = True) -> "StabilizerCode":
        ps = [PauliString.from_string(r) for r in rows]
        if not ps:
            raise ValueError("need at least one row")
        return cls(
            np.stack([p.x for p in ps]),
            np.stack([p.z for p in ps]),
            validate=validate,
        )

    def __repr__(self) -> str:
        return f"StabilizerCode(n={self.n}, k={self.k}, m={self.m})"


class CssPair:
    """Two binary parity-check blocks with h_x @ h_z.T = 0 over GF(2)."""

    def __init__(self, h_x, h_z, *, validate: bool = True):
        hx = gf2.as_bit_matrix(h_x).copy()
        hz = gf2.as_bit_matrix(h_z).copy()
        if hx.shape[1] != hz.shape[1]:
            raise ValueError("h_x and h_z must act on the same qubit count")
        hx.setflags(write=False)
        hz.setflags(write=False)
        self.h_x = hx
        self.h_z = hz
        if validate and gf2.multiply_transpose(hx, hz).any():
            raise ValueError("h_x @ h_z.T != 0: blocks are not orthogonal")

    @property
    def n(self) -> int:
        return self.h_x.shape[1]

    @property
    def m_x(self) -> int:
        return self.h_x.shape[0]

    @property
    def m_z(self) -> int:
        return self.h_z.shape[0]

    def min_column_weights(self) -> tuple[int, int]:
        return (
            int(self.h_x.sum(axis=0).min()),
            int(self.h_z.sum(axis=0).min()),
        )

    def __repr__(self) -> str:
        return f"CssPair(n={self.n}, m_x={self.m_x}, m_z={self.m_z})"


@dataclass(frozen=True)
class DsCheckMatrix:
    """A stabilizer check matrix with its implicit identity extension.

    Row m of the extended matrix pairs check row S_m with the m-th unit
    syndrome bit vector; the identity block is never materialized.
    """

    base: StabilizerCode

    @property
    def n_data(self) -> int:
        return self.base.n

    @property
    def n_synd(self) -> int:
        return self.base.m

    def row(self, m: int) -> DsError:
        unit = np.zeros(self.n_synd, dtype=np.uint8)
        unit[m] = 1
        return DsError(self.base.row(m), unit)

    def params(self) -> str:
        return f"[[{self.base.n},{self.base.k}|{self.base.m}]]"

    def __repr__(self) -> str:
        return f"DsCheckMatrix({self.params()})"


# ---------------------------------------------------------------------------
# Classical building blocks
# ---------------------------------------------------------------------------

# Check polynomials h(x) = (x^n - 1)/g(x) of the two cyclic codes used by
# the built-in hypergraph product, low-order coefficient first.
_BCH_CHECK_POLY = {
    (7, 4): (1, 1, 1, 0, 1),                 # h = 1 + x + x^2 + x^4, g = 1 + x + x^3
    (15, 7): (1, 0, 0, 0, 1, 0, 1, 1),       # h = 1 + x^4 + x^6 + x^7
}

_BCH_DISTANCE = {(7, 4): 3, (15, 7): 5}


def bch_parity_matrix(n: int, k: int) -> np.ndarray:
    """Parity-check matrix of a supported cyclic BCH code.

    Rows are consecutive shifts of the reversed check polynomial, giving the
    full-rank (n-k) x n banded form whose cyclic structure keeps adjacent-row
    sums sparse.
    """
    try:
        h_coeffs = _BCH_CHECK_POLY[(n, k)]
    except KeyError:
        raise ValueError(
            f"unsupported code [{n},{k}]; available: {sorted(_BCH_CHECK_POLY)}"
        ) from None
    rev = np.array(h_coeffs[::-1], dtype=np.uint8)
    rows = n - k
    mat = np.zeros((rows, n), dtype=np.uint8)
    for i in range(rows):
        mat[i, i : i + rev.size] = rev
    return mat


def hypergraph_product(h1, h2) -> CssPair:
    """CSS pair from the Kronecker product of two classical parity checks.

    With h1 of shape (m1, n1) and h2 of shape (m2, n2):

        h_x = [h1 (x) I_n2 | I_m1 (x) h2.T]    (m1*n2 rows)
        h_z = [I_n1 (x) h2 | h1.T (x) I_m2]    (n1*m2 rows)

    on n1*n2 + m1*m2 qubits.  Orthogonality holds by construction: both
    cross terms equal h1 (x) h2.T and cancel mod 2.
    """
    a = gf2.as_bit_matrix(h1)
    b = gf2.as_bit_matrix(h2)
    m1, n1 = a.shape
    m2, n2 = b.shape
    if min(m1, n1, m2, n2) == 0:
        raise ValueError("input parity checks must be nonzero-dimensional")
    h_x = np.hstack([np.kron(a, np.eye(n2, dtype=np.uint8)),
                     np.kron(np.eye(m1, dtype=np.uint8), b.T)])
    h_z = np.hstack([np.kron(np.eye(n1, dtype=np.uint8), b),
                     np.kron(a.T, np.eye(m2, dtype=np.uint8))])
    return CssPair(h_x, h_z)


# ---------------------------------------------------------------------------
# Column-weight repair
# ---------------------------------------------------------------------------

def _donor_runs(donors: set[int]) -> list[tuple[int, int]]:
    """Maximal runs [a, b] of consecutive row indices."""
    runs = []
    for r in sorted(donors):
        if runs and r == runs[-1][1] + 1:
            runs[-1][1] = r
        else:
            runs.append([r, r])
    return [(a, b) for a, b in runs]


def _risky_link(snapshot: np.ndarray, colw: np.ndarray, donor: int, rec: int) -> bool:
    """True when rec ^= donor would drop some weight-2 column to weight 1."""
    shared = (snapshot[donor] & snapshot[rec]).astype(bool)
    return bool((colw[shared] <= 2).any())


def _repair_phase(snapshot: np.ndarray, colw: np.ndarray, bad: np.ndarray) -> np.ndarray:
    """One round of adjacent-row additions against a fixed snapshot.

    Every row holding the lone 1 of some weight-1 column donates its old
    content into a neighbor.  Donors are grouped into consecutive runs and
    each run donates in a single direction, so the overall transform is
    triangular and therefore invertible; every new row is the sum of at
    most three adjacent originals, keeping the matrix sparse.  A run is
    extended when its final recipient would lose coverage of a weight-2
    column it shares with the last donor (the interior of a run heals
    itself: whatever a recipient cancels, the next recipient inherits).
    """
    rows = snapshot.shape[0]
    donors = {int(np.nonzero(snapshot[:, c])[0][0]) for c in bad}
    if rows == 1:
        raise ValueError("single-row matrix cannot reach column weight 2")

    while True:
        grew = False
        for a, b in _donor_runs(donors):
            if b - a + 1 == rows:
                continue
            if b < rows - 1:
                if _risky_link(snapshot, colw, b, b + 1) and b + 1 not in donors:
                    donors.add(b + 1)
                    grew = True
            else:
                if _risky_link(snapshot, colw, a, a - 1) and a - 1 not in donors:
                    donors.add(a - 1)
                    grew = True
        if not grew:
            break

    h = snapshot.copy()
    for a, b in _donor_runs(donors):
        if b - a + 1 == rows:
            if rows < 3:
                # No invertible adjacent-sum transform covers every column
                # twice on fewer than three rows; let the phase cap fire.
                if rows == 2:
                    h[1] ^= snapshot[0]
                continue
            # Every row donates: new row k is the sum of old rows k and
            # k+1, with the last row absorbing the final three.  Each old
            # row then appears in two new rows, and the transform is
            # invertible (the bidiagonal rows span the even-parity
            # subspace and the odd-weight tail row is outside it).
            for k in range(rows - 1):
                h[k] ^= snapshot[k + 1]
            h[rows - 1] ^= snapshot[rows - 3]
            h[rows - 1] ^= snapshot[rows - 2]
        elif b < rows - 1:
            for k in range(a, b + 1):
                h[k + 1] ^= snapshot[k]
        else:
            for k in range(a, b + 1):
                h[k - 1] ^= snapshot[k]
    return h


def _repair_block(block: np.ndarray, name: str) -> np.ndarray:
    h = block.copy()
    rows = h.shape[0]
    if (h.sum(axis=0) == 0).any():
        raise ValueError(f"{name}: all-zero column cannot reach weight 2")
    for _ in range(4 * rows):
        colw = h.sum(axis=0)
        bad = np.nonzero(colw == 1)[0]
        if bad.size == 0:
            return h
        h = _repair_phase(h, colw, bad)
    raise ValueError(f"{name}: column-weight repair did not converge")


def fix_column_weights(pair: CssPair) -> CssPair:
    """Row-reduce each block until every column has weight at least 2.

    Row additions preserve the row space of each block, hence the code and
    the CSS orthogonality.  Raises ValueError when no sequence of
    adjacent-row additions can succeed (for example an all-zero column).
    """
    h_x = _repair_block(pair.h_x, "h_x")
    h_z = _repair_block(pair.h_z, "h_z")
    return CssPair(h_x, h_z)


def css_to_stabilizer(pair: CssPair) -> StabilizerCode:
    """Stack X-type rows from h_x above Z-type rows from h_z."""
    m_x, m_z, n = pair.m_x, pair.m_z, pair.n
    check_x = np.vstack([pair.h_x, np.zeros((m_z, n), dtype=np.uint8)])
    check_z = np.vstack([np.zeros((m_x, n), dtype=np.uint8), pair.h_z])
    return StabilizerCode(check_x, check_z)


def css_blocks(code: StabilizerCode) -> CssPair | None:
    """Recover the (h_x, h_z) blocks when every row is purely X- or Z-type;
    None for codes with mixed rows."""
    has_x = code.check_x.any(axis=1)
    has_z = code.check_z.any(axis=1)
    if (has_x & has_z).any():
        return None
    return CssPair(code.check_x[has_x], code.check_z[~has_x], validate=False)


def ds_extend(code: StabilizerCode) -> DsCheckMatrix:
    return DsCheckMatrix(code)


# ---------------------------------------------------------------------------
# Distance-3 sufficient conditions
# ---------------------------------------------------------------------------

@dataclass
class ConditionReport:
    ok: bool
    reasons: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def distance3_conditions(pair: CssPair) -> ConditionReport:
    """Check the sufficient conditions for DS minimum distance >= 3.

    Requires every column of both blocks to have weight >= 2 and both
    classical codes (kernels of the blocks) to have minimum distance >= 3.
    The distance check is the exhaustive weight-1/weight-2 codeword search
    in closed form: no zero columns and no repeated columns.
    """
    reasons: list[str] = []
    for name, h in (("h_x", pair.h_x), ("h_z", pair.h_z)):
        colw = h.sum(axis=0)
        light = np.nonzero(colw < 2)[0]
        if light.size:
            reasons.append(
                f"{name}: columns {light.tolist()[:8]} have weight < 2"
            )
        if (colw == 0).any():
            reasons.append(f"{name}: zero column gives a weight-1 codeword")
            continue
        seen: dict[bytes, int] = {}
        for j in range(h.shape[1]):
            key = h[:, j].tobytes()
            if key in seen:
                reasons.append(
                    f"{name}: columns {seen[key]} and {j} are equal "
                    "(weight-2 codeword)"
                )
                break
            seen[key] = j
    return ConditionReport(not reasons, reasons)


# ---------------------------------------------------------------------------
# Bounded search for the DS minimum distance
# ---------------------------------------------------------------------------

def _pack_bits(bits: np.ndarray) -> int:
    return int.from_bytes(np.packbits(bits).tobytes(), "big")


def _single_syndromes(code: StabilizerCode) -> list[list[int]]:
    """syns[n][w-1] = packed syndrome of symbol w in {X,Y,Z} at qubit n."""
    symbols = code.symbols
    out: list[list[int]] = []
    for n in range(code.n):
        col = symbols[:, n]
        out.append([_pack_bits(COMM[w, col]) for w in (1, 2, 3)])
    return out


def _combo_iter(syns, n_qubits, size, start=0, positions=(), codes=(), acc=0):
    """Yield (positions, symbol codes, XORed packed syndrome) for every
    ascending support of the given size with all symbol assignments."""
    if size == 0:
        yield positions, codes, acc
        return
    for n in range(start, n_qubits - size + 1):
        for w in (1, 2, 3):
            yield from _combo_iter(
                syns, n_qubits, size - 1, n + 1,
                positions + (n,), codes + (w,), acc ^ syns[n][w - 1],
            )


def _candidate_count(n_qubits: int, size: int) -> int:
    return math.comb(n_qubits, size) * 3 ** size


def ds_min_distance_bounded(
    ds: DsCheckMatrix, w_max: int, *, max_candidates: int = 20_000_000
) -> tuple[bool, DsError | None]:
    """Search every joint error of weight <= w_max lying in the DS kernel
    but outside the stabilizer set; return (found, minimal witness).

    Membership in the DS kernel forces the flip part to equal the exact
    syndrome of the data part, so the search enumerates data supports only:
    a data error of weight w contributes its syndrome weight on top.  At
    data weight w_max only zero-syndrome errors can stay within budget;
    those are found with a meet-in-the-middle pass over the syndrome table.
    """
    code = ds.base
    n_q = code.n
    if w_max < 0:
        raise ValueError("w_max must be nonnegative")
    if w_max == 0:
        return False, None

    total = sum(_candidate_count(n_q, s) for s in range(1, w_max))
    total += _candidate_count(n_q, max(w_max - 1, 0))
    if total > max_candidates:
        raise ValueError(
            f"search would enumerate ~{total} candidates "
            f"(cap {max_candidates}); lower w_max or raise the cap"
        )

    syns = _single_syndromes(code)
    best: tuple[int, tuple, tuple, int] | None = None

    def consider(positions, codes_, syn_int, wt):
        nonlocal best
        if best is not None and wt >= best[0]:
            return
        if syn_int == 0:
            vec = np.zeros(2 * n_q, dtype=np.uint8)
            for pos, w in zip(positions, codes_):
                xb, zb = (0, 0) if w == 0 else ((1, 0), (1, 1), (0, 1))[w - 1]
                vec[pos] = xb
                vec[n_q + pos] = zb
            if code.span.contains(vec):
                return
        best = (wt, positions, codes_, syn_int)

    # Data weights below w_max: the determined flip part may be nonzero.
    for size in range(1, w_max):
        for positions, codes_, acc in _combo_iter(syns, n_q, size):
            wt = size + acc.bit_count()
            if wt <= w_max:
                consider(positions, codes_, acc, wt)

    # Data weight exactly w_max: flips must vanish, so the last coordinate
    # is looked up instead of enumerated.
    by_syndrome: dict[int, list[tuple[int, int]]] = {}
    for n in range(n_q):
        for w in (1, 2, 3):
            by_syndrome.setdefault(syns[n][w - 1], []).append((n, w))
    for positions, codes_, acc in _combo_iter(syns, n_q, w_max - 1):
        last_start = positions[-1] if positions else -1
        for n, w in by_syndrome.get(acc, ()):
            if n > last_start:
                consider(positions + (n,), codes_ + (w,), 0, w_max)

    if best is None:
        return False, None
    wt, positions, codes_, syn_int = best
    word = np.zeros(n_q, dtype=np.int64)
    for pos, w in zip(positions, codes_):
        word[pos] = w
    data = PauliString.from_codes(word)
    flips = pauli_syndrome(data, code)
    assert _pack_bits(flips) == syn_int and data.weight + int(flips.sum()) == wt
    return True, DsError(data, flips)


# ---------------------------------------------------------------------------
# Built-in codes and serialization
# ---------------------------------------------------------------------------

def hp_129_28(*, repair: bool = True) -> DsCheckMatrix:
    """The [[129,28|101]] hypergraph-product DS code.

    Built from the [7,4,3] and [15,7,5] cyclic BCH parity checks; with
    ``repair`` the column-weight fix is applied so every column of both
    blocks has weight at least 2.
    """
    pair = hypergraph_product(bch_parity_matrix(7, 4), bch_parity_matrix(15, 7))
    if repair:
        pair = fix_column_weights(pair)
    return ds_extend(css_to_stabilizer(pair))


def toy_5_1(*, repair: bool = False) -> DsCheckMatrix:
    """The [[5,1]] hypergraph product of two length-2 repetition checks."""
    rep = np.array([[1, 1]], dtype=np.uint8)
    pair = hypergraph_product(rep, rep)
    if repair:
        pair = fix_column_weights(pair)
    return ds_extend(css_to_stabilizer(pair))


BUILT_IN_CODES = {
    "hp-129-28": hp_129_28,
    "hp-129-28-raw": lambda: hp_129_28(repair=False),
    "toy-5-1": toy_5_1,
}


def built_in_code(name: str) -> DsCheckMatrix:
    try:
        factory = BUILT_IN_CODES[name]
    except KeyError:
        raise ValueError(
            f"unknown code {name!r}; available: {sorted(BUILT_IN_CODES)}"
        ) from None
    return factory()


def save_code_text(code: StabilizerCode, path) -> None:
    """Write ``N K M`` header plus one row of I/X/Y/Z characters per check."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{code.n} {code.k} {code.m}\n")
        for m in range(code.m):
            fh.write(str(code.row(m)) + "\n")


def load_code_text(path) -> StabilizerCode:
    with open(path, "r", encoding="ascii") as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty code file")
    try:
        n, k, m = (int(tok) for tok in lines[0].split())
    except ValueError:
        raise ValueError("header must be three integers: N K M") from None
    rows = lines[1:]
    if len(rows) != m:
        raise ValueError(f"expected {m} rows, found {len(rows)}")
    if any(len(r) != n for r in rows):
        raise ValueError(f"every row must have length {n}")
    code = StabilizerCode.from_strings(rows)
    if code.k != k:
        raise ValueError(f"header K={k} but computed K={code.k}")
    return code
