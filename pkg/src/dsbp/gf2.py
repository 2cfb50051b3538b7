"""Dense bit-matrix linear algebra over GF(2).

Matrices are 2-D numpy arrays of dtype uint8 holding 0/1 entries; vectors
are 1-D uint8 arrays.  All operations are pure: inputs are never modified.
"""
from __future__ import annotations

import numpy as np

__all__ = [
    "as_bit_matrix",
    "rank",
    "row_reduce",
    "in_row_span",
    "multiply_transpose",
    "SpanChecker",
    "load_matrix_text",
    "save_matrix_text",
    "parse_matrix_text",
    "format_matrix_text",
]


def as_bit_matrix(m) -> np.ndarray:
    """Coerce to a 2-D uint8 array with entries reduced mod 2."""
    a = np.asarray(m, dtype=np.uint8) & 1
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D bit matrix, got ndim={a.ndim}")
    return a


def row_reduce(m) -> tuple[np.ndarray, list[int]]:
    """Row-reduce over GF(2).

    Returns (rref, pivot_cols) where rref contains only the nonzero rows
    (one per pivot, in pivot-column order) of the reduced row echelon form.
    """
    a = as_bit_matrix(m).copy()
    rows, cols = a.shape
    pivot_cols: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = None
        for i in range(r, rows):
            if a[i, c]:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != r:
            a[[r, pivot]] = a[[pivot, r]]
        # Clear column c everywhere else.
        hits = np.nonzero(a[:, c])[0]
        for i in hits:
            if i != r:
                a[i, :] ^= a[r, :]
        pivot_cols.append(c)
        r += 1
    return a[: len(pivot_cols)].copy(), pivot_cols


def rank(m) -> int:
    """Rank of a bit matrix over GF(2)."""
    _, pivots = row_reduce(m)
    return len(pivots)


def in_row_span(v, m) -> bool:
    """True iff ``v`` is a GF(2) linear combination of the rows of ``m``."""
    a = as_bit_matrix(m)
    vec = np.asarray(v, dtype=np.uint8) & 1
    if vec.ndim != 1 or vec.shape[0] != a.shape[1]:
        raise ValueError(
            f"vector length {vec.shape} does not match matrix columns {a.shape[1]}"
        )
    return SpanChecker(a).contains(vec)


def multiply_transpose(a, b) -> np.ndarray:
    """Return a @ b.T over GF(2)."""
    am = as_bit_matrix(a)
    bm = as_bit_matrix(b)
    if am.shape[1] != bm.shape[1]:
        raise ValueError(
            f"column mismatch: {am.shape[1]} vs {bm.shape[1]}"
        )
    prod = am.astype(np.int64) @ bm.astype(np.int64).T
    return (prod & 1).astype(np.uint8)


class SpanChecker:
    """Precomputed row-space membership tests for one matrix.

    Reduction against a cached RREF makes repeated queries cheap; the
    matrix handed in is not referenced afterwards.
    """

    def __init__(self, m):
        self._rref, self._pivots = row_reduce(m)
        self.ncols = as_bit_matrix(m).shape[1]

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, v) -> np.ndarray:
        """Residual of ``v`` after elimination by the cached pivot rows."""
        vec = (np.asarray(v, dtype=np.uint8) & 1).copy()
        if vec.shape != (self.ncols,):
            raise ValueError(
                f"vector shape {vec.shape} does not match ({self.ncols},)"
            )
        for i, c in enumerate(self._pivots):
            if vec[c]:
                vec ^= self._rref[i]
        return vec

    def contains(self, v) -> bool:
        return not self.reduce(v).any()


def parse_matrix_text(text: str) -> np.ndarray:
    """Parse a matrix of '0'/'1' characters, one row per line."""
    rows = []
    for ln, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if set(line) - {"0", "1"}:
            raise ValueError(f"line {ln}: expected only '0'/'1' characters")
        rows.append([int(ch) for ch in line])
    if not rows:
        raise ValueError("empty matrix file")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged rows in matrix file")
    return np.array(rows, dtype=np.uint8)


def format_matrix_text(m) -> str:
    a = as_bit_matrix(m)
    return "\n".join("".join(str(int(b)) for b in row) for row in a) + "\n"


def load_matrix_text(path) -> np.ndarray:
    with open(path, "r", encoding="ascii") as fh:
        return parse_matrix_text(fh.read())


def save_matrix_text(m, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_matrix_text(m))
