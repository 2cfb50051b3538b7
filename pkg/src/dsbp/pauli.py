"""Pauli-string algebra in the binary symplectic representation.

A length-N Pauli word is stored as two bit vectors (x | z) with
X = (1,0), Z = (0,1), Y = (1,1), I = (0,0).  Global phases are discarded
everywhere: syndromes, weights and cosets are all phase-insensitive, so
products reduce to coordinatewise XOR and commutation to a parity of ANDs.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PAULI_CHARS = "IXYZ"

# Symbol codes used throughout: I=0, X=1, Y=2, Z=3.
_CODE_TO_XZ = {0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (0, 1)}
_XZ_TO_CODE = {v: k for k, v in _CODE_TO_XZ.items()}

# COMM[a, b] = 1 iff symbols a and b anticommute.
COMM = np.zeros((4, 4), dtype=np.uint8)
for _a in range(4):
    for _b in range(4):
        _xa, _za = _CODE_TO_XZ[_a]
        _xb, _zb = _CODE_TO_XZ[_b]
        COMM[_a, _b] = (_xa * _zb + _za * _xb) % 2


class PauliString:
    """Immutable N-qubit Pauli word (phase ignored)."""

    __slots__ = ("x", "z")

    def __init__(self, x, z):
        x = np.asarray(x, dtype=np.uint8) & 1
        z = np.asarray(z, dtype=np.uint8) & 1
        if x.shape != z.shape or x.ndim != 1:
            raise ValueError("x and z must be equal-length 1-D bit vectors")
        x.setflags(write=False)
        z.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "z", z)

    def __setattr__(self, name, value):
        raise AttributeError("PauliString is immutable")

    @classmethod
    def from_string(cls, s: str) -> "PauliString":
        codes = []
        for ch in s.upper():
            if ch not in PAULI_CHARS:
                raise ValueError(f"invalid Pauli character {ch!r}")
            codes.append(PAULI_CHARS.index(ch))
        return cls.from_codes(codes)

    @classmethod
    def from_codes(cls, codes) -> "PauliString":
        codes = np.asarray(codes, dtype=np.int64)
        x = np.zeros(codes.shape, dtype=np.uint8)
        z = np.zeros(codes.shape, dtype=np.uint8)
        for c, (xb, zb) in _CODE_TO_XZ.items():
            mask = codes == c
            x[mask] = xb
            z[mask] = zb
        return cls(x, z)

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(np.zeros(n, dtype=np.uint8), np.zeros(n, dtype=np.uint8))

    @property
    def codes(self) -> np.ndarray:
        """Symbol codes (I=0, X=1, Y=2, Z=3) per coordinate."""
        x = self.x.astype(np.int64)
        z = self.z.astype(np.int64)
        return (x + 3 * z - 2 * x * z).astype(np.uint8)

    @property
    def weight(self) -> int:
        """Number of non-identity coordinates."""
        return int(np.count_nonzero(self.x | self.z))

    def __len__(self) -> int:
        return self.x.shape[0]

    def __str__(self) -> str:
        return "".join(PAULI_CHARS[c] for c in self.codes)

    def __repr__(self) -> str:
        return f"PauliString('{self}')"

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliString):
            return NotImplemented
        return (
            len(self) == len(other)
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.z, other.z)
        )

    def __hash__(self) -> int:
        return hash((self.x.tobytes(), self.z.tobytes()))

    def __mul__(self, other: "PauliString") -> "PauliString":
        return pauli_mul(self, other)


def commute_scalar(a: str | int, b: str | int) -> int:
    """0 iff two single Pauli symbols commute."""
    ca = PAULI_CHARS.index(a) if isinstance(a, str) else int(a)
    cb = PAULI_CHARS.index(b) if isinstance(b, str) else int(b)
    return int(COMM[ca, cb])


def commute(e: PauliString, f: PauliString) -> int:
    """Symplectic product: 0 iff the two words commute."""
    if len(e) != len(f):
        raise ValueError(f"length mismatch: {len(e)} vs {len(f)}")
    return int((int(np.dot(e.x, f.z)) + int(np.dot(e.z, f.x))) % 2)


def pauli_mul(e: PauliString, f: PauliString) -> PauliString:
    """Coordinatewise product up to global phase (XOR in the bit view)."""
    if len(e) != len(f):
        raise ValueError(f"length mismatch: {len(e)} vs {len(f)}")
    return PauliString(e.x ^ f.x, e.z ^ f.z)


def syndrome(e: PauliString, code) -> np.ndarray:
    """Binary syndrome of ``e`` against every check row.

    ``code`` is anything exposing ``check_x`` / ``check_z`` bit matrices of
    shape (M, N), e.g. a StabilizerCode.
    """
    cx = code.check_x
    cz = code.check_z
    if cx.shape[1] != len(e):
        raise ValueError(
            f"error length {len(e)} does not match {cx.shape[1]} qubits"
        )
    s = cx.astype(np.int64) @ e.z.astype(np.int64)
    s += cz.astype(np.int64) @ e.x.astype(np.int64)
    return (s & 1).astype(np.uint8)


def noisy_syndrome(e: PauliString, flips, code) -> np.ndarray:
    """Syndrome of ``e`` with each bit XORed by the flip vector."""
    f = np.asarray(flips, dtype=np.uint8) & 1
    s = syndrome(e, code)
    if f.shape != s.shape:
        raise ValueError(f"flip vector shape {f.shape} != syndrome {s.shape}")
    return s ^ f


@dataclass(frozen=True)
class DsError:
    """A joint error: a Pauli word on the data plus syndrome bit flips."""

    data: PauliString
    synd: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.synd, dtype=np.uint8) & 1
        if s.ndim != 1:
            raise ValueError("syndrome part must be a 1-D bit vector")
        s.setflags(write=False)
        object.__setattr__(self, "synd", s)

    @property
    def weight(self) -> int:
        return self.data.weight + int(self.synd.sum())


def ds_inner(a: DsError, b: DsError) -> int:
    """Symplectic product on the data parts plus bit product on the flips."""
    if a.synd.shape != b.synd.shape:
        raise ValueError("syndrome part length mismatch")
    bit = int(np.dot(a.synd, b.synd)) % 2
    return (commute(a.data, b.data) + bit) % 2


def weight(a: DsError) -> int:
    return a.weight
