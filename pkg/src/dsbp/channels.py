"""Error-model sampling: depolarizing data noise, syndrome bit flips, and
repeated measurement with majority vote.

All samplers take an explicit numpy Generator; the draw order (data error
first, then syndrome bits in index order, then further measurement rounds)
is fixed so paired-seed comparisons across decoders see identical noise.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pauli import PauliString, syndrome

__all__ = [
    "ChannelParams",
    "sample_depolarizing",
    "sample_bsc",
    "measure_with_votes",
]


@dataclass(frozen=True)
class ChannelParams:
    """eps_d: depolarizing rate, eps_s: syndrome crossover rate, repeats:
    measurement rounds fed to the majority vote (odd)."""

    eps_d: float
    eps_s: float
    repeats: int = 1

    def __post_init__(self):
        if not 0.0 <= self.eps_d <= 1.0:
            raise ValueError(f"eps_d must be in [0, 1], got {self.eps_d}")
        if not 0.0 <= self.eps_s <= 1.0:
            raise ValueError(f"eps_s must be in [0, 1], got {self.eps_s}")
        if self.repeats < 1 or self.repeats % 2 == 0:
            raise ValueError(
                f"repeats must be a positive odd count, got {self.repeats}"
            )


def sample_depolarizing(n: int, eps_d: float, rng: np.random.Generator) -> PauliString:
    """Each coordinate is I with probability 1 - eps_d, else uniformly X, Y
    or Z.  One uniform draw per coordinate: the subinterval [0, eps_d) is
    split into thirds for the symbol choice."""
    if not 0.0 <= eps_d <= 1.0:
        raise ValueError(f"eps_d must be in [0, 1], got {eps_d}")
    u = rng.random(n)
    codes = np.zeros(n, dtype=np.int64)
    hit = u < eps_d
    codes[hit & (u < eps_d / 3.0)] = 1
    codes[hit & (u >= eps_d / 3.0) & (u < 2.0 * eps_d / 3.0)] = 2
    codes[hit & (u >= 2.0 * eps_d / 3.0)] = 3
    return PauliString.from_codes(codes)


def sample_bsc(m: int, eps_s: float, rng: np.random.Generator) -> np.ndarray:
    """Independent Bernoulli(eps_s) bits."""
    if not 0.0 <= eps_s <= 1.0:
        raise ValueError(f"eps_s must be in [0, 1], got {eps_s}")
    return (rng.random(m) < eps_s).astype(np.uint8)


def measure_with_votes(e: PauliString, code, eps_s: float, r: int,
                       rng: np.random.Generator) -> np.ndarray:
    """Majority vote over r independent noisy syndrome readouts.

    Each round XORs the exact syndrome with a fresh crossover sample, so
    r = 1 reproduces a single noisy readout bit-for-bit given the same
    generator state.  Even r is refused: a tie rule is not defined.
    """
    if r < 1 or r % 2 == 0:
        raise ValueError(f"repeats must be a positive odd count, got {r}")
    exact = syndrome(e, code)
    votes = np.zeros(exact.shape[0], dtype=np.int64)
    for _ in range(r):
        votes += exact ^ sample_bsc(exact.shape[0], eps_s, rng)
    return (votes > r // 2).astype(np.uint8)
