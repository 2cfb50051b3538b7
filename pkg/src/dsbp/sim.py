"""Monte Carlo harness: campaigns, benchmark curves, and adjudication.

A campaign point samples joint errors, decodes, and counts block errors.
A block error is any trial where the decoder fails to converge or the
residual data error falls outside the stabilizer group; correctness of
the estimated syndrome flips is deliberately not part of the criterion,
since a converged estimate already reproduces the observed syndrome and
residual flip misidentification cannot touch the data.

Per-trial generators are derived from (seed, trial index), so a campaign
is reproducible and any future partitioning of trials across workers
cannot change its outcome.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import channels, decoder, tanner
from .codes import DsCheckMatrix, StabilizerCode
from .pauli import DsError, PauliString, pauli_mul

__all__ = [
    "MEASUREMENT_NS",
    "LOOKUP_GAMMA2",
    "BddParams",
    "FidelityParams",
    "StopRule",
    "TrialStats",
    "is_logical_error",
    "bdd_curve",
    "fidelity_lambda",
    "rescale_by_fidelity",
    "run_campaign",
    "weight_one_errors",
    "weight_one_report",
    "wilson_interval",
    "CSV_HEADER",
    "csv_row",
]

# One syndrome-measurement round on the reference hardware, in nanoseconds.
MEASUREMENT_NS = 740.0

# Fraction of weight-2 errors a radius-2 lookup table corrects on the
# [[129,28]] code; used as the benchmark curve's gamma_2.
LOOKUP_GAMMA2 = 0.9873

_Z95 = 1.959963984540054


@dataclass(frozen=True)
class BddParams:
    """Generalized bounded-distance benchmark: gamma[j] is the fraction of
    weight-j errors assumed corrected, j = 0..t."""

    n: int
    t: int
    gamma: tuple[float, ...]

    def __post_init__(self):
        gamma = tuple(float(g) for g in self.gamma)
        if len(gamma) != self.t + 1:
            raise ValueError(f"need t+1={self.t + 1} gamma values, got {len(gamma)}")
        if any(not 0.0 <= g <= 1.0 for g in gamma):
            raise ValueError("every gamma must lie in [0, 1]")
        object.__setattr__(self, "gamma", gamma)


@dataclass(frozen=True)
class FidelityParams:
    """Exponential fidelity decay over an operation of tau nanoseconds."""

    tau: float

    def __post_init__(self):
        if self.tau <= 0:
            raise ValueError(f"tau must be positive, got {self.tau}")

    def decay_rate(self, eps: float) -> float:
        return fidelity_lambda(eps, self.tau)


@dataclass(frozen=True)
class StopRule:
    """Stop once min_errors block errors are collected, or at max_trials."""

    min_errors: int = 100
    max_trials: int = 10_000_000

    def __post_init__(self):
        if self.min_errors < 0 or self.max_trials < 1:
            raise ValueError("invalid stopping rule")

    def done(self, trials: int, errors: int) -> bool:
        return errors >= self.min_errors or trials >= self.max_trials


@dataclass
class TrialStats:
    trials: int
    converged: int
    logical_errors: int
    seed: int
    params: channels.ChannelParams

    @property
    def rate(self) -> float:
        return self.logical_errors / self.trials if self.trials else 0.0

    def wilson(self) -> tuple[float, float]:
        return wilson_interval(self.logical_errors, self.trials)


def wilson_interval(k: int, n: int, z: float = _Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if n == 0:
        return 0.0, 1.0
    p = k / n
    denom = 1.0 + z * z / n
    center = (p + z * z / (2 * n)) / denom
    half = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def is_logical_error(e_hat: PauliString, e_true: PauliString,
                     code: StabilizerCode) -> bool:
    """False (success) iff the residual e_hat * e_true is a stabilizer."""
    return not code.contains(pauli_mul(e_hat, e_true))


def bdd_curve(p: BddParams, eps: float) -> float:
    """Block error rate of the generalized bounded-distance benchmark."""
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"eps must be in [0, 1], got {eps}")
    caught = 0.0
    for j, g in enumerate(p.gamma):
        caught += g * math.comb(p.n, j) * eps**j * (1.0 - eps) ** (p.n - j)
    return 1.0 - caught


def fidelity_lambda(eps: float, tau: float) -> float:
    """Decay rate lambda with 1 - eps = exp(-lambda * tau)."""
    if not 0.0 <= eps < 1.0:
        raise ValueError(f"eps must be in [0, 1), got {eps}")
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau}")
    return -math.log1p(-eps) / tau


def rescale_by_fidelity(points, r: int):
    """Map (eps, rate) points to (lambda, rate) with tau = r rounds.

    The error rate axis is untouched; only the x coordinate is rescaled to
    the decay rate corresponding to r measurement rounds of 740 ns each.
    """
    tau = r * MEASUREMENT_NS
    return [(fidelity_lambda(eps, tau), rate) for eps, rate in points]


_DECODERS = {
    "parallel": decoder.decode_parallel,
    "serial": decoder.decode_serial,
}


def run_campaign(ds: DsCheckMatrix, schedule: str, ch: channels.ChannelParams,
                 stop: StopRule, seed: int, *, mode: str = "ds",
                 max_iter: int = 12, graph: tanner.TannerGraph | None = None) -> TrialStats:
    """Monte Carlo block-error estimation for one parameter point.

    mode "ds" initializes the decoder's syndrome priors at the channel's
    crossover rate; mode "plain" initializes them at zero regardless, which
    reduces the decoder to ordinary quaternary BP on the bare check matrix
    (the usual partner of repeated measurement with majority vote).
    """
    if schedule not in _DECODERS:
        raise ValueError(f"schedule must be one of {sorted(_DECODERS)}")
    if mode not in ("ds", "plain"):
        raise ValueError(f"mode must be 'ds' or 'plain', got {mode!r}")
    decode = _DECODERS[schedule]
    code = ds.base
    if graph is None:
        graph = tanner.build(ds)
    eps_s_dec = ch.eps_s if mode == "ds" else 0.0
    priors = decoder.init_priors(code.n, code.m, ch.eps_d, eps_s_dec)

    trials = converged = errors = 0
    while not stop.done(trials, errors):
        rng = np.random.default_rng([seed, trials])
        e_true = channels.sample_depolarizing(code.n, ch.eps_d, rng)
        z = channels.measure_with_votes(e_true, code, ch.eps_s, ch.repeats, rng)
        res = decode(graph, z, priors, max_iter=max_iter)
        trials += 1
        if res.converged:
            converged += 1
        if not res.converged or is_logical_error(res.data_est, e_true, code):
            errors += 1
    return TrialStats(
        trials=trials,
        converged=converged,
        logical_errors=errors,
        seed=seed,
        params=ch,
    )


def weight_one_errors(ds: DsCheckMatrix):
    """All 3N + M joint errors of weight one, data singles first."""
    code = ds.base
    zero_flips = np.zeros(code.m, dtype=np.uint8)
    for n in range(code.n):
        for w in (1, 2, 3):
            word = np.zeros(code.n, dtype=np.int64)
            word[n] = w
            yield DsError(PauliString.from_codes(word), zero_flips)
    for m in range(code.m):
        flips = np.zeros(code.m, dtype=np.uint8)
        flips[m] = 1
        yield DsError(PauliString.identity(code.n), flips)


def weight_one_report(ds: DsCheckMatrix, schedule: str = "serial", *,
                      eps_d: float = 1e-3, eps_s: float = 1e-3,
                      max_iter: int = 12) -> tuple[int, int, list[DsError]]:
    """Decode every weight-one joint error; returns (successes, total,
    failed errors).

    Success requires convergence, a residual data error inside the
    stabilizer group, and exact recovery of the flip pattern.
    """
    decode = _DECODERS[schedule]
    code = ds.base
    graph = tanner.build(ds)
    priors = decoder.init_priors(code.n, code.m, eps_d, eps_s)
    from .pauli import noisy_syndrome

    total = successes = 0
    failed: list[DsError] = []
    for err in weight_one_errors(ds):
        z = noisy_syndrome(err.data, err.synd, code)
        res = decode(graph, z, priors, max_iter=max_iter)
        total += 1
        ok = (
            res.converged
            and not is_logical_error(res.data_est, err.data, code)
            and np.array_equal(res.synd_est, err.synd)
        )
        if ok:
            successes += 1
        else:
            failed.append(err)
    return successes, total, failed


CSV_HEADER = ("code,schedule,mode,eps_d,eps_s,r,trials,converged,"
              "logical_errors,rate,ci_lo,ci_hi,seed")


def csv_row(code_name: str, schedule: str, mode: str, stats: TrialStats) -> str:
    lo, hi = stats.wilson()
    ch = stats.params
    return (
        f"{code_name},{schedule},{mode},{ch.eps_d:.10g},{ch.eps_s:.10g},"
        f"{ch.repeats},{stats.trials},{stats.converged},{stats.logical_errors},"
        f"{stats.rate:.10g},{lo:.10g},{hi:.10g},{stats.seed}"
    )


def csv_bdd_row(code_name: str, params: BddParams, eps: float) -> str:
    rate = bdd_curve(params, eps)
    return f"{code_name},-,bdd,{eps:.10g},,,,,,{rate:.10g},,,"
