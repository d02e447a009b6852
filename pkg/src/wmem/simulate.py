"""Seeded Monte Carlo simulation of single query episodes.

Every trial draws its randomness from a counter-based stream keyed by
``(seed, trial index)``, so a batch can be split over any number of workers
and still reduce to bit-identical aggregates.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import kernels
from .analysis import Scenario
from .retention import RetentionParams, refresh_count

CHUNK = 8192
MAX_BITWISE_REFRESHES = 10**6
SEED_MASK = (1 << 64) - 1


class TrialStream(NamedTuple):
    seed: int
    index: int


@dataclass(frozen=True)
class EpisodeOutcome:
    t_q: float
    activated: bool
    bit_errors: int
    refreshes: int
    utility: int
    energy: float


@dataclass(frozen=True)
class EstimateResult:
    mean_utility: float
    mean_energy: float
    stderr_utility: float
    stderr_energy: float
    trials: int
    seed: int


def _check_seed(seed: int) -> int:
    if not 0 <= seed <= SEED_MASK:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return int(seed)


def _chunks(trials: int):
    return [(lo, min(CHUNK, trials - lo)) for lo in range(0, trials, CHUNK)]


def _map_chunks(fn, trials: int, parallelism: int):
    """Run ``fn(first, count)`` over fixed-size chunks; results in trial order."""
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    if parallelism < 1:
        raise ValueError(f"parallelism must be at least 1, got {parallelism}")
    chunks = _chunks(trials)
    if parallelism == 1 or len(chunks) == 1:
        parts = [fn(lo, n) for lo, n in chunks]
    else:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            parts = list(pool.map(lambda c: fn(*c), chunks))
    return [np.concatenate(cols) for cols in zip(*parts)]


def _proposed_arrays(s: Scenario, trials: int, seed: int, bitwise: bool, parallelism: int, backend, first: int = 0):
    k = kernels.get(backend)
    log_q1 = s.retention.log_survival(s.tau)

    def fn(lo, count):
        return k.proposed_batch(s.lam, s.start, s.tau, log_q1, s.retention.n_bits, bitwise, seed, first + lo, count)

    t_q, activated, m, errors = _map_chunks(fn, trials, parallelism)
    utility = (activated & (errors <= s.retention.error_budget())).astype(np.float64)
    e = s.energy
    energy = np.where(activated, (m + (e.w_c + e.w_l)) * e.unit, 0.0)
    return t_q, activated, m, errors, utility, energy


def _baseline_arrays(s: Scenario, trials: int, seed: int, parallelism: int, backend):
    k = kernels.get(backend)

    def fn(first, count):
        return k.baseline_batch(s.lam, s.retention.tau0, seed, first, count)

    t_q, m0 = _map_chunks(fn, trials, parallelism)
    return t_q, (m0 + s.energy.w_c) * s.energy.unit


def _stderr(x: np.ndarray) -> float:
    if x.size < 2:
        return math.nan
    return float(np.std(x, ddof=1) / math.sqrt(x.size))


def _outcome(arrays, i: int = 0) -> EpisodeOutcome:
    t_q, activated, m, errors, utility, energy = arrays
    return EpisodeOutcome(
        t_q=float(t_q[i]),
        activated=bool(activated[i]),
        bit_errors=int(errors[i]),
        refreshes=int(m[i]),
        utility=int(utility[i]),
        energy=float(energy[i]),
    )


def _single(s: Scenario, stream: TrialStream, bitwise: bool, backend: str | None) -> EpisodeOutcome:
    seed = _check_seed(stream.seed)
    arrays = _proposed_arrays(s, 1, seed, bitwise, 1, backend, first=stream.index)
    return _outcome(arrays)


def run_episode(s: Scenario, stream: TrialStream, backend: str | None = None) -> EpisodeOutcome:
    """One episode; bit errors drawn from Binomial(N, P(error after M refreshes))."""
    return _single(s, stream, False, backend)


def run_episode_bitwise(s: Scenario, stream: TrialStream, backend: str | None = None) -> EpisodeOutcome:
    """One episode with every cell followed through its own refresh sequence.

    Each cell leaves the correct state at its first failing refresh (a
    geometric waiting time with per-refresh probability P_e) and never
    returns; it counts as an error if that refresh falls within the M
    refreshes of the episode.
    """
    out = _single(s, stream, True, backend)
    if out.refreshes > MAX_BITWISE_REFRESHES:
        raise ValueError(f"episode needs {out.refreshes} refreshes, above the bitwise limit {MAX_BITWISE_REFRESHES}")
    return out


def estimate_proposed(
    s: Scenario,
    trials: int,
    seed: int,
    parallelism: int = 1,
    bitwise: bool = False,
    backend: str | None = None,
) -> EstimateResult:
    seed = _check_seed(seed)
    *_, utility, energy = _proposed_arrays(s, trials, seed, bitwise, parallelism, backend)
    return EstimateResult(
        mean_utility=float(np.mean(utility)),
        mean_energy=float(np.mean(energy)),
        stderr_utility=_stderr(utility),
        stderr_energy=_stderr(energy),
        trials=trials,
        seed=seed,
    )


def estimate_baseline(
    s: Scenario, trials: int, seed: int, parallelism: int = 1, backend: str | None = None
) -> EstimateResult:
    """Always-on memory refreshed at tau0 from time 0; every query is served."""
    seed = _check_seed(seed)
    _, energy = _baseline_arrays(s, trials, seed, parallelism, backend)
    utility = np.ones_like(energy)
    return EstimateResult(
        mean_utility=float(np.mean(utility)),
        mean_energy=float(np.mean(energy)),
        stderr_utility=_stderr(utility),
        stderr_energy=_stderr(energy),
        trials=trials,
        seed=seed,
    )


def estimate_normalized_energy(
    s: Scenario, trials: int, seed: int, parallelism: int = 1, backend: str | None = None
) -> tuple[float, float]:
    """Ratio of mean proposed to mean always-on energy over paired episodes.

    Both schemes see the same arrival times; the standard error is the
    delta-method one for a ratio of paired means.
    """
    seed = _check_seed(seed)
    *_, energy = _proposed_arrays(s, trials, seed, False, parallelism, backend)
    _, base = _baseline_arrays(s, trials, seed, parallelism, backend)
    mean_base = float(np.mean(base))
    ratio = float(np.mean(energy)) / mean_base
    return ratio, _stderr(energy - ratio * base) / mean_base


def retention_errors(
    m: int, tau: float, p: RetentionParams, trials: int, seed: int, parallelism: int = 1, backend: str | None = None
) -> np.ndarray:
    """Bit-error counts of ``trials`` independent words after exactly ``m`` refreshes."""
    seed = _check_seed(seed)
    if not 0 <= m <= MAX_BITWISE_REFRESHES:
        raise ValueError(f"refresh count {m} outside [0, {MAX_BITWISE_REFRESHES}]")
    k = kernels.get(backend)
    log_q1 = p.log_survival(tau)

    def fn(first, count):
        return (k.retention_batch(m, log_q1, p.n_bits, seed, first, count),)

    (errors,) = _map_chunks(fn, trials, parallelism)
    return errors


def estimate_retention(
    tau: float,
    activation_period: float,
    p: RetentionParams,
    trials: int,
    seed: int,
    parallelism: int = 1,
    backend: str | None = None,
) -> tuple[float, float]:
    """Monte Carlo retention accuracy and its standard error."""
    errors = retention_errors(refresh_count(activation_period, tau), tau, p, trials, seed, parallelism, backend)
    ok = (errors <= p.error_budget()).astype(np.float64)
    return float(np.mean(ok)), _stderr(ok)
