"""DRAM retention model: per-refresh bit errors, absorbing accumulation, Hamming budget.

All times are in seconds, including the decay constant ``beta``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

TAU0 = 0.064

# guards floor(N * delta) against representation error, e.g. 64 * 0.1 -> 6.4
_FLOOR_NUDGE = 1e-12


@dataclass(frozen=True)
class RetentionParams:
    """Decay constants and data-word geometry of the stored model."""

    beta: float
    n_bits: int = 64
    delta: float = 0.1
    tau0: float = TAU0

    def __post_init__(self):
        if not self.tau0 > 0:
            raise ValueError(f"tau0 must be positive, got {self.tau0}")
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if int(self.n_bits) != self.n_bits or self.n_bits < 1:
            raise ValueError(f"n_bits must be a positive integer, got {self.n_bits}")
        if not 0.0 <= self.delta <= 1.0:
            raise ValueError(f"delta must lie in [0, 1], got {self.delta}")

    def error_budget(self) -> int:
        """Largest tolerated number of flipped bits, floor(N * delta)."""
        return min(self.n_bits, math.floor(self.n_bits * self.delta + _FLOOR_NUDGE))

    def log_survival(self, tau: float) -> float:
        """log(1 - P_e(tau)), exact: the survival factor is exp(-(tau - tau0)/beta)."""
        _check_tau(tau, self)
        return -(tau - self.tau0) / self.beta


def _check_tau(tau: float, p: RetentionParams) -> None:
    if not tau >= p.tau0:
        raise ValueError(f"refresh period {tau} s is shorter than tau0 = {p.tau0} s")


def bit_error_prob(tau: float, p: RetentionParams) -> float:
    """Probability that one refresh moves a correct cell into the error state."""
    return -math.expm1(p.log_survival(tau))


def refresh_count(activation_period: float, tau: float) -> int:
    """Number of refreshes completed within the activation period."""
    if activation_period < 0:
        raise ValueError(f"activation period must be nonnegative, got {activation_period}")
    if not tau > 0:
        raise ValueError(f"refresh period must be positive, got {tau}")
    return math.floor(activation_period / tau)


def cumulative_error_prob(m: int, tau: float, p: RetentionParams) -> float:
    """Probability that a cell sits in the absorbing error state after ``m`` refreshes."""
    if m < 0:
        raise ValueError(f"refresh count must be nonnegative, got {m}")
    return -math.expm1(m * p.log_survival(tau))


def hamming_distortion(x: Sequence[int], y: Sequence[int]) -> float:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    if len(x) == 0:
        raise ValueError("empty bit vectors")
    return sum(1 for a, b in zip(x, y) if a != b) / len(x)


def binomial_cdf(budget: int, n: int, log_p: float, log_q: float) -> float:
    """Pr(K <= budget) for K ~ Binomial(n, p), given log p and log(1 - p).

    Terms are formed in log space with log-gamma coefficients and summed in
    increasing k, so n in the tens of thousands is fine.
    """
    if budget >= n:
        return 1.0
    if budget < 0:
        return 0.0
    if log_p == -math.inf:
        return 1.0
    if log_q == -math.inf:
        return 0.0
    lg_n = math.lgamma(n + 1)
    total = 0.0
    for k in range(budget + 1):
        log_term = lg_n - math.lgamma(k + 1) - math.lgamma(n - k + 1) + k * log_p + (n - k) * log_q
        total += math.exp(log_term)
    return min(1.0, max(0.0, total))


def retention_accuracy_at(m: int, tau: float, p: RetentionParams) -> float:
    """Retention accuracy after exactly ``m`` refreshes."""
    if m < 0:
        raise ValueError(f"refresh count must be nonnegative, got {m}")
    log_q = m * p.log_survival(tau)
    if log_q == 0.0:
        return 1.0
    log_p = math.log(-math.expm1(log_q))
    return binomial_cdf(p.error_budget(), p.n_bits, log_p, log_q)


def retention_accuracy(tau: float, activation_period: float, p: RetentionParams) -> float:
    """Probability that the Hamming distortion stays within ``p.delta`` after
    ``floor(activation_period / tau)`` refreshes at period ``tau``.
    """
    _check_tau(tau, p)
    return retention_accuracy_at(refresh_count(activation_period, tau), tau, p)
