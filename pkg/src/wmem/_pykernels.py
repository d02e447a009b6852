"""Numpy implementation of the episode kernels.

Mirrors ``_ckernels.pyx`` draw for draw: every uniform is a pure function of
``(seed, trial, draw)`` so batches can be split arbitrarily.
"""
from __future__ import annotations

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_STREAM = np.uint64(0xD1B54A32D192ED03)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30, _S27, _S31, _S11 = (np.uint64(s) for s in (30, 27, 31, 11))
_INV53 = 1.0 / (1 << 53)

# draw slots within one trial
DRAW_ARRIVAL = 0
DRAW_BINOMIAL = 1
DRAW_FIRST_BIT = 2

# sequential inversion is safe while (1-p)**n with p <= 1/2 stays normal
MAX_INVERSION_BITS = 1000


def _mix(z):
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


def trial_keys(seed: int, first: int, count: int) -> np.ndarray:
    with np.errstate(over="ignore"):
        base = _mix(np.uint64(seed) + _GOLDEN)
        idx = np.arange(first + 1, first + count + 1, dtype=np.uint64)
        return _mix(base + idx * _GOLDEN)


def uniforms(keys: np.ndarray, draw) -> np.ndarray:
    """Uniform doubles in [0, 1) for each key at the given draw slot(s)."""
    with np.errstate(over="ignore"):
        d = np.asarray(draw, dtype=np.uint64) + np.uint64(1)
        return (_mix(keys + d * _STREAM) >> _S11).astype(np.float64) * _INV53


def _binomial_inversion(u: np.ndarray, n: int, log_q: np.ndarray) -> np.ndarray:
    """Invert Binomial(n, p) with p = 1 - exp(log_q), elementwise."""
    out = np.zeros(u.shape, dtype=np.int64)
    p = -np.expm1(log_q)
    flip = p > 0.5
    # sample the complement count when p > 1/2 so the start pmf cannot underflow
    with np.errstate(divide="ignore", invalid="ignore"):
        log_start = np.where(flip, n * np.log(p), n * log_q)
        ratio = np.where(flip, (1.0 - p) / p, p / (1.0 - p))
    pmf = np.exp(log_start)
    cdf = pmf.copy()
    active = (p > 0.0) & (u > cdf)
    k = 0
    while active.any() and k < n:
        pmf = np.where(active, pmf * ((n - k) / (k + 1)) * ratio, pmf)
        k += 1
        out[active] = k
        cdf = np.where(active, cdf + pmf, cdf)
        active &= u > cdf
    return np.where(flip, n - out, out)


def _bitwise_errors(keys: np.ndarray, n: int, m: np.ndarray, log_q1: float) -> np.ndarray:
    """Count cells whose first failing refresh falls within their ``m`` refreshes."""
    errors = np.zeros(keys.shape, dtype=np.int64)
    if log_q1 == 0.0:
        return errors
    mf = m.astype(np.float64)
    for j in range(n):
        u = uniforms(keys, DRAW_FIRST_BIT + j)
        # refreshes survived before the first transition: floor(log1p(-u) / log q)
        errors += (np.log1p(-u) / log_q1 < mf).astype(np.int64)
    return errors


def proposed_batch(lam, start, tau, log_q1, n_bits, bitwise, seed, first, count):
    """Arrival time, activation flag, refresh count and bit errors per trial."""
    keys = trial_keys(seed, first, count)
    t_q = -np.log1p(-uniforms(keys, DRAW_ARRIVAL)) / lam
    activated = start < t_q
    m = np.where(activated, np.floor((t_q - start) / tau), 0.0).astype(np.int64)
    if bitwise or n_bits > MAX_INVERSION_BITS:
        errors = _bitwise_errors(keys, n_bits, m, log_q1)
    else:
        errors = _binomial_inversion(uniforms(keys, DRAW_BINOMIAL), n_bits, m * log_q1)
    errors = np.where(activated, errors, 0)
    return t_q, activated, m, errors


def baseline_batch(lam, tau0, seed, first, count):
    keys = trial_keys(seed, first, count)
    t_q = -np.log1p(-uniforms(keys, DRAW_ARRIVAL)) / lam
    return t_q, np.floor(t_q / tau0).astype(np.int64)


def retention_batch(m, log_q1, n_bits, seed, first, count):
    """Bit errors after exactly ``m`` refreshes, simulated cell by cell."""
    keys = trial_keys(seed, first, count)
    return _bitwise_errors(keys, n_bits, np.full(count, m, dtype=np.int64), log_q1)
