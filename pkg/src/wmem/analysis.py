"""Closed-form expectations over one Poisson query episode.

The expected retrieval accuracy factorises as ``exp(-lam*(zeta+T)) * A(tau)``
where ``A`` is a finite double sum with alternating inner terms.  In plain
double precision that inner sum loses up to ``log10(C(N,k) 2**k)`` digits, so
the default evaluation runs it in decimal arithmetic with enough guard digits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from decimal import Decimal, localcontext
from functools import lru_cache

import numpy as np

from .retention import RetentionParams, _check_tau

# alternating sums with a larger error budget go to the series
MAX_ALTERNATING_K = 32
_SERIES_CHUNK = 1 << 16


@dataclass(frozen=True)
class OverheadParams:
    t_w: float = 0.0
    t_approx: float = 0.0
    t_l: float = 0.0

    def __post_init__(self):
        for name in ("t_w", "t_approx", "t_l"):
            if not getattr(self, name) >= 0:
                raise ValueError(f"{name} must be nonnegative, got {getattr(self, name)}")

    def total(self) -> float:
        return self.t_w + self.t_approx + self.t_l


@dataclass(frozen=True)
class EnergyParams:
    """Energy per row refresh and the relative cost of the other units.

    ``b_row`` is carried for completeness; the per-episode expectations
    do not scale with it.
    """

    xi_re: float = 1.0
    i_m: int = 1
    b_row: float = 1.0
    w_c: float = 0.0
    w_l: float = 0.0

    def __post_init__(self):
        if not self.xi_re > 0:
            raise ValueError(f"xi_re must be positive, got {self.xi_re}")
        if int(self.i_m) != self.i_m or self.i_m < 1:
            raise ValueError(f"i_m must be a positive integer, got {self.i_m}")
        if not self.b_row > 0:
            raise ValueError(f"b_row must be positive, got {self.b_row}")
        if not (self.w_c >= 0 and self.w_l >= 0):
            raise ValueError(f"w_c and w_l must be nonnegative, got {self.w_c}, {self.w_l}")

    @property
    def unit(self) -> float:
        """Energy of one refresh across all bins."""
        return self.i_m * self.xi_re


@dataclass(frozen=True)
class Scenario:
    lam: float
    zeta: float
    tau: float
    retention: RetentionParams
    overhead: OverheadParams = field(default_factory=OverheadParams)
    energy: EnergyParams = field(default_factory=EnergyParams)

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError(f"lam must be positive, got {self.lam}")
        if not self.zeta >= 0:
            raise ValueError(f"zeta must be nonnegative, got {self.zeta}")
        _check_tau(self.tau, self.retention)

    @property
    def t_sigma(self) -> float:
        return self.overhead.total()

    @property
    def start(self) -> float:
        """Time at which the model is resident and refreshing."""
        return self.zeta + self.t_sigma

    def activation_prob(self) -> float:
        return math.exp(-self.lam * self.start)

    def with_(self, **changes) -> "Scenario":
        return replace(self, **changes)


def _check_arithmetic(arithmetic: str) -> None:
    if arithmetic not in ("extended", "double"):
        raise ValueError(f"arithmetic must be 'extended' or 'double', got {arithmetic!r}")


@lru_cache(maxsize=4096)
def _alternating_factor_extended(lam: float, tau: float, tau0: float, beta: float, n: int, budget: int) -> float:
    amplification = max(math.comb(n, k) * 2**k for k in range(budget + 1))
    with localcontext() as ctx:
        ctx.prec = 30 + len(str(amplification))
        lam_tau = Decimal(lam) * Decimal(tau)
        theta = (Decimal(tau) - Decimal(tau0)) / Decimal(beta)
        one_minus_psi = 1 - (-lam_tau).exp()
        inv = {c: 1 / (1 - (-(lam_tau + c * theta)).exp()) for c in range(n - budget, n + 1)}
        total = Decimal(0)
        for k in range(budget + 1):
            inner = Decimal(0)
            for j in range(k + 1):
                term = math.comb(k, j) * inv[n - k + j]
                inner += -term if j % 2 else term
            total += math.comb(n, k) * inner
        return float(one_minus_psi * total)


def _alternating_factor_double(lam: float, tau: float, tau0: float, beta: float, n: int, budget: int) -> float:
    # literal float64 transcription; kept to reproduce reference values computed that way
    psi = math.exp(-lam * tau)
    pe = 1 - math.exp(-(tau - tau0) / beta)
    qe = 1 - pe
    total = 0.0
    for k in range(budget + 1):
        inner = 0.0
        for j in range(k + 1):
            c = n - k + j
            inner += math.comb(k, j) * (-1) ** j / (1 - psi * qe**c)
        total += (1 - psi) * math.comb(n, k) * inner
    return total


def _series_factor(lam: float, tau: float, tau0: float, beta: float, n: int, budget: int, tol: float) -> float:
    """Sum over completed refresh counts m of Pr(m refreshes) * Pr(errors <= budget | m)."""
    lam_tau = lam * tau
    one_minus_psi = -math.expm1(-lam_tau)
    theta = (tau - tau0) / beta
    # first m with psi**m < tol * (1 - psi)
    m_stop = math.floor(-math.log(tol * one_minus_psi) / lam_tau) + 1
    if budget >= n:
        return -math.expm1(-lam_tau * m_stop)
    ks = np.arange(budget + 1, dtype=np.float64)
    log_binom = np.array([math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1) for k in range(budget + 1)])
    partial = []
    for lo in range(0, m_stop, _SERIES_CHUNK):
        m = np.arange(lo, min(lo + _SERIES_CHUNK, m_stop), dtype=np.float64)
        log_q = -m * theta
        with np.errstate(divide="ignore", invalid="ignore"):
            log_p = np.log(-np.expm1(log_q))
            log_terms = log_binom[None, :] + ks[None, :] * log_p[:, None] + (n - ks)[None, :] * log_q[:, None]
            cdf = np.exp(log_terms)
        # m = 0 or tau = tau0: nothing can have flipped yet
        cdf[log_q == 0.0] = 0.0
        cdf[log_q == 0.0, 0] = 1.0
        weights = np.exp(-lam_tau * m) * one_minus_psi
        partial.append(float(np.sum(weights * np.minimum(cdf.sum(axis=1), 1.0))))
    return math.fsum(partial)


def accuracy_factor(s: Scenario, arithmetic: str = "extended") -> float:
    """The zeta- and overhead-free part of the expected retrieval accuracy."""
    _check_arithmetic(arithmetic)
    p = s.retention
    args = (s.lam, s.tau, p.tau0, p.beta, p.n_bits, p.error_budget())
    if arithmetic == "double":
        return _alternating_factor_double(*args)
    if s.tau == p.tau0:
        return 1.0
    if p.error_budget() > MAX_ALTERNATING_K:
        return _series_factor(*args, tol=1e-15)
    return _alternating_factor_extended(*args)


def expected_accuracy_closed(s: Scenario, arithmetic: str = "extended") -> float:
    """Expected retrieval accuracy of one episode.

    ``arithmetic="double"`` evaluates the alternating sum literally in
    float64; it carries cancellation error of order 1e-5 and exists to
    reproduce numbers computed that way.
    """
    return s.activation_prob() * accuracy_factor(s, arithmetic)


def expected_accuracy_series(s: Scenario, tol: float = 1e-14) -> float:
    """Expected retrieval accuracy by direct summation over the refresh count."""
    if not 0 < tol < 1:
        raise ValueError(f"tol must lie in (0, 1), got {tol}")
    p = s.retention
    return s.activation_prob() * _series_factor(s.lam, s.tau, p.tau0, p.beta, p.n_bits, p.error_budget(), tol)


def mean_refreshes(lam: float, tau: float) -> float:
    """E[floor(t / tau)] for t ~ Exponential(lam), i.e. psi / (1 - psi)."""
    x = lam * tau
    return math.exp(-x) / -math.expm1(-x)


def expected_energy(s: Scenario) -> float:
    e = s.energy
    return s.activation_prob() * (mean_refreshes(s.lam, s.tau) + e.w_c + e.w_l) * e.unit


def baseline_accuracy() -> float:
    return 1.0


def baseline_energy(s: Scenario) -> float:
    """Always-on memory: refreshed at tau0 from the start, model never reloaded."""
    e = s.energy
    return (mean_refreshes(s.lam, s.retention.tau0) + e.w_c) * e.unit


def energy_ratio_factor(s: Scenario) -> float:
    """The zeta- and overhead-free part of the normalized energy."""
    e = s.energy
    psi = math.exp(-s.lam * s.tau)
    psi0 = math.exp(-s.lam * s.retention.tau0)
    a = -math.expm1(-s.lam * s.tau)
    a0 = -math.expm1(-s.lam * s.retention.tau0)
    return (a0 * psi + (e.w_c + e.w_l) * a0 * a) / (psi0 * a + a0 * a * e.w_c)


def normalized_energy(s: Scenario) -> float:
    """Expected energy of the proposed scheme relative to the always-on baseline."""
    return s.activation_prob() * energy_ratio_factor(s)


@dataclass(frozen=True)
class EnergyBreakdown:
    refresh: float
    comm_proc: float
    loading: float

    @property
    def total(self) -> float:
        return self.refresh + self.comm_proc + self.loading


def energy_breakdown(s: Scenario, t_q: float) -> EnergyBreakdown:
    """Energy spent in one episode whose query arrives at ``t_q``."""
    if not t_q > 0:
        raise ValueError(f"t_q must be positive, got {t_q}")
    if t_q <= s.start:
        return EnergyBreakdown(0.0, 0.0, 0.0)
    e = s.energy
    m = math.floor((t_q - s.start) / s.tau)
    return EnergyBreakdown(m * e.unit, e.w_c * e.unit, e.w_l * e.unit)
