"""Grid search for the cheapest (zeta, tau) that meets an accuracy floor."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analysis import Scenario, accuracy_factor, energy_ratio_factor


@dataclass(frozen=True)
class Grid:
    zeta_min: float = 0.0
    zeta_max: float = 250.0
    zeta_step: float = 0.5
    tau_min: float = 0.064
    tau_max: float = 2.560
    tau_step: float = 0.064

    def __post_init__(self):
        if not (self.zeta_step > 0 and self.tau_step > 0):
            raise ValueError("grid steps must be positive")
        if self.zeta_min > self.zeta_max or self.tau_min > self.tau_max:
            raise ValueError("grid minimum exceeds maximum")
        if self.zeta_min < 0:
            raise ValueError(f"zeta grid starts below zero: {self.zeta_min}")

    @staticmethod
    def _axis(lo: float, hi: float, step: float) -> np.ndarray:
        # endpoints inclusive; rounding keeps 0.064 * 3 == 0.192
        n = math.floor((hi - lo) / step + 1e-9) + 1
        return np.array([round(lo + i * step, 12) for i in range(n)])

    def zetas(self) -> np.ndarray:
        return self._axis(self.zeta_min, self.zeta_max, self.zeta_step)

    def taus(self) -> np.ndarray:
        return self._axis(self.tau_min, self.tau_max, self.tau_step)

    @property
    def size(self) -> int:
        return len(self.zetas()) * len(self.taus())


@dataclass(frozen=True)
class SearchResult:
    feasible: bool
    zeta_star: float | None = None
    tau_star: float | None = None
    accuracy: float | None = None
    normalized_energy: float | None = None
    evaluated_points: int = 0


def evaluate_grid(setting: Scenario, grid: Grid) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Expected accuracy and normalized energy on every grid point.

    Both quantities are ``exp(-lam*(zeta+T)) * f(tau)``; the products are
    formed exactly as the scalar functions form them, so each entry equals
    ``expected_accuracy_closed`` / ``normalized_energy`` at that point.
    """
    zetas, taus = grid.zetas(), grid.taus()
    if zetas.size == 0 or taus.size == 0:
        raise ValueError("empty grid")
    if taus[0] < setting.retention.tau0:
        raise ValueError(f"tau grid starts below tau0: {taus[0]}")
    act = np.array([setting.with_(zeta=float(z)).activation_prob() for z in zetas])
    acc_f = np.array([accuracy_factor(setting.with_(tau=float(t))) for t in taus])
    ene_f = np.array([energy_ratio_factor(setting.with_(tau=float(t))) for t in taus])
    return zetas, taus, act[:, None] * acc_f[None, :], act[:, None] * ene_f[None, :]


def _best(zetas, taus, accuracy, energy, u_th) -> SearchResult:
    feasible = accuracy >= u_th
    n = accuracy.size
    if not feasible.any():
        return SearchResult(feasible=False, evaluated_points=n)
    zi, ti = np.nonzero(feasible)
    # lexicographic (energy, zeta, tau); lexsort keys go last-to-first
    order = np.lexsort((taus[ti], zetas[zi], energy[zi, ti]))
    i, j = zi[order[0]], ti[order[0]]
    return SearchResult(
        feasible=True,
        zeta_star=float(zetas[i]),
        tau_star=float(taus[j]),
        accuracy=float(accuracy[i, j]),
        normalized_energy=float(energy[i, j]),
        evaluated_points=n,
    )


def _check_uth(u_th: float) -> None:
    if not 0.0 <= u_th <= 1.0:
        raise ValueError(f"accuracy floor must lie in [0, 1], got {u_th}")


def grid_search_min_energy(setting: Scenario, u_th: float, grid: Grid | None = None) -> SearchResult:
    """Minimum normalized energy subject to expected accuracy >= ``u_th``.

    ``setting`` supplies every parameter except zeta and tau, which are
    overwritten by the grid. Ties go to the smaller zeta, then smaller tau.
    """
    _check_uth(u_th)
    return _best(*evaluate_grid(setting, grid or Grid()), u_th)


def sweep(setting: Scenario, u_th_values, grid: Grid | None = None) -> list[tuple[float, SearchResult]]:
    u_th_values = list(u_th_values)
    for u in u_th_values:
        _check_uth(u)
    if not u_th_values:
        return []
    evaluated = evaluate_grid(setting, grid or Grid())
    return [(u, _best(*evaluated, u)) for u in u_th_values]
