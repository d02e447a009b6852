"""Parameter presets for the energy-efficiency comparison."""
from __future__ import annotations

from dataclasses import dataclass

from .analysis import EnergyParams, OverheadParams, Scenario
from .optimize import Grid
from .retention import RetentionParams


@dataclass(frozen=True)
class SettingPreset:
    id: int
    t_sigma: float
    w_c: float
    w_l: float
    beta: float

    def scenario(self, lam: float = 0.0025, n_bits: int = 64, delta: float = 0.1, tau0: float = 0.064) -> Scenario:
        """Template scenario; zeta and tau are placeholders for the optimizer."""
        return Scenario(
            lam=lam,
            zeta=0.0,
            tau=tau0,
            retention=RetentionParams(beta=self.beta, n_bits=n_bits, delta=delta, tau0=tau0),
            # only the total overhead matters
            overhead=OverheadParams(t_w=self.t_sigma),
            energy=EnergyParams(w_c=self.w_c, w_l=self.w_l),
        )


SETTINGS = {
    1: SettingPreset(1, t_sigma=0.0, w_c=0.0, w_l=0.0, beta=3200.0),
    2: SettingPreset(2, t_sigma=0.0, w_c=0.0, w_l=0.0, beta=6400.0),
    3: SettingPreset(3, t_sigma=0.0, w_c=0.0, w_l=500.0, beta=3200.0),
    4: SettingPreset(4, t_sigma=100.0, w_c=0.0, w_l=500.0, beta=6400.0),
    5: SettingPreset(5, t_sigma=0.0, w_c=500.0, w_l=500.0, beta=3200.0),
    6: SettingPreset(6, t_sigma=0.0, w_c=1e5, w_l=500.0, beta=3200.0),
}

U_TH_LEVELS = [0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95]

# The reference minimum-energy curves were computed with tau capped at 576 ms;
# the full 64-2560 ms range reaches lower energy at the loosest accuracy floors.
NARROW_TAU_GRID = Grid(tau_max=0.576)
