"""Energy/accuracy model of remotely activated, approximately refreshed DRAM on an IoT device."""
from .analysis import (
    EnergyBreakdown,
    EnergyParams,
    OverheadParams,
    Scenario,
    baseline_accuracy,
    baseline_energy,
    energy_breakdown,
    expected_accuracy_closed,
    expected_accuracy_series,
    expected_energy,
    normalized_energy,
)
from .kernels import BACKEND
from .optimize import Grid, SearchResult, grid_search_min_energy, sweep
from .presets import SETTINGS, SettingPreset
from .retention import (
    RetentionParams,
    bit_error_prob,
    cumulative_error_prob,
    hamming_distortion,
    refresh_count,
    retention_accuracy,
)
from .simulate import (
    EpisodeOutcome,
    EstimateResult,
    TrialStream,
    estimate_baseline,
    estimate_normalized_energy,
    estimate_proposed,
    estimate_retention,
    run_episode,
    run_episode_bitwise,
)

__version__ = "0.1.0"
