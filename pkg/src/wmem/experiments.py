"""Experiment configuration, runners and CSV/report output."""
from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any

from . import _pykernels
from .analysis import (
    EnergyParams,
    OverheadParams,
    Scenario,
    baseline_energy,
    expected_accuracy_closed,
    expected_accuracy_series,
    expected_energy,
    normalized_energy,
)
from .optimize import Grid, sweep
from .presets import SETTINGS, U_TH_LEVELS
from .retention import RetentionParams, retention_accuracy
from .simulate import (
    estimate_baseline,
    estimate_normalized_energy,
    estimate_proposed,
    estimate_retention,
)

EXPERIMENTS = ("retention-curve", "zeta-sweep", "tau-tradeoff", "min-energy", "validate")
OUTPUT_ENV = "WMEM_OUTPUT_DIR"
MIN_VALIDATE_TRIALS = 10**4
FAULTS = ("tau-ms",)


class ConfigError(ValueError):
    pass


def _steps(lo: float, hi: float, step: float) -> list[float]:
    n = math.floor((hi - lo) / step + 1e-9) + 1
    return [round(lo + i * step, 12) for i in range(n)]


@dataclass
class ExperimentConfig:
    experiment: str
    lam: list[float] = field(default_factory=lambda: [0.0025])
    zeta: list[float] = field(default_factory=lambda: [0.0])
    tau: list[float] = field(default_factory=lambda: [0.128])
    beta: list[float] = field(default_factory=lambda: [6400.0])
    delta: list[float] = field(default_factory=lambda: [0.1])
    q: list[float] = field(default_factory=lambda: [50.0])
    sweep: str = "q"
    n_bits: int = 64
    tau0: float = 0.064
    t_sigma: float = 0.0
    w_c: float = 0.0
    w_l: float = 0.0
    i_m: int = 1
    xi_re: float = 1.0
    settings: list[int] = field(default_factory=lambda: sorted(SETTINGS))
    u_th: list[float] = field(default_factory=lambda: list(U_TH_LEVELS))
    grid: dict[str, float] = field(default_factory=lambda: asdict(Grid()))
    trials: int = 10**4
    seed: int = 1
    parallelism: int = 1
    output_dir: str = "out"
    inject_fault: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def retention(self, beta: float, delta: float) -> RetentionParams:
        return RetentionParams(beta=beta, n_bits=self.n_bits, delta=delta, tau0=self.tau0)

    def scenario(self, lam: float, zeta: float, tau: float, beta: float, delta: float) -> Scenario:
        return Scenario(
            lam=lam,
            zeta=zeta,
            tau=tau,
            retention=self.retention(beta, delta),
            overhead=OverheadParams(t_w=self.t_sigma),
            energy=EnergyParams(xi_re=self.xi_re, i_m=self.i_m, w_c=self.w_c, w_l=self.w_l),
        )


def default_config(experiment: str) -> ExperimentConfig:
    if experiment not in EXPERIMENTS:
        raise ConfigError(f"experiment: unknown {experiment!r}, expected one of {', '.join(EXPERIMENTS)}")
    cfg = ExperimentConfig(experiment=experiment)
    if experiment == "retention-curve":
        cfg.q = _steps(25, 250, 25)
        cfg.tau = [0.064, 0.128, 0.192]
        cfg.beta = [640.0]
    elif experiment == "zeta-sweep":
        cfg.lam = [0.0025, 0.0075]
        cfg.zeta = _steps(0, 250, 25)
    elif experiment == "tau-tradeoff":
        cfg.zeta = [20.0]
        cfg.tau = _steps(0.064, 0.32, 0.032)
        cfg.beta = [3200.0, 6400.0, 9600.0]
    return cfg


# expected type of each scalar field and of each list element
_SCALARS = {
    "experiment": str,
    "sweep": str,
    "n_bits": int,
    "tau0": float,
    "t_sigma": float,
    "w_c": float,
    "w_l": float,
    "i_m": int,
    "xi_re": float,
    "trials": int,
    "seed": int,
    "parallelism": int,
    "output_dir": str,
}
_LISTS = {"lam": float, "zeta": float, "tau": float, "beta": float, "delta": float, "q": float, "settings": int, "u_th": float}

# which sweep lists each experiment reads
_USES = {
    "retention-curve": ("tau", "beta", "delta", "q"),
    "zeta-sweep": ("lam", "zeta", "tau", "beta", "delta"),
    "tau-tradeoff": ("lam", "zeta", "tau", "beta", "delta"),
    "min-energy": ("lam", "delta", "settings", "u_th"),
    "validate": (),
}


def _coerce(name: str, value: Any, kind: type) -> Any:
    if kind is float and isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if kind is int and isinstance(value, int) and not isinstance(value, bool):
        return value
    if kind is str and isinstance(value, str):
        return value
    raise ConfigError(f"{name}: expected {kind.__name__}, got {value!r}")


def parse_config(data: dict[str, Any]) -> ExperimentConfig:
    if not isinstance(data, dict):
        raise ConfigError("config: expected a JSON object")
    if "experiment" not in data:
        raise ConfigError("experiment: missing")
    cfg = default_config(_coerce("experiment", data["experiment"], str))
    known = {f.name for f in fields(ExperimentConfig)}
    for key, value in data.items():
        if key not in known:
            raise ConfigError(f"{key}: unknown field")
        if key in _SCALARS:
            setattr(cfg, key, _coerce(key, value, _SCALARS[key]))
        elif key in _LISTS:
            if not isinstance(value, list):
                raise ConfigError(f"{key}: expected a list")
            setattr(cfg, key, [_coerce(f"{key}[{i}]", v, _LISTS[key]) for i, v in enumerate(value)])
        elif key == "grid":
            if not isinstance(value, dict):
                raise ConfigError("grid: expected an object")
            merged = dict(cfg.grid)
            for gk, gv in value.items():
                if gk not in merged:
                    raise ConfigError(f"grid.{gk}: unknown field")
                merged[gk] = _coerce(f"grid.{gk}", gv, float)
            cfg.grid = merged
        elif key == "inject_fault":
            if value is not None and value not in FAULTS:
                raise ConfigError(f"inject_fault: expected null or one of {FAULTS}, got {value!r}")
            cfg.inject_fault = value
    validate_config(cfg)
    return cfg


def validate_config(cfg: ExperimentConfig) -> None:
    for name in _USES[cfg.experiment]:
        if not getattr(cfg, name):
            raise ConfigError(f"{name}: sweep list must be non-empty")
    if cfg.sweep not in ("q", "delta"):
        raise ConfigError(f"sweep: expected 'q' or 'delta', got {cfg.sweep!r}")
    if cfg.trials < 1:
        raise ConfigError(f"trials: must be at least 1, got {cfg.trials}")
    if cfg.experiment == "validate" and cfg.trials < MIN_VALIDATE_TRIALS:
        raise ConfigError(f"trials: validate needs at least {MIN_VALIDATE_TRIALS}, got {cfg.trials}")
    if not 0 <= cfg.seed < 2**64:
        raise ConfigError(f"seed: must be a 64-bit unsigned integer, got {cfg.seed}")
    if cfg.parallelism < 1:
        raise ConfigError(f"parallelism: must be at least 1, got {cfg.parallelism}")
    for sid in cfg.settings:
        if sid not in SETTINGS:
            raise ConfigError(f"settings: unknown setting {sid}, expected 1-6")
    for u in cfg.u_th:
        if not 0 <= u <= 1:
            raise ConfigError(f"u_th: {u} outside [0, 1]")
    for q in cfg.q:
        if q < 0:
            raise ConfigError(f"q: activation period {q} is negative")
    try:
        Grid(**cfg.grid)
        for lam in cfg.lam:
            for zeta in cfg.zeta:
                for tau in cfg.tau:
                    for beta in cfg.beta:
                        for delta in cfg.delta:
                            cfg.scenario(lam, zeta, tau, beta, delta)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"scenario: {exc}") from None


def load_config(path: str | os.PathLike) -> ExperimentConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: invalid JSON in {path}: {exc}") from None
    return parse_config(data)


def row_seed(seed: int, row: int) -> int:
    """Independent per-row seed derived from the run seed."""
    return int(_pykernels.trial_keys(seed, row, 1)[0])


def _fmt(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return "%.15g" % value


def to_csv(header: list[str], rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def cmd_retention_curve(cfg: ExperimentConfig) -> str:
    """Analytic vs cell-by-cell simulated retention accuracy.

    ``sweep="q"`` varies the activation period for each tau (first beta,
    first delta); ``sweep="delta"`` varies delta for each beta (first tau,
    first q).
    """
    header = ["sweep_var", "tau_s", "beta_s", "analytic", "simulated", "stderr"]
    if cfg.sweep == "q":
        points = [(q, tau, cfg.beta[0], cfg.delta[0], q) for tau in cfg.tau for q in cfg.q]
    else:
        points = [(d, cfg.tau[0], beta, d, cfg.q[0]) for beta in cfg.beta for d in cfg.delta]
    rows = []
    for i, (var, tau, beta, delta, q) in enumerate(points):
        p = cfg.retention(beta, delta)
        analytic = retention_accuracy(tau, q, p)
        sim, se = estimate_retention(tau, q, p, cfg.trials, row_seed(cfg.seed, i), cfg.parallelism)
        rows.append([var, tau, beta, analytic, sim, se])
    return to_csv(header, rows)


def cmd_zeta_sweep(cfg: ExperimentConfig) -> str:
    header = [
        "lambda",
        "zeta",
        "accuracy_analytic",
        "accuracy_sim",
        "energy_analytic",
        "energy_sim",
        "stderr_accuracy",
        "stderr_energy",
    ]
    rows = []
    i = 0
    for lam in cfg.lam:
        for zeta in cfg.zeta:
            s = cfg.scenario(lam, zeta, cfg.tau[0], cfg.beta[0], cfg.delta[0])
            seed = row_seed(cfg.seed, i)
            est = estimate_proposed(s, cfg.trials, seed, cfg.parallelism)
            ratio, ratio_se = estimate_normalized_energy(s, cfg.trials, seed, cfg.parallelism)
            rows.append(
                [lam, zeta, expected_accuracy_closed(s), est.mean_utility, normalized_energy(s), ratio, est.stderr_utility, ratio_se]
            )
            i += 1
    return to_csv(header, rows)


def cmd_tau_tradeoff(cfg: ExperimentConfig) -> str:
    header = ["beta_s", "tau_s", "accuracy_analytic", "energy_analytic", "accuracy_sim", "stderr"]
    rows = []
    i = 0
    for beta in cfg.beta:
        for tau in cfg.tau:
            s = cfg.scenario(cfg.lam[0], cfg.zeta[0], tau, beta, cfg.delta[0])
            est = estimate_proposed(s, cfg.trials, row_seed(cfg.seed, i), cfg.parallelism)
            rows.append([beta, tau, expected_accuracy_closed(s), normalized_energy(s), est.mean_utility, est.stderr_utility])
            i += 1
    return to_csv(header, rows)


def cmd_min_energy(cfg: ExperimentConfig) -> str:
    header = ["setting", "u_th", "feasible", "zeta_star", "tau_star", "accuracy", "min_normalized_energy"]
    grid = Grid(**cfg.grid)
    rows = []
    for sid in cfg.settings:
        template = SETTINGS[sid].scenario(lam=cfg.lam[0], n_bits=cfg.n_bits, delta=cfg.delta[0], tau0=cfg.tau0)
        for u, res in sweep(template, cfg.u_th, grid):
            rows.append([sid, u, res.feasible, res.zeta_star, res.tau_star, res.accuracy, res.normalized_energy])
    return to_csv(header, rows)


# retention anchors: (tau, Q, beta, delta, expected)
RETENTION_ANCHORS = [
    (0.128, 100.0, 640.0, 0.1, 0.796366491479784),
    (0.128, 50.0, 640.0, 0.1, 0.988942317700791),
    (0.192, 75.0, 640.0, 0.1, 0.797208936857203),
    (0.128, 50.0, 320.0, 0.025, 0.0420554596539958),
]


@dataclass
class Check:
    name: str
    deviation: float
    limit: float

    @property
    def passed(self) -> bool:
        return self.deviation <= self.limit

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}  deviation={self.deviation:.6g}  limit={self.limit:.6g}"


def _zscore(estimate: float, target: float, stderr: float) -> float:
    diff = abs(estimate - target)
    if stderr > 0:
        return diff / stderr
    return 0.0 if diff == 0 else math.inf


def _validation_scenarios(cfg: ExperimentConfig) -> list[tuple[str, Scenario]]:
    out = []
    for lam in (0.0025, 0.0075):
        for zeta in (0.0, 100.0, 200.0):
            s = cfg.scenario(lam, zeta, 0.128, 6400.0, 0.1)
            out.append((f"lam={lam:g},zeta={zeta:g},tau=0.128,beta=6400", s))
    for tau in _steps(0.064, 0.32, 0.064):
        s = cfg.scenario(0.0025, 20.0, tau, 3200.0, 0.1)
        out.append((f"lam=0.0025,zeta=20,tau={tau:g},beta=3200", s))
    return out


def run_validation(cfg: ExperimentConfig) -> list[Check]:
    checks = []
    scale = 1000.0 if cfg.inject_fault == "tau-ms" else 1.0
    for tau, q, beta, delta, expected in RETENTION_ANCHORS:
        p = RetentionParams(beta=beta, n_bits=cfg.n_bits, delta=delta, tau0=cfg.tau0 * scale)
        got = retention_accuracy(tau * scale, q, p)
        checks.append(Check(f"retention-golden[tau={tau:g},Q={q:g},beta={beta:g},delta={delta:g}]", abs(got - expected), 1e-6))

    scenarios = _validation_scenarios(cfg)
    for i, (label, s) in enumerate(scenarios):
        closed = expected_accuracy_closed(s)
        checks.append(Check(f"closed-vs-series[{label}]", abs(closed - expected_accuracy_series(s, 1e-14)), 1e-10))
        est = estimate_proposed(s, cfg.trials, row_seed(cfg.seed, i), cfg.parallelism)
        checks.append(Check(f"mc-accuracy[{label}]", _zscore(est.mean_utility, closed, est.stderr_utility), 3.0))
        checks.append(Check(f"mc-energy[{label}]", _zscore(est.mean_energy, expected_energy(s), est.stderr_energy), 3.0))

    s = scenarios[0][1]
    seed = row_seed(cfg.seed, len(scenarios))
    a = estimate_proposed(s, cfg.trials, seed, cfg.parallelism)
    b = estimate_proposed(s, cfg.trials, row_seed(cfg.seed, len(scenarios) + 1), cfg.parallelism, bitwise=True)
    combined = math.hypot(a.stderr_utility, b.stderr_utility)
    checks.append(Check(f"bitwise-vs-binomial[{scenarios[0][0]}]", _zscore(a.mean_utility, b.mean_utility, combined), 3.0))

    base = estimate_baseline(s, cfg.trials, seed, cfg.parallelism)
    checks.append(Check("baseline-utility", abs(base.mean_utility - 1.0), 0.0))
    checks.append(Check("baseline-energy", _zscore(base.mean_energy, baseline_energy(s), base.stderr_energy), 3.0))
    return checks


def cmd_validate(cfg: ExperimentConfig) -> tuple[str, bool]:
    checks = run_validation(cfg)
    failed = sum(not c.passed for c in checks)
    lines = [c.line() for c in checks]
    lines.append(f"{len(checks) - failed}/{len(checks)} checks passed (trials={cfg.trials}, seed={cfg.seed})")
    return "\n".join(lines) + "\n", failed == 0


COMMANDS = {
    "retention-curve": cmd_retention_curve,
    "zeta-sweep": cmd_zeta_sweep,
    "tau-tradeoff": cmd_tau_tradeoff,
    "min-energy": cmd_min_energy,
}


def run(cfg: ExperimentConfig, out_dir: str | os.PathLike | None = None) -> tuple[Path, bool]:
    """Run one experiment and write its output file; returns (path, passed)."""
    out = Path(out_dir or os.environ.get(OUTPUT_ENV) or cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    if cfg.experiment == "validate":
        text, ok = cmd_validate(cfg)
        path = out / "validate.txt"
    else:
        text, ok = COMMANDS[cfg.experiment](cfg), True
        path = out / f"{cfg.experiment}.csv"
    path.write_text(text)
    return path, ok


def with_overrides(cfg: ExperimentConfig, **overrides) -> ExperimentConfig:
    changes = {k: v for k, v in overrides.items() if v is not None}
    updated = replace(cfg, **changes)
    validate_config(updated)
    return updated
