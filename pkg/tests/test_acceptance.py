"""Acceptance gate. Each test carries the number of the criterion it covers;
the terminal summary prints one pass/fail line per criterion."""
import math
import random

import numpy as np
import pytest

from golden import (
    DELTA_VALUES,
    MIN_ENERGY,
    Q_VALUES,
    RETENTION_VS_DELTA,
    RETENTION_VS_Q,
    TAU_TRADEOFF_ACCURACY,
    TAU_TRADEOFF_ENERGY,
    TAU_TRADEOFF_TAUS,
    U_TH,
)
from wmem import cli
from wmem.analysis import (
    EnergyParams,
    OverheadParams,
    Scenario,
    expected_accuracy_closed,
    expected_accuracy_series,
    expected_energy,
    normalized_energy,
)
from wmem.optimize import Grid, grid_search_min_energy, sweep
from wmem.presets import NARROW_TAU_GRID, SETTINGS
from wmem.retention import RetentionParams, retention_accuracy
from wmem.simulate import estimate_baseline, estimate_proposed

C1 = pytest.mark.criterion(1, "retention golden set")
C2 = pytest.mark.criterion(2, "expected-accuracy golden set")
C3 = pytest.mark.criterion(3, "normalized-energy tolerance set")
C4 = pytest.mark.criterion(4, "grid-search golden set")
C5 = pytest.mark.criterion(5, "closed form vs series oracle")
C6 = pytest.mark.criterion(6, "Monte Carlo validation")
C7 = pytest.mark.criterion(7, "property suite")
C8 = pytest.mark.criterion(8, "determinism across parallelism")
C9 = pytest.mark.criterion(9, "qualitative zeta-sweep shape")

TAU_GRID = [round(0.064 * i, 12) for i in range(1, 41)]


def scenario(lam=0.0025, zeta=20.0, tau=0.128, beta=6400.0, delta=0.1, t_sigma=0.0, w_c=0.0, w_l=0.0):
    return Scenario(
        lam=lam,
        zeta=zeta,
        tau=tau,
        retention=RetentionParams(beta=beta, delta=delta),
        overhead=OverheadParams(t_w=t_sigma),
        energy=EnergyParams(w_c=w_c, w_l=w_l),
    )


# 1 -----------------------------------------------------------------------


@C1
@pytest.mark.parametrize("tau", sorted(RETENTION_VS_Q))
def test_c1_retention_vs_q(tau):
    p = RetentionParams(640.0, n_bits=64, delta=0.1)
    for q, expected in zip(Q_VALUES, RETENTION_VS_Q[tau]):
        assert abs(retention_accuracy(tau, q, p) - expected) < 1e-6, (tau, q)


@C1
@pytest.mark.parametrize("beta", sorted(RETENTION_VS_DELTA))
def test_c1_retention_vs_delta(beta):
    for delta, expected in zip(DELTA_VALUES, RETENTION_VS_DELTA[beta]):
        p = RetentionParams(beta, n_bits=64, delta=delta)
        assert abs(retention_accuracy(0.128, 50, p) - expected) < 1e-6, (beta, delta)


@C1
def test_c1_spot_anchors():
    assert abs(retention_accuracy(0.128, 100, RetentionParams(640.0)) - 0.796366491479784) < 1e-6
    assert abs(retention_accuracy(0.128, 50, RetentionParams(320.0, delta=0.025)) - 0.0420554596539958) < 1e-6


# 2 -----------------------------------------------------------------------
# The printed values carry the float64 cancellation error of the literal
# alternating sum (up to 5e-5), so they are matched by the "double" mode.


@C2
@pytest.mark.parametrize("beta", sorted(TAU_TRADEOFF_ACCURACY))
def test_c2_expected_accuracy_golden(beta):
    for tau, expected in zip(TAU_TRADEOFF_TAUS, TAU_TRADEOFF_ACCURACY[beta]):
        got = expected_accuracy_closed(scenario(tau=tau, beta=beta), arithmetic="double")
        assert abs(got - expected) < 1e-6, (beta, tau)


@C2
def test_c2_first_point():
    s = scenario(tau=0.064, beta=3200.0)
    assert abs(expected_accuracy_closed(s, arithmetic="double") - 0.9512296226421596) < 1e-9
    # the exact value at tau0 is the activation probability alone
    assert abs(expected_accuracy_closed(s) - math.exp(-0.05)) < 1e-15


@C2
@pytest.mark.parametrize("beta", sorted(TAU_TRADEOFF_ACCURACY))
def test_c2_extended_mode_close_to_printed(beta):
    for tau, expected in zip(TAU_TRADEOFF_TAUS, TAU_TRADEOFF_ACCURACY[beta]):
        assert abs(expected_accuracy_closed(scenario(tau=tau, beta=beta)) - expected) < 1e-4


# 3 -----------------------------------------------------------------------


@C3
@pytest.mark.parametrize("beta", sorted(TAU_TRADEOFF_ENERGY))
def test_c3_normalized_energy(beta):
    for tau, expected in zip(TAU_TRADEOFF_TAUS, TAU_TRADEOFF_ENERGY[beta]):
        got = normalized_energy(scenario(tau=tau, beta=beta))
        assert abs(got / expected - 1) < 1e-2, (beta, tau)


# 4 -----------------------------------------------------------------------


@C4
@pytest.mark.parametrize("sid", sorted(MIN_ENERGY))
def test_c4_min_energy_golden(sid):
    results = sweep(SETTINGS[sid].scenario(), U_TH, NARROW_TAU_GRID)
    expected = MIN_ENERGY[sid]
    for (u, res), e in zip(results, expected):
        assert res.feasible, (sid, u)
        assert abs(res.normalized_energy / e - 1) < 1e-3, (sid, u, res)
    for u, res in results[len(expected):]:
        assert not res.feasible, (sid, u)


@C4
def test_c4_setting4_infeasible_above_075():
    for u in (0.8, 0.85, 0.9, 0.95):
        assert not grid_search_min_energy(SETTINGS[4].scenario(), u, NARROW_TAU_GRID).feasible
        assert not grid_search_min_energy(SETTINGS[4].scenario(), u).feasible


@C4
def test_c4_spot_anchors():
    r1 = grid_search_min_energy(SETTINGS[1].scenario(), 0.9, NARROW_TAU_GRID)
    r2 = grid_search_min_energy(SETTINGS[2].scenario(), 0.9, NARROW_TAU_GRID)
    assert abs(r1.normalized_energy / 0.9003245225862656 - 1) < 1e-3
    assert abs(r2.normalized_energy / 0.3328636616872946 - 1) < 1e-3


@C4
@pytest.mark.parametrize("sid", sorted(SETTINGS))
def test_c4_full_tau_range_never_worse(sid):
    narrow = sweep(SETTINGS[sid].scenario(), U_TH, NARROW_TAU_GRID)
    full = sweep(SETTINGS[sid].scenario(), U_TH, Grid())
    for (u, a), (_, b) in zip(narrow, full):
        assert a.feasible == b.feasible
        if a.feasible:
            assert b.normalized_energy <= a.normalized_energy


# 5 -----------------------------------------------------------------------


@C5
def test_c5_closed_matches_series():
    rng = random.Random(20240601)
    betas = [320.0, 480.0, 640.0, 3200.0, 6400.0, 9600.0]
    worst = 0.0
    for _ in range(200):
        s = scenario(
            lam=rng.uniform(1e-3, 1e-2),
            zeta=rng.uniform(0.0, 250.0),
            tau=rng.choice(TAU_GRID),
            beta=rng.choice(betas),
        )
        worst = max(worst, abs(expected_accuracy_closed(s) - expected_accuracy_series(s, 1e-14)))
    assert worst < 1e-10


# 6 -----------------------------------------------------------------------

ZETA_SWEEP_SCENARIOS = [(lam, zeta, 0.128, 6400.0) for lam in (0.0025, 0.0075) for zeta in (0.0, 50.0, 100.0, 150.0, 200.0, 250.0)]
TAU_TRADEOFF_SCENARIOS = [(0.0025, 20.0, tau, beta) for beta in (3200.0, 6400.0, 9600.0) for tau in TAU_TRADEOFF_TAUS]


@C6
@pytest.mark.parametrize("lam,zeta,tau,beta", ZETA_SWEEP_SCENARIOS + TAU_TRADEOFF_SCENARIOS)
def test_c6_monte_carlo(lam, zeta, tau, beta):
    s = scenario(lam=lam, zeta=zeta, tau=tau, beta=beta)
    seed = 1000 + round(zeta) + round(tau * 1000) * 7 + round(beta) + round(lam * 1e4)
    est = estimate_proposed(s, trials=10**5, seed=seed)
    assert abs(est.mean_utility - expected_accuracy_closed(s)) <= 3 * est.stderr_utility
    assert abs(est.mean_energy - expected_energy(s)) <= 3 * est.stderr_energy


@C6
def test_c6_baseline_utility_is_one():
    assert estimate_baseline(scenario(), trials=10**5, seed=3).mean_utility == 1.0


# 7 -----------------------------------------------------------------------


@C7
def test_c7_retention_monotone():
    p = RetentionParams(640.0)
    for tau in TAU_GRID[:10]:
        vals = [retention_accuracy(tau, q, p) for q in range(0, 501, 5)]
        assert all(a >= b for a, b in zip(vals, vals[1:]))
    for beta in (320.0, 480.0, 640.0):
        vals = [retention_accuracy(0.128, 50, RetentionParams(beta, delta=d / 200)) for d in range(0, 201)]
        assert all(a <= b for a, b in zip(vals, vals[1:]))
    for delta in DELTA_VALUES:
        vals = [retention_accuracy(0.128, 50, RetentionParams(b, delta=delta)) for b in range(320, 9601, 160)]
        assert all(a <= b for a, b in zip(vals, vals[1:]))


@C7
def test_c7_accuracy_and_energy_monotone_in_zeta_and_overhead():
    for lam in (0.0025, 0.0075):
        acc = [expected_accuracy_closed(scenario(lam=lam, zeta=z)) for z in np.arange(0, 250.5, 0.5)]
        ene = [normalized_energy(scenario(lam=lam, zeta=z)) for z in np.arange(0, 250.5, 0.5)]
        assert all(a > b for a, b in zip(acc, acc[1:]))
        assert all(a > b for a, b in zip(ene, ene[1:]))
        acc = [expected_accuracy_closed(scenario(lam=lam, t_sigma=t)) for t in range(0, 201, 5)]
        assert all(a > b for a, b in zip(acc, acc[1:]))


@C7
def test_c7_monotone_in_tau():
    for beta in (3200.0, 6400.0, 9600.0):
        acc = [expected_accuracy_closed(scenario(tau=t, beta=beta)) for t in TAU_GRID]
        ene = [normalized_energy(scenario(tau=t, beta=beta)) for t in TAU_GRID]
        assert all(a >= b for a, b in zip(acc, acc[1:]))
        assert all(a > b for a, b in zip(ene, ene[1:]))


@C7
def test_c7_min_energy_monotone_in_uth():
    levels = [round(0.5 + 0.01 * i, 2) for i in range(50)]
    grid = Grid(zeta_step=2.0)
    for sid in SETTINGS:
        feasible = [r for _, r in sweep(SETTINGS[sid].scenario(), levels, grid) if r.feasible]
        energies = [r.normalized_energy for r in feasible]
        assert all(a <= b for a, b in zip(energies, energies[1:])), sid


@C7
def test_c7_separability():
    for lam in (0.001, 0.0025, 0.0075, 0.01):
        for tau in (0.064, 0.128, 0.64):
            z1, z2 = 180.0, 35.5
            ratio = expected_accuracy_closed(scenario(lam=lam, zeta=z1, tau=tau)) / expected_accuracy_closed(
                scenario(lam=lam, zeta=z2, tau=tau)
            )
            assert abs(ratio - math.exp(-lam * (z1 - z2))) < 1e-12


# 8 -----------------------------------------------------------------------


@C8
@pytest.mark.parametrize("experiment", ["retention-curve", "zeta-sweep", "tau-tradeoff", "min-energy", "validate"])
def test_c8_byte_identical_across_parallelism(experiment, tmp_path):
    outputs = []
    for par in (1, 4, 16):
        out = tmp_path / f"p{par}"
        code = cli.main([experiment, "--seed", "7", "--trials", "20000", "--parallelism", str(par), "--out", str(out)])
        assert code == 0
        (path,) = out.iterdir()
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]


# 9 -----------------------------------------------------------------------


@C9
def test_c9_accuracy_curves_cross_once():
    zetas = np.arange(0, 250.5, 0.5)
    low = np.array([expected_accuracy_closed(scenario(lam=0.0025, zeta=z)) for z in zetas])
    high = np.array([expected_accuracy_closed(scenario(lam=0.0075, zeta=z)) for z in zetas])
    sign = np.sign(high - low)
    assert not np.any(sign == 0)
    assert np.count_nonzero(sign[1:] != sign[:-1]) == 1


@C9
@pytest.mark.parametrize("lam", [0.0025, 0.0075])
def test_c9_energy_strictly_decreasing(lam):
    ene = np.array([normalized_energy(scenario(lam=lam, zeta=z)) for z in np.arange(0, 250.5, 0.5)])
    assert np.all(np.diff(ene) < 0)
