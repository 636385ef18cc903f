"""Acceptance suite: one test per headline criterion, each printing a
pass/fail line with the measured value next to its required tolerance.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines.
"""

import json
import math
import time

import numpy as np
import pytest

from gravipend.cli import main
from gravipend.config import bundled_config, config_from_dict, with_overrides
from gravipend.constants import Tolerances, default_constants
from gravipend.dynamics import (
    HARMONIC_DEVIATION_COEFFICIENT,
    PendulumConfig,
    exact_trajectory,
    pendulum_energy_per_mass,
    small_angle_trajectory,
)
from gravipend.entanglement import negativity, phase_correction, state_from_phases
from gravipend.gravity_phase import (
    ExperimentGeometry,
    _branch,
    _separation_array,
    branch_phase,
)
from gravipend.interferometer import InterferometerSpec, build_branch_pair
from gravipend.dynamics import free_fall_trajectory
from gravipend.noise_budget import NoiseParams, regime_report, thermal_rms
from gravipend.protocol import simulate_protocol
from gravipend.sweep import fit_power_law, run_sweep

TOL = Tolerances()
CONSTANTS = default_constants()


def report(criterion: str, passed: bool, detail: str) -> None:
    print(f"{'PASS' if passed else 'FAIL'}  {criterion}: {detail}")
    assert passed, f"{criterion}: {detail}"


def test_criterion_1_deviation_prefactor():
    """Power-law fit of the trajectory deviation recovers pi^2/3 (t/T)^2."""
    start = time.time()
    base = bundled_config("reference_quarter_m")
    T = base.pendulum.period
    ratios = np.logspace(-4, -2, 9)
    sweep_dict = with_overrides(base.effective, {})
    sweep_dict["sweep"] = {
        "axes": [
            {"path": "interferometer.total_time", "values": [float(r * T) for r in ratios]}
        ],
        "outputs": ["trajectory_deviation", "t_over_T"],
    }
    fit = fit_power_law(
        run_sweep(config_from_dict(sweep_dict)), "t_over_T", "trajectory_deviation"
    )
    elapsed = time.time() - start
    target = HARMONIC_DEVIATION_COEFFICIENT
    ok = (
        abs(fit.exponent - 2.0) <= 0.01
        and abs(fit.coefficient - target) <= 0.005 * target
        and elapsed < 1.0
    )
    report(
        "criterion 1 (deviation prefactor)",
        ok,
        f"exponent {fit.exponent:.4f} (2.00 +/- 0.01), "
        f"coefficient {fit.coefficient:.5f} ({target:.5f} +/- 0.5%), {elapsed:.2f}s (< 1 s)",
    )


def test_criterion_2_relative_phase_correction():
    """Closed-form phase correction is exact; the end-to-end correction is
    below 1e-5 and scales quadratically in the sequence time."""
    start = time.time()
    analytic = phase_correction(1.0, 1e-3, 1.0)
    target = HARMONIC_DEVIATION_COEFFICIENT * 1e-6
    closed_ok = abs(analytic - target) <= 1e-12 * target

    base = bundled_config("reference_quarter_m")
    times = (1e-4, 3e-4, 1e-3)
    corrections = []
    for t in times:
        cfg = config_from_dict(with_overrides(base.effective, {"interferometer.total_time": t}))
        corrections.append(simulate_protocol(cfg).observables()["relative_correction"])
    magnitude = abs(corrections[-1])
    slope = float(np.polyfit(np.log(times), np.log(np.abs(corrections)), 1)[0])
    elapsed = time.time() - start
    ok = closed_ok and magnitude <= 1e-5 and abs(slope - 2.0) <= 0.1 and elapsed < 30.0
    report(
        "criterion 2 (relative phase correction)",
        ok,
        f"closed form {analytic:.6e} (= {target:.6e}), end-to-end |corr| {magnitude:.3e} "
        f"(<= 1e-5), slope {slope:.3f} (2.0 +/- 0.1), {elapsed:.1f}s (< 30 s)",
    )


def test_criterion_3_visibility_bound():
    """|V_pend - V_free| <= (pi^2/3)|dphi|(t/T)^2 over 1e4 random samples."""
    start = time.time()
    rng = np.random.default_rng(20260808)
    n = 10_000
    dphi = rng.uniform(-math.pi, math.pi, n)
    ratio = rng.uniform(0.0, 0.1, n)
    ratio = np.where(ratio == 0.0, 0.1, ratio)
    delta = HARMONIC_DEVIATION_COEFFICIENT * dphi * ratio**2
    shift = np.abs(np.cos(dphi + delta) - np.cos(dphi))
    violations = int(np.sum(shift > np.abs(delta) + 1e-15))
    elapsed = time.time() - start
    ok = violations == 0 and elapsed < 1.0
    report(
        "criterion 3 (visibility bound)",
        ok,
        f"{violations} violations in {n} samples (need 0), {elapsed:.2f}s (< 1 s)",
    )


def test_criterion_4_thermal_rms():
    """Thermal RMS at the reference parameters is 3.72e-11 m within 0.5%."""
    params = NoiseParams(
        temperature=1e-2, mode_frequency=1e5, effective_mass=1e-14, superposition_scale=1e-4
    )
    rms = thermal_rms(params, CONSTANTS)
    ok = abs(rms - 3.72e-11) <= 0.005 * 3.72e-11
    report(
        "criterion 4 (thermal RMS)",
        ok,
        f"{rms:.4e} m (3.72e-11 +/- 0.5%)",
    )


def test_criterion_5_quadrature_oracles():
    """Adaptive quadrature against the closed form and a 1e6-point
    trapezoid grid."""
    start = time.time()
    geometry = ExperimentGeometry(center_separation=2e-4, mass=1e-14)
    zero = free_fall_trajectory(0.0, 0.0)
    t_total = 1e-3

    static = build_branch_pair(
        InterferometerSpec(total_time=t_total, spin_acceleration=0.0), zero
    )
    est = branch_phase(geometry, static, static, "L", "L", t_total, TOL)
    closed = -CONSTANTS.G * geometry.mass**2 * t_total / (
        CONSTANTS.hbar * geometry.center_separation
    )
    rel_static = abs(est.value - closed) / abs(closed)

    from dataclasses import replace

    spec = InterferometerSpec(total_time=t_total, spin_acceleration=1600.0)
    pair_a = build_branch_pair(spec, zero)
    pair_b = build_branch_pair(replace(spec, spin_acceleration=-1600.0), zero)
    coupling = CONSTANTS.G * geometry.mass**2 / CONSTANTS.hbar
    grid = np.linspace(0.0, t_total, 1_000_001)
    rel_trap = 0.0
    for i in "LR":
        for j in "LR":
            est = branch_phase(geometry, pair_a, pair_b, i, j, t_total, TOL)
            integrand = 1.0 / _separation_array(
                geometry, _branch(pair_a, i), _branch(pair_b, j), grid
            )
            trap = -coupling * float(np.trapezoid(integrand, grid))
            rel_trap = max(rel_trap, abs(est.value - trap) / abs(trap))
    elapsed = time.time() - start
    ok = rel_static <= 1e-10 and rel_trap <= 1e-8 and elapsed < 10.0
    report(
        "criterion 5 (quadrature oracles)",
        ok,
        f"constant-r {rel_static:.2e} (<= 1e-10), trapezoid {rel_trap:.2e} (<= 1e-8), "
        f"{elapsed:.1f}s (< 10 s)",
    )


def test_criterion_6_ode_oracles():
    """Pendulum ODE against the small-angle closed form and energy
    conservation over ten periods."""
    start = time.time()
    config = PendulumConfig(length=0.5, initial_angle=2e-4)
    T = config.period
    small = small_angle_trajectory(config)
    exact = exact_trajectory(config, TOL, T / 10.0)
    t = np.linspace(0.0, T / 10.0, 4001)
    agreement = float(np.max(np.abs(exact(t) - small(t)))) / config.length

    exact10 = exact_trajectory(config, TOL, 10.0 * T)
    t10 = np.linspace(0.0, 10.0 * T, 40001)
    energy = pendulum_energy_per_mass(
        config, exact10(t10) / config.length, exact10.velocity(t10) / config.length
    )
    drift = float(np.max(np.abs(energy - energy[0])) / energy[0])
    elapsed = time.time() - start
    ok = agreement <= 1e-10 and drift <= 1e-10 and elapsed < 5.0
    report(
        "criterion 6 (ODE oracles)",
        ok,
        f"small-angle agreement {agreement:.2e} (<= 1e-10 of L), energy drift {drift:.2e} "
        f"(<= 1e-10), {elapsed:.1f}s (< 5 s)",
    )


def test_criterion_7_entanglement_witness():
    """Negativity against the partial-transpose oracle and its dependence
    on the phases only through the entangling combination."""
    start = time.time()
    product = negativity(state_from_phases(0.0, 0.0, 0.0, 0.0))
    maximal = negativity(state_from_phases(0.0, 0.0, 0.0, math.pi))
    rng = np.random.default_rng(1509)
    dphi = 0.7
    values = []
    for _ in range(1000):
        ll, lr, rl = rng.uniform(-math.pi, math.pi, 3)
        rr = dphi - ll + lr + rl
        values.append(negativity(state_from_phases(ll, lr, rl, rr)))
    spread = float(np.max(values) - np.min(values))
    elapsed = time.time() - start
    ok = (
        product <= 1e-12
        and abs(maximal - 0.5) <= 1e-9
        and spread < 1e-12
        and elapsed < 1.0
    )
    report(
        "criterion 7 (entanglement witness)",
        ok,
        f"product {product:.1e} (0), maximal {maximal:.10f} (0.5 +/- 1e-9), "
        f"spread {spread:.1e} (< 1e-12), {elapsed:.2f}s (< 1 s)",
    )


def test_criterion_8_regime_predicates():
    """(omega t)^2 at the half-metre configuration and the free-fall
    regime boundary under the default threshold."""
    config = PendulumConfig(length=0.5, initial_angle=2e-4)
    spec = InterferometerSpec(total_time=1e-3, spin_acceleration=1600.0)
    noise = NoiseParams(
        temperature=1e-2, mode_frequency=1e5, effective_mass=1e-14, superposition_scale=1e-4
    )
    rep = regime_report(config, spec, noise)
    value = rep["quasi_inertial"].value
    boundary = rep.freefall_boundary_time
    ok = abs(value - 1.96e-5) <= 0.01 * 1.96e-5 and 1e-2 < boundary < 1e-1
    report(
        "criterion 8 (regime predicates)",
        ok,
        f"(omega t)^2 = {value:.3e} (1.96e-5 +/- 1%), free-fall boundary "
        f"{boundary:.3e} s (between 1e-2 and 1e-1 s)",
    )


def test_criterion_9_sweep_determinism(tmp_path):
    """Byte-identical sweep outputs across reruns and thread counts."""
    start = time.time()
    d = bundled_config("reference_quarter_m").effective
    d = json.loads(json.dumps(d))
    d["sweep"] = {
        "axes": [{"path": "interferometer.total_time", "values": [1e-4, 3e-4, 1e-3]}],
        "outputs": [
            "delta_phi_free", "delta_phi_pend", "relative_correction",
            "V_free", "V_pend", "negativity", "thermal_rms", "regime_flags",
        ],
    }
    cfg_path = tmp_path / "sweep.json"
    cfg_path.write_text(json.dumps(d))
    outputs = []
    for name, threads in (("a.csv", 1), ("b.csv", 1), ("c.csv", 4)):
        out = tmp_path / name
        code = main([
            "sweep", "--config", str(cfg_path), "--output", str(out),
            "--format", "csv", "--threads", str(threads),
        ])
        assert code == 0
        outputs.append(out.read_bytes())
    elapsed = time.time() - start
    ok = outputs[0] == outputs[1] == outputs[2] and elapsed < 30.0
    report(
        "criterion 9 (determinism)",
        ok,
        f"rerun identical: {outputs[0] == outputs[1]}, threaded identical: "
        f"{outputs[0] == outputs[2]}, {elapsed:.1f}s (< 30 s)",
    )


def test_criterion_10_verify_command(capsys):
    """The verify command aggregates the checks and exits 0."""
    code = main(["verify"])
    out = capsys.readouterr().out
    ok = code == 0 and "all checks passed" in out
    with capsys.disabled():
        report("criterion 10 (verify command)", ok, f"exit code {code} (need 0)")
