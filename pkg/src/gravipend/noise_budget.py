"""Thermal-vibration budget and regime-validity predicates.

The suspension's fundamental flexural mode is treated as a thermalised
harmonic oscillator, giving a mean-square displacement
<x^2> = k_B T / (m_eff omega_m^2).  That motion enters as a static
budget entry compared against the superposition scale, not as a
stochastic force on the trajectories.

The regime predicates turn the operating assumptions (short time,
small angle, quasi-inertial window, thermal smallness, timescale
separation) into executable pass/fail checks with configurable
thresholds; threshold defaults are engineering choices, not physics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import PhysicalConstants, default_constants
from .dynamics import PendulumConfig, SHORT_TIME_FRACTION
from .interferometer import InterferometerSpec, SMALL_ANGLE_LIMIT, _PiecewiseResponse


@dataclass(frozen=True)
class NoiseParams:
    """Thermal environment of the suspension's flexural mode."""

    temperature: float
    mode_frequency: float
    effective_mass: float
    superposition_scale: float

    def __post_init__(self) -> None:
        for name in ("temperature", "mode_frequency", "effective_mass", "superposition_scale"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be strictly positive, got {getattr(self, name)!r}")


def thermal_rms(params: NoiseParams, constants: PhysicalConstants | None = None) -> float:
    """RMS thermal displacement sqrt(k_B T / (m_eff omega_m^2))."""
    constants = constants or default_constants()
    return math.sqrt(
        constants.k_B * params.temperature
        / (params.effective_mass * params.mode_frequency ** 2)
    )


@dataclass(frozen=True)
class RegimeThresholds:
    """Executable stand-ins for the various "much less than" conditions."""

    quasi_inertial: float = 1e-2       # (omega * t)^2 below this
    small_angle: float = SMALL_ANGLE_LIMIT
    thermal_ratio: float = 1e-3        # thermal RMS / superposition scale
    timescale_factor: float = 10.0     # t_total over the fluctuation time 1/omega_m
    short_time_fraction: float = SHORT_TIME_FRACTION


@dataclass(frozen=True)
class RegimeCheck:
    name: str
    value: float
    threshold: float
    passed: bool


@dataclass(frozen=True)
class RegimeReport:
    checks: tuple[RegimeCheck, ...]
    freefall_boundary_time: float

    @property
    def all_passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def __getitem__(self, name: str) -> RegimeCheck:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def as_dict(self) -> dict:
        return {
            "all_passed": self.all_passed,
            "freefall_boundary_time": self.freefall_boundary_time,
            "checks": [
                {
                    "name": c.name,
                    "value": c.value,
                    "threshold": c.threshold,
                    "passed": c.passed,
                }
                for c in self.checks
            ],
        }

    def flags(self) -> str:
        """Compact single-token summary for tabular output."""
        failed = [c.name for c in self.checks if not c.passed]
        return "all_pass" if not failed else "fail:" + "+".join(failed)


def regime_report(
    pendulum: PendulumConfig,
    spec: InterferometerSpec,
    noise: NoiseParams,
    thresholds: RegimeThresholds | None = None,
    constants: PhysicalConstants | None = None,
) -> RegimeReport:
    """Evaluate every regime predicate; failures are entries, not errors."""
    thresholds = thresholds or RegimeThresholds()
    constants = constants or pendulum.constants
    omega = pendulum.omega
    t_total = spec.total_time

    # Peak angular excursion: release angle plus half the peak branch
    # separation converted to an angle.
    response = _PiecewiseResponse(spec.schedule, spec.spin_acceleration, 0.0)
    peak_angle = abs(pendulum.initial_angle) + 0.5 * response.max_abs() / pendulum.length

    rms = thermal_rms(noise, constants)
    checks = (
        RegimeCheck(
            name="quasi_inertial",
            value=(omega * t_total) ** 2,
            threshold=thresholds.quasi_inertial,
            passed=(omega * t_total) ** 2 < thresholds.quasi_inertial,
        ),
        RegimeCheck(
            name="short_time",
            value=t_total / pendulum.period,
            threshold=thresholds.short_time_fraction,
            passed=t_total < thresholds.short_time_fraction * pendulum.period,
        ),
        RegimeCheck(
            name="small_angle",
            value=peak_angle,
            threshold=thresholds.small_angle,
            passed=peak_angle < thresholds.small_angle,
        ),
        RegimeCheck(
            name="thermal",
            value=rms / noise.superposition_scale,
            threshold=thresholds.thermal_ratio,
            passed=rms < thresholds.thermal_ratio * noise.superposition_scale,
        ),
        RegimeCheck(
            name="timescale_separation",
            value=1.0 / (noise.mode_frequency * t_total),
            threshold=1.0 / thresholds.timescale_factor,
            passed=1.0 / noise.mode_frequency <= t_total / thresholds.timescale_factor,
        ),
    )
    return RegimeReport(
        checks=checks,
        freefall_boundary_time=math.sqrt(thresholds.quasi_inertial) / omega,
    )
