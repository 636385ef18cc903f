"""Constrained (pendulum) and free-fall centre-of-mass trajectories.

A pendulum of length L released at a small angle theta_0 reproduces
uniformly accelerated motion along its arc for times short against its
period T = 2*pi*sqrt(L/g).  The leading deviation between the two is
quadratic in t/T with coefficient pi^2/3, coming from the fourth-order
term of the cosine series:

    s_pend(t) = L*theta_0*cos(omega*t)
              = L*theta_0 - (g*theta_0)*t^2/2 + L*theta_0*(omega*t)^4/24 - ...

Trajectories are exposed as callable evaluators so that downstream
quadrature can choose its own sample points.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from .constants import PhysicalConstants, Tolerances, default_constants

# Ratio of the fourth-order to the second-order term of the cosine
# expansion, rewritten against (t/T)^2: omega^2 t^2 / 12 = (pi^2/3)(t/T)^2.
HARMONIC_DEVIATION_COEFFICIENT = math.pi ** 2 / 3.0

# Upper end of the short-time regime, as a fraction of the period.
SHORT_TIME_FRACTION = 0.1


class StepSizeUnderflowError(RuntimeError):
    """The ODE integrator could not proceed at the requested tolerances."""


class TrajectoryModel(enum.Enum):
    """Which centre-of-mass model to evaluate."""

    FREE_FALL = "free_fall"
    SMALL_ANGLE = "small_angle"
    EXACT_ODE = "exact"


@dataclass(frozen=True)
class PendulumConfig:
    """A simple pendulum: length, release angle, and local gravity.

    The release angle is restricted to |theta_0| < pi/2; over-the-top
    configurations are outside the regime this package models.
    """

    length: float
    initial_angle: float
    initial_angular_velocity: float = 0.0
    constants: PhysicalConstants = field(default_factory=default_constants)

    def __post_init__(self) -> None:
        if not self.length > 0.0:
            raise ValueError(f"pendulum length must be positive, got {self.length!r}")
        if not abs(self.initial_angle) < math.pi / 2.0:
            raise ValueError(
                f"initial_angle must satisfy |theta| < pi/2, got {self.initial_angle!r}"
            )

    @property
    def omega(self) -> float:
        """Angular frequency sqrt(g/L) of the small-angle oscillation."""
        return math.sqrt(self.constants.g / self.length)

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega


def period(config: PendulumConfig) -> float:
    """Small-angle pendulum period T = 2*pi*sqrt(L/g)."""
    return config.period


class Trajectory:
    """Deterministic map from time to arc displacement s(t), with velocity.

    Instances are immutable after construction and safe for concurrent
    evaluation; both accessors accept scalars or arrays.
    """

    def __init__(
        self,
        position: Callable[[np.ndarray], np.ndarray],
        velocity: Callable[[np.ndarray], np.ndarray],
        t_max: float = math.inf,
    ):
        self._position = position
        self._velocity = velocity
        self.t_max = t_max

    def __call__(self, t):
        arr = np.asarray(t, dtype=float)
        out = self._position(arr)
        return float(out) if np.ndim(t) == 0 else out

    def velocity(self, t):
        arr = np.asarray(t, dtype=float)
        out = self._velocity(arr)
        return float(out) if np.ndim(t) == 0 else out

    @property
    def initial_displacement(self) -> float:
        return self(0.0)

    def sample(self, t_start: float, t_end: float, n_samples: int) -> np.ndarray:
        """Uniform samples as an (n_samples, 2) array of (t, s) pairs."""
        if n_samples < 2:
            raise ValueError("n_samples must be at least 2")
        t = np.linspace(t_start, t_end, n_samples)
        return np.column_stack([t, self(t)])

    def shifted_to_zero(self) -> "Trajectory":
        """This trajectory re-expressed as displacement from its start."""
        s0 = self.initial_displacement
        return Trajectory(
            lambda t: self._position(t) - s0,
            self._velocity,
            t_max=self.t_max,
        )


def free_fall_trajectory(s0: float, a_eff: float, duration: float = math.inf) -> Trajectory:
    """Uniformly accelerated motion s(t) = s0 - a_eff*t^2/2."""
    return Trajectory(
        lambda t: s0 - 0.5 * a_eff * t * t,
        lambda t: -a_eff * t,
        t_max=duration,
    )


def small_angle_trajectory(config: PendulumConfig) -> Trajectory:
    """Closed-form small-angle solution s(t) = L*theta_0*cos(omega*t).

    Only valid for release from rest; a nonzero initial angular velocity
    is rejected because this closed form does not describe it.
    """
    if config.initial_angular_velocity != 0.0:
        raise ValueError(
            "small-angle closed form requires zero initial angular velocity; "
            f"got {config.initial_angular_velocity!r}"
        )
    amp = config.length * config.initial_angle
    w = config.omega
    return Trajectory(
        lambda t: amp * np.cos(w * t),
        lambda t: -amp * w * np.sin(w * t),
    )


def exact_trajectory(
    config: PendulumConfig,
    tolerances: Tolerances,
    t_end: float,
) -> Trajectory:
    """Integrate the full pendulum equation theta'' = -(g/L) sin(theta).

    The integration runs in nondimensional variables (angle scaled by the
    release amplitude, time by 1/omega) so the solver tolerances control
    error relative to the motion's own scale.  Dense output is cached at
    construction; evaluation afterwards is deterministic and cheap.
    """
    if not t_end > 0.0:
        raise ValueError(f"t_end must be positive, got {t_end!r}")
    w = config.omega
    scale = math.hypot(config.initial_angle, config.initial_angular_velocity / w)
    if scale == 0.0:
        # Equilibrium fixed point: the solution is identically zero.
        zero = lambda t: np.zeros_like(np.asarray(t, dtype=float))
        return Trajectory(zero, zero, t_max=t_end)

    def rhs(_tau: float, y: np.ndarray) -> list[float]:
        return [y[1], -math.sin(scale * y[0]) / scale]

    tau_end = w * t_end
    sol = solve_ivp(
        rhs,
        (0.0, tau_end),
        [config.initial_angle / scale, config.initial_angular_velocity / (scale * w)],
        method="DOP853",
        dense_output=True,
        rtol=tolerances.ode_rel_tol,
        atol=tolerances.ode_abs_tol,
    )
    if not sol.success:
        raise StepSizeUnderflowError(
            f"pendulum integration failed at tolerances {tolerances}: {sol.message}"
        )
    L = config.length

    def position(t: np.ndarray) -> np.ndarray:
        return L * scale * sol.sol(w * np.asarray(t, dtype=float))[0]

    def velocity(t: np.ndarray) -> np.ndarray:
        return L * scale * w * sol.sol(w * np.asarray(t, dtype=float))[1]

    return Trajectory(position, velocity, t_max=t_end)


def build_trajectory(
    model: TrajectoryModel,
    config: PendulumConfig,
    tolerances: Tolerances,
    t_end: float,
) -> Trajectory:
    """Construct the configured centre-of-mass model for a pendulum setup.

    The free-fall variant matches the pendulum's initial condition and
    carries the tangential release acceleration g*theta_0, so all three
    models agree at short times.
    """
    if model is TrajectoryModel.SMALL_ANGLE:
        return small_angle_trajectory(config)
    if model is TrajectoryModel.EXACT_ODE:
        return exact_trajectory(config, tolerances, t_end)
    a_eff = config.constants.g * config.initial_angle
    return free_fall_trajectory(config.length * config.initial_angle, a_eff, duration=t_end)


def _cos_remainder_ratio(x: float) -> float:
    """(cos x - 1 + x^2/2) / (x^2/2), evaluated without cancellation.

    The direct difference loses all significance for x below ~1e-4, so
    the alternating series starting at the quartic term is summed
    explicitly; it converges to machine precision in a few terms for the
    short-time arguments this package uses.
    """
    if x == 0.0:
        return 0.0
    if abs(x) > 1.0:
        return (math.cos(x) - 1.0 + 0.5 * x * x) / (0.5 * x * x)
    x2 = x * x
    term = x2 * x2 / 24.0  # quartic term of the cosine series
    total = 0.0
    k = 2
    while True:
        total += term
        nxt = -term * x2 / ((2 * k + 1) * (2 * k + 2))
        if abs(nxt) < 1e-18 * abs(total):
            break
        term = nxt
        k += 1
    return total / (0.5 * x2)


def trajectory_deviation(config: PendulumConfig, t: float) -> float:
    """Relative deviation of pendulum motion from its quadratic expansion.

    Compares the small-angle arc displacement against uniformly
    accelerated motion with matched initial condition and tangential
    acceleration g*theta_0, normalising by the displacement from start:

        |s_pend(t) - s_quad(t)| / |s_quad(t) - s_0|

    The release amplitude cancels in the ratio; the leading behaviour is
    (pi^2/3)*(t/T)^2.  Only defined in the short-time regime t < T/10,
    where the quadratic expansion being compared against is meaningful.
    """
    t = float(t)
    T = config.period
    if not 0.0 < t < SHORT_TIME_FRACTION * T:
        raise ValueError(
            f"trajectory_deviation requires 0 < t < T/10 = {SHORT_TIME_FRACTION * T:.6g} s, "
            f"got t = {t!r}"
        )
    return abs(_cos_remainder_ratio(config.omega * t))


def pendulum_energy_per_mass(config: PendulumConfig, theta, theta_dot):
    """Mechanical energy per unit mass: L^2 theta_dot^2 / 2 + g L (1 - cos theta).

    The potential term uses 1 - cos(theta) = 2 sin^2(theta/2); the naive
    difference would drown the small-angle energies in rounding noise.
    """
    L = config.length
    g = config.constants.g
    theta = np.asarray(theta, dtype=float)
    theta_dot = np.asarray(theta_dot, dtype=float)
    return 0.5 * L * L * theta_dot ** 2 + g * L * 2.0 * np.sin(0.5 * theta) ** 2
