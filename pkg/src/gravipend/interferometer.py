"""Spin-dependent branch trajectories for a Stern-Gerlach interferometer.

A magnetic field gradient exerts opposite forces on the two spin states,
splitting the wavefunction into left and right branches whose separation
grows quadratically, s(t) = a t^2 / 2, during a constant-acceleration
segment.  A schedule of signed segments (split, flip, recombine) returns
the branches to common position and velocity at the end of the sequence.

Two splitting responses are provided:

* the free response, where the separation is the plain double integral
  of the scheduled acceleration and is therefore independent of the base
  trajectory the branches ride on;
* the constrained response of a mass on a pendulum, where the restoring
  force acts on the splitting as well, s'' = a(t) - omega^2 s.  The
  relative difference between the two is the same (pi^2/3)(t/T)^2 law
  that separates pendulum motion from free fall.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .dynamics import Trajectory, TrajectoryModel

# Default split/flip/recombine sequence: equal quarters with signs
# (+, -, -, +), which closes exactly under double integration.
DEFAULT_SCHEDULE_SHAPE: tuple[tuple[float, int], ...] = (
    (0.25, +1),
    (0.25, -1),
    (0.25, -1),
    (0.25, +1),
)

CLOSURE_RESIDUAL_LIMIT = 1e-12

SMALL_ANGLE_LIMIT = 1e-2


class ScheduleClosureError(ValueError):
    """The acceleration schedule does not recombine the branches."""


def branch_separation(a: float, t: float) -> float:
    """Separation grown from rest under constant relative acceleration."""
    if t < 0.0:
        raise ValueError(f"time must be nonnegative, got {t!r}")
    return 0.5 * a * t * t


def required_angle(separation: float, length: float) -> float:
    """Pendulum angle subtended by a given arc separation."""
    if not length > 0.0:
        raise ValueError(f"pendulum length must be positive, got {length!r}")
    return separation / length


def is_small_angle(theta: float, threshold: float = SMALL_ANGLE_LIMIT) -> bool:
    """Whether an angle sits inside the small-angle validity window."""
    return abs(theta) < threshold


def spin_acceleration_from_gradient(
    magnetic_moment: float, field_gradient: float, mass: float
) -> float:
    """Helper a = mu * dB/dx / m for a magnetic-gradient force."""
    if not mass > 0.0:
        raise ValueError(f"mass must be positive, got {mass!r}")
    return magnetic_moment * field_gradient / mass


def default_schedule(total_time: float) -> tuple[tuple[float, int], ...]:
    """The default four-segment schedule scaled to a total duration."""
    return tuple((frac * total_time, sign) for frac, sign in DEFAULT_SCHEDULE_SHAPE)


def acceleration_for_separation(target_separation: float, total_time: float) -> float:
    """Spin acceleration giving a target peak separation on the default schedule.

    The default schedule peaks at a * total_time^2 / 16 at mid-sequence.
    """
    if not total_time > 0.0:
        raise ValueError(f"total_time must be positive, got {total_time!r}")
    return 16.0 * target_separation / (total_time * total_time)


class _PiecewiseResponse:
    """Separation history under a segment schedule, evaluated in closed form.

    Each segment stores the entry state (position, velocity) and the
    applied acceleration; evaluation locates the segment by searchsorted
    and applies the per-segment solution.  omega = 0 gives the free
    (double-integral) response, omega > 0 the constrained harmonic one.
    """

    def __init__(self, schedule: Sequence[tuple[float, int]], a: float, omega: float):
        self.omega = float(omega)
        starts = [0.0]
        states: list[tuple[float, float, float]] = []  # (x0, v0, f) per segment
        x, v = 0.0, 0.0
        for duration, sign in schedule:
            f = sign * a
            states.append((x, v, f))
            x, v = self._advance(x, v, f, duration)
            starts.append(starts[-1] + duration)
        self.breakpoints = np.array(starts)
        self._x0 = np.array([s[0] for s in states])
        self._v0 = np.array([s[1] for s in states])
        self._f = np.array([s[2] for s in states])
        self.end_position = x
        self.end_velocity = v

    def _advance(self, x: float, v: float, f: float, tau: float) -> tuple[float, float]:
        w = self.omega
        if w == 0.0:
            return x + v * tau + 0.5 * f * tau * tau, v + f * tau
        # The forced equilibrium f/w^2 dwarfs the displacement at these
        # short times, so the response is grouped per term (versine form)
        # instead of the textbook xe + (x - xe) cos, which cancels
        # catastrophically.
        xe = f / (w * w)
        c, s = math.cos(w * tau), math.sin(w * tau)
        versine = 2.0 * math.sin(0.5 * w * tau) ** 2
        return x * c + (v / w) * s + xe * versine, (xe - x) * w * s + v * c

    def _segment_index(self, t: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self.breakpoints, t, side="right") - 1
        return np.clip(idx, 0, len(self._f) - 1)

    def __call__(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        idx = self._segment_index(t)
        tau = t - self.breakpoints[idx]
        x0, v0, f = self._x0[idx], self._v0[idx], self._f[idx]
        w = self.omega
        if w == 0.0:
            return x0 + v0 * tau + 0.5 * f * tau * tau
        xe = f / (w * w)
        versine = 2.0 * np.sin(0.5 * w * tau) ** 2
        return x0 * np.cos(w * tau) + (v0 / w) * np.sin(w * tau) + xe * versine

    def velocity(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        idx = self._segment_index(t)
        tau = t - self.breakpoints[idx]
        x0, v0, f = self._x0[idx], self._v0[idx], self._f[idx]
        w = self.omega
        if w == 0.0:
            return v0 + f * tau
        xe = f / (w * w)
        return (xe - x0) * w * np.sin(w * tau) + v0 * np.cos(w * tau)

    def max_abs(self, samples_per_segment: int = 2049) -> float:
        """Largest |separation| over the sequence.

        For the free response the per-segment extrema are analytic
        (endpoints plus the stationary point of each quadratic); the
        constrained response is densely sampled instead.
        """
        if self.omega == 0.0:
            best = 0.0
            for i in range(len(self._f)):
                lo, hi = self.breakpoints[i], self.breakpoints[i + 1]
                candidates = [lo, hi]
                if self._f[i] != 0.0:
                    t_star = lo - self._v0[i] / self._f[i]
                    if lo < t_star < hi:
                        candidates.append(t_star)
                best = max(best, float(np.max(np.abs(self(np.array(candidates))))))
            return best
        t = np.linspace(self.breakpoints[0], self.breakpoints[-1],
                        samples_per_segment * len(self._f))
        return float(np.max(np.abs(self(t))))


@dataclass(frozen=True)
class InterferometerSpec:
    """One interferometer sequence: total time, spin force, and schedule.

    The schedule is an ordered list of (duration, sign) segments; signs
    are +1, -1 or 0 and scale the spin acceleration applied to the
    branch separation during that segment.  Durations must sum to the
    total time and the double-integrated schedule must recombine.
    """

    total_time: float
    spin_acceleration: float
    schedule: tuple[tuple[float, int], ...] = ()
    dynamics_model: TrajectoryModel = TrajectoryModel.SMALL_ANGLE

    def __post_init__(self) -> None:
        if not self.total_time > 0.0:
            raise ValueError(f"total_time must be positive, got {self.total_time!r}")
        schedule = self.schedule or default_schedule(self.total_time)
        object.__setattr__(self, "schedule", tuple(schedule))
        for duration, sign in self.schedule:
            if not duration > 0.0:
                raise ValueError(f"segment durations must be positive, got {duration!r}")
            if sign not in (-1, 0, 1):
                raise ValueError(f"segment signs must be -1, 0 or +1, got {sign!r}")
        total = math.fsum(d for d, _ in self.schedule)
        if not math.isclose(total, self.total_time, rel_tol=1e-12, abs_tol=0.0):
            raise ValueError(
                f"schedule durations sum to {total!r}, expected total_time {self.total_time!r}"
            )
        self._check_closure()

    def _check_closure(self) -> None:
        response = _PiecewiseResponse(self.schedule, self.spin_acceleration, 0.0)
        max_sep = response.max_abs()
        if max_sep == 0.0:
            return  # zero acceleration: branches never separate
        limit = CLOSURE_RESIDUAL_LIMIT * max_sep
        peak_speed = float(np.max(np.abs(response.velocity(response.breakpoints))))
        if abs(response.end_position) > limit:
            raise ScheduleClosureError(
                f"schedule does not recombine: end separation {response.end_position:.3e} m "
                f"exceeds {limit:.3e} m"
            )
        if peak_speed > 0.0 and abs(response.end_velocity) > CLOSURE_RESIDUAL_LIMIT * peak_speed:
            raise ScheduleClosureError(
                f"schedule does not recombine: end relative velocity "
                f"{response.end_velocity:.3e} m/s is nonzero"
            )

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """Segment boundaries, used to seed quadrature subdivisions."""
        edges = [0.0]
        for duration, _ in self.schedule:
            edges.append(edges[-1] + duration)
        return tuple(edges)


@dataclass(frozen=True)
class BranchPairTrajectory:
    """Left/right branch trajectories of one interferometer.

    Branches sit symmetrically at +/- half the separation history around
    the base trajectory, so they coincide at t = 0 by construction.  The
    closure residual records how far from recombined the branches are at
    the end of the sequence (zero up to roundoff for the free response,
    physically nonzero for the constrained one).
    """

    left: Trajectory
    right: Trajectory
    max_separation: float
    total_time: float
    breakpoints: tuple[float, ...]
    closure_residual: float = 0.0
    _separation: _PiecewiseResponse = field(repr=False, default=None)

    def separation(self, t):
        """Signed branch separation right(t) - left(t)."""
        out = self._separation(t)
        return float(out) if np.ndim(t) == 0 else out


def _assemble_pair(
    spec: InterferometerSpec, base: Trajectory, response: _PiecewiseResponse
) -> BranchPairTrajectory:
    left = Trajectory(
        lambda t: base(np.asarray(t, dtype=float)) - 0.5 * response(t),
        lambda t: base.velocity(np.asarray(t, dtype=float)) - 0.5 * response.velocity(t),
        t_max=spec.total_time,
    )
    right = Trajectory(
        lambda t: base(np.asarray(t, dtype=float)) + 0.5 * response(t),
        lambda t: base.velocity(np.asarray(t, dtype=float)) + 0.5 * response.velocity(t),
        t_max=spec.total_time,
    )
    return BranchPairTrajectory(
        left=left,
        right=right,
        max_separation=response.max_abs(),
        total_time=spec.total_time,
        breakpoints=spec.breakpoints,
        closure_residual=abs(response.end_position),
        _separation=response,
    )


def build_branch_pair(spec: InterferometerSpec, base: Trajectory) -> BranchPairTrajectory:
    """Branch pair with the free splitting response.

    The separation is the double integral of the scheduled acceleration,
    so it is exactly independent of the base trajectory: the spin force
    adds linearly and the constraint affects only the common mode.
    """
    response = _PiecewiseResponse(spec.schedule, spec.spin_acceleration, 0.0)
    return _assemble_pair(spec, base, response)


def build_branch_pair_constrained(
    spec: InterferometerSpec, base: Trajectory, omega: float
) -> BranchPairTrajectory:
    """Branch pair whose splitting feels the pendulum restoring force.

    The separation obeys s'' = a(t) - omega^2 s, the driven response of
    the constrained mass.  Recombination is then only approximate: the
    end-of-sequence residual is of relative order (omega*t)^2 and is
    recorded on the result rather than rejected.
    """
    if not omega > 0.0:
        raise ValueError(f"omega must be positive, got {omega!r}")
    response = _PiecewiseResponse(spec.schedule, spec.spin_acceleration, omega)
    return _assemble_pair(spec, base, response)
