"""Gravitational interaction phases between two interferometers.

Two particles of mass m sit a distance d apart, each split into left
and right branches.  For a branch pair (i, j) the Newtonian interaction
energy is V_ij(t) = -G m^2 / r_ij(t), and the accumulated phase is its
time integral over hbar.  The entangling phase is the four-branch
combination

    delta_phi = phi_LL + phi_RR - phi_LR - phi_RL,

a mixed second difference in the two splittings: single-particle
(local) phase contributions cancel exactly, leaving only the genuinely
bipartite part.  The two-term difference phi_LR - phi_LL is also
exposed, since it is the form quoted in simplified treatments; the two
agree only in special symmetric arrangements, so both are reported.

Phases are evaluated in the grouped form (G m^2 / hbar) * integral(dt/r)
to keep the 1e-39-scale numerator away from the 1e-34-scale hbar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .constants import PhysicalConstants, Tolerances, default_constants
from .dynamics import (
    PendulumConfig,
    TrajectoryModel,
    build_trajectory,
    period,
)
from .interferometer import (
    BranchPairTrajectory,
    InterferometerSpec,
    build_branch_pair,
    build_branch_pair_constrained,
)
from .quadrature import integrate

DEFAULT_MIN_SEPARATION = 1e-6

# A phase comparison is only reported when the reference phase exceeds
# this multiple of its own quadrature error estimate.
RESOLUTION_SAFETY_FACTOR = 10.0


class SeparationGuardError(RuntimeError):
    """Branch separation fell below the configured point-mass validity limit."""


class PhaseResolutionError(RuntimeError):
    """The requested phase comparison is smaller than the numerical error."""


@dataclass(frozen=True)
class ExperimentGeometry:
    """Arrangement of the two interferometers.

    The particles' release points are center_separation apart along the
    line of centers; branch displacements are applied along the split
    axis, which makes an angle split_axis_angle with that line (0 is the
    collinear, maximal-effect configuration).  Branch trajectories fed
    to the phase operations must be expressed as displacement from each
    particle's own release point.

    min_separation guards the 1/r potential: below micron scales the
    point-mass model is invalid and numerically explosive.
    """

    center_separation: float
    split_axis_angle: float = 0.0
    mass: float = 1e-14
    min_separation: float = DEFAULT_MIN_SEPARATION

    def __post_init__(self) -> None:
        if not self.center_separation > 0.0:
            raise ValueError(
                f"center_separation must be positive, got {self.center_separation!r}"
            )
        if not self.mass > 0.0:
            raise ValueError(f"mass must be positive, got {self.mass!r}")
        if self.min_separation < 0.0:
            raise ValueError(f"min_separation must be nonnegative, got {self.min_separation!r}")


@dataclass(frozen=True)
class PhaseEstimate:
    """A phase value together with its quadrature error estimate."""

    value: float
    error_estimate: float


@dataclass(frozen=True)
class PhaseMatrix:
    """The four branch-pair phases and their derived combinations.

    The entangling phase is recomputed from the four entries on every
    access rather than stored, so the defining identity cannot drift.
    """

    phi_ll: PhaseEstimate
    phi_lr: PhaseEstimate
    phi_rl: PhaseEstimate
    phi_rr: PhaseEstimate

    def __post_init__(self) -> None:
        for name in ("phi_ll", "phi_lr", "phi_rl", "phi_rr"):
            if not math.isfinite(getattr(self, name).value):
                raise ValueError(f"phase {name} is not finite")

    @property
    def entangling_phase(self) -> float:
        return self.phi_ll.value + self.phi_rr.value - self.phi_lr.value - self.phi_rl.value

    @property
    def entangling_phase_error(self) -> float:
        return (
            self.phi_ll.error_estimate
            + self.phi_rr.error_estimate
            + self.phi_lr.error_estimate
            + self.phi_rl.error_estimate
        )

    @property
    def two_term_phase(self) -> float:
        """The simplified two-branch difference phi_LR - phi_LL."""
        return self.phi_lr.value - self.phi_ll.value

    def phases(self) -> dict[str, float]:
        return {
            "phi_ll": self.phi_ll.value,
            "phi_lr": self.phi_lr.value,
            "phi_rl": self.phi_rl.value,
            "phi_rr": self.phi_rr.value,
        }


def interaction_potential(mass: float, r: float, constants: PhysicalConstants) -> float:
    """Newtonian pair potential -G m^2 / r."""
    if not r > 0.0:
        raise ValueError(f"separation must be positive, got {r!r}")
    return -constants.G * mass * mass / r


def _branch(pair: BranchPairTrajectory, which: str):
    try:
        return {"L": pair.left, "R": pair.right}[which]
    except KeyError:
        raise ValueError(f"branch label must be 'L' or 'R', got {which!r}") from None


def _separation_array(
    geometry: ExperimentGeometry,
    traj_a,
    traj_b,
    t: np.ndarray,
) -> np.ndarray:
    delta = traj_b(t) - traj_a(t)
    d = geometry.center_separation
    alpha = geometry.split_axis_angle
    r = np.hypot(d + delta * math.cos(alpha), delta * math.sin(alpha))
    if np.any(r < geometry.min_separation):
        raise SeparationGuardError(
            f"branch separation fell below the {geometry.min_separation:.3e} m guard "
            f"(minimum encountered {float(np.min(r)):.3e} m)"
        )
    return r


def pair_separation(
    geometry: ExperimentGeometry,
    pair_a: BranchPairTrajectory,
    pair_b: BranchPairTrajectory,
    i: str,
    j: str,
    t: float,
) -> float:
    """Distance between particle A on branch i and particle B on branch j."""
    r = _separation_array(
        geometry, _branch(pair_a, i), _branch(pair_b, j), np.asarray([float(t)])
    )
    return float(r[0])


def branch_phase(
    geometry: ExperimentGeometry,
    pair_a: BranchPairTrajectory,
    pair_b: BranchPairTrajectory,
    i: str,
    j: str,
    t_total: float,
    tolerances: Tolerances,
    constants: PhysicalConstants | None = None,
) -> PhaseEstimate:
    """Accumulated phase (1/hbar) * integral of V_ij over the sequence."""
    constants = constants or default_constants()
    traj_a = _branch(pair_a, i)
    traj_b = _branch(pair_b, j)
    coupling = constants.G * geometry.mass * geometry.mass / constants.hbar

    def integrand(t: np.ndarray) -> np.ndarray:
        return 1.0 / _separation_array(geometry, traj_a, traj_b, t)

    breakpoints = sorted(set(pair_a.breakpoints) | set(pair_b.breakpoints))
    result = integrate(integrand, 0.0, t_total, tolerances, breakpoints=breakpoints)
    return PhaseEstimate(
        value=-coupling * result.value,
        error_estimate=coupling * result.error_estimate,
    )


def phase_matrix(
    geometry: ExperimentGeometry,
    pair_a: BranchPairTrajectory,
    pair_b: BranchPairTrajectory,
    t_total: float,
    tolerances: Tolerances,
    constants: PhysicalConstants | None = None,
) -> PhaseMatrix:
    """All four branch-pair phases for the given trajectory pairs."""
    phases = {
        (i, j): branch_phase(geometry, pair_a, pair_b, i, j, t_total, tolerances, constants)
        for i in "LR"
        for j in "LR"
    }
    return PhaseMatrix(
        phi_ll=phases[("L", "L")],
        phi_lr=phases[("L", "R")],
        phi_rl=phases[("R", "L")],
        phi_rr=phases[("R", "R")],
    )


@dataclass(frozen=True)
class EntanglingPhaseComparison:
    """Entangling phase under free-fall and pendulum dynamics."""

    delta_phi_free: float
    delta_phi_pend: float
    relative_correction: float
    delta_phi_free_error: float
    delta_phi_pend_error: float
    relative_correction_error: float
    free_matrix: PhaseMatrix
    pendulum_matrix: PhaseMatrix


def _facing_spec(spec: InterferometerSpec) -> InterferometerSpec:
    # Particle B's splitting mirrors particle A's: its acceleration is
    # negated so the closest branches approach each other.
    return replace(spec, spin_acceleration=-spec.spin_acceleration)


def build_protocol_pairs(
    config: PendulumConfig,
    spec: InterferometerSpec,
    tolerances: Tolerances,
    model: TrajectoryModel,
    mirror_release: bool = True,
) -> tuple[BranchPairTrajectory, BranchPairTrajectory]:
    """Branch pairs for both particles under the requested dynamics model.

    Particle A uses the configured release angle; particle B mirrors it
    when mirror_release is set (the two pendula swing in opposition) and
    copies it otherwise.  Both interferometers run the same schedule with
    B's splitting facing A's.  Free-fall bases are matched to the
    pendulum release: initial displacement L*theta_0 and tangential
    acceleration g*theta_0.  All trajectories are returned as
    displacement from each particle's own release point, which is what
    the phase operations expect.

    Under the pendulum models the splitting uses the constrained
    harmonic response; under free fall it is the plain double integral.
    """
    config_b = replace(
        config,
        initial_angle=-config.initial_angle if mirror_release else config.initial_angle,
        initial_angular_velocity=(
            -config.initial_angular_velocity if mirror_release else config.initial_angular_velocity
        ),
    )
    spec_b = _facing_spec(spec)
    pairs = []
    for cfg, sp in ((config, spec), (config_b, spec_b)):
        base = build_trajectory(model, cfg, tolerances, sp.total_time).shifted_to_zero()
        if model is TrajectoryModel.FREE_FALL:
            pairs.append(build_branch_pair(sp, base))
        else:
            pairs.append(build_branch_pair_constrained(sp, base, cfg.omega))
    return pairs[0], pairs[1]


def entangling_phase_constrained_vs_free(
    config: PendulumConfig,
    spec: InterferometerSpec,
    geometry: ExperimentGeometry,
    tolerances: Tolerances,
    mirror_release: bool = True,
    constants: PhysicalConstants | None = None,
) -> EntanglingPhaseComparison:
    """Entangling phase with pendulum dynamics versus matched free fall.

    The free run uses matched free-fall bases and the free splitting
    response; the pendulum run uses the configured pendulum model for
    the bases and the constrained splitting response at the pendulum
    frequency.  The relative correction (delta_phi_pend - delta_phi_free)
    / delta_phi_free isolates what the mechanical constraint does to the
    entangling phase; it scales as (t/T)^2 with a coefficient of the
    order of pi^2/3, the exact value depending on the schedule weighting
    and geometry.
    """
    T = period(config)
    if not spec.total_time < T / 10.0:
        raise ValueError(
            f"total_time {spec.total_time!r} must be below a tenth of the pendulum "
            f"period {T:.6g} s for the short-time comparison to be meaningful"
        )
    constants = constants or config.constants

    pend_model = (
        spec.dynamics_model
        if spec.dynamics_model is not TrajectoryModel.FREE_FALL
        else TrajectoryModel.SMALL_ANGLE
    )
    free_a, free_b = build_protocol_pairs(
        config, spec, tolerances, TrajectoryModel.FREE_FALL, mirror_release
    )
    pend_a, pend_b = build_protocol_pairs(config, spec, tolerances, pend_model, mirror_release)

    matrix_free = phase_matrix(geometry, free_a, free_b, spec.total_time, tolerances, constants)
    matrix_pend = phase_matrix(geometry, pend_a, pend_b, spec.total_time, tolerances, constants)

    dphi_free = matrix_free.entangling_phase
    err_free = matrix_free.entangling_phase_error

    if abs(dphi_free) < RESOLUTION_SAFETY_FACTOR * err_free:
        raise PhaseResolutionError(
            f"free entangling phase {dphi_free:.3e} rad is not resolved above its "
            f"quadrature error estimate {err_free:.3e} rad; the relative correction "
            "would be noise"
        )

    # The correction is several orders below the phases themselves, so a
    # difference of independently integrated phases would be dominated
    # by the integrals' own truncation.  Integrating the pendulum-minus-
    # free difference of the four-branch combination directly keeps the
    # relative tolerance applied to the correction itself.
    coupling = constants.G * geometry.mass * geometry.mass / constants.hbar
    sign_pairs = (
        (+1.0, "L", "L"), (+1.0, "R", "R"), (-1.0, "L", "R"), (-1.0, "R", "L"),
    )

    def difference_integrand(t: np.ndarray) -> np.ndarray:
        out = np.zeros_like(t)
        for sign, i, j in sign_pairs:
            r_pend = _separation_array(geometry, _branch(pend_a, i), _branch(pend_b, j), t)
            r_free = _separation_array(geometry, _branch(free_a, i), _branch(free_b, j), t)
            out += sign * (1.0 / r_pend - 1.0 / r_free)
        return out

    # Positive and negative stretches of the difference integrand nearly
    # cancel, so convergence is certified against the reference phase:
    # the correction is resolved to quad_rel_tol of delta_phi_free.
    breakpoints = sorted(set(pend_a.breakpoints) | set(free_a.breakpoints))
    diff_result = integrate(
        difference_integrand,
        0.0,
        spec.total_time,
        tolerances,
        breakpoints=breakpoints,
        abs_tol=tolerances.quad_rel_tol * abs(dphi_free) / coupling,
    )
    dphi_diff = -coupling * diff_result.value
    err_diff = coupling * diff_result.error_estimate

    dphi_pend = dphi_free + dphi_diff
    correction = dphi_diff / dphi_free
    correction_error = (err_diff + abs(correction) * err_free) / abs(dphi_free)
    return EntanglingPhaseComparison(
        delta_phi_free=dphi_free,
        delta_phi_pend=dphi_pend,
        relative_correction=correction,
        delta_phi_free_error=err_free,
        delta_phi_pend_error=err_free + err_diff,
        relative_correction_error=correction_error,
        free_matrix=matrix_free,
        pendulum_matrix=matrix_pend,
    )
