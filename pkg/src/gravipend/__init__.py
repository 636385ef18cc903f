"""Simulator for gravitationally induced entanglement on pendulum platforms.

Two masses, each suspended as a pendulum and split into a spatial
superposition by a Stern-Gerlach sequence, accumulate branch-dependent
gravitational phases that entangle their spins on recombination.  This
package computes the trajectories, phases, visibility, and entanglement
witness for that protocol, and quantifies how far the mechanical
constraint pulls the result away from the free-fall ideal: the deviation
enters at (pi^2/3)(t/T)^2 and stays below the 1e-5 level for realistic
parameters.
"""

from .constants import (
    DEFAULT_TOLERANCES,
    STRICT_TOLERANCES,
    PhysicalConstants,
    Tolerances,
    default_constants,
)
from .dynamics import (
    HARMONIC_DEVIATION_COEFFICIENT,
    PendulumConfig,
    Trajectory,
    TrajectoryModel,
    exact_trajectory,
    free_fall_trajectory,
    pendulum_energy_per_mass,
    period,
    small_angle_trajectory,
    trajectory_deviation,
)
from .entanglement import (
    TwoQubitState,
    VisibilityResult,
    apply_decoherence,
    build_state,
    corrected_visibility,
    negativity,
    phase_correction,
    state_from_phases,
    visibility,
)
from .gravity_phase import (
    EntanglingPhaseComparison,
    ExperimentGeometry,
    PhaseEstimate,
    PhaseMatrix,
    branch_phase,
    entangling_phase_constrained_vs_free,
    interaction_potential,
    pair_separation,
    phase_matrix,
)
from .interferometer import (
    BranchPairTrajectory,
    InterferometerSpec,
    acceleration_for_separation,
    branch_separation,
    build_branch_pair,
    build_branch_pair_constrained,
    default_schedule,
    required_angle,
    spin_acceleration_from_gradient,
)
from .noise_budget import (
    NoiseParams,
    RegimeReport,
    RegimeThresholds,
    regime_report,
    thermal_rms,
)
from .config import RunConfig, bundled_config, config_from_dict, load_config
from .protocol import ProtocolResult, result_document, simulate_protocol
from .sweep import PowerLawFit, ResultRecord, fit_power_law, run_sweep
from .verify import VerificationReport, run_verification

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOLERANCES",
    "STRICT_TOLERANCES",
    "HARMONIC_DEVIATION_COEFFICIENT",
    "PhysicalConstants",
    "Tolerances",
    "default_constants",
    "PendulumConfig",
    "Trajectory",
    "TrajectoryModel",
    "exact_trajectory",
    "free_fall_trajectory",
    "pendulum_energy_per_mass",
    "period",
    "small_angle_trajectory",
    "trajectory_deviation",
    "TwoQubitState",
    "VisibilityResult",
    "apply_decoherence",
    "build_state",
    "corrected_visibility",
    "negativity",
    "phase_correction",
    "state_from_phases",
    "visibility",
    "EntanglingPhaseComparison",
    "ExperimentGeometry",
    "PhaseEstimate",
    "PhaseMatrix",
    "branch_phase",
    "entangling_phase_constrained_vs_free",
    "interaction_potential",
    "pair_separation",
    "phase_matrix",
    "BranchPairTrajectory",
    "InterferometerSpec",
    "acceleration_for_separation",
    "branch_separation",
    "build_branch_pair",
    "build_branch_pair_constrained",
    "default_schedule",
    "required_angle",
    "spin_acceleration_from_gradient",
    "NoiseParams",
    "RegimeReport",
    "RegimeThresholds",
    "regime_report",
    "thermal_rms",
    "RunConfig",
    "bundled_config",
    "config_from_dict",
    "load_config",
    "ProtocolResult",
    "result_document",
    "simulate_protocol",
    "PowerLawFit",
    "ResultRecord",
    "fit_power_law",
    "run_sweep",
    "VerificationReport",
    "run_verification",
]
