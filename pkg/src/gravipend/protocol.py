"""End-to-end protocol evaluation: one configuration in, one record out.

Composes the whole chain: pendulum and matched free-fall trajectories,
branch splitting, pair separations, accumulated phases, entangling
phase under both dynamics, visibility with its constraint bound,
negativity witness, thermal budget, and regime report.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import RunConfig
from .dynamics import trajectory_deviation
from .entanglement import (
    HARMONIC_DEVIATION_COEFFICIENT,
    apply_decoherence,
    build_state,
    negativity,
    visibility,
)
from .dynamics import TrajectoryModel
from .gravity_phase import (
    EntanglingPhaseComparison,
    PhaseMatrix,
    PhaseResolutionError,
    build_protocol_pairs,
    entangling_phase_constrained_vs_free,
    phase_matrix,
)
from .noise_budget import RegimeReport, regime_report, thermal_rms


@dataclass(frozen=True)
class ProtocolResult:
    """Everything one full protocol evaluation produces."""

    comparison: EntanglingPhaseComparison | None
    unresolved_reason: str | None
    free_matrix: PhaseMatrix
    pendulum_matrix: PhaseMatrix
    V_free: float
    V_pend: float
    visibility_bound: float
    V_decohered: float
    negativity: float
    thermal_rms: float
    trajectory_deviation: float
    t_over_T: float
    regime: RegimeReport

    def observables(self) -> dict:
        """Flat observable map used by sweeps and serialisation."""
        cmp = self.comparison
        return {
            "delta_phi_free": self.free_matrix.entangling_phase,
            "delta_phi_free_error": self.free_matrix.entangling_phase_error,
            "delta_phi_pend": (
                cmp.delta_phi_pend if cmp else self.pendulum_matrix.entangling_phase
            ),
            "delta_phi_pend_error": (
                cmp.delta_phi_pend_error if cmp else self.pendulum_matrix.entangling_phase_error
            ),
            "relative_correction": cmp.relative_correction if cmp else None,
            "relative_correction_error": cmp.relative_correction_error if cmp else None,
            "V_free": self.V_free,
            "V_pend": self.V_pend,
            "visibility_bound": self.visibility_bound,
            "V_decohered": self.V_decohered,
            "negativity": self.negativity,
            "thermal_rms": self.thermal_rms,
            "trajectory_deviation": self.trajectory_deviation,
            "t_over_T": self.t_over_T,
            "regime_flags": self.regime.flags(),
        }


def simulate_protocol(config: RunConfig) -> ProtocolResult:
    """Run one full protocol evaluation under both dynamics models.

    A configuration whose entangling phase is too small to resolve above
    the quadrature error (for example zero spin acceleration) is not an
    error: the comparison is reported as unresolved and the degenerate
    observables fall back to their analytic values.
    """
    t_total = config.interferometer.total_time
    T = config.pendulum.period

    comparison: EntanglingPhaseComparison | None = None
    unresolved: str | None = None
    try:
        comparison = entangling_phase_constrained_vs_free(
            config.pendulum,
            config.interferometer,
            config.geometry,
            config.tolerances,
            mirror_release=config.mirror_release,
            constants=config.constants,
        )
    except PhaseResolutionError as exc:
        unresolved = str(exc)

    if comparison is not None:
        matrix_free = comparison.free_matrix
        matrix_pend = comparison.pendulum_matrix
        dphi_pend = comparison.delta_phi_pend
    else:
        # The correction is unresolvable (for example zero splitting),
        # but the phases themselves are still well defined.
        pend_model = config.interferometer.dynamics_model
        if pend_model is TrajectoryModel.FREE_FALL:
            pend_model = TrajectoryModel.SMALL_ANGLE
        free_pairs = build_protocol_pairs(
            config.pendulum, config.interferometer, config.tolerances,
            TrajectoryModel.FREE_FALL, config.mirror_release,
        )
        pend_pairs = build_protocol_pairs(
            config.pendulum, config.interferometer, config.tolerances,
            pend_model, config.mirror_release,
        )
        matrix_free = phase_matrix(
            config.geometry, *free_pairs, t_total, config.tolerances, config.constants
        )
        matrix_pend = phase_matrix(
            config.geometry, *pend_pairs, t_total, config.tolerances, config.constants
        )
        dphi_pend = matrix_pend.entangling_phase

    ratio = t_total / T
    dphi_free = matrix_free.entangling_phase
    v_pend = visibility(dphi_pend)
    return ProtocolResult(
        comparison=comparison,
        unresolved_reason=unresolved,
        free_matrix=matrix_free,
        pendulum_matrix=matrix_pend,
        V_free=visibility(dphi_free),
        V_pend=v_pend,
        visibility_bound=HARMONIC_DEVIATION_COEFFICIENT * abs(dphi_free) * ratio * ratio,
        V_decohered=apply_decoherence(v_pend, config.decoherence_rate, t_total),
        negativity=negativity(build_state(matrix_pend)),
        thermal_rms=thermal_rms(config.noise, config.constants),
        trajectory_deviation=trajectory_deviation(config.pendulum, t_total),
        t_over_T=ratio,
        regime=regime_report(
            config.pendulum, config.interferometer, config.noise, constants=config.constants
        ),
    )


def result_document(config: RunConfig, result: ProtocolResult) -> dict:
    """Serialisable document for a single protocol run.

    Every quadrature-derived observable carries its error estimate; the
    effective configuration is embedded so the document can be re-run.
    """

    def matrix_doc(matrix: PhaseMatrix | None) -> dict | None:
        if matrix is None:
            return None
        return {
            "phi_ll": matrix.phi_ll.value,
            "phi_lr": matrix.phi_lr.value,
            "phi_rl": matrix.phi_rl.value,
            "phi_rr": matrix.phi_rr.value,
            "errors": {
                "phi_ll": matrix.phi_ll.error_estimate,
                "phi_lr": matrix.phi_lr.error_estimate,
                "phi_rl": matrix.phi_rl.error_estimate,
                "phi_rr": matrix.phi_rr.error_estimate,
            },
            "entangling_phase": matrix.entangling_phase,
            "entangling_phase_error": matrix.entangling_phase_error,
            "two_term_phase": matrix.two_term_phase,
        }

    observables = result.observables()
    return {
        "config": config.effective,
        "phase_matrix_free": matrix_doc(result.free_matrix),
        "phase_matrix_pendulum": matrix_doc(result.pendulum_matrix),
        "observables": observables,
        "unresolved_reason": result.unresolved_reason,
        "regime": result.regime.as_dict(),
    }


def phase_correction_reference(t: float, T: float) -> float:
    """Analytic constraint correction (pi^2/3)(t/T)^2 for unit free phase."""
    return HARMONIC_DEVIATION_COEFFICIENT * (t / T) ** 2

