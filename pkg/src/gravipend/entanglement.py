"""Two-qubit state after recombination, visibility, and entanglement witness.

After the interferometer sequence the branch-pair phases map onto the
spin state |psi> = (1/2) * sum_ij exp(i phi_ij) |ij>.  Its entanglement
depends on the four phases only through the combination
delta_phi = phi_LL + phi_RR - phi_LR - phi_RL; the operational signature
is the interference visibility V = cos(delta_phi), and the witness used
for certification is the negativity of the partially transposed density
matrix (0 for separable states, 1/2 for maximally entangled ones).

The constraint correction enters as a phase shift
delta = (pi^2/3) * delta_phi_free * (t/T)^2, which bounds the visibility
change by |V_pend - V_free| <= (pi^2/3) |delta_phi_free| (t/T)^2 because
|sin| <= 1.  All non-gravitational decoherence is absorbed into a single
phenomenological contrast decay V -> V * exp(-Gamma t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import HARMONIC_DEVIATION_COEFFICIENT
from .gravity_phase import PhaseMatrix

BASIS_LABELS = ("LL", "LR", "RL", "RR")

_NORMALIZATION_TOLERANCE = 1e-12


@dataclass(frozen=True)
class TwoQubitState:
    """Pure two-qubit state over the branch basis (LL, LR, RL, RR)."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (4,):
            raise ValueError(f"expected 4 amplitudes, got shape {amps.shape}")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > _NORMALIZATION_TOLERANCE:
            raise ValueError(f"state is not normalised: |psi|^2 = {norm!r}")
        object.__setattr__(self, "amplitudes", amps)

    def density_matrix(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


def build_state(phases: PhaseMatrix) -> TwoQubitState:
    """State after recombination: amplitudes exp(i phi_ij) / 2."""
    values = [
        phases.phi_ll.value,
        phases.phi_lr.value,
        phases.phi_rl.value,
        phases.phi_rr.value,
    ]
    return TwoQubitState(np.exp(1j * np.asarray(values)) / 2.0)


def state_from_phases(phi_ll: float, phi_lr: float, phi_rl: float, phi_rr: float) -> TwoQubitState:
    """Convenience constructor from raw phase values."""
    return TwoQubitState(np.exp(1j * np.asarray([phi_ll, phi_lr, phi_rl, phi_rr])) / 2.0)


def visibility(delta_phi: float) -> float:
    """Interference visibility cos(delta_phi)."""
    return math.cos(delta_phi)


def phase_correction(delta_phi_free: float, t: float, T: float) -> float:
    """Constraint-induced phase shift (pi^2/3) * delta_phi_free * (t/T)^2."""
    if not t < T:
        raise ValueError(f"requires t < T, got t = {t!r}, T = {T!r}")
    ratio = t / T
    return HARMONIC_DEVIATION_COEFFICIENT * delta_phi_free * ratio * ratio


@dataclass(frozen=True)
class VisibilityResult:
    """Visibility under free and constrained dynamics, with its bound.

    V_decohered applies the phenomenological contrast decay exp(-Gamma t)
    to the constrained visibility.
    """

    V_free: float
    V_pend: float
    bound: float
    gamma: float
    V_decohered: float


def corrected_visibility(
    delta_phi_free: float,
    t: float,
    T: float,
    gamma: float = 0.0,
) -> VisibilityResult:
    """Visibility shift induced by the constraint, with its analytic bound.

    The exact constrained visibility is cos(delta_phi_free + delta); the
    first-order expansion V_free - sin(delta_phi_free) * delta must agree
    with it to second order in delta, which is asserted here as a cheap
    internal consistency check.
    """
    delta = phase_correction(delta_phi_free, t, T)
    v_free = visibility(delta_phi_free)
    v_pend = visibility(delta_phi_free + delta)
    ratio = t / T
    bound = HARMONIC_DEVIATION_COEFFICIENT * abs(delta_phi_free) * ratio * ratio
    first_order = v_free - math.sin(delta_phi_free) * delta
    # Taylor remainder of the cosine plus a few ulp of float slack.
    if abs(v_pend - first_order) > 0.5 * delta * delta + 1e-15:
        raise AssertionError(
            "first-order visibility expansion inconsistent with the exact value"
        )
    return VisibilityResult(
        V_free=v_free,
        V_pend=v_pend,
        bound=bound,
        gamma=gamma,
        V_decohered=apply_decoherence(v_pend, gamma, t),
    )


def apply_decoherence(v: float, gamma: float, t: float) -> float:
    """Contrast decay V -> V * exp(-Gamma t)."""
    if gamma < 0.0:
        raise ValueError(f"decoherence rate must be nonnegative, got {gamma!r}")
    if t < 0.0:
        raise ValueError(f"time must be nonnegative, got {t!r}")
    return v * math.exp(-gamma * t)


def partial_transpose(rho: np.ndarray) -> np.ndarray:
    """Partial transpose over the second qubit: |i j><k l| -> |i l><k j|."""
    rho = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    return rho.transpose(0, 3, 2, 1).reshape(4, 4)


def negativity(state: TwoQubitState) -> float:
    """Entanglement negativity: sum of |negative eigenvalues| of rho^T_B."""
    rho_tb = partial_transpose(state.density_matrix())
    eigenvalues = np.linalg.eigvalsh(0.5 * (rho_tb + rho_tb.conj().T))
    return float(-np.sum(eigenvalues[eigenvalues < 0.0]))
