"""Physical constants and shared numerical tolerances.

All quantities are SI, stored as double precision floats.  There is no
unit-conversion layer: every formula in the package is written directly
in SI and evaluated in grouped form where magnitudes would otherwise
under- or overflow.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class PhysicalConstants:
    """The dimensional backbone of every formula in the package.

    G        : gravitational constant, m^3 kg^-1 s^-2
    hbar     : reduced Planck constant, J s
    k_B      : Boltzmann constant, J K^-1
    g        : local gravitational acceleration, m s^-2
    """

    G: float = 6.674e-11
    hbar: float = 1.055e-34
    k_B: float = 1.381e-23
    g: float = 9.81

    def __post_init__(self) -> None:
        for name in ("G", "hbar", "k_B", "g"):
            value = getattr(self, name)
            if not value > 0.0:
                raise ValueError(f"constant {name} must be strictly positive, got {value!r}")

    def override(self, **kwargs: float) -> "PhysicalConstants":
        """Return a copy with the given constants replaced."""
        return replace(self, **kwargs)


def default_constants() -> PhysicalConstants:
    """Standard reference values (CODATA, rounded to the stored precision)."""
    return PhysicalConstants()


@dataclass(frozen=True)
class Tolerances:
    """Solver tolerances shared across the numerical kernels.

    Defaults put solver noise at least four decades below the 1e-6-level
    physical effects the simulator is meant to resolve.
    """

    ode_rel_tol: float = 1e-12
    ode_abs_tol: float = 1e-14
    quad_rel_tol: float = 1e-10
    max_subdivisions: int = 60

    def __post_init__(self) -> None:
        for name in ("ode_rel_tol", "ode_abs_tol", "quad_rel_tol"):
            value = getattr(self, name)
            if not (0.0 < value < 1.0):
                raise ValueError(f"tolerance {name} must lie in (0, 1), got {value!r}")
        if self.max_subdivisions < 1:
            raise ValueError(f"max_subdivisions must be >= 1, got {self.max_subdivisions!r}")


DEFAULT_TOLERANCES = Tolerances()

# Tightened profile for cross-checking that results are tolerance-converged.
STRICT_TOLERANCES = Tolerances(
    ode_rel_tol=1e-13,
    ode_abs_tol=1e-15,
    quad_rel_tol=1e-12,
    max_subdivisions=120,
)

TOLERANCE_PROFILES = {
    "default": DEFAULT_TOLERANCES,
    "strict": STRICT_TOLERANCES,
}
