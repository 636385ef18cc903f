# Two such interferometers, a fifth of a millimetre apart, entangle
# through their mutual Newtonian attraction: each branch pair (i, j)
# accumulates the phase of its own interaction history, and the
# four-branch combination phi_LL + phi_RR - phi_LR - phi_RL survives as
# the entangling phase.  This script computes the phase matrix and then
# asks the central question: how much does the pendulum constraint
# change the answer relative to ideal free fall?

import numpy as np

from gravipend import (
    DEFAULT_TOLERANCES,
    ExperimentGeometry,
    InterferometerSpec,
    PendulumConfig,
    entangling_phase_constrained_vs_free,
    interaction_potential,
    default_constants,
)

pendulum = PendulumConfig(length=0.25, initial_angle=2e-4)
geometry = ExperimentGeometry(center_separation=2e-4, mass=1e-14)
T = pendulum.period

v = interaction_potential(geometry.mass, geometry.center_separation, default_constants())
print(f"masses {geometry.mass} kg at d = {geometry.center_separation} m")
print(f"interaction energy at rest: {v:.3e} J")

spec = InterferometerSpec(total_time=1e-3, spin_acceleration=1600.0)
cmp = entangling_phase_constrained_vs_free(pendulum, spec, geometry, DEFAULT_TOLERANCES)

print("\nphase matrix under pendulum dynamics [rad]:")
for name, value in cmp.pendulum_matrix.phases().items():
    print(f"  {name} = {value:+.9e}")
print(f"  entangling phase   {cmp.pendulum_matrix.entangling_phase:+.6e}")
print(f"  two-term form      {cmp.pendulum_matrix.two_term_phase:+.6e}")
print("  (the four-term combination is a mixed second difference: local,")
print("   single-particle phases cancel and only the bipartite part stays)")

print(f"\nfree fall:  delta_phi = {cmp.delta_phi_free:+.9e} rad"
      f" (quadrature error {cmp.delta_phi_free_error:.1e})")
print(f"pendulum:   delta_phi = {cmp.delta_phi_pend:+.9e} rad")
print(f"relative correction: {cmp.relative_correction:+.3e}")

# The correction scales as (t/T)^2 with an order-pi^2/3 coefficient set
# by how the schedule weights the lag of the constrained splitting.
print("\n t [s]      relative correction    coefficient vs (t/T)^2")
for t in (1e-4, 3e-4, 1e-3):
    spec_t = InterferometerSpec(total_time=t, spin_acceleration=1600.0)
    c = entangling_phase_constrained_vs_free(pendulum, spec_t, geometry, DEFAULT_TOLERANCES)
    rc = c.relative_correction
    print(f" {t:<8.0e}  {rc:+.6e}        {abs(rc) / (t / T)**2:.4f}")
print("\nthe constraint shifts the entangling phase by parts in a million:")
print("pendulum suspension does not spoil the gravitational entanglement signal.")
