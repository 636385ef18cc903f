# After recombination the motional phases live in the two-spin state
# |psi> = (1/2) sum_ij exp(i phi_ij) |ij>.  The experiment reads out the
# interference visibility V = cos(delta_phi); the entanglement itself is
# certified by the negativity of the partially transposed state.  This
# script walks from phases to state to witness, applies the constraint
# correction to the visibility, and shows the decoherence envelope.

import math

import numpy as np

from gravipend import (
    apply_decoherence,
    corrected_visibility,
    negativity,
    phase_correction,
    state_from_phases,
    visibility,
)

# Phases from a protocol run (here chosen by hand for a visible effect).
dphi = 0.8
state = state_from_phases(0.0, 0.0, 0.0, dphi)
print(f"entangling phase {dphi} rad")
print(f"visibility cos(delta_phi) = {visibility(dphi):+.6f}")
print(f"negativity = {negativity(state):.6f}"
      f"  (closed form |sin(delta_phi/2)|/2 = {0.5 * abs(math.sin(dphi / 2)):.6f})")

# The witness cares only about the four-phase combination: scrambling
# the individual phases at fixed delta_phi leaves it untouched.
rng = np.random.default_rng(4)
ll, lr, rl = rng.uniform(-math.pi, math.pi, 3)
scrambled = state_from_phases(ll, lr, rl, dphi - ll + lr + rl)
print(f"negativity after scrambling local phases: {negativity(scrambled):.6f}")

# The pendulum constraint shifts delta_phi by (pi^2/3) delta_phi (t/T)^2,
# which moves the visibility by at most that same amount.
print("\n t/T       phase shift      V_free        V_pend        |shift| vs bound")
for ratio in (1e-3, 1e-2, 0.1):
    res = corrected_visibility(dphi, ratio, 1.0)
    shift = phase_correction(dphi, ratio, 1.0)
    print(
        f" {ratio:<7.0e}  {shift:+.3e}   {res.V_free:.9f}  {res.V_pend:.9f}"
        f"   {abs(res.V_pend - res.V_free):.2e} <= {res.bound:.2e}"
    )

# Everything non-gravitational is absorbed into one contrast decay rate.
print("\ndecoherence envelope on V = 0.9:")
for gamma in (0.0, 100.0, 1000.0):
    print(f"  Gamma = {gamma:>6.0f} 1/s, t = 1 ms ->"
          f" V = {apply_decoherence(0.9, gamma, 1e-3):.6f}")
print("\nthe constraint's visibility footprint (~1e-6) is invisible next to")
print("any realistic decoherence budget; the witness is untouched.")
