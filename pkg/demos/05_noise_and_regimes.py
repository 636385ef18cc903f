# Is the pendulum platform actually in the regime where all of this
# holds?  Two ingredients: the thermal vibration budget of the
# suspension's flexural mode, and the collection of "much less than"
# conditions (short time, small angle, quasi-inertial window, timescale
# separation) turned into executable predicates.

from gravipend import (
    InterferometerSpec,
    NoiseParams,
    PendulumConfig,
    RegimeThresholds,
    regime_report,
    thermal_rms,
)

noise = NoiseParams(
    temperature=1e-2,          # 10 mK cryostat
    mode_frequency=1e5,        # 100 krad/s flexural mode
    effective_mass=1e-14,      # 10 fg effective mass
    superposition_scale=1e-4,  # 100 micron branch separation
)

rms = thermal_rms(noise)
print(f"thermal RMS displacement: {rms:.3e} m (picometres)")
print(f"fraction of the superposition scale: {rms / noise.superposition_scale:.2e}")

# scaling behaviour: sqrt in T, 1/omega in the mode frequency
hot = NoiseParams(temperature=4e-2, mode_frequency=1e5,
                  effective_mass=1e-14, superposition_scale=1e-4)
stiff = NoiseParams(temperature=1e-2, mode_frequency=2e5,
                    effective_mass=1e-14, superposition_scale=1e-4)
print(f"4x hotter  -> {thermal_rms(hot):.3e} m (doubles)")
print(f"2x stiffer -> {thermal_rms(stiff):.3e} m (halves)")

pendulum = PendulumConfig(length=0.5, initial_angle=2e-4)
spec = InterferometerSpec(total_time=1e-3, spin_acceleration=1600.0)
report = regime_report(pendulum, spec, noise)

print(f"\nregime report for L = {pendulum.length} m, t = {spec.total_time} s:")
for check in report.checks:
    status = "pass" if check.passed else "FAIL"
    print(f"  [{status}] {check.name:<22} value {check.value:.3e}  threshold {check.threshold:.0e}")
print(f"free-fall regime boundary: {report.freefall_boundary_time:.3e} s")
print(f"overall: {report.flags()}")

# The predicates are honest: stretch the sequence to a full period and
# the report says so instead of crashing.
slow = InterferometerSpec(total_time=pendulum.period, spin_acceleration=1600.0)
print(f"\nsequence as long as the period: {regime_report(pendulum, slow, noise).flags()}")

# Thresholds are configuration, not physics; tighten them at will.
paranoid = RegimeThresholds(thermal_ratio=1e-9)
print(f"with a 1e-9 thermal threshold:  {regime_report(pendulum, spec, noise, paranoid).flags()}")
