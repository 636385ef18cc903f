# The sweep engine runs full protocol evaluations over a parameter grid
# in deterministic row-major order, records every observable alongside
# its numerical error estimate, and fits power laws to the results.
# This is how the headline numbers are produced in bulk.

import json

from gravipend import bundled_config, config_from_dict, fit_power_law, run_sweep
from gravipend.config import with_overrides
from gravipend.sweep import sweep_columns

base = bundled_config("reference_quarter_m")
T = base.pendulum.period

# Sweep the sequence time over two axes' worth of points and ask for the
# observables behind the constraint-correction claim.
config = with_overrides(base.effective, {})
config["sweep"] = {
    "axes": [
        {"path": "interferometer.total_time",
         "values": [1e-4, 2e-4, 3e-4, 5e-4, 7e-4, 1e-3]},
    ],
    "outputs": ["relative_correction", "trajectory_deviation", "t_over_T", "negativity"],
}
cfg = config_from_dict(config)
records = run_sweep(cfg, threads=2)

print("columns:", ", ".join(sweep_columns(cfg.sweep)))
print("\n t [s]      rel. correction    +/- error       traj. deviation   negativity")
for r in records:
    t = r.parameters["interferometer.total_time"]
    v = r.values
    print(f" {t:<8.0e}  {v['relative_correction']:+.6e}    "
          f"{v['relative_correction_error']:.1e}    {v['trajectory_deviation']:.6e}   "
          f"{v['negativity']:.3e}")

# Both observables follow clean power laws in t/T.
for name in ("trajectory_deviation", "relative_correction"):
    # fit on |values|: build throwaway records with the magnitude
    rows = [
        type(r)(parameters=r.parameters,
                values={**r.values, name: abs(r.values[name])})
        for r in records
    ]
    fit = fit_power_law(rows, "t_over_T", name)
    print(f"\n{name}: exponent {fit.exponent:.4f}, coefficient {fit.coefficient:.4f}, "
          f"max residual {fit.max_relative_residual:.1e}")
print("\n(pi^2/3 = 3.2899; the phase-correction coefficient lands within a")
print(" factor two of it, set by the schedule weighting of the lag.)")

# Per-point failures never kill a sweep: a sequence time beyond T/10
# violates the short-time regime and is recorded in the error column.
config["sweep"]["axes"] = [
    {"path": "interferometer.total_time", "values": [1e-3, 0.5]}
]
records = run_sweep(config_from_dict(config))
print(f"\npoint t = 0.5 s: error = {records[1].error!r}"[:110])
