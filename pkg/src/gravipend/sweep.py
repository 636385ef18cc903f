"""Parameter sweeps over full protocol evaluations, and power-law fits.

Grid points are independent pure computations: the engine may evaluate
them on several threads, but records are always assembled in row-major
order over the axes, so the output is byte-identical however it ran.
A failure at one grid point (a tripped separation guard at a grid
corner, say) is recorded in that row's error column and never aborts
the sweep.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .config import RunConfig, SweepSection, config_from_dict, with_overrides
from .protocol import simulate_protocol

# Observables whose values derive from quadrature and therefore carry
# an error-estimate companion column.
_ERROR_COMPANIONS = {
    "delta_phi_free": "delta_phi_free_error",
    "delta_phi_pend": "delta_phi_pend_error",
    "relative_correction": "relative_correction_error",
}


class GridCapError(ValueError):
    """The sweep grid exceeds the configured point cap."""


@dataclass(frozen=True)
class ResultRecord:
    """One grid point: swept parameters, observables, and failure state."""

    parameters: dict[str, float]
    values: dict[str, object]
    error: str | None = None

    def columns(self) -> dict[str, object]:
        out: dict[str, object] = dict(self.parameters)
        out.update(self.values)
        out["error"] = self.error if self.error is not None else ""
        return out


def sweep_columns(sweep: SweepSection) -> list[str]:
    """Column order of the emitted table: parameters, observables, error."""
    cols = [axis.path for axis in sweep.axes]
    for name in sweep.outputs:
        cols.append(name)
        if name in _ERROR_COMPANIONS:
            cols.append(_ERROR_COMPANIONS[name])
    cols.append("error")
    return cols


def _evaluate_point(
    base: dict, overrides: dict[str, float], outputs: tuple[str, ...]
) -> ResultRecord:
    params = dict(overrides)
    try:
        config = config_from_dict(with_overrides(base, overrides))
        observables = simulate_protocol(config).observables()
    except Exception as exc:  # per-point isolation: record, never abort
        values: dict[str, object] = {}
        for name in outputs:
            values[name] = None
            if name in _ERROR_COMPANIONS:
                values[_ERROR_COMPANIONS[name]] = None
        return ResultRecord(parameters=params, values=values, error=f"{type(exc).__name__}: {exc}")
    values = {}
    for name in outputs:
        values[name] = observables[name]
        if name in _ERROR_COMPANIONS:
            values[_ERROR_COMPANIONS[name]] = observables[_ERROR_COMPANIONS[name]]
    return ResultRecord(parameters=params, values=values, error=None)


def run_sweep(base_config: RunConfig, threads: int = 1) -> list[ResultRecord]:
    """Evaluate the configured grid, one record per point, in grid order."""
    sweep = base_config.sweep
    if sweep is None:
        raise ValueError("configuration has no sweep section")
    sizes = [len(axis.values) for axis in sweep.axes]
    n_points = math.prod(sizes)
    if n_points > sweep.max_points:
        raise GridCapError(
            f"sweep grid has {n_points} points, exceeding the cap of {sweep.max_points}"
        )
    base = base_config.effective
    paths = [axis.path for axis in sweep.axes]
    grid = [
        dict(zip(paths, combo))
        for combo in itertools.product(*(axis.values for axis in sweep.axes))
    ]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(
                pool.map(lambda ov: _evaluate_point(base, ov, sweep.outputs), grid)
            )
    else:
        records = [_evaluate_point(base, ov, sweep.outputs) for ov in grid]
    return records


@dataclass(frozen=True)
class PowerLawFit:
    """Least-squares fit of y = coefficient * x^exponent on log-log axes."""

    exponent: float
    coefficient: float
    max_relative_residual: float
    n_points: int


def fit_power_law(records: list[ResultRecord], x: str, y: str) -> PowerLawFit:
    """Fit a power law through record columns, rejecting degenerate data.

    Only records where both columns are positive finite numbers enter
    the fit; at least three are required.
    """
    xs, ys = [], []
    for record in records:
        cols = record.columns()
        if x not in cols or y not in cols:
            raise ValueError(f"records do not carry columns {x!r} and {y!r}")
        xv, yv = cols[x], cols[y]
        if isinstance(xv, (int, float)) and isinstance(yv, (int, float)):
            if xv > 0 and yv > 0 and math.isfinite(xv) and math.isfinite(yv):
                xs.append(float(xv))
                ys.append(float(yv))
    if len(xs) < 3:
        raise ValueError(
            f"power-law fit needs at least 3 records with positive {x!r} and {y!r}, "
            f"got {len(xs)}"
        )
    log_x = np.log(np.asarray(xs))
    log_y = np.log(np.asarray(ys))
    if float(np.ptp(log_x)) == 0.0 or float(np.ptp(log_y)) == 0.0:
        raise ValueError("power-law fit rejected: data are constant along an axis")
    exponent, intercept = np.polyfit(log_x, log_y, 1)
    coefficient = float(np.exp(intercept))
    predicted = coefficient * np.asarray(xs) ** exponent
    residual = float(np.max(np.abs(predicted - np.asarray(ys)) / np.asarray(ys)))
    return PowerLawFit(
        exponent=float(exponent),
        coefficient=coefficient,
        max_relative_residual=residual,
        n_points=len(xs),
    )
