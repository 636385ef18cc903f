"""Run configuration: schema, validation, and bundled parameter sets.

Configurations are single JSON documents of nested key-value sections.
Unknown keys are hard errors and every validation failure names the
offending key: silent typos in physics parameters are the costliest
failure mode this tool has.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

from .constants import PhysicalConstants, Tolerances
from .dynamics import PendulumConfig, TrajectoryModel
from .gravity_phase import ExperimentGeometry
from .interferometer import (
    DEFAULT_SCHEDULE_SHAPE,
    InterferometerSpec,
    acceleration_for_separation,
)
from .noise_budget import NoiseParams


class ConfigError(ValueError):
    """A configuration document failed validation."""


_MODEL_NAMES = {
    "free_fall": TrajectoryModel.FREE_FALL,
    "small_angle": TrajectoryModel.SMALL_ANGLE,
    "exact": TrajectoryModel.EXACT_ODE,
}

# section -> {key: (required, default)}
_SCHEMA: dict[str, dict[str, tuple[bool, Any]]] = {
    "constants": {
        "G": (False, 6.674e-11),
        "hbar": (False, 1.055e-34),
        "k_B": (False, 1.381e-23),
        "g": (False, 9.81),
    },
    "pendulum": {
        "length": (True, None),
        "initial_angle": (True, None),
        "initial_angular_velocity": (False, 0.0),
    },
    "interferometer": {
        "total_time": (True, None),
        "spin_acceleration": (False, None),
        "separation_target": (False, None),
        "schedule": (False, [list(seg) for seg in DEFAULT_SCHEDULE_SHAPE]),
        "dynamics_model": (False, "small_angle"),
    },
    "geometry": {
        "center_separation": (True, None),
        "split_axis_angle": (False, 0.0),
        "mass": (True, None),
        "min_separation": (False, 1e-6),
        "mirror_release": (False, True),
    },
    "noise": {
        "temperature": (True, None),
        "mode_frequency": (True, None),
        "effective_mass": (True, None),
        "superposition_scale": (True, None),
    },
    "tolerances": {
        "ode_rel_tol": (False, 1e-12),
        "ode_abs_tol": (False, 1e-14),
        "quad_rel_tol": (False, 1e-10),
        "max_subdivisions": (False, 60),
    },
    "output": {
        "format": (False, "json"),
        "path": (False, None),
    },
}

_TOP_LEVEL_SCALARS = {"decoherence_rate": (False, 0.0)}

_SWEEP_KEYS = {"axes", "outputs", "max_points"}

ALLOWED_OBSERVABLES = (
    "delta_phi_free",
    "delta_phi_pend",
    "relative_correction",
    "V_free",
    "V_pend",
    "visibility_bound",
    "negativity",
    "thermal_rms",
    "regime_flags",
    "trajectory_deviation",
    "t_over_T",
)


def _require_number(value: Any, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key}: expected a number, got {value!r}")
    return float(value)


def _apply_schema(data: dict, section: str) -> dict:
    schema = _SCHEMA[section]
    given = data.get(section, {})
    if not isinstance(given, dict):
        raise ConfigError(f"{section}: expected an object")
    unknown = set(given) - set(schema)
    if unknown:
        raise ConfigError(f"{section}: unknown key(s) {sorted(unknown)}")
    out: dict[str, Any] = {}
    for key, (required, default) in schema.items():
        if key in given:
            out[key] = given[key]
        elif required:
            raise ConfigError(f"{section}.{key}: required key is missing")
        else:
            out[key] = default
    return out


def _validate_schedule(raw: Any) -> tuple[tuple[float, int], ...]:
    if not isinstance(raw, list) or not raw:
        raise ConfigError("interferometer.schedule: expected a nonempty list of [fraction, sign]")
    shape = []
    for idx, seg in enumerate(raw):
        if not (isinstance(seg, (list, tuple)) and len(seg) == 2):
            raise ConfigError(f"interferometer.schedule[{idx}]: expected [fraction, sign]")
        frac = _require_number(seg[0], f"interferometer.schedule[{idx}].fraction")
        sign = seg[1]
        if sign not in (-1, 0, 1):
            raise ConfigError(
                f"interferometer.schedule[{idx}].sign: must be -1, 0 or 1, got {sign!r}"
            )
        if not frac > 0.0:
            raise ConfigError(
                f"interferometer.schedule[{idx}].fraction: must be positive, got {frac!r}"
            )
        shape.append((frac, int(sign)))
    total = sum(f for f, _ in shape)
    if abs(total - 1.0) > 1e-9:
        raise ConfigError(
            f"interferometer.schedule: fractions must sum to 1, got {total!r}"
        )
    return tuple(shape)


@dataclass(frozen=True)
class SweepAxis:
    path: str
    values: tuple[float, ...]


@dataclass(frozen=True)
class SweepSection:
    axes: tuple[SweepAxis, ...]
    outputs: tuple[str, ...]
    max_points: int


@dataclass(frozen=True)
class RunConfig:
    """A fully validated configuration with constructed module objects."""

    constants: PhysicalConstants
    pendulum: PendulumConfig
    interferometer: InterferometerSpec
    geometry: ExperimentGeometry
    noise: NoiseParams
    tolerances: Tolerances
    decoherence_rate: float
    mirror_release: bool
    output_format: str
    output_path: str | None
    sweep: SweepSection | None
    effective: dict

    def to_json(self) -> str:
        return json.dumps(self.effective, indent=2)


def _build_sweep(raw: Any) -> SweepSection:
    if not isinstance(raw, dict):
        raise ConfigError("sweep: expected an object")
    unknown = set(raw) - _SWEEP_KEYS
    if unknown:
        raise ConfigError(f"sweep: unknown key(s) {sorted(unknown)}")
    axes_raw = raw.get("axes")
    if not isinstance(axes_raw, list) or not axes_raw:
        raise ConfigError("sweep.axes: expected a nonempty list")
    axes = []
    for idx, axis in enumerate(axes_raw):
        if not isinstance(axis, dict) or set(axis) != {"path", "values"}:
            raise ConfigError(f"sweep.axes[{idx}]: expected an object with 'path' and 'values'")
        path = axis["path"]
        if not isinstance(path, str) or path.count(".") != 1:
            raise ConfigError(f"sweep.axes[{idx}].path: expected 'section.key', got {path!r}")
        section, key = path.split(".")
        if section not in _SCHEMA or key not in _SCHEMA[section]:
            raise ConfigError(f"sweep.axes[{idx}].path: unknown parameter {path!r}")
        values = axis["values"]
        if not isinstance(values, list) or not values:
            raise ConfigError(f"sweep.axes[{idx}].values: expected a nonempty list")
        axes.append(
            SweepAxis(
                path=path,
                values=tuple(
                    _require_number(v, f"sweep.axes[{idx}].values[{k}]")
                    for k, v in enumerate(values)
                ),
            )
        )
    outputs_raw = raw.get("outputs", list(ALLOWED_OBSERVABLES))
    if not isinstance(outputs_raw, list):
        raise ConfigError("sweep.outputs: expected a list")
    for name in outputs_raw:
        if name not in ALLOWED_OBSERVABLES:
            raise ConfigError(
                f"sweep.outputs: unknown observable {name!r}; "
                f"allowed: {', '.join(ALLOWED_OBSERVABLES)}"
            )
    max_points = raw.get("max_points", 1_000_000)
    if isinstance(max_points, bool) or not isinstance(max_points, int) or max_points < 1:
        raise ConfigError(f"sweep.max_points: expected a positive integer, got {max_points!r}")
    return SweepSection(axes=tuple(axes), outputs=tuple(outputs_raw), max_points=max_points)


def config_from_dict(data: dict) -> RunConfig:
    """Validate a raw configuration dictionary and build module objects."""
    if not isinstance(data, dict):
        raise ConfigError("top level: expected an object")
    allowed_top = set(_SCHEMA) | set(_TOP_LEVEL_SCALARS) | {"sweep"}
    unknown = set(data) - allowed_top
    if unknown:
        raise ConfigError(f"top level: unknown key(s) {sorted(unknown)}")

    sections = {name: _apply_schema(data, name) for name in _SCHEMA}
    decoherence_rate = data.get("decoherence_rate", _TOP_LEVEL_SCALARS["decoherence_rate"][1])
    decoherence_rate = _require_number(decoherence_rate, "decoherence_rate")
    if decoherence_rate < 0.0:
        raise ConfigError(f"decoherence_rate: must be nonnegative, got {decoherence_rate!r}")

    def build(section: str, factory, kwargs: dict):
        try:
            return factory(**kwargs)
        except ValueError as exc:
            raise ConfigError(f"{section}: {exc}") from exc

    c = sections["constants"]
    constants = build(
        "constants",
        PhysicalConstants,
        {
            "G": _require_number(c["G"], "constants.G"),
            "hbar": _require_number(c["hbar"], "constants.hbar"),
            "k_B": _require_number(c["k_B"], "constants.k_B"),
            "g": _require_number(c["g"], "constants.g"),
        },
    )

    p = sections["pendulum"]
    pendulum = build(
        "pendulum",
        PendulumConfig,
        {
            "length": _require_number(p["length"], "pendulum.length"),
            "initial_angle": _require_number(p["initial_angle"], "pendulum.initial_angle"),
            "initial_angular_velocity": _require_number(
                p["initial_angular_velocity"], "pendulum.initial_angular_velocity"
            ),
            "constants": constants,
        },
    )

    i = sections["interferometer"]
    total_time = _require_number(i["total_time"], "interferometer.total_time")
    if i["spin_acceleration"] is not None and i["separation_target"] is not None:
        raise ConfigError(
            "interferometer: give either spin_acceleration or separation_target, not both"
        )
    if i["spin_acceleration"] is not None:
        spin_acceleration = _require_number(
            i["spin_acceleration"], "interferometer.spin_acceleration"
        )
    elif i["separation_target"] is not None:
        target = _require_number(i["separation_target"], "interferometer.separation_target")
        spin_acceleration = acceleration_for_separation(target, total_time)
    else:
        raise ConfigError(
            "interferometer: one of spin_acceleration or separation_target is required"
        )
    model_name = i["dynamics_model"]
    if model_name not in _MODEL_NAMES:
        raise ConfigError(
            f"interferometer.dynamics_model: expected one of {sorted(_MODEL_NAMES)}, "
            f"got {model_name!r}"
        )
    shape = _validate_schedule(i["schedule"])
    schedule = tuple((frac * total_time, sign) for frac, sign in shape)
    interferometer = build(
        "interferometer",
        InterferometerSpec,
        {
            "total_time": total_time,
            "spin_acceleration": spin_acceleration,
            "schedule": schedule,
            "dynamics_model": _MODEL_NAMES[model_name],
        },
    )

    geo = sections["geometry"]
    mirror_release = geo["mirror_release"]
    if not isinstance(mirror_release, bool):
        raise ConfigError(
            f"geometry.mirror_release: expected true or false, got {mirror_release!r}"
        )
    geometry = build(
        "geometry",
        ExperimentGeometry,
        {
            "center_separation": _require_number(
                geo["center_separation"], "geometry.center_separation"
            ),
            "split_axis_angle": _require_number(
                geo["split_axis_angle"], "geometry.split_axis_angle"
            ),
            "mass": _require_number(geo["mass"], "geometry.mass"),
            "min_separation": _require_number(
                geo["min_separation"], "geometry.min_separation"
            ),
        },
    )

    n = sections["noise"]
    noise = build(
        "noise",
        NoiseParams,
        {key: _require_number(n[key], f"noise.{key}") for key in n},
    )

    t = sections["tolerances"]
    max_subdivisions = t["max_subdivisions"]
    if isinstance(max_subdivisions, bool) or not isinstance(max_subdivisions, int):
        raise ConfigError(
            f"tolerances.max_subdivisions: expected an integer, got {max_subdivisions!r}"
        )
    tolerances = build(
        "tolerances",
        Tolerances,
        {
            "ode_rel_tol": _require_number(t["ode_rel_tol"], "tolerances.ode_rel_tol"),
            "ode_abs_tol": _require_number(t["ode_abs_tol"], "tolerances.ode_abs_tol"),
            "quad_rel_tol": _require_number(t["quad_rel_tol"], "tolerances.quad_rel_tol"),
            "max_subdivisions": max_subdivisions,
        },
    )

    o = sections["output"]
    if o["format"] not in ("json", "csv"):
        raise ConfigError(f"output.format: expected 'json' or 'csv', got {o['format']!r}")
    if o["path"] is not None and not isinstance(o["path"], str):
        raise ConfigError(f"output.path: expected a string, got {o['path']!r}")

    sweep = _build_sweep(data["sweep"]) if "sweep" in data else None

    effective = {name: dict(sections[name]) for name in _SCHEMA}
    effective["interferometer"]["schedule"] = [list(seg) for seg in shape]
    effective["decoherence_rate"] = decoherence_rate
    if sweep is not None:
        effective["sweep"] = {
            "axes": [{"path": ax.path, "values": list(ax.values)} for ax in sweep.axes],
            "outputs": list(sweep.outputs),
            "max_points": sweep.max_points,
        }

    return RunConfig(
        constants=constants,
        pendulum=pendulum,
        interferometer=interferometer,
        geometry=geometry,
        noise=noise,
        tolerances=tolerances,
        decoherence_rate=decoherence_rate,
        mirror_release=mirror_release,
        output_format=o["format"],
        output_path=o["path"],
        sweep=sweep,
        effective=effective,
    )


def load_config(path: str | Path) -> RunConfig:
    """Load and validate a JSON configuration file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    return config_from_dict(data)


def bundled_config_dict(name: str) -> dict:
    """Raw dictionary of a configuration shipped with the package."""
    try:
        text = resources.files("gravipend").joinpath(f"configs/{name}.json").read_text()
    except FileNotFoundError as exc:
        raise ConfigError(f"no bundled config named {name!r}") from exc
    return json.loads(text)


def bundled_config(name: str = "reference_quarter_m") -> RunConfig:
    """A configuration shipped with the package, validated."""
    return config_from_dict(bundled_config_dict(name))


def with_overrides(base: dict, overrides: dict[str, float]) -> dict:
    """Deep-copied config dict with dotted-path values replaced."""
    out = json.loads(json.dumps(base))
    for path, value in overrides.items():
        section, key = path.split(".")
        out.setdefault(section, {})[key] = value
    return out
