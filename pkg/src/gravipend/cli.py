"""Command-line entry point: simulate | sweep | verify.

Exit codes: 0 success, 1 configuration error, 2 numerical failure,
3 verification failure.  Output files contain no timestamps or machine
information, so identical inputs produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .config import ConfigError, RunConfig, bundled_config, load_config
from .constants import TOLERANCE_PROFILES, Tolerances
from .dynamics import StepSizeUnderflowError
from .gravity_phase import SeparationGuardError
from .protocol import result_document, simulate_protocol
from .quadrature import QuadratureError
from .sweep import GridCapError, run_sweep, sweep_columns
from .verify import run_verification

_NUMERICAL_ERRORS = (QuadratureError, StepSizeUnderflowError, SeparationGuardError)


def _format_number(value: object) -> str:
    # Full round-trip precision keeps determinism testable by file diff.
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    if value is None:
        return ""
    return str(value)


def _flatten(doc: dict, prefix: str = "") -> dict:
    flat: dict[str, object] = {}
    for key, value in doc.items():
        name = f"{prefix}.{key}" if prefix else key
        if isinstance(value, dict):
            flat.update(_flatten(value, name))
        elif isinstance(value, list):
            flat[name] = json.dumps(value)
        else:
            flat[name] = value
    return flat


def _write_text(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        Path(path).write_text(text)


def _csv_text(header: list[str], rows: list[list[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _document_text(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    flat = _flatten(doc)
    return _csv_text(list(flat), [[_format_number(v) for v in flat.values()]])


def _records_text(records, columns, fmt: str) -> str:
    if fmt == "json":
        rows = []
        for record in records:
            cols = record.columns()
            rows.append({name: cols.get(name) for name in columns})
        return json.dumps(rows, indent=2) + "\n"
    body = []
    for record in records:
        cols = record.columns()
        body.append([_format_number(cols.get(name)) for name in columns])
    return _csv_text(list(columns), body)


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    config = load_config(args.config) if args.config else bundled_config()
    if args.tolerance_profile:
        profile: Tolerances = TOLERANCE_PROFILES[args.tolerance_profile]
        merged = dict(config.effective)
        merged["tolerances"] = {
            "ode_rel_tol": profile.ode_rel_tol,
            "ode_abs_tol": profile.ode_abs_tol,
            "quad_rel_tol": profile.quad_rel_tol,
            "max_subdivisions": profile.max_subdivisions,
        }
        from .config import config_from_dict

        config = config_from_dict(merged)
    return config


def _output_settings(args: argparse.Namespace, config: RunConfig) -> tuple[str, str | None]:
    fmt = args.format or config.output_format
    path = args.output or config.output_path
    return fmt, path


def cmd_simulate(args: argparse.Namespace) -> int:
    try:
        config = _resolve_config(args)
        fmt, path = _output_settings(args, config)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    try:
        result = simulate_protocol(config)
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    _write_text(_document_text(result_document(config, result), fmt), path)
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    try:
        config = _resolve_config(args)
        fmt, path = _output_settings(args, config)
        if config.sweep is None:
            raise ConfigError("sweep: section is required for the sweep command")
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    try:
        records = run_sweep(config, threads=args.threads)
    except GridCapError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    _write_text(_records_text(records, sweep_columns(config.sweep), fmt), path)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        config = _resolve_config(args) if (args.config or args.tolerance_profile) else None
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    try:
        report = run_verification(config)
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    print(report.table())
    if report.all_passed:
        print("verification: all checks passed")
        return 0
    failed = sum(1 for c in report.checks if not c.passed)
    print(f"verification: {failed} check(s) failed", file=sys.stderr)
    return 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gravipend",
        description=(
            "Simulate gravitationally induced entanglement between two "
            "pendulum-suspended masses in Stern-Gerlach interferometers."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, handler, help_text in (
        ("simulate", cmd_simulate, "run one full protocol evaluation"),
        ("sweep", cmd_sweep, "run a parameter sweep and emit a table"),
        ("verify", cmd_verify, "run the quantitative self-verification suite"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="path to a JSON configuration file")
        p.add_argument("--output", help="output file path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), help="output format")
        p.add_argument("--threads", type=int, default=1, help="worker threads for sweeps")
        p.add_argument(
            "--tolerance-profile",
            choices=sorted(TOLERANCE_PROFILES),
            help="named tolerance profile overriding the config",
        )
        p.set_defaults(handler=handler)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    raise SystemExit(main())
