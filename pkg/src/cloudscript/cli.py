"""Command-line entry point: run a system model script and write its report."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .errors import (
    BuildError,
    ConfigurationError,
    ExtensionError,
    ResolutionError,
    SchemaError,
    ScriptSyntaxError,
    ScriptValidationError,
    SimulationRuntimeError,
    WorkloadError,
)
from .report import render_csv, render_json, render_samples_csv, write_report
from .translation.manager import FrameworkConfig, SimulationManager

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_EXTENSION = 4
EXIT_RUNTIME = 5

EXTENSIONS_ENV = "CSX_EXTENSIONS_DIR"

_EXIT_CODES = [
    ((ConfigurationError, SchemaError), EXIT_USAGE),
    ((ScriptValidationError, ScriptSyntaxError, BuildError, WorkloadError), EXIT_VALIDATION),
    ((ExtensionError, ResolutionError), EXIT_EXTENSION),
    ((SimulationRuntimeError, OSError), EXIT_RUNTIME),
]


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cloudscript",
        description="Validate, translate and simulate a cloud system model script.",
    )
    p.add_argument("--script", type=Path, help="system model script (YAML)")
    p.add_argument("--schema", type=Path, help="component schema document (default: bundled)")
    p.add_argument("--config", type=Path, help="framework config file (key = value lines)")
    p.add_argument("--extensions-dir", type=Path, help=f"extension modules directory (env: {EXTENSIONS_ENV})")
    p.add_argument("--out", type=Path, help="report path (default: standard output)")
    p.add_argument("--format", choices=["csv", "json"], help="report format (default: from --out suffix, else csv)")
    p.add_argument("--samples-out", type=Path, help="write monitoring samples as CSV here")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def resolve_config(args: argparse.Namespace, environ=os.environ) -> FrameworkConfig:
    """Merge flags over config-file values over environment defaults."""
    if args.config is not None:
        if not args.config.is_file():
            raise UsageError(f"config file not found: {args.config}")
        cfg = FrameworkConfig.from_file(args.config)
    else:
        cfg = FrameworkConfig()
    if args.schema is not None:
        cfg.schema_file = args.schema
    if args.extensions_dir is not None:
        cfg.extensions_dir = args.extensions_dir
    elif cfg.extensions_dir is None and environ.get(EXTENSIONS_ENV):
        cfg.extensions_dir = Path(environ[EXTENSIONS_ENV])
    if args.script is not None:
        cfg.script_file = args.script
    if cfg.script_file is None:
        raise UsageError("no script given (use --script or scriptFile in the config)")
    if not Path(cfg.script_file).is_file():
        raise UsageError(f"script file not found: {cfg.script_file}")
    if cfg.schema_file is not None and not Path(cfg.schema_file).is_file():
        raise UsageError(f"schema file not found: {cfg.schema_file}")
    if cfg.extensions_dir is not None and not Path(cfg.extensions_dir).is_dir():
        raise UsageError(f"extensions directory not found: {cfg.extensions_dir}")
    return cfg


def _fail(exc: BaseException, code: int) -> int:
    message = " ".join(str(exc).split())
    print(f"{type(exc).__name__}: {message}", file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")

    fmt = args.format
    if fmt is None:
        fmt = "json" if args.out is not None and args.out.suffix.lower() == ".json" else "csv"

    try:
        cfg = resolve_config(args)
        manager = SimulationManager(cfg)
        report = manager.run_file(cfg.script_file)
    except UsageError as exc:
        return _fail(exc, EXIT_USAGE)
    except Exception as exc:
        for types, code in _EXIT_CODES:
            if isinstance(exc, types):
                return _fail(exc, code)
        return _fail(exc, EXIT_RUNTIME)

    try:
        if args.out is None:
            sys.stdout.write(render_csv(report) if fmt == "csv" else render_json(report))
        else:
            write_report(report, fmt, args.out)
        if args.samples_out is not None:
            args.samples_out.write_text(render_samples_csv(report), encoding="utf-8")
    except OSError as exc:
        return _fail(exc, EXIT_RUNTIME)
    print(f"overhead_ms={report.overhead_ms}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
