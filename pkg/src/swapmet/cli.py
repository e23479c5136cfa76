"""Command-line front end.

Three subcommands: ``run`` executes a config file and writes CSV,
``validate`` runs the oracle cross-checks, and ``list-experiments``
prints the known experiment names.  Exit codes are part of the
contract: 0 success, 1 config error, 2 validation failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from .config import ConfigError, EXPERIMENTS, apply_overrides, parse_config
from .experiments import run_experiment, run_validate, write_csv

__all__ = ["main"]

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_VALIDATION = 2
EXIT_IO = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swapmet",
        description="Run swap-test metrology experiments from config files.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run_parser = commands.add_parser(
        "run", help="run an experiment config and write a CSV of result rows"
    )
    run_parser.add_argument("config", help="path to a 'key = value' config file")
    run_parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override one config field (repeatable)",
    )
    run_parser.add_argument(
        "--out", help="output CSV path (takes precedence over the config's out key)"
    )

    commands.add_parser(
        "validate", help="cross-check closed forms against the dense oracle"
    )
    commands.add_parser("list-experiments", help="print known experiment names")
    return parser


def _cmd_validate() -> int:
    results = run_validate()
    for name, passed, detail in results:
        print(f"{'ok  ' if passed else 'FAIL'} {name}: {detail}")
    failures = sum(1 for _, passed, _ in results if not passed)
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return EXIT_OK if failures == 0 else EXIT_VALIDATION


def _cmd_run(args: argparse.Namespace) -> int:
    try:
        with open(args.config, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO

    try:
        config = parse_config(text, source=args.config)
        config = apply_overrides(config, tuple(args.overrides))
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if config.experiment == "Validate":
        return _cmd_validate()

    out = args.out if args.out is not None else config.out
    if out is None:
        print(
            "error: no output path; set 'out' in the config or pass --out",
            file=sys.stderr,
        )
        return EXIT_CONFIG

    try:
        rows = run_experiment(config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        write_csv(rows, out)
    except OSError as exc:
        print(f"error: cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_IO

    print(f"wrote {len(rows)} rows to {out}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code == 0:
            raise
        return EXIT_CONFIG
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "validate":
        return _cmd_validate()
    for name in EXPERIMENTS:
        print(name)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
