"""Command line front end: ``figplot plot <spec-file>`` or flag form.

Exit codes: 0 success, 1 spec error (bad file, bad flags), 2 data error
(missing columns, nothing to draw), 3 I/O error (unreadable input,
unwritable output).
"""

from __future__ import annotations

import argparse
import sys

from .data import EmptyDataError, MissingColumnError
from .render import render
from .spec import FORMATS, KINDS, PlotSpec, SpecError, parse_plot_spec

EXIT_OK = 0
EXIT_SPEC = 1
EXIT_DATA = 2
EXIT_IO = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="figplot",
        description="Render swapmet experiment CSVs into SVG or PNG figures.",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    plot = commands.add_parser("plot", help="render one figure")
    plot.add_argument("spec_file", nargs="?", default=None,
                      help="flat key=value plot spec file")
    plot.add_argument("--kind", choices=KINDS, help="figure kind (flag form)")
    plot.add_argument("--in", dest="inputs", action="append", metavar="CSV",
                      help="input CSV path, repeatable (flag form)")
    plot.add_argument("--out", help="output image path (flag form)")
    plot.add_argument("--format", choices=FORMATS, default=None,
                      help="image format; default inferred from --out suffix")
    return parser


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _spec_from_args(args: argparse.Namespace) -> PlotSpec:
    if args.spec_file is not None:
        if args.kind or args.inputs or args.out:
            raise SpecError("pass either a spec file or --kind/--in/--out, not both")
        try:
            with open(args.spec_file, encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise _SpecIOError(str(exc)) from exc
        return parse_plot_spec(text, source=args.spec_file)
    missing = [flag for flag, value in
               (("--kind", args.kind), ("--in", args.inputs), ("--out", args.out))
               if not value]
    if missing:
        raise SpecError(f"flag form needs {', '.join(missing)}")
    return PlotSpec(
        inputs=tuple(args.inputs),
        kind=args.kind,
        out=args.out,
        image_format=args.format or "",
    )


class _SpecIOError(Exception):
    """Spec file itself could not be read."""


def _cmd_plot(args: argparse.Namespace) -> int:
    try:
        spec = _spec_from_args(args)
    except _SpecIOError as exc:
        return _fail(EXIT_IO, f"cannot read spec: {exc}")
    except SpecError as exc:
        return _fail(EXIT_SPEC, str(exc))
    try:
        path = render(spec)
    except MissingColumnError as exc:
        return _fail(EXIT_DATA, str(exc))
    except EmptyDataError as exc:
        return _fail(EXIT_DATA, str(exc))
    except OSError as exc:
        return _fail(EXIT_IO, str(exc))
    print(f"wrote {path}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code == 0:
            raise
        return EXIT_SPEC
    return _cmd_plot(args)


if __name__ == "__main__":
    raise SystemExit(main())
