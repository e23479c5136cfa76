"""Plot specifications: what to read, which figure to draw, where to write.

A :class:`PlotSpec` can be built directly (the CLI does this from flags)
or parsed from a flat ``key = value`` text file with the same grammar as
the swapmet experiment configs: one assignment per line, ``#`` starts a
comment, blank lines are ignored.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

KINDS = (
    "variance-scaling",
    "bias-scaling",
    "single-error",
    "multi-error",
    "alpha-comparison",
)

FORMATS = ("svg", "png")

_SPEC_KEYS = ("kind", "in", "out", "format")


class SpecError(ValueError):
    """A plot spec that cannot be parsed or fails validation."""


def _infer_format(out: str) -> str:
    suffix = os.path.splitext(out)[1].lstrip(".").lower()
    return suffix if suffix in FORMATS else "svg"


@dataclass(frozen=True)
class PlotSpec:
    """One render request: input CSVs, figure kind, output path, format."""

    inputs: tuple[str, ...]
    kind: str
    out: str
    image_format: str = field(default="")

    def __post_init__(self) -> None:
        if not self.inputs or any(not p.strip() for p in self.inputs):
            raise SpecError("inputs: need at least one non-empty CSV path")
        if self.kind not in KINDS:
            raise SpecError(
                f"kind: unknown figure kind {self.kind!r}; choose from {', '.join(KINDS)}"
            )
        if not self.out.strip():
            raise SpecError("out: output path must be non-empty")
        if not self.image_format:
            object.__setattr__(self, "image_format", _infer_format(self.out))
        if self.image_format not in FORMATS:
            raise SpecError(
                f"format: unknown image format {self.image_format!r}; "
                f"choose from {', '.join(FORMATS)}"
            )


def parse_plot_spec(text: str, source: str = "<spec>") -> PlotSpec:
    """Parse a flat key/value spec file into a validated :class:`PlotSpec`."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecError(f"{source}, line {lineno}: expected KEY = VALUE, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _SPEC_KEYS:
            raise SpecError(
                f"{source}, line {lineno}: unknown key {key!r}; "
                f"known keys: {', '.join(_SPEC_KEYS)}"
            )
        if key in values:
            raise SpecError(f"{source}, line {lineno}: duplicate key {key!r}")
        values[key] = value
    for required in ("kind", "in", "out"):
        if required not in values:
            raise SpecError(f"{source}: missing required key {required!r}")
    inputs = tuple(p.strip() for p in values["in"].split(",") if p.strip())
    try:
        return PlotSpec(
            inputs=inputs,
            kind=values["kind"],
            out=values["out"],
            image_format=values.get("format", ""),
        )
    except SpecError as exc:
        raise SpecError(f"{source}: {exc}") from exc
