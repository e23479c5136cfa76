"""Deterministic figure rendering for swapmet experiment CSVs.

The package consumes the CSV files written by the ``swapmet`` command
line tool and turns them into SVG or PNG figures. It never imports
swapmet and never recomputes any physics: every plotted number traces
back to a CSV cell.
"""

from __future__ import annotations

from .data import EmptyDataError, MissingColumnError
from .render import render
from .spec import FORMATS, KINDS, PlotSpec, SpecError, parse_plot_spec

__all__ = [
    "EmptyDataError",
    "FORMATS",
    "KINDS",
    "MissingColumnError",
    "PlotSpec",
    "SpecError",
    "parse_plot_spec",
    "render",
]
