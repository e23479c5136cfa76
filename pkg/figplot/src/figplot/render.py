"""Figure builders and the deterministic file writer.

Each figure kind has one builder that turns a :class:`~figplot.data.Table`
into a matplotlib Figure. Builders only select, convert, and draw CSV
cells; nothing is recomputed. :func:`render` writes the figure with a
fixed hash salt and no embedded date, so rendering the same spec twice
produces byte-identical SVG output.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.figure import Figure

from .data import EmptyDataError, Table, load_table
from .spec import PlotSpec

METHOD_COLORS = {
    "naive": "#1f77b4",
    "vsp": "#ff7f0e",
    "swap": "#2ca02c",
    "swap-alpha": "tab:purple",
}

METHOD_LABELS = {
    "naive": "naive",
    "vsp": "VSP",
    "swap": "swap test",
    "swap-alpha": "alpha-aware swap test",
}

_METHOD_ORDER = ("naive", "vsp", "swap", "swap-alpha")

_GROUP_AXES = ("n", "lambda1", "p_z1")
_GROUP_NAMES = {"n": "n", "lambda1": "lambda", "p_z1": "p1"}

_SQL_STYLE = {"color": "0.5", "linestyle": "--", "linewidth": 1.0}
_HL_STYLE = {"color": "black", "linestyle": "--", "linewidth": 1.0}

_CI_ALPHA = 0.25
_FIGSIZE = (6.0, 4.5)
_HASH_SALT = "figplot"


def _ordered_methods(table: Table) -> tuple[str, ...]:
    present = table.distinct("method")
    ranked = [m for m in _METHOD_ORDER if m in present]
    return tuple(ranked + sorted(set(present) - set(ranked)))


def _method_color(method: str, index: int) -> str:
    return METHOD_COLORS.get(method, f"C{index % 10}")


def _sorted_xy(x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    keep = np.isfinite(x) & np.isfinite(y)
    order = np.argsort(x[keep], kind="stable")
    return x[keep][order], y[keep][order]


def _group_columns(table: Table) -> tuple[str, ...]:
    return tuple(c for c in _GROUP_AXES if len(table.distinct(c)) > 1)


def _group_label(columns: tuple[str, ...], values: tuple[str, ...]) -> str:
    if not columns:
        return ""
    parts = []
    for name, cell in zip(columns, values):
        number = float(cell)
        text = f"{int(number)}" if name == "n" else f"{number:g}"
        parts.append(f"{_GROUP_NAMES[name]}={text}")
    return ", ".join(parts)


def _groups(table: Table, columns: tuple[str, ...]) -> tuple[tuple[str, ...], ...]:
    if not columns:
        return ((),)
    seen: dict[tuple[str, ...], None] = {}
    for row in table.rows:
        seen.setdefault(tuple(row[c] for c in columns), None)
    return tuple(seen)


def _select_group(table: Table, columns: tuple[str, ...], values: tuple[str, ...]) -> Table:
    return table.select(**dict(zip(columns, values)))


def _reference_lines(ax: plt.Axes, x: np.ndarray, anchor: float) -> None:
    """Dashed guide lines through the first data point: slope -1 and -2."""
    base = x / x[0]
    ax.plot(x, anchor / base, label="SQL", **_SQL_STYLE)
    ax.plot(x, anchor / base**2, label="HL", **_HL_STYLE)


def _mark_minimum(ax: plt.Axes, x: np.ndarray, y: np.ndarray, color: str) -> None:
    idx = int(np.nanargmin(y))
    ax.plot(x[idx], y[idx], marker="*", markersize=12.0, color=color, zorder=5)


def _new_axes() -> tuple[Figure, plt.Axes]:
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.grid(True, which="both", alpha=0.2)
    return fig, ax


def _finish(fig: Figure, ax: plt.Axes) -> Figure:
    if ax.get_legend_handles_labels()[1]:
        ax.legend(frameon=False)
    fig.tight_layout()
    return fig


def _bound_source(table: Table) -> Table:
    """Rows carrying bound columns: dedicated bound rows when the run
    emitted them, otherwise the point rows (bounds ride along there)."""
    bounds = table.select(row_kind="bound")
    return bounds if len(bounds) else table.select(row_kind="point")


def _build_variance_scaling(table: Table) -> Figure:
    table.require("row_kind", "t", "variance_bound", *_GROUP_AXES)
    bounds = _bound_source(table)
    group_cols = _group_columns(bounds) if len(bounds) else ()
    fig, ax = _new_axes()
    drew = False
    for index, values in enumerate(_groups(bounds, group_cols)):
        part = _select_group(bounds, group_cols, values)
        x, y = _sorted_xy(part.floats("t"), part.floats("variance_bound"))
        if not x.size:
            continue
        color = f"C{index % 10}"
        ax.plot(x, y, color=color, label=_group_label(group_cols, values) or None)
        _mark_minimum(ax, x, y, color)
        if not drew:
            _reference_lines(ax, x, y[0])
            drew = True
    if not drew:
        raise EmptyDataError(
            f"variance-scaling: no bound rows with a variance_bound value in "
            f"{', '.join(table.paths)}"
        )
    ax.set_xlabel("evolution time t")
    ax.set_ylabel("variance bound")
    return _finish(fig, ax)


def _build_bias_scaling(table: Table) -> Figure:
    table.require("row_kind", "t", "abs_error", "bias_bound", *_GROUP_AXES)
    points = table.select(row_kind="point")
    bounds = _bound_source(table)
    group_cols = _group_columns(points) if len(points) else ()
    fig, ax = _new_axes()
    drew = False
    for index, values in enumerate(_groups(points, group_cols)):
        color = f"C{index % 10}"
        part = _select_group(points, group_cols, values)
        x, y = _sorted_xy(part.floats("t"), part.floats("abs_error"))
        if x.size:
            ax.plot(x, y, color=color, label=_group_label(group_cols, values) or None)
            drew = True
        guard = _select_group(bounds, group_cols, values)
        bx, by = _sorted_xy(guard.floats("t"), guard.floats("bias_bound"))
        if bx.size:
            ax.plot(bx, by, color=color, linestyle="--", linewidth=1.0)
            drew = True
    if not drew:
        raise EmptyDataError(
            f"bias-scaling: no point or bound rows to draw in {', '.join(table.paths)}"
        )
    ax.set_xlabel("evolution time t")
    ax.set_ylabel("exact bias (solid) and bias bound (dashed)")
    return _finish(fig, ax)


def _error_lines(table: Table, ax: plt.Axes, x_column: str) -> bool:
    """Per-method mean error with CI bands; falls back to point rows.

    Returns True once anything is drawn.
    """
    table.require("row_kind", "method", x_column, "abs_error")
    summaries = table.select(row_kind="summary")
    drew = False
    if len(summaries):
        summaries.require("mean_abs_error", "ci95_low", "ci95_high")
        for index, method in enumerate(_ordered_methods(summaries)):
            part = summaries.select(method=method)
            x = part.floats(x_column)
            keep = np.isfinite(x) & np.isfinite(part.floats("mean_abs_error"))
            order = np.argsort(x[keep], kind="stable")
            if not order.size:
                continue
            color = _method_color(method, index)
            label = METHOD_LABELS.get(method, method)
            ax.plot(x[keep][order], part.floats("mean_abs_error")[keep][order],
                    color=color, label=label)
            ax.fill_between(
                x[keep][order],
                part.floats("ci95_low")[keep][order],
                part.floats("ci95_high")[keep][order],
                color=color, alpha=_CI_ALPHA, linewidth=0.0,
            )
            drew = True
        return drew
    points = table.select(row_kind="point")
    for index, method in enumerate(_ordered_methods(points)):
        part = points.select(method=method)
        x, y = _sorted_xy(part.floats(x_column), part.floats("abs_error"))
        if not x.size:
            continue
        ax.plot(x, y, color=_method_color(method, index),
                label=METHOD_LABELS.get(method, method))
        drew = True
    return drew


def _build_error_figure(table: Table, x_column: str, kind: str,
                        xlabel: str, ylabel: str) -> Figure:
    fig, ax = _new_axes()
    if not _error_lines(table, ax, x_column):
        raise EmptyDataError(
            f"{kind}: no summary or point rows to draw in {', '.join(table.paths)}"
        )
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    return _finish(fig, ax)


def _build_single_error(table: Table) -> Figure:
    return _build_error_figure(
        table, "t", "single-error",
        "evolution time t", "absolute estimation error",
    )


def _build_multi_error(table: Table) -> Figure:
    return _build_error_figure(
        table, "p_z1", "multi-error",
        "per-unit error rate p1", "mean L1 estimation error",
    )


def _build_alpha_comparison(table: Table) -> Figure:
    return _build_error_figure(
        table, "p_z1", "alpha-comparison",
        "per-unit dephasing rate p_z1", "absolute estimation error",
    )


_BUILDERS = {
    "variance-scaling": _build_variance_scaling,
    "bias-scaling": _build_bias_scaling,
    "single-error": _build_single_error,
    "multi-error": _build_multi_error,
    "alpha-comparison": _build_alpha_comparison,
}


def build_figure(kind: str, table: Table) -> Figure:
    """Build the figure for one kind from already-loaded rows."""
    return _BUILDERS[kind](table)


def render(spec: PlotSpec) -> str:
    """Load the spec's inputs, draw its figure, write the image file."""
    table = load_table(spec.inputs)
    fig = build_figure(spec.kind, table)
    try:
        metadata = {"Date": None} if spec.image_format == "svg" else None
        with matplotlib.rc_context({"svg.hashsalt": _HASH_SALT}):
            fig.savefig(spec.out, format=spec.image_format, metadata=metadata, dpi=150)
    finally:
        plt.close(fig)
    return spec.out
