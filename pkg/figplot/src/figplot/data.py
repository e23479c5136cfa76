"""CSV access layer: load swapmet result tables, select rows, read columns.

Everything downstream works on :class:`Table` objects. Selection uses
the ``row_kind`` and ``method`` columns of the swapmet CSV schema;
numeric access converts cells with empty strings mapped to NaN, so
"not applicable" cells survive the trip into numpy without special
cases at the call sites.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np


class MissingColumnError(ValueError):
    """An input CSV lacks one or more columns a figure kind needs."""

    def __init__(self, path: str, missing: tuple[str, ...]) -> None:
        self.path = path
        self.missing = missing
        super().__init__(f"{path}: missing required columns: {', '.join(missing)}")


class EmptyDataError(ValueError):
    """No rows survive selection for the requested figure kind."""


@dataclass(frozen=True)
class Table:
    """Rows from one or more CSV files sharing the swapmet schema."""

    paths: tuple[str, ...]
    columns: tuple[str, ...]
    rows: tuple[dict[str, str], ...]

    def require(self, *names: str) -> None:
        missing = tuple(n for n in names if n not in self.columns)
        if missing:
            raise MissingColumnError(", ".join(self.paths), missing)

    def select(self, **equals: str) -> Table:
        kept = tuple(
            row for row in self.rows
            if all(row.get(key, "") == value for key, value in equals.items())
        )
        return Table(self.paths, self.columns, kept)

    def floats(self, name: str) -> np.ndarray:
        self.require(name)
        return np.array(
            [float(row[name]) if row[name] != "" else math.nan for row in self.rows]
        )

    def distinct(self, name: str) -> tuple[str, ...]:
        self.require(name)
        seen: dict[str, None] = {}
        for row in self.rows:
            seen.setdefault(row[name], None)
        return tuple(seen)

    def __len__(self) -> int:
        return len(self.rows)


def load_table(paths: tuple[str, ...]) -> Table:
    """Read and concatenate CSV files.

    Headers may differ between files; cells a file does not provide read
    as empty. Column requirements are checked later, per figure kind,
    through :meth:`Table.require`.
    """
    columns: dict[str, None] = {}
    rows: list[dict[str, str]] = []
    for path in paths:
        with open(path, newline="", encoding="utf-8") as handle:
            reader = csv.DictReader(handle)
            header = tuple(reader.fieldnames or ())
            if not header:
                raise EmptyDataError(f"{path}: no header row")
            for name in header:
                columns.setdefault(name, None)
            rows.extend({k: v or "" for k, v in row.items()} for row in reader)
    if not rows:
        raise EmptyDataError(f"{', '.join(paths)}: no data rows")
    names = tuple(columns)
    filled = tuple({c: row.get(c, "") for c in names} for row in rows)
    return Table(tuple(paths), names, filled)
