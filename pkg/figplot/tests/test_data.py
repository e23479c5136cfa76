"""CSV loading, row selection, and column access."""

from __future__ import annotations

import math

import pytest

from figplot.data import EmptyDataError, MissingColumnError, load_table


def _write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestLoadTable:
    def test_rows_and_columns(self, tmp_path):
        path = _write(tmp_path / "t.csv", "a,b,c\n1,x,\n2,y,3.5\n")
        table = load_table((path,))
        assert table.columns == ("a", "b", "c")
        assert len(table) == 2
        assert table.rows[0]["c"] == ""

    def test_concatenates_files(self, tmp_path):
        one = _write(tmp_path / "one.csv", "a,b\n1,x\n")
        two = _write(tmp_path / "two.csv", "a,b\n2,y\n")
        table = load_table((one, two))
        assert [row["a"] for row in table.rows] == ["1", "2"]

    def test_union_of_differing_headers(self, tmp_path):
        one = _write(tmp_path / "one.csv", "a,b\n1,x\n")
        two = _write(tmp_path / "two.csv", "a,c\n2,z\n")
        table = load_table((one, two))
        assert table.columns == ("a", "b", "c")
        assert table.rows[1]["b"] == ""

    def test_header_only_file_is_empty_data(self, tmp_path):
        path = _write(tmp_path / "t.csv", "a,b\n")
        with pytest.raises(EmptyDataError, match="no data rows"):
            load_table((path,))

    def test_blank_file_has_no_header(self, tmp_path):
        path = _write(tmp_path / "t.csv", "")
        with pytest.raises(EmptyDataError, match="no header"):
            load_table((path,))


class TestTableAccess:
    @pytest.fixture
    def table(self, tmp_path):
        path = _write(
            tmp_path / "t.csv",
            "row_kind,method,t,abs_error\n"
            "point,swap,1,1e-3\n"
            "point,naive,1,2e-3\n"
            "summary,swap,1,\n"
            "point,swap,11,5e-4\n",
        )
        return load_table((path,))

    def test_select_filters_on_equality(self, table):
        points = table.select(row_kind="point", method="swap")
        assert len(points) == 2
        assert [row["t"] for row in points.rows] == ["1", "11"]

    def test_floats_map_empty_to_nan(self, table):
        values = table.select(method="swap").floats("abs_error")
        assert values[0] == pytest.approx(1e-3)
        assert math.isnan(values[1])

    def test_distinct_preserves_first_seen_order(self, table):
        assert table.distinct("method") == ("swap", "naive")

    def test_require_passes_for_present_columns(self, table):
        table.require("row_kind", "abs_error")

    def test_require_names_missing_columns_and_path(self, table):
        with pytest.raises(MissingColumnError, match="variance_bound, seed"):
            table.require("t", "variance_bound", "seed")
        try:
            table.require("variance_bound")
        except MissingColumnError as exc:
            assert exc.missing == ("variance_bound",)
            assert "t.csv" in str(exc)

    def test_floats_on_missing_column_raises(self, table):
        with pytest.raises(MissingColumnError):
            table.floats("nope")
