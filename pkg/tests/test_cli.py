"""CLI subcommands, exit codes, and file handling."""

from __future__ import annotations

import pytest

from swapmet.cli import EXIT_CONFIG, EXIT_IO, EXIT_OK, main
from swapmet.config import EXPERIMENTS
from swapmet.experiments import CSV_COLUMNS


def _write_config(tmp_path, text, name="exp.cfg"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestRun:
    def test_run_writes_csv(self, tmp_path, capsys):
        config = _write_config(
            tmp_path, "experiment = FigVariance\nt_stop = 31\n"
        )
        out = tmp_path / "rows.csv"
        assert main(["run", config, "--out", str(out)]) == EXIT_OK
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) == 5
        assert "wrote 4 rows" in capsys.readouterr().out

    def test_out_key_in_config_is_used(self, tmp_path):
        out = tmp_path / "fromkey.csv"
        config = _write_config(
            tmp_path, f"experiment = FigVariance\nt_stop = 11\nout = {out}\n"
        )
        assert main(["run", config]) == EXIT_OK
        assert out.exists()

    def test_set_overrides_config(self, tmp_path):
        config = _write_config(tmp_path, "experiment = FigVariance\nt_stop = 31\n")
        out = tmp_path / "rows.csv"
        code = main(["run", config, "--out", str(out), "--set", "t_stop=11"])
        assert code == EXIT_OK
        assert len(out.read_text(encoding="utf-8").splitlines()) == 3

    def test_missing_out_is_config_error(self, tmp_path, capsys):
        config = _write_config(tmp_path, "experiment = FigVariance\n")
        assert main(["run", config]) == EXIT_CONFIG
        assert "out" in capsys.readouterr().err

    def test_missing_config_file_is_io_error(self, tmp_path, capsys):
        code = main(["run", str(tmp_path / "absent.cfg")])
        assert code == EXIT_IO
        assert "cannot read" in capsys.readouterr().err

    def test_invalid_config_reports_line(self, tmp_path, capsys):
        config = _write_config(tmp_path, "experiment = FigVariance\nbogus = 1\n")
        assert main(["run", config, "--out", "x.csv"]) == EXIT_CONFIG
        assert "line 2" in capsys.readouterr().err

    def test_bad_override_is_config_error(self, tmp_path, capsys):
        config = _write_config(tmp_path, "experiment = FigVariance\n")
        code = main(["run", config, "--out", "x.csv", "--set", "reps=zero"])
        assert code == EXIT_CONFIG
        assert "reps" in capsys.readouterr().err

    def test_unwritable_out_is_io_error(self, tmp_path, capsys):
        config = _write_config(tmp_path, "experiment = FigVariance\nt_stop = 11\n")
        code = main(["run", config, "--out", str(tmp_path / "no_dir" / "x.csv")])
        assert code == EXIT_IO
        assert "cannot write" in capsys.readouterr().err

    def test_validate_config_prints_checks(self, tmp_path, capsys):
        config = _write_config(tmp_path, "experiment = Validate\n")
        assert main(["run", config]) == EXIT_OK
        out = capsys.readouterr().out
        assert "checks passed" in out
        assert "FAIL" not in out


class TestOtherCommands:
    def test_list_experiments(self, capsys):
        assert main(["list-experiments"]) == EXIT_OK
        assert capsys.readouterr().out.split() == list(EXPERIMENTS)

    def test_validate_passes(self, capsys):
        assert main(["validate"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.count("ok") >= 5

    def test_no_command_is_config_error(self, capsys):
        assert main([]) == EXIT_CONFIG

    def test_unknown_command_is_config_error(self, capsys):
        assert main(["frobnicate"]) == EXIT_CONFIG

    def test_help_exits_zero(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["--help"])
        assert excinfo.value.code == 0
