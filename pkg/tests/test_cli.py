"""Command-line interface: outputs, determinism, and error handling."""

import math

import numpy as np
import pytest

from diskbern import experiments as ex
from diskbern.cli import main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestEval:
    def test_value_matches_library(self, capsys):
        code, out, _ = run(
            ["eval", "--op", "Cbar", "--fn", "example1", "--n", "8", "--point", "0.3,-0.2"],
            capsys,
        )
        assert code == 0
        expected = float(ex.disk_operator("Cbar", 8)(ex.builtin(1), [(0.3, -0.2)])[0])
        assert float(out.strip()) == pytest.approx(expected, rel=1e-11)

    def test_const_function(self, capsys):
        code, out, _ = run(
            ["eval", "--op", "Bstancu-disk", "--fn", "const:2.5", "--n", "5", "--point", "0,0"],
            capsys,
        )
        assert code == 0
        assert float(out.strip()) == pytest.approx(2.5, abs=1e-12)

    def test_unknown_function_exits_2(self, capsys):
        code, _, err = run(
            ["eval", "--op", "Cbar", "--fn", "nope", "--n", "5", "--point", "0,0"], capsys
        )
        assert code == 2
        assert "unknown function" in err

    def test_point_outside_disk_exits_2(self, capsys):
        code, _, err = run(
            ["eval", "--op", "Cbar", "--fn", "example1", "--n", "5", "--point", "0.9,0.9"],
            capsys,
        )
        assert code == 2

    def test_bad_subcommand_usage(self, capsys):
        code, _, _ = run(["frobnicate"], capsys)
        assert code != 0


class TestMesh:
    def test_quadrant_mesh_csv(self, tmp_path, capsys):
        out_file = tmp_path / "mesh.csv"
        code, out, _ = run(
            ["mesh", "--kind", "quadrant", "--n", "3", "--dedup", "--out", str(out_file)],
            capsys,
        )
        assert code == 0
        lines = out_file.read_text().splitlines()
        assert lines[0] == "x,y,quadrant,k,j"
        assert len(lines) - 1 == 2 * 3 * 4 + 1

    def test_stancu_mesh_csv(self, tmp_path, capsys):
        out_file = tmp_path / "mesh.csv"
        code, _, _ = run(["mesh", "--kind", "stancu", "--n", "4", "--out", str(out_file)], capsys)
        assert code == 0
        lines = out_file.read_text().splitlines()
        assert lines[0] == "x,y,k,j"
        assert len(lines) - 1 == 25

    def test_output_dir_env(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("DISKBERN_OUT_DIR", str(tmp_path))
        code, out, _ = run(["mesh", "--kind", "stancu", "--n", "2"], capsys)
        assert code == 0
        assert (tmp_path / "mesh_stancu_2.csv").exists()


class TestTable:
    def test_table_csv_schema(self, tmp_path, capsys):
        out_file = tmp_path / "table.csv"
        code, _, _ = run(
            ["table", "--example", "1", "--n", "3,5", "--out", str(out_file)], capsys
        )
        assert code == 0
        lines = out_file.read_text().splitlines()
        assert lines[0] == "n,rmse_C,rmse_B"
        assert len(lines) == 3
        n, rc, rb = lines[1].split(",")
        assert int(n) == 3
        assert float(rc) > 0 and float(rb) > 0

    def test_byte_identical_across_thread_counts(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run(
            ["--threads", "1", "table", "--example", "2", "--n", "6,9", "--out", str(a)], capsys
        )[0] == 0
        assert run(
            ["--threads", "5", "table", "--example", "2", "--n", "6,9", "--out", str(b)], capsys
        )[0] == 0
        assert a.read_bytes() == b.read_bytes()


class TestSection:
    def test_section_csv(self, tmp_path, capsys):
        out_file = tmp_path / "section.csv"
        code, _, _ = run(
            [
                "section",
                "--op",
                "Cbar",
                "--fn",
                "example4",
                "--n",
                "4,8",
                "--samples",
                "11",
                "--out",
                str(out_file),
            ],
            capsys,
        )
        assert code == 0
        lines = out_file.read_text().splitlines()
        assert lines[0] == "s,x,y,f,op_4,op_8"
        assert len(lines) == 12

    def test_custom_segment(self, tmp_path, capsys):
        out_file = tmp_path / "section.csv"
        code, _, _ = run(
            [
                "section",
                "--op",
                "Bstancu-disk",
                "--fn",
                "example1",
                "--n",
                "5",
                "--segment",
                "0,-1,0,1",
                "--samples",
                "5",
                "--out",
                str(out_file),
            ],
            capsys,
        )
        assert code == 0
        rows = out_file.read_text().splitlines()[1:]
        first = rows[0].split(",")
        assert float(first[1]) == pytest.approx(0.0)
        assert float(first[2]) == pytest.approx(-1.0)
