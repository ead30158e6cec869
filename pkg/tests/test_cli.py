"""Command-line surface: exit codes, output formats, golden reports."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from sullivan.cli import main

GOLDEN = Path(__file__).parent / "golden"

CP2_TEXT = """space CP2 {
    generator x2 : 2;
    generator x5 : 5;
    d x5 = x2^3;
}
"""


@pytest.fixture
def cp2_file(tmp_path):
    path = tmp_path / "cp2.model"
    path.write_text(CP2_TEXT)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestModelCheck:
    def test_ok(self, capsys, cp2_file):
        code, out, err = run(capsys, "model", "check", cp2_file,
                             "--require-minimal", "--require-simply-connected")
        assert code == 0
        assert "CP2: ok (2 generators)" in out

    def test_betti_probe(self, capsys, cp2_file):
        code, out, _ = run(capsys, "model", "check", cp2_file, "--max-degree", "4")
        assert code == 0
        assert "betti: 1 0 1 0 1" in out

    def test_minimality_failure_exits_1(self, capsys, tmp_path):
        path = tmp_path / "nm.model"
        path.write_text(
            "space NotMin {\n"
            "    generator c4 : 4;\n"
            "    generator b3 : 3;\n"
            "    d b3 = c4;\n"
            "}\n"
        )
        code, out, _ = run(capsys, "model", "check", str(path), "--require-minimal")
        assert code == 1
        assert "FAIL" in out
        assert "c4" in out

    def test_simply_connected_failure_exits_1(self, capsys, tmp_path):
        path = tmp_path / "c.model"
        path.write_text("space C { generator t1 : 1; }\n")
        code, out, _ = run(capsys, "model", "check", str(path),
                           "--require-simply-connected")
        assert code == 1
        assert "t1" in out

    def test_parse_error_exits_2(self, capsys, tmp_path):
        path = tmp_path / "bad.model"
        path.write_text("space Bad { generator x2 : 2; d x2 = x2; }\n")
        code, _, err = run(capsys, "model", "check", str(path))
        assert code == 2
        assert "parse error" in err

    def test_missing_file_exits_2(self, capsys):
        code, _, err = run(capsys, "model", "check", "/nonexistent/x.model")
        assert code == 2
        assert "cannot read" in err


class TestModelCohomology:
    def test_text_line(self, capsys, cp2_file):
        code, out, _ = run(capsys, "model", "cohomology", cp2_file,
                           "--max-degree", "9")
        assert code == 0
        assert out == "1 0 1 0 1 0 0 0 0 0\n"

    def test_tree_format(self, capsys, cp2_file):
        code, out, _ = run(capsys, "model", "cohomology", cp2_file,
                           "--max-degree", "4", "--format", "tree")
        assert code == 0
        assert json.loads(out) == {"name": "CP2", "max_degree": 4, "betti": [1, 0, 1, 0, 1]}

    def test_env_supplies_max_degree(self, capsys, cp2_file, monkeypatch):
        monkeypatch.setenv("SULLIVAN_MAX_DEGREE", "4")
        code, out, _ = run(capsys, "model", "cohomology", cp2_file)
        assert code == 0
        assert out == "1 0 1 0 1\n"

    def test_missing_max_degree_exits_2(self, capsys, cp2_file, monkeypatch):
        monkeypatch.delenv("SULLIVAN_MAX_DEGREE", raising=False)
        code, _, err = run(capsys, "model", "cohomology", cp2_file)
        assert code == 2
        assert "--max-degree" in err

    def test_invalid_differential_exits_1(self, capsys, tmp_path):
        # parses cleanly but d*d != 0
        path = tmp_path / "dd.model"
        path.write_text(
            "space DD {\n"
            "    generator a2 : 2;\n"
            "    generator b3 : 3;\n"
            "    generator c4 : 4;\n"
            "    d b3 = a2^2;\n"
            "    d c4 = a2 * b3;\n"
            "}\n"
        )
        code, _, err = run(capsys, "model", "cohomology", str(path),
                           "--max-degree", "5")
        assert code == 1
        assert "error" in err


class TestEllipticEnumerate:
    def test_dim_5_pruned(self, capsys):
        code, out, _ = run(capsys, "elliptic", "enumerate", "--dim", "5")
        assert code == 0
        assert out.splitlines() == ["{5:1}", "{2:1, 3:2}"]

    def test_dim_4_no_prune_is_superset(self, capsys):
        code, pruned, _ = run(capsys, "elliptic", "enumerate", "--dim", "4")
        assert code == 0
        code, full, _ = run(capsys, "elliptic", "enumerate", "--dim", "4", "--no-prune")
        assert code == 0
        assert set(pruned.splitlines()) <= set(full.splitlines())

    def test_coeffs_flag(self, capsys):
        code, out, _ = run(capsys, "elliptic", "enumerate", "--dim", "3",
                           "--coeffs", "0,1")
        assert code == 0
        assert out.splitlines() == ["{3:1}"]

    def test_bad_coeffs_exits_2(self, capsys):
        code, _, err = run(capsys, "elliptic", "enumerate", "--dim", "3",
                           "--coeffs", "zero")
        assert code == 2
        assert "coefficient set" in err


class TestFibration:
    def test_fiber_ranks_catalog_names(self, capsys):
        code, out, _ = run(capsys, "fibration", "fiber-ranks",
                           "--total", "eschenburg", "--base", "S2")
        assert code == 0
        assert out.splitlines() == [
            "{5:1}",
            "{2:1, 3:1, 5:1}",
            "{1:1, 2:1, 5:1}",
            "{1:1, 2:2, 3:1, 5:1}",
        ]

    def test_fiber_ranks_inline_spec(self, capsys):
        code, out, _ = run(capsys, "fibration", "fiber-ranks",
                           "--total", "2:1,3:1,5:1", "--base", "2:1,3:1")
        assert code == 0
        assert len(out.splitlines()) == 4

    def test_fiber_ranks_bad_spec_exits_2(self, capsys):
        code, _, err = run(capsys, "fibration", "fiber-ranks",
                           "--total", "2:x", "--base", "S2")
        assert code == 2
        assert "space spec" in err

    def test_wang_hopf_profile(self, capsys):
        code, out, err = run(capsys, "fibration", "wang", "--sphere", "3",
                             "--total", "S2xS3", "--fiber-dim", "2")
        assert code == 0
        assert out.splitlines() == ["1 0 1"]
        assert "1 profile(s)" in err

    def test_wang_known_pin(self, capsys):
        code, out, _ = run(capsys, "fibration", "wang", "--sphere", "2",
                           "--total", "S2xS5", "--fiber-dim", "5",
                           "--known", "1=0")
        assert code == 0
        assert out.splitlines() == ["1 0 0 0 0 1"]

    def test_wang_bad_known_exits_2(self, capsys):
        code, _, err = run(capsys, "fibration", "wang", "--sphere", "2",
                           "--total", "S2xS5", "--fiber-dim", "5",
                           "--known", "1:0")
        assert code == 2
        assert "--known" in err


class TestCheckSubmersion:
    def test_survivors_reported(self, capsys):
        code, out, err = run(capsys, "check", "submersion",
                             "--total", "bazaikin", "--max-base-dim", "7")
        assert code == 0
        report = json.loads(out)
        assert report["survivors"] == ["CP2"]
        assert len(report["bases"]) == 17
        assert "1 surviving base(s)" in err

    def test_no_survivors_exits_1(self, capsys):
        code, out, _ = run(capsys, "check", "submersion",
                           "--total", "S4", "--max-base-dim", "3")
        assert code == 1
        assert json.loads(out)["survivors"] == []

    def test_total_from_file(self, capsys, tmp_path):
        path = tmp_path / "prod.model"
        path.write_text(
            "space Prod {\n"
            "    generator a2 : 2;\n"
            "    generator a5 : 5;\n"
            "    generator b5 : 5;\n"
            "    d a5 = a2^3;\n"
            "}\n"
        )
        code, out, _ = run(capsys, "check", "submersion",
                           "--total", str(path), "--max-base-dim", "4")
        assert code == 0
        report = json.loads(out)
        assert report["total"]["name"] == "Prod"
        assert "CP2" in report["survivors"]

    def test_live_table_passes(self, capsys):
        code, _, _ = run(capsys, "check", "submersion", "--total", "eschenburg",
                         "--max-base-dim", "6", "--live-table")
        assert code == 0

    def test_cap_out_of_range_exits_2(self, capsys):
        code, _, err = run(capsys, "check", "submersion",
                           "--total", "eschenburg", "--max-base-dim", "13")
        assert code == 2
        assert "max-base-dim" in err

    def test_unknown_name_exits_2(self, capsys):
        code, _, err = run(capsys, "check", "submersion",
                           "--total", "mystery", "--max-base-dim", "4")
        assert code == 2
        assert "mystery" in err


class TestReproduce:
    TARGETS = ("table1", "prop31", "prop32", "prop41", "prop42",
               "theorem-a", "theorem-b")

    @pytest.mark.parametrize("target", TARGETS)
    def test_matches_golden(self, capsys, target):
        code, out, _ = run(capsys, "reproduce", target)
        assert code == 0
        assert out == (GOLDEN / f"{target}.json").read_text()

    def test_runs_are_byte_identical(self, capsys):
        _, first, _ = run(capsys, "reproduce", "prop32")
        _, second, _ = run(capsys, "reproduce", "prop32")
        assert first == second

    def test_unknown_target_is_usage_error(self, capsys):
        code, _, _ = run(capsys, "reproduce", "prop99")
        assert code == 2


class TestUsage:
    def test_no_arguments_exits_2(self, capsys):
        assert run(capsys, )[0] == 2

    def test_unknown_subcommand_exits_2(self, capsys):
        assert run(capsys, "elliptic", "oops")[0] == 2

    def test_help_exits_0(self, capsys):
        assert run(capsys, "--help")[0] == 0


def test_console_script_installed():
    proc = subprocess.run(
        [sys.executable, "-m", "sullivan.cli", "reproduce", "table1"],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["target"] == "table1"
