"""Command line behavior and exit codes."""

import csv
import json

import pytest

from datmt.blocks import TROJAN
from datmt.cli import main
from datmt.mip import parse_lp


@pytest.fixture()
def troy_file(tmp_path):
    path = tmp_path / "troy.dat"
    path.write_text(TROJAN, encoding="utf-8")
    return path


def test_analyze_json(troy_file, capsys):
    code = main(["analyze", str(troy_file), "--algo", "milp", "--json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["min_time"] == 6.0
    assert payload["algorithm"] == "milp"
    assert payload["satisfiable"] is True
    assert sorted(payload["witness"]["bas"]) == ["h", "t", "w"]


def test_analyze_each_algorithm(troy_file, capsys):
    for algo in ("enum", "milp", "mod-enum", "mod-milp"):
        assert main(["analyze", str(troy_file), "--algo", algo]) == 0
        out = capsys.readouterr().out
        assert "min_time = 6" in out


def test_analyze_bottom_up_rejects_shared_dynamic_input(troy_file, capsys):
    code = main(["analyze", str(troy_file), "--algo", "bu"])
    assert code == 2
    assert "treelike" in capsys.readouterr().err


def test_analyze_bottom_up_on_a_chain(tmp_path, capsys):
    path = tmp_path / "chain.dat"
    path.write_text("sand g a b\nbas a 2\nbas b 3\n", encoding="utf-8")
    assert main(["analyze", str(path), "--algo", "bu"]) == 0
    assert "min_time = 5" in capsys.readouterr().out


def test_analyze_export_lp(troy_file, tmp_path, capsys):
    out = tmp_path / "troy.lp"
    code = main(["analyze", str(troy_file), "--algo", "enum", "--export-lp", str(out)])
    assert code == 0
    problem = parse_lp(out.read_text(encoding="utf-8"))
    assert any(v.name == "f_root" for v in problem.variables)


def test_check_reports_facts(troy_file, capsys):
    assert main(["check", str(troy_file)]) == 0
    out = capsys.readouterr().out
    assert "nodes: 9" in out
    assert "treelike: no" in out
    assert "well-formed: yes" in out
    assert "satisfiable: yes" in out
    assert "big-M: 3664" in out


def test_check_unsatisfiable(tmp_path, capsys):
    path = tmp_path / "dead.dat"
    path.write_text("sand v a a\nbas a 5\n", encoding="utf-8")
    assert main(["check", str(path)]) == 0
    out = capsys.readouterr().out
    assert "well-formed: no" in out
    assert "satisfiable: no" in out


def test_usage_errors_exit_1(capsys):
    assert main(["analyze"]) == 1
    assert main(["frobnicate"]) == 1
    assert main(["bench", "--nmin", "oops", "--out", "x.csv"]) == 1
    assert main(["bench", "--nmin", "5..1", "--out", "x.csv"]) == 1


def test_missing_file_exits_2(capsys):
    assert main(["analyze", "/nonexistent.dat", "--algo", "enum"]) == 2
    assert "error:" in capsys.readouterr().err


def test_bad_document_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.dat"
    path.write_text("or g a ghost\nbas a 1\n", encoding="utf-8")
    assert main(["analyze", str(path), "--algo", "enum"]) == 2
    err = capsys.readouterr().err
    assert "line" in err


def test_bench_small_run(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    code = main([
        "bench", "--nmin", "1..6", "--reps", "1", "--seed", "5",
        "--timeout-s", "120", "--out", str(out),
        "--algos", "bu,enum,mod-enum",
    ])
    assert code == 0
    stdout = capsys.readouterr().out
    assert "records csv" in stdout
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert rows[0][0] == "id"
    assert len(rows) == 1 + 6 * 3
    summary = out.with_name("bench.summary.csv")
    assert summary.exists()
    with open(summary) as fh:
        srows = list(csv.reader(fh))
    assert srows[0] == ["bucket", "algo", "n", "mean_log10_s"]
    assert len(srows) > 1
