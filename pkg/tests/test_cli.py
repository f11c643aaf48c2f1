from __future__ import annotations

import json
import subprocess
import sys

import pytest

from setgen.cli import EXIT_BUDGET, EXIT_INVARIANT, EXIT_OK, EXIT_USAGE, main

KSWAP = "G1: a(X,Y,Z), b(X), c(Z), d(Z)\nG2: a(A,B,C), a(C,B,A), b(C), c(A), d(C)\n"


@pytest.fixture
def instance(tmp_path):
    path = tmp_path / "inst.txt"
    path.write_text(KSWAP)
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generalize_text(capsys, instance):
    code, out, _ = run(capsys, "generalize", "--k", "1", instance)
    assert code == EXIT_OK
    assert "a(X,Y,Z) ~ a(C,B,A)" in out
    assert "size: 3" in out and "elapsed_ms:" in out


def test_generalize_json_and_snapshots(capsys, instance):
    code, out, _ = run(capsys, "generalize", "--json", "--snapshots", "--dump-scores", instance)
    doc = json.loads(out)
    assert code == EXIT_OK and doc["size"] == 3
    assert [len(s) for s in doc["snapshots"]] == [0, 1, 2, 3]
    assert doc["generalization"] == "a(X,Y,Z), b(X), c(Z)"
    assert len(doc["scores"]) == 5


def test_same_variable_names_renamed_apart(capsys, tmp_path):
    path = tmp_path / "same.txt"
    path.write_text("G1: f(X), g(X,Y)\nG2: g(X,Y), f(X)\n")
    code, out, _ = run(capsys, "generalize", "--json", path)
    assert code == EXIT_OK and json.loads(out)["size"] == 2


def test_check_stability_accepts_generalize_output(capsys, instance, tmp_path):
    mapping = tmp_path / "m.json"
    mapping.write_text(json.dumps([[0, 0], [3, 4]]))  # a(A,B,C) and d
    code, out, _ = run(capsys, "check-stability", "--k", "1", instance, mapping)
    assert code == EXIT_OK and out.startswith("stable")
    code, out, _ = run(capsys, "check-stability", "--json", "--k", "2", instance, mapping)
    doc = json.loads(out)
    assert not doc["stable"] and doc["extension"]["size"] == 3
    _, out, _ = run(capsys, "generalize", "--json", instance)
    mapping.write_text(out)
    code, out, _ = run(capsys, "check-stability", "--k", "inf", instance, mapping)
    assert code == EXIT_OK and out.startswith("stable")


@pytest.mark.parametrize("method", ["renamings", "matchings"])
def test_mcg(capsys, instance, method):
    code, out, _ = run(capsys, "mcg", "--json", "--method", method, instance)
    assert code == EXIT_OK and json.loads(out)["size"] == 3


def test_gen_then_classify(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "--class", "1", "--count", "2", "--seed", "5", "--out", tmp_path / "g")
    files = out.split()
    assert code == EXIT_OK and len(files) == 2
    code, out, _ = run(capsys, "classify", "--json", files[0])
    assert 1 in json.loads(out)["classes"]


def test_gen_is_deterministic(capsys, tmp_path):
    run(capsys, "gen", "--class", "2", "--seed", "1", "--out", tmp_path / "a")
    run(capsys, "gen", "--class", "2", "--seed", "1", "--out", tmp_path / "b")
    assert (tmp_path / "a" / "class2_0000.txt").read_text() == (tmp_path / "b" / "class2_0000.txt").read_text()


def test_reduce(capsys, tmp_path):
    (tmp_path / "p3").write_text("p 3\n1 2\n2 3\n")
    (tmp_path / "k3").write_text("p 3\n1 2\n2 3\n1 3\n")
    code, out, _ = run(capsys, "reduce", "--json", "--decide", "--g1", tmp_path / "p3", "--g2", tmp_path / "k3")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["via_mcg"] is False and doc["direct"] is False
    _, out, _ = run(capsys, "reduce", "--json", "--decide", "--plain", "--g1", tmp_path / "p3", "--g2", tmp_path / "k3")
    assert json.loads(out)["via_mcg"] is True
    (tmp_path / "k4").write_text("p 4\n1 2\n")
    code, _, err = run(capsys, "reduce", "--g1", tmp_path / "k4", "--g2", tmp_path / "p3")
    assert code == EXIT_USAGE and "vertices" in err


def test_bench_formats(capsys, tmp_path):
    out_file = tmp_path / "r.csv"
    code, out, _ = run(capsys, "bench", "--classes", "1", "--per-class", "2", "--k-values", "0",
                       "--serial", "--format", "csv", "--out", out_file)
    assert code == EXIT_OK
    assert out.splitlines()[0].startswith("class,engine")
    assert out_file.read_text() == out
    code, out, _ = run(capsys, "bench", "--json", "--classes", "1", "--per-class", "2", "--k-values", "0,inf")
    assert json.loads(out)["schema"] == "setgen.bench/1"


def test_bench_hard_classes_need_opt_in(capsys):
    code, _, err = run(capsys, "bench", "--classes", "4")
    assert code == EXIT_USAGE and "--hard" in err


def test_budget_exit_code(capsys, tmp_path):
    path = tmp_path / "big.txt"
    path.write_text("G1: " + ", ".join(f"g(A{i},B{i})" for i in range(7)) + "\nG2: g(R,S), g(S,T)\n")
    code, _, err = run(capsys, "mcg", "--method", "renamings", "--max-variables", "4", path)
    assert code == EXIT_BUDGET and "variables" in err


def test_invariant_exit_code(capsys, instance, monkeypatch):
    from setgen import cli
    from setgen.errors import InvariantViolation

    def broken(*args, **kw):
        raise InvariantViolation("boom")

    monkeypatch.setattr(cli, "anytime_snapshots", broken)
    code, _, err = run(capsys, "generalize", instance)
    assert code == EXIT_INVARIANT and "boom" in err


def test_input_errors(capsys, tmp_path):
    code, _, err = run(capsys, "generalize", tmp_path / "missing.txt")
    assert code == EXIT_USAGE
    bad = tmp_path / "bad.txt"
    bad.write_text("G1: f(X\nG2: f(Y)\n")
    code, _, err = run(capsys, "generalize", bad)
    assert code == EXIT_USAGE and "line" in err


def test_usage_errors_exit_one():
    for argv in (["frobnicate"], ["generalize"], ["generalize", "--k", "x", "f"]):
        proc = subprocess.run([sys.executable, "-m", "setgen", *argv], capture_output=True, text=True)
        assert proc.returncode == EXIT_USAGE, argv
