import json
import subprocess
import sys

import pytest

from kirchhoff_hessian.cli import main, run


def invoke(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_trees_count(capsys):
    code, out, _ = invoke(capsys, "trees", "count", "--graph", "Kn:5", "--enumerate")
    rep = json.loads(out)
    assert code == 0 and rep["ok"] is True
    assert rep["command"] == "trees count"
    assert rep["results"] == {"count": "125", "enumerated": "125"}
    assert rep["checks"] == {"enumeration_matches": True}


def test_trees_containing():
    rep, code = run(["trees", "containing", "--graph", "Kmn:2,3", "--edges", "0,1"])
    assert code == 0 and rep["results"]["count"] == "5"


def test_hessian_k4():
    rep, code = run(["hessian", "--graph", "Kn:4", "--at-ones", "--det", "--spectrum"])
    r = rep["results"]
    assert code == 0
    assert r["det"] == "-4096"
    assert r["spectrum"] == [["16", 1], ["-2", 2], ["-4", 3]]
    assert r["spectrum_source"] == "closed_form"
    assert r["inertia"] == [1, 5, 0]
    assert r["matrix"][0] == ["0", "3", "3", "3", "3", "4"]


def test_hessian_file_graph(tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("vertices 4\n0 1\n1 2\n2 3\n3 0\n0 2\n")
    rep, code = run(["hessian", "--graph", f"file:{f}", "--spectrum", "--dump-poly"])
    assert code == 0
    assert rep["results"]["spectrum_source"] == "rational_factorization"
    assert len(rep["results"]["poly"].splitlines()) == 8


def test_hessian_irrational_spectrum(tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("vertices 3\n0 1\n1 2\n0 2\n0 1\n")
    rep, code = run(["hessian", "--graph", f"file:{f}", "--spectrum"])
    assert code == 0
    assert "irrational_factor" in rep["results"]


def test_hessian_at_point():
    rep, code = run(["hessian", "--graph", "Kn:3", "--at", "1/2,2,3", "--det"])
    assert code == 0
    assert rep["results"]["point"] == ["1/2", "2", "3"]
    assert rep["results"]["det"] == "2"


def test_verify_kn():
    rep, code = run(["verify", "kn", "--from", "3", "--to", "6"])
    assert code == 0
    rows = rep["results"]["rows"]
    assert [r["n"] for r in rows] == [3, 4, 5, 6]
    assert rows[2]["computed_det"] == "-5859375000000"
    assert all(all(r["checks"].values()) for r in rows)


def test_verify_kmn_reports_disagreement():
    rep, code = run(["verify", "kmn", "--max-sum", "5"])
    assert code == 0
    row = next(r for r in rep["results"]["rows"] if (r["m"], r["n"]) == (2, 3))
    assert row["computed_det"] == "-55296" and row["paper_det"] == "-27648"
    assert row["agrees"] is False


def test_verify_blocks():
    rep, code = run(["verify", "blocks", "--trials", "10", "--seed", "7"])
    assert code == 0
    assert rep["results"]["cyclic_max_rel_error"] < 1e-8
    assert rep["results"]["structured_failures"] == 0


def test_slp():
    rep, code = run(["slp", "--graph", "Kn:4"])
    assert code == 0 and rep["results"]["verdict"] is True
    assert rep["results"]["hilbert"] == [1, 6, 6, 1]


def test_slp_failure_exit_code(capsys):
    code, out, _ = invoke(capsys, "slp", "--graph", "Kn:3", "--L", "0,0,0")
    assert code == 1 and json.loads(out)["ok"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ["trees", "count", "--graph", "Kn:x"],
        ["trees", "count", "--graph", "Petersen"],
        ["trees", "containing", "--graph", "Kn:3", "--edges", "0,1,3"],
        ["trees", "containing", "--graph", "Kn:3", "--edges", "a"],
        ["hessian", "--graph", "file:/nonexistent/graph.txt"],
        ["hessian", "--graph", "Kn:3", "--at", "1,2"],
        ["verify", "kn", "--from", "2"],
        ["slp", "--graph", "Kn:3", "--L", "1,x,1"],
        ["bogus"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, _ = invoke(capsys, *argv)
    assert code == 2 and out == ""


def test_edge_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("KIRCHHOFF_EDGE_CAP", "4")
    code, _, err = invoke(capsys, "trees", "count", "--graph", "Kn:4", "--enumerate")
    assert code == 2 and "error" in err


def test_deterministic_output(capsys):
    argv = ["verify", "blocks", "--trials", "5", "--seed", "11"]
    _, a, _ = invoke(capsys, *argv)
    _, b, _ = invoke(capsys, *argv)
    assert a == b


def test_table_format(capsys):
    code, out, _ = invoke(capsys, "trees", "count", "--graph", "Kn:4", "--format", "table")
    assert code == 0
    assert "results.count: 16" in out.splitlines()
    assert "ok: true" in out.splitlines()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "kirchhoff_hessian", "trees", "count", "--graph", "Kmn:2,3"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["count"] == "12"
