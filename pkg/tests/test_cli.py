import json
import math

import networkx as nx
import pytest

from localmatch import build_graph, save_graph
from localmatch.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_exact_cycle(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, text, _ = run(["exact", "--family", "cycle:n=6", "--out", str(out)], capsys)
    assert code == 0 and "0.500000" in text
    report = json.loads(out.read_text())
    assert report["size"] == 3 and report["m_fraction"] == "1/2"
    assert report["manifest"]["subcommand"] == "exact"
    assert "seconds" not in report["manifest"]


def test_exact_petersen_from_file(capsys, tmp_path):
    pg = nx.petersen_graph()
    path = tmp_path / "petersen.el"
    save_graph(build_graph(10, list(pg.edges()), 3), path)
    out = tmp_path / "r.json"
    assert run(["exact", "--input", str(path), "--out", str(out)], capsys)[0] == 0
    assert json.loads(out.read_text())["size"] == 5


@pytest.mark.parametrize(
    "argv",
    [
        ["improve", "--family", "grid2d:side=8", "--T", "2", "--phases", "3"],
        ["certify", "--family", "random_regular:n=200,d=3,seed=1", "--check-exact"],
        ["estimate", "--family", "cycle:n=300", "--epsilon", "0.2", "--delta", "0.2", "--T", "1", "--phases", "2"],
        ["stats", "--family", "random_bounded:n=100,d=3,seed=2", "--r", "2", "--threads", "2"],
        ["converge", "--family", "path", "--sizes", "20,40", "--epsilon", "0.3", "--delta", "0.3", "--exact"],
        ["gen", "--family", "tree_regular:n=15,d=3"],
    ],
)
def test_subcommands_run_and_are_deterministic(argv, capsys, tmp_path):
    outs = []
    for i in range(2):
        out = tmp_path / f"o{i}"
        assert run(argv + ["--out", str(out)], capsys)[0] == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] and outs[0]


def test_certify_contains_exact(capsys, tmp_path):
    out = tmp_path / "c.json"
    argv = ["certify", "--family", "random_bounded:n=150,d=4,seed=5", "--T", "2", "--phases", "3"]
    assert run(argv + ["--check-exact", "--out", str(out)], capsys)[0] == 0
    report = json.loads(out.read_text())
    assert report["contains_exact"] is True
    b = report["bracket"]
    assert b["lower"] <= report["m_exact"] <= b["upper"]


def test_estimate_uses_hoeffding_sample_count(capsys, tmp_path):
    out = tmp_path / "e.json"
    argv = ["estimate", "--family", "cycle:n=100", "--epsilon", "0.1", "--delta", "0.1", "--T", "1", "--phases", "1"]
    assert run(argv + ["--out", str(out)], capsys)[0] == 0
    est = json.loads(out.read_text())["estimate"]
    assert est["samples"] >= math.log(2 / 0.1) / (2 * 0.1**2)
    assert est["lower"] <= 0.5 <= est["upper"]


def test_timing_flag_adds_seconds(capsys, tmp_path):
    out = tmp_path / "t.json"
    assert run(["exact", "--family", "path:n=5", "--timing", "--out", str(out)], capsys)[0] == 0
    assert json.loads(out.read_text())["manifest"]["seconds"] >= 0


def test_converge_csv(capsys, tmp_path):
    csv = tmp_path / "t.csv"
    argv = ["converge", "--family", "cycle", "--sizes", "10,30", "--epsilon", "0.3", "--delta", "0.3", "--csv", str(csv)]
    assert run(argv, capsys)[0] == 0
    assert csv.read_text().splitlines()[0] == "n,tv,m_lower,m_upper"


def test_gen_roundtrip(capsys, tmp_path):
    path = tmp_path / "g.el"
    assert run(["gen", "--family", "cycle:n=6", "--out", str(path)], capsys)[0] == 0
    assert run(["exact", "--input", str(path)], capsys)[0] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["exact", "--input", "/nonexistent/file.el"],
        ["exact", "--family", "moebius:n=4"],
        ["estimate", "--family", "cycle:n=10", "--epsilon", "0"],
        ["estimate", "--family", "cycle:n=10", "--delta", "1.5"],
        ["improve", "--family", "cycle:n=10", "--T", "0"],
    ],
)
def test_input_errors_exit_2(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and err.startswith("error:")


def test_malformed_file_exit_2(capsys, tmp_path):
    path = tmp_path / "bad.el"
    path.write_text("3 2 2\n0 1\n1 x\n")
    code, _, err = run(["exact", "--input", str(path)], capsys)
    assert code == 2 and "line 3" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["exact", "--family", "random_regular:n=5,d=3"],
        ["estimate", "--family", "cycle:n=200", "--probe-budget", "10", "--epsilon", "0.3", "--delta", "0.3"],
        ["gen", "--family", "random_regular:n=40,d=5,retries=1,seed=3"],
    ],
)
def test_budget_and_feasibility_exit_3(argv, capsys):
    assert run(argv, capsys)[0] == 3


def test_missing_source_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["exact"])
    assert exc.value.code == 2
