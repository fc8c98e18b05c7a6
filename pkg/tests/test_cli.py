import csv
import json
import math
import subprocess
import sys

import pytest

from thetaspan import read_graph, read_points
from thetaspan.cli import main, parse_theta, UsageError
from thetaspan.lemmas import harness
from thetaspan.lemmas.checks import CheckResult


@pytest.fixture
def points_file(tmp_path):
    path = tmp_path / "pts.csv"
    assert main(["gen", "--dist", "uniform", "--n", "60", "--seed", "3", "--out", str(path)]) == 0
    return path


def test_gen_is_deterministic(tmp_path, capsys):
    assert main(["gen", "--n", "20", "--seed", "5"]) == 0
    first = capsys.readouterr().out
    assert main(["gen", "--n", "20", "--seed", "5"]) == 0
    assert capsys.readouterr().out == first
    assert first.splitlines()[0] == "id,x,y" and len(first.splitlines()) == 21


def test_build_and_stretch(tmp_path, points_file, capsys):
    g = tmp_path / "g.json"
    assert main(["build", "--kind", "theta", "--k", "6", "--in", str(points_file), "--out", str(g)]) == 0
    out = capsys.readouterr().out
    assert "kind: theta" in out and "points: 60" in out
    assert read_graph(g).points == read_points(points_file)
    rep = tmp_path / "pairs.csv"
    assert main(["stretch", "--graph", str(g), "--report", str(rep)]) == 0
    out = capsys.readouterr().out
    ratio = float(out.split("spanning_ratio: ")[1].split()[0])
    assert 1.0 <= ratio <= 2 + 1e-9
    rows = list(csv.DictReader(rep.open()))
    assert len(rows) == 60 * 59 // 2
    assert max(float(r["ratio"]) for r in rows) == ratio


def test_stretch_against_theta6(tmp_path, points_file, capsys):
    g = tmp_path / "g.json"
    main(["build", "--kind", "theta-theta", "--k", "30", "--in", str(points_file), "--out", str(g)])
    assert main(["stretch", "--graph", str(g), "--against-theta6"]) == 0
    out = capsys.readouterr().out
    assert float(out.split("per_edge_stretch: ")[1].split()[0]) <= 8.38


def test_build_circle_star_centre(tmp_path, capsys):
    pts = tmp_path / "cs.csv"
    main(["gen", "--dist", "circle-star", "--n", "9", "--out", str(pts)])
    assert main(["build", "--kind", "theta", "--in", str(pts)]) == 0
    assert "max_in: 8 (point 8)" in capsys.readouterr().out


def test_bounds(capsys):
    assert main(["bounds", "--kind", "theta-theta", "--k", "30"]) == 0
    assert main(["bounds", "--kind", "yao-yao", "--k", "6"]) == 0
    assert main(["bounds", "--kind", "yao-yao", "--k", "5"]) == 0
    assert capsys.readouterr().out.split() == ["16.76", "inf", "open"]


def test_export(tmp_path, points_file):
    g = tmp_path / "g.json"
    main(["build", "--kind", "yao", "--k", "6", "--in", str(points_file), "--out", str(g)])
    assert main(["export", "--graph", str(g), "--format", "dot", "--out", str(tmp_path / "g.dot")]) == 0
    assert main(["export", "--graph", str(g), "--format", "svg", "--fan-at", "0",
                 "--out", str(tmp_path / "g.svg")]) == 0
    assert (tmp_path / "g.svg").read_text().startswith("<svg")


def test_verify_tables(capsys):
    assert main(["verify", "--tables", "--grid", "300"]) == 0
    assert "16/16" in capsys.readouterr().out


def test_verify_lemma_with_report(tmp_path, capsys):
    rep = tmp_path / "rep.csv"
    code = main(["verify", "--lemma", "4", "--theta", "pi/18", "--trials", "100", "--report", str(rep)])
    assert code == 0
    rows = list(csv.DictReader(rep.open()))
    assert list(rows[0]) == ["check", "theta", "case", "trials", "failures", "worst_slack"]
    assert sum(int(r["trials"]) for r in rows if r["check"] == "lemma4") >= 100
    assert "all checks passed" in capsys.readouterr().out


def test_verify_reports_injected_failure(monkeypatch, capsys):
    def broken(config, theta6, tol):
        return [CheckResult("lemma3", "fail", -1.0, config.case, "injected")]

    monkeypatch.setattr(harness, "check_config", broken)
    code = main(["verify", "--lemma", "3", "--theta", "pi/24", "--trials", "20"])
    assert code == 1
    captured = capsys.readouterr()
    assert "verification FAILED" in captured.out and "injected" in captured.err


@pytest.mark.parametrize("argv", [
    ["build", "--kind", "theta", "--in", "/nonexistent/p.csv"],
    ["frobnicate"],
    ["bounds", "--kind", "theta"],
    ["verify", "--theta", "pi/zero"],
    ["verify", "--theta", "pi/4", "--trials", "1"],
    ["gen", "--n", "0"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2


def test_bad_input_files_exit_2(tmp_path, capsys):
    dup = tmp_path / "dup.csv"
    dup.write_text("id,x,y\n0,1,1\n1,1,1\n")
    assert main(["build", "--kind", "theta", "--in", str(dup)]) == 2
    bad = tmp_path / "bad.csv"
    bad.write_text("id,x,y\n0,1,1\n1,x,1\n")
    assert main(["build", "--kind", "theta", "--in", str(bad)]) == 2
    assert "bad.csv:3" in capsys.readouterr().err


def test_parse_theta():
    assert parse_theta("pi/18") == pytest.approx(math.pi / 18)
    assert parse_theta("2*pi/30") == pytest.approx(math.pi / 15)
    assert parse_theta("0.25") == 0.25
    for bad in ("pi/0", "-1", "x"):
        with pytest.raises(UsageError):
            parse_theta(bad)


def test_module_entry_point(tmp_path):
    r = subprocess.run([sys.executable, "-m", "thetaspan", "bounds", "--kind", "theta", "--k", "6"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "2"
