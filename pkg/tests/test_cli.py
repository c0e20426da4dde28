import csv

import pytest

from ivmopt.cli import main


def test_solve_smoke(capsys, tmp_path):
    trace_path = tmp_path / "trace.csv"
    rc = main(["solve", "--problem", "iv-quad-tr1", "--variant", "prp",
               "--seed", "5", "--trace", str(trace_path)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "status       critical" in out
    assert "iv-quad-tr1" in out
    assert "objective 0  [" in out  # final values rendered as intervals
    header = trace_path.read_text().splitlines()[0]
    assert header == "k,xi,v_norm,beta,t,restarted"


def test_solve_custom_tolerances(capsys):
    rc = main(["solve", "--problem", "iv-parab1", "--variant", "sd",
               "--seed", "1", "--eps", "1e-4", "--rho", "0.01",
               "--sigma", "0.5", "--c", "0.2", "--max-iters", "100"])
    assert rc == 0


def test_bench_profile_pipeline(capsys, tmp_path):
    records_path = tmp_path / "records.csv"
    rc = main(["bench", "--problems", "iv-parab1,iv-quad-tr1",
               "--variants", "sd,prp", "--starts", "2", "--seed", "11",
               "--out", str(records_path)])
    assert rc == 0
    with open(records_path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 2 * 2 * 2
    assert {row["variant"] for row in rows} == {"sd", "prp"}

    profile_path = tmp_path / "profile.csv"
    svg_path = tmp_path / "profile.svg"
    rc = main(["profile", "--in", str(records_path), "--metric", "iters",
               "--out", str(profile_path), "--svg", str(svg_path)])
    assert rc == 0
    lines = profile_path.read_text().splitlines()
    assert lines[0] == "solver,z,F"
    assert svg_path.read_text().count("<polyline") == 2

    rc = main(["profile", "--in", str(records_path), "--metric", "time",
               "--out", str(profile_path)])
    assert rc == 0


def test_bench_convex_selector(tmp_path, capsys):
    records_path = tmp_path / "records.csv"
    rc = main(["bench", "--problems", "iv-parab1", "--variants", "all",
               "--starts", "1", "--seed", "2", "--out", str(records_path)])
    assert rc == 0
    with open(records_path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert {row["variant"] for row in rows} == {"sd", "prp", "hs", "ls"}


def test_problems_list(capsys):
    rc = main(["problems", "list"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "iv-quad-tr1" in out and "iv-fon-like" in out


def test_problems_doc_stdout(capsys):
    rc = main(["problems", "doc"])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.count("## iv-") >= 10


def test_problems_doc_directory(tmp_path, capsys):
    rc = main(["problems", "doc", "--out", str(tmp_path / "sheets")])
    assert rc == 0
    files = sorted((tmp_path / "sheets").glob("*.md"))
    assert len(files) >= 10
    assert any(f.name == "iv-quad-tr1.md" for f in files)


def test_unknown_variant_rejected(tmp_path):
    with pytest.raises(SystemExit):
        main(["bench", "--problems", "iv-parab1", "--variants", "fr",
              "--starts", "1", "--seed", "1",
              "--out", str(tmp_path / "x.csv")])


def test_unknown_problem_rejected():
    with pytest.raises(KeyError):
        main(["solve", "--problem", "iv-missing", "--variant", "sd",
              "--seed", "1"])
