import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from fractotal.cli import BUDGET, FAILED, OK, USAGE, main
from fractotal.fixtures import load


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_info(capsys, tmp_path):
    p = tmp_path / "petersen.txt"
    p.write_text(load("petersen").text)
    code, out, _ = run(capsys, "info", p)
    assert code == OK
    assert "girth 5" in out and "cyc-conn 5" in out
    code, out, _ = run(capsys, "info", "K4")
    assert code == OK and "girth 3" in out
    code, out, _ = run(capsys, "info", "fixture:C5", "--max-cut", 2)
    assert "cyc-conn inf" in out or "cyc-conn >2" in out


def test_parse_errors(capsys, tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    assert run(capsys, "info", empty)[0] == USAGE
    assert run(capsys, "info", tmp_path / "missing.txt")[0] == USAGE
    assert run(capsys, "bogus")[0] == USAGE
    assert run(capsys, "construct", "K2", "--epsilon", "0.5")[0] == USAGE


@pytest.mark.parametrize("name, value", [("K4", "5"), ("K2", "3"), ("C5", "10/3")])
def test_chi(capsys, name, value):
    code, out, _ = run(capsys, "chi", name)
    assert code == OK and f"chi_f'' = {value} " in out


def test_chi_budget_refusal(capsys):
    code, _, err = run(capsys, "chi", "petersen", "--mode", "enumerate", "--budget", 10)
    assert code == BUDGET and "refused" in err


def test_budget_environment_variable():
    env = dict(os.environ, FRACTOTAL_BUDGET="10")
    src = str(Path(__file__).resolve().parents[1] / "src")
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    proc = subprocess.run(
        [sys.executable, "-m", "fractotal", "chi", "C7", "--mode", "enumerate"],
        env=env, capture_output=True, text=True,
    )
    assert proc.returncode == BUDGET


def test_verify_certificate_and_coloring(capsys, tmp_path):
    cert, col = tmp_path / "cert.json", tmp_path / "col.json"
    assert run(capsys, "chi", "C5", "--certificate", cert, "--coloring", col)[0] == OK
    assert run(capsys, "verify", "C5", cert) == (OK, "OK\n", "")
    assert run(capsys, "verify", "C5", col)[0] == OK

    data = json.loads(col.read_text())
    key = sorted(data["colors"])[0]
    data["colors"][key] = [["0/1", "1/2"]]  # measure 1/2
    col.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", "C5", col)
    assert code == FAILED and "measure" in out

    data = json.loads(cert.read_text())
    data["value"] = "3/1"
    cert.write_text(json.dumps(data))
    assert run(capsys, "verify", "C5", cert)[0] == FAILED


def test_verify_wrong_ambient(capsys, tmp_path):
    col = tmp_path / "col.json"
    run(capsys, "chi", "K2", "--coloring", col)
    data = json.loads(col.read_text())
    data["ambient"] = "2/1"
    col.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", "K2", col)
    assert code == FAILED and "ambient" in out


def test_verify_malformed(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "verify", "K2", bad)[0] == USAGE
    bad.write_text(json.dumps({"ambient": "0.5", "colors": {}}))
    assert run(capsys, "verify", "K2", bad)[0] == USAGE


def test_decompose(capsys, tmp_path):
    out_file = tmp_path / "dec.json"
    code, _, _ = run(capsys, "decompose", "petersen", "--ell", 3, "--output", out_file)
    assert code == OK
    data = json.loads(out_file.read_text())
    assert data["ell"] == 3 and len(data["parts"]) == 2 and data["matching"] is not None
    code, out, _ = run(capsys, "decompose", "C5")
    assert code == OK and json.loads(out)["ell"] == 2
    assert run(capsys, "decompose", "K4", "--ell", 2)[0] == USAGE


def test_construct(capsys, tmp_path):
    out_file, trace = tmp_path / "c.json", tmp_path / "t.json"
    code, _, err = run(capsys, "construct", "K2", "--epsilon", "1", "--output", out_file, "--trace", trace)
    assert code == OK and "verified at ambient 3" in err
    assert json.loads(out_file.read_text())["ambient"] == "3/1"
    assert json.loads(trace.read_text())["branch"] == "lp"
    code, _, err = run(capsys, "construct", "K4", "--epsilon", "1/2")
    assert code == FAILED and "construction failed" in err


def test_recolor_demo(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "recolor-demo", "--seed", 7, "--output", report)
    assert code == OK
    assert "valid coloring: OK" in out and "boundary conditions: OK" in out
    assert all(json.loads(report.read_text())["checks"].values())
    assert run(capsys, "recolor-demo", "--eps", "1/2", "--eps-prime", "1")[0] == USAGE


def test_fixtures_listing(capsys):
    code, out, _ = run(capsys, "fixtures")
    assert code == OK
    assert len(out.splitlines()) == 15 and "mcgee" in out
