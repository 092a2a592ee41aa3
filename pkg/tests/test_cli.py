import json
import subprocess
import sys

import pytest

from hypsurf.cli import run
from hypsurf.holonomy import x_piece


def cli(*argv):
    p = subprocess.run([sys.executable, "-m", "hypsurf", *argv], capture_output=True, text=True, timeout=300)
    return p.returncode, p.stdout, p.stderr


def test_basmajian_example_exit0():
    code, out, _ = cli("basmajian", "--pants", "4,4,4", "--boundary", "1", "--max-word-length", "14", "--tol", "1e-3")
    assert code == 0
    assert out.splitlines()[0] == "term_index,term_value,partial_sum,residual"


def test_basmajian_tight_tol_exit1():
    code, _, err = cli("basmajian", "--pants", "4,4,4", "--max-word-length", "4", "--tol", "1e-15")
    assert code == 1 and "check failed" in err


def test_mcshane_example_exit0():
    code, out, _ = cli("mcshane-torus", "--traces", "3,3,4", "--length-cap", "25", "--tol", "1e-3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["metadata"]["length_cap"] == 25.0 and doc["metadata"]["residual"] <= 1e-3
    assert doc["metadata"]["version"] and doc["metadata"]["tol"] == 1e-3


def test_example53():
    code, out, _ = cli("example53", "--n", "30", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["metadata"]["sum_error"] <= 1e-12


@pytest.mark.parametrize("argv", [
    ["spectrum", "--pants", "1,2,3", "--max-word-length", "3"],
    ["tight-pants", "--random", "5"],
    ["example52"], ["example55"], ["example56"], ["example57"],
    ["shiga", "--family", "unit-flute", "--expect", "yes"],
])
def test_subcommands_exit0_and_deterministic(argv, capsys):
    assert run(argv) == 0
    first = capsys.readouterr().out
    assert run(argv) == 0
    assert capsys.readouterr().out == first


def test_arc_metric_and_asymmetry(capsys):
    assert run(["arc-metric", "--x", "pants:1,2,3", "--y", "pants:2,2,2", "--family-depth", "2",
                "--twist-max", "0", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["columns"] == ["label", "kind", "length_x", "length_y", "log_ratio"]
    assert doc["metadata"]["sup_AS"] >= doc["metadata"]["sup_AB"]
    assert run(["thurston-asymmetry", "--family-depth", "2", "--twist-max", "2"]) == 0


def test_config_file_with_override(tmp_path, capsys):
    path = tmp_path / "x.json"
    path.write_text(x_piece((1.0, 2.0, 3.0, 4.0), 2.0, 0.3).to_json())
    assert run(["spectrum", "--config", str(path), "--boundary", "3", "--max-word-length", "2"]) == 0
    rows = capsys.readouterr().out.splitlines()[1:]
    assert rows and all(r.split(",")[1] == "3" for r in rows)
    assert run(["basmajian", "--surface", str(path), "--max-word-length", "3", "--tol", "1"]) == 0


def test_output_file(tmp_path):
    out = tmp_path / "r.csv"
    assert run(["example56", "--N", "20", "--output", str(out)]) == 0
    assert out.read_text().startswith("n,length,closed_form")


@pytest.mark.parametrize("argv", [
    ["nope"],
    ["basmajian", "--pants", "1,2"],
    ["basmajian", "--pants", "1,2,3", "--boundary", "9"],
    ["basmajian"],
    ["shiga", "--family", "not-a-family"],
    ["spectrum", "--config", "/nonexistent.json"],
    ["example53", "--n", "abc"],
])
def test_usage_errors_exit2(argv):
    assert run(argv) == 2


def test_threads_env(monkeypatch):
    monkeypatch.setenv("HYPSURF_THREADS", "2")
    code, _, _ = cli("example57", "--n-max", "10")
    assert code == 0
