import json
import subprocess
import sys

BASE = [sys.executable, "-m", "mkpolys.cli"]


def run(*args):
    return subprocess.run(BASE + list(args), capture_output=True, text=True)


def test_catalog_dump_and_filter():
    out = run("catalog")
    assert out.returncode == 0
    rows = json.loads(out.stdout)
    assert len(rows) == 10
    reduced = json.loads(run("catalog", "--reduced", "true").stdout)
    assert {r["family"] for r in reduced}.isdisjoint({"AIIIa", "DIIIb", "EIII"})
    # round trip through json
    assert json.loads(out.stdout) == rows


def test_compute_deterministic_and_contains_unit_row():
    a = run("compute", "--family", "AI1", "--level", "0", "--bound", "4")
    b = run("compute", "--family", "AI1", "--level", "0", "--bound", "4")
    assert a.returncode == 0
    assert a.stdout == b.stdout
    rows = [json.loads(line) for line in a.stdout.splitlines()]
    first = rows[0]
    assert first["lambda"] == [0]
    assert first["coeffs"] == [{"mu": [0], "c": "1"}]


def test_compute_levels_differ():
    a = run("compute", "--family", "AI1", "--level", "0", "--bound", "4")
    b = run("compute", "--family", "AI1", "--level", "1", "--bound", "4")
    assert a.stdout != b.stdout


def test_compute_lambda_selector_and_csv():
    out = run("compute", "--family", "AI1", "--bound", "4", "--lambda", "2",
              "--format", "csv")
    assert out.returncode == 0
    assert out.stdout.splitlines()[0] == "lambda,mu,coefficient"
    bad = run("compute", "--family", "AI1", "--bound", "4", "--lambda", "99")
    assert bad.returncode == 1


def test_compute_open_family_fails_cleanly():
    out = run("compute", "--family", "EIII", "--n", "2")
    assert out.returncode == 1
    assert "open" in out.stderr


def test_usage_error_is_exit_two():
    assert run("verify", "nonsense").returncode == 2
    assert run().returncode == 2


def test_verify_weight_shift_suite():
    out = run("verify", "weight-shift", "--format", "json")
    assert out.returncode == 0
    checks = json.loads(out.stdout)
    assert checks and all(c["pass"] for c in checks)
    ids = [c["id"] for c in checks]
    assert ids == sorted(ids)
