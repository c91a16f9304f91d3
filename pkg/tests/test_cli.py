import io
import json
import re
import subprocess
import sys

import pytest

from conicrank.cli import main, self_test


def run_cli(args):
    proc = subprocess.run(
        [sys.executable, "-m", "conicrank.cli", *args],
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_example_text_report():
    code, out, _ = run_cli(["--expr", "(x^2-1)*T + x^3 - x + 4"])
    assert code == 0
    assert "delta = 2" in out
    assert "r = 2" in out
    assert "direct = 0" in out
    assert "delta_k = 2" in out
    assert "r_k = 2" in out


def test_instance_a_json_report():
    code, out, _ = run_cli(["--expr", "T^2 + x^3 + 1", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["delta"] == 3
    assert doc["rank_geometric"] == 2
    assert doc["defect"]["direct"] == 1
    assert doc["delta_k"] == 2
    assert doc["family"]["tag"] == "constant-A"
    assert doc["rank_exact"] == 1


def test_json_round_trip_byte_identical():
    code, out, _ = run_cli(["--expr", "T^2 + x^3 + 1", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    again = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    assert again == out


def test_text_json_numeric_agreement():
    _, text, _ = run_cli(["--expr", "(x^3-x)*T + 4"])
    _, js, _ = run_cli(["--expr", "(x^3-x)*T + 4", "--format", "json"])
    doc = json.loads(js)
    assert f"delta = {doc['delta']}, epsilon = {doc['epsilon']}" in text
    assert f"r = {doc['rank_geometric']}" in text
    assert f"delta_k = {doc['delta_k']}" in text
    assert f"{doc['bounds'][0]} <= r_k <= {doc['bounds'][1]}" in text
    assert f"r_k = {doc['rank_exact']}" in text


def test_validation_exit_code():
    code, _, err = run_cli(["--expr", "x^3"])
    assert code == 2
    assert "Delta" in err or "invalid" in err


def test_parse_error_exit_code():
    code, _, err = run_cli(["--expr", "x^3 + ("])
    assert code == 2


def test_missing_input_exit_code():
    code, _, err = run_cli([])
    assert code == 2


def test_input_file_expression(tmp_path):
    f = tmp_path / "curve.txt"
    f.write_text("T^2 + x^3 + 1\n")
    code, out, _ = run_cli(["--input", str(f)])
    assert code == 0 and "delta = 3" in out


def test_input_file_json(tmp_path):
    f = tmp_path / "curve.json"
    f.write_text(json.dumps({"A": "1", "B": "0", "C": "x^3 + 1"}))
    code, out, _ = run_cli(["--input", str(f), "--format", "json"])
    assert code == 0
    assert json.loads(out)["delta"] == 3


def test_verify_points_flag():
    code, out, _ = run_cli(["--expr", "(x^3-x)*T + 4", "--verify-points"])
    assert code == 0
    assert "P1 + P2 + P3 = O: True" in out


def test_self_test_deterministic():
    buf1, buf2 = io.StringIO(), io.StringIO()
    assert self_test(30, 99, out=buf1) == 0
    assert self_test(30, 99, out=buf2) == 0
    assert buf1.getvalue() == buf2.getvalue()
    assert "defect histogram" in buf1.getvalue()


def test_self_test_zero_count():
    buf = io.StringIO()
    assert self_test(0, 1, out=buf) == 0
    assert buf.getvalue() == ""


def test_self_test_cli():
    code, out, _ = run_cli(["--self-test", "25", "--seed", "4"])
    assert code == 0
    assert "25 curves analyzed" in out
    assert "all invariants held" in out
