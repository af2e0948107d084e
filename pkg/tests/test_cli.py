"""Command-line interface: exit codes, output formats, determinism."""

import json

import pytest

from rcons.cli import main
from rcons.objtypes import make_tnn, type_from_json, type_to_json


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_type_validate_accepts_builtin_dump(tmp_path, capsys):
    path = tmp_path / "chain.json"
    path.write_text(type_to_json(make_tnn(3, 1)))
    code, out, _ = run(capsys, "type-validate", str(path))
    assert code == 0
    assert "valid" in out


def test_type_validate_rejects_malformed(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"name": "t", "values": ["a"], "operations": ["f"],'
                    ' "delta": {}}')
    code, out, _ = run(capsys, "type-validate", str(path))
    assert code == 2
    assert "invalid" in out


def test_type_validate_missing_file(capsys):
    code, _, err = run(capsys, "type-validate", "/no/such/file.json")
    assert code == 2
    assert "error" in err


def test_zoo_make_round_trips(tmp_path, capsys):
    out_path = tmp_path / "zoo.json"
    code, _, _ = run(capsys, "zoo-make", "tnn:5,2", "--out", str(out_path))
    assert code == 0
    back = type_from_json(out_path.read_text())
    assert back.delta == make_tnn(5, 2).delta


def test_type_check_discerning_witness(capsys):
    code, out, _ = run(capsys, "--json", "type-check", "--builtin", "tas",
                       "--property", "discerning", "--n", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["property"] == "discerning"
    assert doc["team0"] and doc["team1"]


def test_type_check_negative_result(capsys):
    code, out, _ = run(capsys, "type-check", "--builtin", "tas",
                       "--property", "recording", "--n", "2")
    assert code == 1
    assert out.strip() == "none"


def test_type_check_readable(capsys):
    code, out, _ = run(capsys, "type-check", "--builtin", "register:2",
                       "--property", "readable")
    assert code == 0
    assert "Read" in out
    code, out, _ = run(capsys, "type-check", "--builtin", "tnn:5,2",
                       "--property", "readable")
    assert code == 1


def test_type_check_cap_refusal(capsys):
    code, _, err = run(capsys, "type-check", "--builtin", "tnn:5,2",
                       "--property", "discerning", "--n", "6",
                       "--cap", "1000")
    assert code == 2
    assert "refused" in err


def test_simulate_trace(capsys):
    code, out, _ = run(capsys, "--json", "simulate",
                       "--protocol", "recoverable-tnn", "--tnn", "5,2",
                       "--procs", "2", "--inputs", "01",
                       "--schedule", "p0,p0,c1,p1")
    assert code == 0
    doc = json.loads(out)
    assert doc["schedule"] == "p0,p0,c1,p1"
    assert doc["final_values"] == ["s_{0,1}"]
    assert {d["value"] for d in doc["decisions"]} == {"0"}


def test_simulate_requires_inputs(capsys):
    code, _, err = run(capsys, "simulate", "--protocol", "recoverable-tnn",
                       "--tnn", "5,2", "--procs", "2", "--schedule", "p0")
    assert code == 2
    assert "inputs" in err


def test_verify_ok_sweeps_all_inputs(capsys):
    code, out, _ = run(capsys, "--json", "verify",
                       "--protocol", "recoverable-tnn", "--tnn", "5,2",
                       "--procs", "2")
    assert code == 0
    assert json.loads(out) == {"status": "ok"}


def test_verify_reports_breakdown(capsys):
    code, out, _ = run(capsys, "--json", "verify",
                       "--protocol", "recoverable-tnn", "--tnn", "5,2",
                       "--procs", "3", "--crashes", "1", "--max-events", "10")
    assert code == 1
    doc = json.loads(out)
    assert doc["status"] == "violation"
    assert doc["kind"] == "agreement"
    assert doc["trace"]


def test_valency_reports(capsys):
    base = ["valency", "--protocol", "recoverable-tnn", "--tnn", "5,2",
            "--procs", "2"]
    code, out, _ = run(capsys, *base, "--inputs", "01")
    assert code == 0 and out.strip() == "bivalent"
    code, out, _ = run(capsys, *base, "--inputs", "01", "--prefix", "p0,p0")
    assert code == 0 and out.strip() == "univalent(0)"


def test_critical_json(capsys):
    code, out, _ = run(capsys, "--json", "critical",
                       "--protocol", "recoverable-tnn", "--tnn", "5,2",
                       "--procs", "2", "--inputs", "01")
    assert code == 0
    assert json.loads(out) == {"schedule": "p0,c1,c1,p1",
                               "team0": [0], "team1": [1]}


def test_critical_univalent_start_is_usage_error(capsys):
    code, _, err = run(capsys, "critical", "--protocol", "recoverable-tnn",
                       "--tnn", "5,2", "--procs", "2", "--inputs", "11")
    assert code == 2
    assert "not bivalent" in err


def test_json_output_is_deterministic(capsys):
    argv = ["--json", "type-check", "--builtin", "cas:3",
            "--property", "recording", "--n", "3"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


def test_usage_errors(capsys):
    code, _, _ = run(capsys, "verify", "--protocol", "imaginary",
                     "--tnn", "5,2", "--procs", "2")
    assert code == 2
    code, _, err = run(capsys, "verify", "--protocol", "recoverable-tnn",
                       "--tnn", "5,2", "--procs", "2", "--inputs", "0")
    assert code == 2
    assert "binary digits" in err


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()
