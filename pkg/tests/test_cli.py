import json

import numpy as np
import pytest

from nosignal.channels import KrausChannel, complete_to_deterministic, greenberger_T
from nosignal.cli import main


@pytest.fixture
def t_gamma0(tmp_path):
    path = tmp_path / "t_gamma0.json"
    path.write_text(json.dumps(greenberger_T(0.0).as_channel().to_json()))
    return path


def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_greenberger_table(capsys):
    code, out = run_cli(capsys, "greenberger", "--alpha", "0.7853981634", "--beta", "0",
                        "--gamma", "1.5707963268", "--format", "table")
    assert code == 0
    line = next(l for l in out.out.splitlines() if l.startswith("probabilities.P(h,d')"))
    assert line.split()[-1] == "1.0000"


def test_fuzz_command(capsys):
    code, out = run_cli(capsys, "fuzz", "--seed", "7", "--trials", "1000", "--dims", "2x2")
    assert code == 0
    report = json.loads(out.out)
    assert report["worst_distance"] <= 1e-9
    assert set(report) == {"scenario", "params", "worst_distance", "pass"}


def test_classify_raw_T_fails_by_design(capsys, t_gamma0):
    code, out = run_cli(capsys, "classify", "--input", str(t_gamma0))
    assert code == 1
    report = json.loads(out.out)
    assert report["trace_preserving"] is False
    assert report["completely_positive"] is True


def test_classify_completed_channel_passes(capsys, tmp_path):
    path = tmp_path / "completed.json"
    path.write_text(json.dumps(complete_to_deterministic(greenberger_T(0.3).matrix / np.sqrt(2)).to_json()))
    code, out = run_cli(capsys, "classify", "--input", str(path), "--format", "table")
    assert code == 0
    assert "trace_preserving" in out.out


def test_classify_probabilistic_T_half(capsys, tmp_path):
    path = tmp_path / "half.json"
    path.write_text(json.dumps(KrausChannel((greenberger_T(0.0).matrix / np.sqrt(2),), "probabilistic").to_json()))
    code, _ = run_cli(capsys, "classify", "--input", str(path))
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["epr", "--gamma", "0.3"],
    ["stern-gerlach", "--gamma", "1.1"],
    ["erasure", "--basis", "z", "--outcome", "1"],
    ["erasure", "--basis", "x"],
])
def test_scenarios_pass(capsys, argv):
    code, out = run_cli(capsys, *argv)
    assert code == 0
    assert json.loads(out.out)["pass"] is True


@pytest.mark.parametrize("argv", [
    ["teleport"],
    ["greenberger", "--alpha", "0", "--beta", "0", "--gamma", "3.141592653589793"],
    ["erasure", "--outcome", "5"],
    ["fuzz", "--trials", "0"],
    ["fuzz", "--tolerance", "-1"],
    ["fuzz", "--dims", "2by2"],
    ["classify", "--input", "/nonexistent.json"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _ = run_cli(capsys, *argv)
    assert code == 2


def test_malformed_json_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run_cli(capsys, "classify", "--input", str(bad))[0] == 2
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"kind": "deterministic", "operators": [{"rows": 2, "cols": 2, "entries": []}]}))
    assert run_cli(capsys, "classify", "--input", str(wrong))[0] == 2


def test_json_output_is_byte_deterministic(capsys):
    _, first = run_cli(capsys, "greenberger", "--alpha", "0.2", "--beta", "0.5", "--gamma", "1.0")
    _, second = run_cli(capsys, "greenberger", "--alpha", "0.2", "--beta", "0.5", "--gamma", "1.0")
    assert first.out == second.out
    _, f1 = run_cli(capsys, "fuzz", "--seed", "3", "--trials", "20", "--dims", "2x3")
    _, f2 = run_cli(capsys, "fuzz", "--seed", "3", "--trials", "20", "--dims", "2x3")
    assert f1.out == f2.out
