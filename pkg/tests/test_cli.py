"""Command line interface: exit codes and JSON reports."""

import json

import pytest

from qcsol.cli import run
from qcsol.problemfile import dumps
from qcsol.registry import get_example


def _json_out(capsys):
    return json.loads(capsys.readouterr().out)


def test_classify(capsys):
    assert run(["classify", "--example", "ex2_4", "--resolution", "17"]) == 0
    assert _json_out(capsys)["alternative"] == "II"


def test_enumerate(capsys):
    code = run([
        "enumerate", "--example", "ex2_2", "--variant", "SHAT1",
        "--resolution", "13",
    ])
    assert code == 0
    out = _json_out(capsys)
    assert len(out["points"]) == 13


def test_verify_membership_positive_and_negative(capsys):
    assert run([
        "verify-membership", "--example", "ex2_1", "--variant", "SHAT1",
        "--point", "1.5,0",
    ]) == 0
    assert _json_out(capsys)["member"] is True
    assert run([
        "verify-membership", "--example", "ex2_1", "--variant", "SHAT1",
        "--point", "1.5,1",
    ]) == 1
    assert _json_out(capsys)["member"] is False


def test_oracle_and_agreement(capsys):
    assert run(["oracle", "--example", "ex2_1", "--resolution", "9"]) == 0
    out = _json_out(capsys)
    assert out["min_value"] == pytest.approx(0.0, abs=1e-12)
    assert run([
        "agreement", "--example", "ex2_1", "--variant", "S1",
        "--resolution", "9",
    ]) == 0
    assert _json_out(capsys)["equal"] is True


def test_kkt_solve(capsys):
    assert run(["kkt-solve", "--example", "ex2_3_constrained"]) == 0
    out = _json_out(capsys)
    assert out["lambdas"] == pytest.approx([0.5])
    assert out["stationarity_residual"] <= 1e-9


def test_check_cq(capsys):
    assert run(["check-cq", "--example", "ex2_3_constrained"]) == 0
    assert _json_out(capsys)["holds"] is True


def test_subdiff_routes(capsys):
    assert run([
        "subdiff-check", "--example", "ex4_1", "--route", "ml",
        "--point", "0.5", "--resolution", "201",
    ]) == 0
    assert _json_out(capsys)["member"] is True
    assert run([
        "subdiff-check", "--example", "ex4_1", "--route", "ml",
        "--point", "1.5", "--resolution", "201",
    ]) == 1


def test_run_example_all_checks(capsys):
    assert run(["run-example", "ex2_2", "--check", "all"]) == 0
    out = _json_out(capsys)
    assert out["example"] == "ex2_2"
    assert all(out["agreement"].values())


def test_problem_file_input(tmp_path, capsys):
    e = get_example("ex2_1")
    path = tmp_path / "problem.json"
    path.write_text(dumps(e.problem, known_solution=e.anchor))
    assert run(["classify", "--problem", str(path), "--resolution", "9"]) == 0
    assert _json_out(capsys)["alternative"] == "I"


def test_usage_errors(capsys):
    assert run(["classify"]) == 2                      # no problem source
    capsys.readouterr()
    assert run(["no-such-command"]) == 2               # unknown subcommand
    capsys.readouterr()
    assert run(["enumerate", "--example", "ex2_1", "--variant", "NOPE"]) == 2
    capsys.readouterr()
    assert run(["classify", "--example", "nope"]) == 2
    capsys.readouterr()


def test_numeric_error_exit_code(capsys):
    # SHAT1 needs a nonzero anchor gradient; ex2_4's vanishes
    code = run([
        "enumerate", "--example", "ex2_4", "--variant", "SHAT1",
        "--resolution", "5",
    ])
    assert code == 3
    err = capsys.readouterr().err
    assert "HypothesisViolatedError" in err


def test_config_file_env(tmp_path, capsys, monkeypatch):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps({"seed": 11}))
    monkeypatch.setenv("QCX_CONFIG", str(cfg_path))
    assert run(["classify", "--example", "ex2_1", "--resolution", "9"]) == 0
