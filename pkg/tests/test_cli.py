import json

import pytest

from sfcat.cli import EXIT_CONFIG, EXIT_FAIL, EXIT_PASS, EXIT_TRUNCATION, main
from sfcat.report import SCHEMA_VERSION


def _report(path):
    data = json.loads(path.read_text())
    assert data["schema_version"] == SCHEMA_VERSION
    for rec in data["records"]:
        assert {"check", "ref", "inputs", "verdict", "residual"} <= set(rec)
    return data


def test_verify_category_passes(tmp_path):
    out = tmp_path / "cat.json"
    assert main(["verify-category", "--out", str(out)]) == EXIT_PASS
    assert _report(out)["status"] == "pass"


def test_report_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("SFCAT_REPORT_DIR", str(tmp_path))
    assert main(["ope"]) == EXIT_PASS
    data = _report(tmp_path / "ope.json")
    assert "structure_constants_named" in data["extras"]


def test_corrupted_phi_exits_with_failure(tmp_path):
    out = tmp_path / "bad.json"
    assert main(["verify-category", "--corrupt-phi", "--out", str(out)]) == EXIT_FAIL
    bad = [r for r in _report(out)["records"] if r["verdict"] == "fail"]
    assert any(r["check"] == "pentagon-1111" and "witness_entry" in r["detail"] for r in bad)


def test_reports_are_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["verify-category", "--seed", "5", "--out", str(a)])
    main(["verify-category", "--seed", "5", "--jobs", "3", "--out", str(b)])
    assert _report(a)["records"] == _report(b)["records"]


@pytest.mark.parametrize("args", [["verify-category", "--n-pairs", "0"],
                                  ["verify-blocks", "--tol", "-1"],
                                  ["verify-blocks", "--x", "1.5"],
                                  ["characters", "--tau", "0.5-1j"],
                                  ["verify-category", "--modules", "/nonexistent.json"],
                                  ["no-such-command"]])
def test_configuration_errors(args, tmp_path):
    assert main(args + ["--out", str(tmp_path / "r.json")] if args[0] != "no-such-command"
                else args) == EXIT_CONFIG


def test_invalid_custom_module(tmp_path):
    mod = tmp_path / "m.json"
    mod.write_text(json.dumps({"name": "bad", "carrier": {"labels": ["a"], "parities": [0]},
                               "generators": [[[0, 0, 1]], []]}))
    assert main(["verify-category", "--modules", str(mod),
                 "--out", str(tmp_path / "r.json")]) == EXIT_CONFIG


def test_truncation_budget_exit_code(tmp_path, capsys):
    out = tmp_path / "ch.json"
    assert main(["characters", "--tau", "0.05i", "--out", str(out)]) == EXIT_TRUNCATION
    assert "chi[1+]" in capsys.readouterr().out
