"""Command-line interface: outputs, artifacts, and exit codes."""

import csv
import json
import math
import os

import pytest

from cylshell.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_trivial_branch_json(capsys):
    code, out = run(capsys, "trivial-branch", "--E", "1.0", "--nu", "0.3",
                    "--lambda", "0.05")
    assert code == 0
    payload = json.loads(out)
    assert payload["config"]["E"] == 1.0
    assert 0.0 < payload["b"] < 1.0 - 1.0 / math.sqrt(3.0)
    assert payload["residual"] <= 1e-12


def test_trivial_branch_inadmissible_load(capsys):
    code, _ = run(capsys, "trivial-branch", "--E", "1.0", "--nu", "0.3",
                  "--lambda", "1.0")
    assert code == 2


def test_classical_load(capsys):
    code, out = run(capsys, "classical-load", "--h", "1e-3")
    assert code == 0
    payload = json.loads(out)
    assert 0.0 <= payload["lambda_hat"] / payload["closed_form"] - 1.0 <= 0.02
    assert payload["m"] >= 1 and payload["n"] >= 0


def test_koiter_modes_export(tmp_path, capsys):
    obj = tmp_path / "mode.obj"
    code, out = run(capsys, "--out", str(tmp_path), "koiter-modes",
                    "--h", "1e-3", "--m", "1", "--export", str(obj),
                    "--ntheta", "24", "--nz", "12")
    assert code == 0
    payload = json.loads(out)
    assert payload["modes"][0]["m"] == 1
    lines = obj.read_text().splitlines()
    assert sum(1 for ln in lines if ln.startswith("v ")) == 24 * 12
    assert sum(1 for ln in lines if ln.startswith("f ")) == 24 * 11
    assert (tmp_path / "mode.csv").exists()
    assert (tmp_path / "koiter_modes.csv").exists()


def test_koiter_modes_rejects_bad_amplitude(tmp_path, capsys):
    code, _ = run(capsys, "--out", str(tmp_path), "koiter-modes", "--h", "1e-3",
                  "--m", "1", "--export", str(tmp_path / "m.obj"),
                  "--amplitude", "0.0")
    assert code == 2


def test_korn_sweep_artifacts(tmp_path, capsys):
    code, out = run(capsys, "--out", str(tmp_path), "--jobs", "2", "korn",
                    "--h-list", "1e-2,7e-3,5e-3,3e-3")
    assert code == 0
    payload = json.loads(out)
    assert 1.3 <= payload["fit"]["exponent"] <= 1.7
    with open(tmp_path / "korn.csv") as f:
        rows = list(csv.reader(f))
    assert rows[0][0].startswith("# config:")
    assert rows[1] == ["h", "K", "m_star", "n_star", "K_over_h15"]
    assert len(rows) == 6
    assert (tmp_path / "korn_fit.json").exists()


def test_components_subcommand(tmp_path, capsys):
    code, out = run(capsys, "--out", str(tmp_path), "components",
                    "--h-list", "1e-2,5e-3", "--which", "ththzz")
    assert code == 0
    payload = json.loads(out)
    assert payload["target_exponent"] == 0.0
    for row in payload["rows"]:
        assert row[1] <= 1.0 + 1e-9
    assert (tmp_path / "components_ththzz.csv").exists()


def test_components_unknown_group(tmp_path, capsys):
    code, _ = run(capsys, "--out", str(tmp_path), "components",
                  "--h-list", "1e-2", "--which", "bogus")
    assert code == 2


def test_ansatz_limits(tmp_path, capsys):
    # h of the form k^-4 so the circumferential wavenumber h^(-1/4) is integral
    code, out = run(capsys, "--out", str(tmp_path), "ansatz",
                    "--h-list", "0.0016,0.0001")
    assert code == 0
    payload = json.loads(out)
    for name in ("gradient", "strain"):
        assert all(1.0 < v < 1.1 for v in payload[name]["normalized"])
    assert (tmp_path / "ansatz_limits.csv").exists()


def test_ansatz_stress_fit(tmp_path, capsys):
    code, out = run(capsys, "--out", str(tmp_path), "ansatz",
                    "--h-list", "1e-2,3e-3,1e-3", "--stress", "perfect")
    assert code == 0
    payload = json.loads(out)
    assert payload["fit"]["exponent"] == pytest.approx(1.0, abs=0.2)
    assert (tmp_path / "ansatz_perfect.csv").exists()


def test_fixedbc_sweep(tmp_path, capsys):
    obj = tmp_path / "fixed.obj"
    code, out = run(capsys, "--out", str(tmp_path), "fixedbc",
                    "--h-list", "1e-3,1e-4", "--export", str(obj),
                    "--ntheta", "16", "--nz", "8")
    assert code == 0
    payload = json.loads(out)
    ratios = [row[3] for row in payload["rows"]]
    assert all(r > 1.0 for r in ratios)
    assert ratios[-1] < ratios[0]
    assert obj.exists()
    assert (tmp_path / "fixedbc.csv").exists()


def test_rect_korn(capsys):
    code, out = run(capsys, "rect-korn", "--trials", "20")
    assert code == 0
    payload = json.loads(out)
    assert payload["violations"] == 0
    assert payload["extremal_equality_error"] <= 1e-8


def test_rect_korn_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("SHELLSPEC_SEED", "777")
    code, out = run(capsys, "rect-korn", "--trials", "10")
    assert code == 0
    assert json.loads(out)["config"]["seed"] == 777


def test_bad_h_list(capsys):
    code, _ = run(capsys, "korn", "--h-list", "1e-2,abc")
    assert code == 2


def test_missing_subcommand(capsys):
    assert main([]) == 2
