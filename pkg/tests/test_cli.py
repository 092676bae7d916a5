import json
import math

import pytest

from qtet.cli import main_asym, main_sixj, main_tetra


def test_sixj_eval(capsys):
    assert main_sixj(["eval", "--r", "101", "--spins", "17,17,17,16.5,16.5,16.5"]) == 0
    out = capsys.readouterr().out
    assert "logmag = 19.249504534642" in out
    assert "i^3" in out


def test_sixj_eval_half_fraction_spins(capsys):
    assert main_sixj(["eval", "--r", "7", "--spins", "1/2,1/2,1,1/2,1/2,1"]) == 0
    out = capsys.readouterr().out
    assert "value" in out


def test_tetra_analyze(capsys):
    assert main_tetra(["analyze", "--theta", str(math.pi / 3)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["vertex_classes"] == ["Ideal"] * 4
    assert payload["vol"] == pytest.approx(1.0149416064096536, abs=1e-9)
    assert payload["det_g"] == pytest.approx(-27.0 / 16.0, abs=1e-12)


def test_tetra_analyze_not_hyperbolic(capsys):
    assert main_tetra(["analyze", "--theta", "1.5"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert "error" in payload


def test_asym_converge_csv(capsys, tmp_path):
    svg = tmp_path / "gap.svg"
    rc = main_asym([
        "converge", "--theta", str(math.pi / 4),
        "--r-min", "101", "--r-max", "401", "--steps", "3", "--svg", str(svg),
    ])
    assert rc == 0
    out = capsys.readouterr().out
    lines = out.strip().split("\n")
    assert lines[0] == "r,logmag_6j,two_pi_log_over_r,vol_target,gap,predictor_logmag,ratio"
    assert len(lines) == 4
    assert svg.exists() and svg.read_text().startswith("<?xml")


def test_asym_c1_json(capsys):
    rc = main_asym(["c1", "--theta", "0", "--r-ladder", "401", "--ladder-size", "3"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["c1_re"] == pytest.approx(-1.0, abs=0.05)
    assert payload["c1_im"] == pytest.approx(-0.2708, abs=0.02)
    assert payload["r_ladder"] == [401, 601, 801]


def test_asym_poisson_csv(capsys):
    rc = main_asym(["poisson", "--theta", str(math.pi / 4), "--r", "101", "--m-max", "1"])
    assert rc == 0
    captured = capsys.readouterr()
    lines = captured.out.strip().split("\n")
    assert lines[0] == "m,abs_fhat_scaled,ratio_to_f0"
    assert len(lines) == 4  # m in {-1, 0, 1}
    assert "anchor_log" in captured.err


def test_asym_gbar_json(capsys):
    rc = main_asym(["gbar", "--theta", str(math.pi / 4), "--r", "201"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert 0.95 <= payload["ratio_quad_to_closed"] <= 1.05


def test_precision_flag_accepted(capsys):
    assert main_sixj(["eval", "--r", "11", "--spins", "1,1,1,1,1,1", "--precision", "dd"]) == 0
    capsys.readouterr()


def test_cli_domain_errors_exit_cleanly(capsys):
    with pytest.raises(SystemExit):
        main_sixj(["eval", "--r", "5", "--spins", "2,2,2,2,2,2"])  # inadmissible
    with pytest.raises(SystemExit):
        main_asym(["converge", "--theta", "1.5", "--r-min", "101", "--r-max", "201"])  # spherical
    capsys.readouterr()


def test_env_fallbacks(monkeypatch, capsys):
    monkeypatch.setenv("QTET_PRECISION", "dd")
    assert main_sixj(["eval", "--r", "11", "--spins", "1,1,1,1,1,1"]) == 0
    capsys.readouterr()
