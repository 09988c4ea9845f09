import json
import math
import os

import numpy as np
import pytest
from click.testing import CliRunner

from cavity_gates import config as cfg_mod
from cavity_gates.cli import main
from cavity_gates.errors import ConfigError

YB_CONFIG = """
[cavity]
cooperativity = 50000
g_over_kappa = 0.1
gamma = 596 hz

[decoherence]
qubit_t2 = 6.6e-3 s
optical_pure_dephasing = 9e3 rad_s

[scheme.scattering]
delta_p = 30 per_gamma
gate_time = 1 inv_gamma

[scheme.simple_exchange]
detuning = optimal
splitting_eg = 0.2e9 hz

[scheme.raman]
two_photon = optimal
laser_detuning = 2 per_kappa
rabi_over_detuning = 0.1
"""


@pytest.fixture
def yb_path(tmp_path):
    path = tmp_path / "yb.ini"
    path.write_text(YB_CONFIG)
    return str(path)


def test_load_config_units():
    run = cfg_mod.load_config_text(YB_CONFIG)
    assert run.cavity.gamma == pytest.approx(2 * math.pi * 596.0)
    assert run.cavity.cooperativity == pytest.approx(50_000.0, rel=1e-12)
    assert run.decoherence.qubit_t2 == 6.6e-3
    sc = cfg_mod.build_scattering(run)
    assert sc.pulse.delta_p == pytest.approx(30.0 * run.cavity.gamma)
    assert sc.pulse.gate_time == pytest.approx(1.0 / run.cavity.gamma)
    assert sc.gamma_eff == pytest.approx(0.5 / 6.6e-3)


def test_prefix_unit_form_equivalent():
    a = cfg_mod.load_config_text(YB_CONFIG)
    b = cfg_mod.load_config_text(YB_CONFIG.replace("gamma = 596 hz", "gamma = hz: 596"))
    assert a.cavity.gamma == b.cavity.gamma


def test_exchange_and_raman_builders():
    run = cfg_mod.load_config_text(YB_CONFIG)
    ex = cfg_mod.build_exchange(run)
    assert ex.detuning == pytest.approx(0.5 * run.cavity.kappa * math.sqrt(50_000.0))
    assert ex.splitting_eg == pytest.approx(2 * math.pi * 0.2e9)
    assert ex.gamma_eff == pytest.approx(0.5 / 6.6e-3 + 4.5e3)
    rm = cfg_mod.build_raman(run)
    assert rm.two_photon == pytest.approx(ex.detuning)
    assert rm.laser_detuning == pytest.approx(2 * run.cavity.kappa)
    assert rm.rabi_a == pytest.approx(0.2 * run.cavity.kappa)
    assert rm.gamma_eff == pytest.approx(0.5 / 6.6e-3)  # no shelving decay given


def test_config_errors_name_keys():
    with pytest.raises(ConfigError) as err:
        cfg_mod.load_config_text("[cavity]\ngamma = abc hz\n")
    assert "cavity.gamma" in str(err.value)
    with pytest.raises(ConfigError) as err:
        cfg_mod.load_config_text("[cavity]\ngamma = 1 rad_s\ncooperativity = 10\n")
    assert "g_over_kappa" in str(err.value)
    run = cfg_mod.load_config_text("[cavity]\ngamma = 1 rad_s\n"
                                   "cooperativity = 10\ng_over_kappa = 0.1\n")
    with pytest.raises(ConfigError) as err:
        cfg_mod.build_raman(run)
    assert "scheme.raman" in str(err.value)


def test_dimensionless_gamma_mode():
    run = cfg_mod.load_config_text(
        "[cavity]\ngamma = 1 rad_s\ncooperativity = 4000\ng_over_kappa = 0.5\n"
        "[scheme.scattering]\nsigma_p = 2 per_gamma\ndelta_p = 0\n")
    sc = cfg_mod.build_scattering(run)
    assert sc.pulse.sigma_p == 2.0


def test_scattering_requires_exactly_one_duration():
    base = ("[cavity]\ngamma = 1 rad_s\ncooperativity = 4000\ng_over_kappa = 0.5\n"
            "[scheme.scattering]\ndelta_p = 0\n")
    with pytest.raises(ConfigError):
        cfg_mod.build_scattering(cfg_mod.load_config_text(base))
    both = base + "sigma_p = 2 per_gamma\ngate_time = 1 inv_gamma\n"
    with pytest.raises(ConfigError):
        cfg_mod.build_scattering(cfg_mod.load_config_text(both))


def test_cli_evaluate_json(yb_path):
    runner = CliRunner()
    result = runner.invoke(main, ["evaluate", "scattering", yb_path, "--method", "analytic"])
    assert result.exit_code == 0
    record = json.loads(result.stdout)
    assert record["schema_version"] == 1
    assert record["fidelity"] == pytest.approx(0.98, abs=3e-3)
    assert record["gate_time"] == pytest.approx(2.67e-4, rel=1e-2)
    assert result.stderr == ""


def test_cli_evaluate_exchange_case(yb_path):
    runner = CliRunner()
    result = runner.invoke(main, ["evaluate", "simple_exchange", yb_path])
    record = json.loads(result.stdout)
    assert record["fidelity"] == pytest.approx(0.952, abs=3e-3)
    assert record["gate_time"] == pytest.approx(7.5e-6, rel=0.01)


def test_cli_exit_code_config_error(tmp_path):
    bad = tmp_path / "bad.ini"
    bad.write_text("[cavity]\ngamma = oops hz\ncooperativity = 10\ng_over_kappa = 1\n")
    runner = CliRunner()
    result = runner.invoke(main, ["evaluate", "scattering", str(bad)])
    assert result.exit_code == 2
    assert "cavity.gamma" in result.stderr
    assert result.stdout == ""


def test_cli_exit_code_evaluator_error(yb_path):
    runner = CliRunner()
    result = runner.invoke(main, ["evaluate", "scattering", yb_path,
                                  "--method", "lindblad"])
    assert result.exit_code == 3
    assert result.stdout == ""


def test_cli_warning_goes_to_stderr(tmp_path):
    text = YB_CONFIG.replace("delta_p = 30 per_gamma", "delta_p = 40000 per_gamma")
    path = tmp_path / "warn.ini"
    path.write_text(text)
    runner = CliRunner()
    result = runner.invoke(main, ["evaluate", "scattering", str(path)])
    assert result.exit_code == 0
    assert "warning" in result.stderr
    json.loads(result.stdout)  # stdout still clean JSON


def test_cli_figure_writes_files(tmp_path):
    runner = CliRunner()
    result = runner.invoke(main, ["figure", "fig7", "--out", str(tmp_path)])
    assert result.exit_code == 0
    csv_path = tmp_path / "fig7.csv"
    manifest_path = tmp_path / "fig7.manifest.json"
    assert csv_path.exists() and manifest_path.exists()
    manifest = json.loads(manifest_path.read_text())
    assert manifest["outputs"] == ["fig7.csv"]
    assert manifest["tool_version"]
    # identical rebuild gives identical CSV bytes and config hash
    second = tmp_path / "again"
    runner.invoke(main, ["figure", "fig7", "--out", str(second)])
    assert (second / "fig7.csv").read_bytes() == csv_path.read_bytes()
    assert json.loads((second / "fig7.manifest.json").read_text())["config_hash"] == \
        manifest["config_hash"]


def test_cli_figure_unwritable(tmp_path):
    target = tmp_path / "blocked"
    target.write_text("a file, not a directory")
    runner = CliRunner()
    result = runner.invoke(main, ["figure", "fig7", "--out", str(target)])
    assert result.exit_code == 4


def test_cli_casestudy_defaults_and_overrides(tmp_path):
    runner = CliRunner()
    result = runner.invoke(main, ["casestudy", "--out", str(tmp_path)])
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["scattering"]["fidelity"] == pytest.approx(0.98, abs=3e-3)
    assert report["simple_exchange"]["fidelity"] == pytest.approx(0.952, abs=3e-3)
    assert report["raman"]["fidelity"] == pytest.approx(0.93, abs=5e-3)
    assert (tmp_path / "casestudy.json").exists()
    assert (tmp_path / "casestudy.manifest.json").exists()

    better = json.loads(runner.invoke(main, ["casestudy", "--t2-ms", "30"]).stdout)
    for scheme in ("scattering", "simple_exchange", "raman"):
        assert better[scheme]["fidelity"] > report[scheme]["fidelity"]

    low = json.loads(runner.invoke(main, ["casestudy", "--cooperativity", "1"]).stdout)
    for scheme in ("scattering", "simple_exchange", "raman"):
        assert low[scheme]["fidelity"] < 0.7


def test_cli_sweep_roundtrip(yb_path, tmp_path):
    runner = CliRunner()
    result = runner.invoke(main, [
        "sweep", "simple_exchange", yb_path, "--param", "detuning",
        "--minimum", "50", "--maximum", "200", "--points", "3", "--log",
        "--unit", "per_kappa", "--method", "analytic"])
    assert result.exit_code == 0
    lines = [l for l in result.stdout.splitlines() if l and not l.startswith("#")]
    assert lines[0] == "detuning,fidelity,gate_time_gamma"
    assert len(lines) == 4


def test_figure_csv_roundtrip_through_evaluate(tmp_path):
    """Rebuilding a row's config from the CSV parameter block reproduces the
    numeric column through the evaluate command."""
    from cavity_gates import figures

    data = figures.build_figure("fig2b")
    # reconstruct the config with the swept value of a middle row
    row = data.rows[17]
    delta_p = row[0]
    numeric_weak = row[1]  # g/kappa = 0.01 column
    config_text = "\n".join(data.comments).replace("SWEEP", repr(float(delta_p)))
    path = tmp_path / "row.ini"
    path.write_text(config_text + "\n")
    runner = CliRunner()
    result = runner.invoke(main, ["evaluate", "scattering", str(path),
                                  "--method", "numeric"])
    assert result.exit_code == 0
    record = json.loads(result.stdout)
    assert record["fidelity"] == pytest.approx(numeric_weak, abs=1e-9)


def test_fig4_csv_roundtrip_through_evaluate(tmp_path):
    from cavity_gates import figures

    data = figures.build_figure("fig4")
    row = data.rows[100]
    config_text = "\n".join(data.comments).replace("SWEEP", repr(float(row[0])))
    path = tmp_path / "row.ini"
    path.write_text(config_text + "\n")
    runner = CliRunner()
    record = json.loads(runner.invoke(
        main, ["evaluate", "simple_exchange", str(path), "--method", "numeric"]).stdout)
    assert record["fidelity"] == pytest.approx(row[1], abs=1e-9)
    record = json.loads(runner.invoke(
        main, ["evaluate", "simple_exchange", str(path), "--method", "analytic"]).stdout)
    assert record["fidelity"] == pytest.approx(row[3], abs=1e-9)
