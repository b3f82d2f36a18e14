r"""
Tests of the command line interface.
\date 2026
"""

import filecmp
import os

import pytest
import yaml

from patchcp import cli
from patchcp import protocols
from patchcp.duality import zeta

def _run(capsys, *argv):
	code = cli.main(list(argv))
	return code, capsys.readouterr().out.splitlines()

def test_bounds_example(capsys, tmp_path):
	out = str(tmp_path/"bounds.csv")
	code, lines = _run(capsys, "bounds", "--a", "2", "--b", "1", "--n", "50", "--m", "1000000000", "--out", out)
	assert code == 0
	assert lines[0] == "0.1005"
	table = protocols.read_table(out)
	assert list(table.columns) == cli.COLUMNS["bounds"]
	assert table["mean_emigrants"][0] == pytest.approx(100.0)
	assert os.path.isfile(protocols.manifest_path(out))

def test_meanfield_upper_equilibrium(capsys, tmp_path):
	out = str(tmp_path/"mf.csv")
	code, lines = _run(capsys, "meanfield", "--a", "4.5", "--u0", "0.5", "--stride", "1000", "--out", out)
	assert code == 0
	assert lines == ["upper_equilibrium 0.6667"]
	table = protocols.read_table(out)
	assert list(table.columns) == ["t", "u"]
	assert table["t"][0] == 0.0 and table["u"][0] == 0.5
	assert table["t"][1] == pytest.approx(1.0)

def test_meanfield_horizon_dependence(capsys, tmp_path):
	out = str(tmp_path/"mf.csv")
	_, short = _run(capsys, "meanfield", "--a", "4.5", "--u0", "0.3333333", "--t-max", "10", "--out", out)
	_, long = _run(capsys, "meanfield", "--a", "4.5", "--u0", "0.3333333", "--t-max", "200", "--out", out)
	assert short == ["undetermined"]
	assert long == ["extinct"]

def test_meanfield_invalid(capsys, tmp_path):
	code = cli.main(["meanfield", "--u0", "1.5", "--out", str(tmp_path/"mf.csv")])
	assert code == 2
	assert "error" in capsys.readouterr().err

def test_drift_scan_status(capsys, tmp_path):
	out = str(tmp_path/"scan.csv")
	code, lines = _run(capsys, "drift-scan", "--lemma", "outer-sum", "--n", "100", "--out", out)
	assert code == 4
	assert lines[0].startswith("FAIL margin=")
	code, lines = _run(capsys, "drift-scan", "--lemma", "outer-sum", "--n", "400", "--out", out)
	assert code == 0
	assert lines[0].startswith("PASS margin=")
	assert protocols.read_table(out)["status"][0] == "PASS"

def test_drift_scan_degenerate(capsys, tmp_path):
	code = cli.main(["drift-scan", "--lemma", "inner-drift-2", "--a", "5", "--b", "2", "--n", "4", "--out", str(tmp_path/"scan.csv")])
	assert code == 2
	assert "smallest N" in capsys.readouterr().err

def test_usage_errors(capsys, tmp_path):
	assert cli.main(["no-such-command"]) == 2
	assert cli.main(["drift-scan", "--lemma", "outer-product"]) == 2
	assert cli.main(["bounds", "--n", "many"]) == 2
	assert cli.main(["bounds", "--config", str(tmp_path/"missing.yaml"), "--out", str(tmp_path/"b.csv")]) == 2

def test_version(capsys):
	assert cli.main(["--version"]) == 0
	assert "patchcp" in capsys.readouterr().out

def test_percolation(capsys, tmp_path):
	out = str(tmp_path/"perc.csv")
	code, lines = _run(capsys, "percolation", "--q", "0", "--levels", "50", "--replicas", "100", "--out", out)
	assert code == 0
	assert lines == ["survival 1.0 ci_halfwidth=0 (100/100)"]
	code, lines = _run(capsys, "percolation", "--q", "1", "--levels", "50", "--replicas", "100", "--out", out)
	assert lines[0].startswith("survival 0.0 ")

def test_dual_zeta(capsys, tmp_path):
	out = str(tmp_path/"dual.csv")
	code, lines = _run(capsys, "dual", "--a", "3", "--b", "3", "--t", "0.3", "--replicas", "200", "--out", out)
	assert code == 0
	assert lines[0].startswith("extinction frequency=")
	assert "fixed points: {0, 0.211325, 0.788675}" in lines
	table = protocols.read_table(out)
	assert len(table) == 200
	assert list(table.columns) == cli.COLUMNS["dual_zeta"]

def test_dual_zeta_long_horizon(capsys, tmp_path):
	out = str(tmp_path/"dual.csv")
	code, lines = _run(capsys, "dual", "--mode", "zeta", "--a", "1", "--b", "2", "--t", "30", "--replicas", "50", "--survival-threshold", "100", "--seed", "3", "--out", out)
	assert code == 0
	expected = zeta.zeta_survival(1.0, 2.0, 30.0)
	assert lines[1].endswith("survival function q(t)={:.6g}".format(expected))
	table = protocols.read_table(out)
	assert len(table) == 50
	assert table["ode_survival"].tolist() == pytest.approx([expected]*50)
	assert (table["extinct"] | table["saturated"]).all()
	assert not table["exploded"].any()
	assert table["max_alive"].max() <= 101
	assert table["survival_probability"].between(0.0, 1.0).all()
	assert protocols.RunManifest.read(protocols.manifest_path(out)).parameters["survival_threshold"] == 100

def test_dual_full_duality(capsys, tmp_path):
	out = str(tmp_path/"dual.csv")
	with pytest.warns(RuntimeWarning):
		code, lines = _run(capsys, "dual", "--mode", "full", "--a", "1", "--b", "1", "--n", "3", "--t", "1", "--replicas", "300", "--check-duality", "--out", out)
	assert code == 0
	assert lines[-1] == "300/300 duality checks passed"
	assert protocols.read_table(out)["duality"].all()

def test_simulate_threads_from_environment(capsys, tmp_path, monkeypatch):
	serial = str(tmp_path/"serial.csv")
	parallel = str(tmp_path/"parallel.csv")
	argv = ["simulate", "--a", "2", "--b", "1", "--n", "5", "--horizon", "20", "--replicas", "50", "--seed", "3"]
	monkeypatch.setenv(cli.THREADS_VARIABLE, "1")
	assert cli.main(argv + ["--out", serial]) == 0
	monkeypatch.setenv(cli.THREADS_VARIABLE, "3")
	assert cli.main(argv + ["--out", parallel]) == 0
	assert filecmp.cmp(serial, parallel, shallow=False)
	table = protocols.read_table(serial)
	assert len(table) == 50
	assert list(table.columns) == cli.COLUMNS["simulate"]
	monkeypatch.setenv(cli.THREADS_VARIABLE, "many")
	assert cli.main(argv + ["--out", parallel]) == 2

def test_sweep(capsys, tmp_path):
	out = str(tmp_path/"sweep.csv")
	code, lines = _run(capsys, "sweep", "--a", "2", "--b", "1", "--n", "5", "--m-list", "1,3", "--horizon", "10", "--replicas", "20", "--out", out)
	assert code == 0
	assert [line.split()[0] for line in lines] == ["M=1", "M=3"]
	assert protocols.read_table(out)["m"].tolist() == [1, 3]

def test_config_and_flag_precedence(capsys, tmp_path):
	config = tmp_path/"config.yaml"
	config.write_text(yaml.safe_dump({"a": 4.5, "u0": 0.9, "t-max": 200.0}))
	out = str(tmp_path/"mf.csv")
	_, lines = _run(capsys, "meanfield", "--config", str(config), "--out", out)
	assert lines == ["upper_equilibrium 0.6667"]
	_, lines = _run(capsys, "meanfield", "--config", str(config), "--u0", "0.2", "--out", out)
	assert lines == ["extinct"]
	assert protocols.RunManifest.read(protocols.manifest_path(out)).parameters["u0"] == 0.2

def test_manifest_rerun_identical(capsys, tmp_path):
	first = str(tmp_path/"first.csv")
	second = str(tmp_path/"second.csv")
	assert cli.main(["simulate", "--a", "2", "--b", "1", "--n", "5", "--horizon", "20", "--replicas", "30", "--seed", "9", "--out", first]) == 0
	manifest = protocols.RunManifest.read(protocols.manifest_path(first))
	assert manifest.command == "simulate" and manifest.seed == 9
	assert cli.main(["simulate", "--config", protocols.manifest_path(first), "--out", second]) == 0
	assert filecmp.cmp(first, second, shallow=False)
