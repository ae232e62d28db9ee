import json

from typer.testing import CliRunner

from morbench import __version__
from morbench.cli.commands import app
from morbench.score import ErrorGraph, error_graph_filename, write_error_graph

runner = CliRunner()


def test_version() -> None:
    result = runner.invoke(app, ["--version"])
    assert result.exit_code == 0
    assert f"v{__version__}" in result.output


def test_init_writes_default_config(tmp_path, monkeypatch) -> None:
    monkeypatch.setenv("MORBENCH_HOME", str(tmp_path))
    result = runner.invoke(app, ["init"])
    assert result.exit_code == 0
    data = json.loads((tmp_path / "config.json").read_text())
    assert data["experiment"]["nMax"] == 50

    result = runner.invoke(app, ["init"], input="n\n")
    assert result.exit_code == 0
    assert "already exists" in result.output


def test_status_shows_effective_settings(tmp_path, monkeypatch) -> None:
    monkeypatch.setenv("MORBENCH_HOME", str(tmp_path))
    result = runner.invoke(app, ["status"])
    assert result.exit_code == 0
    assert "16 x 16" in result.output


def test_export_system(tmp_path, monkeypatch) -> None:
    monkeypatch.setenv("MORBENCH_HOME", str(tmp_path))
    out = tmp_path / "tb"
    result = runner.invoke(app, ["export-system", str(out), "--grid-n", "8"])
    assert result.exit_code == 0
    assert (out / "A4.mtx").exists()
    assert json.loads((out / "system.json").read_text())["N"] == 64


def test_run_rejects_unknown_variant(tmp_path, monkeypatch) -> None:
    monkeypatch.setenv("MORBENCH_HOME", str(tmp_path))
    result = runner.invoke(app, ["run", "--variant", "double"])
    assert result.exit_code == 1
    assert "Unknown variant" in result.output


def test_run_rejects_unknown_method(tmp_path, monkeypatch) -> None:
    monkeypatch.setenv("MORBENCH_HOME", str(tmp_path))
    result = runner.invoke(app, ["run", "--methods", "XX-WC"])
    assert result.exit_code == 1
    assert "Invalid configuration" in result.output


def test_score_rescores_error_graphs(tmp_path) -> None:
    graphs = tmp_path / "errorgraphs" / "fixed"
    for method, eps in (("PM-WC", 1.0), ("BT-WCWO", 1e-16)):
        write_error_graph(
            ErrorGraph([eps, eps], method=method, norm="L2", mode="L2"),
            graphs / error_graph_filename(method, "L2", "L2"),
        )
    out = tmp_path / "rescored"
    result = runner.invoke(app, ["score", str(tmp_path), "--out", str(out)])
    assert result.exit_code == 0
    lines = (out / "morscore_fixed_L2.csv").read_text().splitlines()
    assert lines[0] == "method,L2,unstable"
    assert lines[1] == "PM-WC,0.0,"
    assert lines[2] == "BT-WCWO,0.5,"


def test_score_without_graphs_fails(tmp_path) -> None:
    result = runner.invoke(app, ["score", str(tmp_path)])
    assert result.exit_code == 1
