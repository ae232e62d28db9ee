import json

import pytest
from pydantic import ValidationError

from morbench.config.loader import (
    camel_to_snake,
    convert_keys,
    convert_to_camel,
    load_config,
    save_config,
    snake_to_camel,
)
from morbench.config.schema import METHOD_LABELS, Config, ExperimentConfig, ThermalBlockConfig


def test_key_conversion() -> None:
    assert camel_to_snake("tsvdRank") == "tsvd_rank"
    assert snake_to_camel("dense_threshold") == "denseThreshold"
    data = {"experiment": {"nMax": 3, "methods": ["BT-WCWO"]}}
    assert convert_to_camel(convert_keys(data)) == data


def test_save_and_load_round_trip(tmp_path) -> None:
    config = Config(
        benchmark=ThermalBlockConfig(grid_n=8),
        experiment=ExperimentConfig(variant="multi", n_max=7, tsvd_rank=20, seed=5, methods=["BG-WZ", "PM-WC"]),
    )
    path = save_config(config, tmp_path / "config.json")

    raw = json.loads(path.read_text())
    assert raw["experiment"]["nMax"] == 7
    assert raw["benchmark"]["gridN"] == 8

    loaded = load_config(path)
    assert loaded.experiment.variant == "multi"
    assert loaded.experiment.seed == 5
    assert loaded.experiment.methods == ["PM-WC", "BG-WZ"]
    assert loaded.benchmark.grid_n == 8


def test_missing_file_gives_defaults(tmp_path) -> None:
    config = load_config(tmp_path / "absent.json")
    assert config.experiment.variant == "fixed"
    assert config.experiment.n_max == 50
    assert config.experiment.methods == list(METHOD_LABELS)


def test_invalid_file_falls_back_to_defaults(tmp_path) -> None:
    path = tmp_path / "config.json"
    path.write_text("{not json")
    assert load_config(path).benchmark.grid_n == 16

    path.write_text(json.dumps({"experiment": {"nMax": 200, "tsvdRank": 100}}))
    assert load_config(path).experiment.n_max == 50


def test_experiment_validation() -> None:
    with pytest.raises(ValidationError, match="tsvd_rank"):
        ExperimentConfig(n_max=20, tsvd_rank=10)
    with pytest.raises(ValidationError, match="Unknown methods"):
        ExperimentConfig(methods=["XX-WC"])
    with pytest.raises(ValidationError, match="Unknown norms"):
        ExperimentConfig(norms=["L3"])
    with pytest.raises(ValidationError):
        ExperimentConfig(variant="double")


def test_benchmark_validation() -> None:
    with pytest.raises(ValidationError, match="theta_bounds"):
        ThermalBlockConfig(theta_bounds=(10.0, 1.0))
    with pytest.raises(ValidationError):
        ThermalBlockConfig(grid_n=4)
    with pytest.raises(ValidationError, match="max_states"):
        Config(benchmark=ThermalBlockConfig(grid_n=100))


def test_steps_follow_horizon() -> None:
    config = Config()
    assert config.simulation.steps == 1000


def test_output_dir_defaults_under_home(tmp_path, monkeypatch) -> None:
    monkeypatch.setenv("MORBENCH_HOME", str(tmp_path))
    assert Config().output_path == tmp_path / "results"
