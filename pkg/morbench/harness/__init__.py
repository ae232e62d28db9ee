"""Benchmark harness: sampling, sweep and output."""

from morbench.harness.emit import write_outputs
from morbench.harness.runner import (
    ExperimentRunner,
    compose_relative,
    error_decay,
    gramian_pair_preference,
    run_experiment,
)
from morbench.harness.sampling import ParameterSpace, sample_test, sample_training, seed_streams
from morbench.harness.types import ExperimentResult, MethodStatus, PointResult, RunRecord

__all__ = [
    "ExperimentResult",
    "ExperimentRunner",
    "MethodStatus",
    "ParameterSpace",
    "PointResult",
    "RunRecord",
    "compose_relative",
    "error_decay",
    "gramian_pair_preference",
    "run_experiment",
    "sample_test",
    "sample_training",
    "seed_streams",
    "write_outputs",
]
