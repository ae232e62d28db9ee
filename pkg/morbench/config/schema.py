"""Configuration schema using Pydantic."""

from pathlib import Path
from typing import Literal

import numpy as np
from pydantic import BaseModel, Field, model_validator
from pydantic_settings import BaseSettings

from morbench.utils.helpers import expand_path, get_morbench_home_path

Variant = Literal["fixed", "single", "multi"]

METHOD_LABELS: tuple[str, ...] = (
    "PM-WC", "PM-WO",
    "AB-WCWO", "AB-WZ",
    "DS-WCWO", "DS-WZ",
    "BT-WCWO", "BT-WZ",
    "BG-WCWO", "BG-WZ",
)

NORM_LABELS: tuple[str, ...] = (
    "L0", "L1", "L2", "Linf", "H2", "Hinf", "HSH", "Hankel", "IndPrimal", "IndDual",
)


class SimulationConfig(BaseModel):
    """Time grid and integrator configuration."""
    dt: float = Field(default=1e-3, gt=0.0)
    horizon: float = Field(default=1.0, gt=0.0)
    dense_threshold: int = 2000  # States up to which matrices are densified for stepping

    @property
    def steps(self) -> int:
        return max(1, int(round(self.horizon / self.dt)))


class ThermalBlockConfig(BaseModel):
    """Thermal block benchmark geometry and parameter domain."""
    grid_n: int = Field(default=16, ge=8)  # Cells per axis
    circle_radius: float = Field(default=0.2, gt=0.0)
    circle_centers: list[tuple[float, float]] = Field(
        default_factory=lambda: [(0.25, 0.25), (0.75, 0.25), (0.25, 0.75), (0.75, 0.75)]
    )
    theta_bounds: tuple[float, float] = (1.0, 10.0)
    theta0: float = Field(default=1.0, gt=0.0)  # Background conductivity

    @model_validator(mode="after")
    def _check_bounds(self) -> "ThermalBlockConfig":
        lo, hi = self.theta_bounds
        if not 0.0 < lo <= hi:
            raise ValueError(f"theta_bounds must satisfy 0 < lo <= hi, got {self.theta_bounds}")
        return self


class ExperimentConfig(BaseModel):
    """Benchmark sweep configuration."""
    variant: Variant = "fixed"
    n_max: int = Field(default=50, ge=1)
    tsvd_rank: int = Field(default=100, ge=1)
    test_samples: int = Field(default=10, ge=1)
    seed: int = 0
    output_dir: str = Field(default_factory=lambda: str(get_morbench_home_path() / "results"))
    methods: list[str] = Field(default_factory=lambda: list(METHOD_LABELS))
    norms: list[str] = Field(default_factory=lambda: list(NORM_LABELS))
    workers: int = Field(default=1, ge=1)
    max_states: int = 5000  # Cap on the benchmark state dimension (dense Gramians)

    @model_validator(mode="after")
    def _check_selection(self) -> "ExperimentConfig":
        if self.n_max > self.tsvd_rank:
            raise ValueError(f"n_max ({self.n_max}) must not exceed tsvd_rank ({self.tsvd_rank})")
        unknown = [m for m in self.methods if m not in METHOD_LABELS]
        if unknown:
            raise ValueError(f"Unknown methods {unknown}; choose from {list(METHOD_LABELS)}")
        unknown = [n for n in self.norms if n not in NORM_LABELS]
        if unknown:
            raise ValueError(f"Unknown norms {unknown}; choose from {list(NORM_LABELS)}")
        if not self.methods or not self.norms:
            raise ValueError("At least one method and one norm must be selected")
        # Keep table order regardless of the order given by the user.
        self.methods = [m for m in METHOD_LABELS if m in self.methods]
        self.norms = [n for n in NORM_LABELS if n in self.norms]
        return self


class ScoringConfig(BaseModel):
    """MORscore normalization."""
    eps_mach: float = Field(default=float(np.finfo(np.float64).eps), gt=0.0, lt=1.0)


class Config(BaseSettings):
    """Root configuration for morbench."""
    simulation: SimulationConfig = Field(default_factory=SimulationConfig)
    benchmark: ThermalBlockConfig = Field(default_factory=ThermalBlockConfig)
    experiment: ExperimentConfig = Field(default_factory=ExperimentConfig)
    scoring: ScoringConfig = Field(default_factory=ScoringConfig)

    @model_validator(mode="after")
    def _check_size(self) -> "Config":
        states = self.benchmark.grid_n ** 2
        if states > self.experiment.max_states:
            raise ValueError(
                f"grid_n={self.benchmark.grid_n} gives {states} states, "
                f"above max_states={self.experiment.max_states}"
            )
        return self

    @property
    def output_path(self) -> Path:
        """Get expanded output directory."""
        return expand_path(self.experiment.output_dir)

    class Config:
        env_prefix = "MORBENCH_"
        env_nested_delimiter = "__"
