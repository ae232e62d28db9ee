"""Harness types."""

from dataclasses import dataclass, field

from morbench.score.morscore import ErrorGraph, MORscoreTable
from morbench.system.types import ParameterPoint


@dataclass
class RunRecord:
    """Outcome of one ROM (method, order) at one test parameter."""
    method: str
    order: int
    theta_index: int
    stable: bool = True
    failed: bool = False
    # Relative errors per norm label, in (0, 1]
    relative: dict[str, float] = field(default_factory=dict)
    # Absolute errors per norm label; empty when the ROM failed or was unstable
    absolute: dict[str, float] = field(default_factory=dict)
    abscissa: float | None = None
    error: str | None = None
    elapsed_s: float = 0.0  # Wall time, kept in memory only


@dataclass
class PointResult:
    """All records for one test parameter plus its full-order normalizers."""
    index: int
    theta: ParameterPoint
    normalizers: dict[str, float] = field(default_factory=dict)
    hsv: list[float] = field(default_factory=list)
    records: list[RunRecord] = field(default_factory=list)


@dataclass
class MethodStatus:
    """Whether a method's projection could be built, and at what rank."""
    name: str
    title: str
    rank: int = 0
    error: str | None = None


@dataclass
class ExperimentResult:
    """Everything a run produces, ready for emission."""
    variant: str
    seed: int
    n_max: int
    training: list[ParameterPoint] = field(default_factory=list)
    points: list[PointResult] = field(default_factory=list)
    methods: list[MethodStatus] = field(default_factory=list)
    graphs: list[ErrorGraph] = field(default_factory=list)
    tables: dict[str, MORscoreTable] = field(default_factory=dict)
    unstable_counts: dict[str, list[int]] = field(default_factory=dict)
    error_decay: dict[str, dict[str, float]] = field(default_factory=dict)
    preference: dict[str, float | bool] | None = None

    @property
    def records(self) -> list[RunRecord]:
        return [r for tp in self.points for r in tp.records]
