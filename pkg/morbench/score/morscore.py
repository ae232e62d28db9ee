"""MORscore: area under the normalized error graph, and its tables."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy.integrate import trapezoid

from morbench.errors import ScoreError
from morbench.norms.approximate import EPS_MACH, ComposeMode
from morbench.utils.helpers import ensure_dir, format_float

UNSTABLE_COLUMN = "unstable"


def phi_n(n: int, n_max: int) -> float:
    """Normalized order n / n_max."""
    if not 1 <= n <= n_max:
        raise ScoreError(f"Order {n} outside 1..{n_max}")
    return n / n_max


def _floor_exponent(eps_mach: float) -> int:
    if not 0.0 < eps_mach < 1.0:
        raise ScoreError(f"eps_mach must lie in (0, 1), got {eps_mach}")
    return math.floor(math.log10(eps_mach))


def phi_eps(eps: float, eps_mach: float = EPS_MACH) -> float:
    """Normalized accuracy log10(ε) / ⌊log10(ε_mach)⌋, with ε clamped to [10^⌊·⌋, 1]."""
    exponent = _floor_exponent(eps_mach)
    clamped = min(max(float(eps), 10.0**exponent), 1.0)
    return abs(math.log10(clamped) / exponent)


@dataclass
class ErrorGraph:
    """Relative errors ε(n) for n = 1..n_max of one method/norm pair."""
    eps: np.ndarray
    method: str = ""
    norm: str = ""
    variant: str = ""
    mode: str = ""

    def __post_init__(self) -> None:
        self.eps = np.asarray(self.eps, dtype=float).ravel()
        if self.eps.size == 0:
            raise ScoreError("Error graph is empty")
        if not np.all((self.eps > 0) & (self.eps <= 1)):
            raise ScoreError(f"Error graph {self.label} has values outside (0, 1]")

    @property
    def n_max(self) -> int:
        return self.eps.size

    @property
    def label(self) -> str:
        return f"{self.method}/{self.norm}/{self.mode}".strip("/")

    @property
    def points(self) -> list[tuple[int, float]]:
        return [(n, float(e)) for n, e in enumerate(self.eps, start=1)]

    @classmethod
    def from_points(cls, points: Sequence[tuple[int, float]], **meta: str) -> "ErrorGraph":
        """Build from (n, ε) pairs in any order; orders must cover 1..n_max exactly."""
        ordered = sorted((int(n), float(e)) for n, e in points)
        orders = [n for n, _ in ordered]
        if orders != list(range(1, len(ordered) + 1)):
            raise ScoreError(f"Error graph orders must be 1..{len(ordered)} without gaps, got {orders}")
        return cls(np.array([e for _, e in ordered]), **meta)


def morscore(graph: ErrorGraph, eps_mach: float = EPS_MACH) -> float:
    """Trapezoid area under (φ_n(n), φ_ε(ε(n))) over n = 1..n_max."""
    x = np.arange(1, graph.n_max + 1) / graph.n_max
    y = np.array([phi_eps(e, eps_mach) for e in graph.eps])
    return float(trapezoid(y, x))


def aggregate_unstable(counts: Sequence[float], mode: ComposeMode) -> float:
    """Aggregate per-parameter unstable-ROM counts: mean (L1), root-sum-square (L2), max (Linf)."""
    c = np.asarray(counts, dtype=float)
    if c.size == 0:
        raise ScoreError("No unstable counts to aggregate")
    if mode == "L1":
        return float(np.mean(c))
    if mode == "L2":
        return float(np.sqrt(np.sum(c**2)))
    if mode == "Linf":
        return float(np.max(c))
    raise ScoreError(f"Unknown aggregation mode {mode!r}")


@dataclass
class MORscoreTable:
    """MORscores per method (rows) and norm (columns) plus the unstable-ROM aggregate."""
    methods: list[str]
    norms: list[str]
    n_max: int
    eps_mach: float = EPS_MACH
    variant: str = ""
    mode: str = ""
    scores: dict[tuple[str, str], float] = field(default_factory=dict)
    unstable: dict[str, float] = field(default_factory=dict)
    titles: dict[str, str] = field(default_factory=dict)

    def set_graph(self, graph: ErrorGraph) -> float:
        """Score a graph into its cell; returns μ."""
        if graph.n_max != self.n_max:
            raise ScoreError(f"Graph {graph.label} has n_max={graph.n_max}, table expects {self.n_max}")
        mu = morscore(graph, self.eps_mach)
        self.scores[(graph.method, graph.norm)] = mu
        return mu

    def get(self, method: str, norm: str) -> float | None:
        return self.scores.get((method, norm))

    @property
    def columns(self) -> list[str]:
        return [*self.norms, UNSTABLE_COLUMN]

    def rows(self) -> list[list[float | None]]:
        return [
            [self.get(m, n) for n in self.norms] + [self.unstable.get(m)]
            for m in self.methods
        ]

    def to_csv(self) -> str:
        """CSV with full-precision values; missing cells are left empty."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["method", *self.columns])
        for method, row in zip(self.methods, self.rows()):
            writer.writerow([method, *("" if v is None else format_float(v) for v in row)])
        return buf.getvalue()

    def to_markdown(self) -> str:
        """Aligned Markdown table, scores with two decimals."""
        header = ["Method", *self.columns]
        body = []
        for method, row in zip(self.methods, self.rows()):
            cells = ["-" if v is None else f"{v:.2f}" for v in row]
            body.append([self.titles.get(method, method), *cells])
        widths = [max(len(r[i]) for r in [header, *body]) for i in range(len(header))]

        def line(cells: list[str]) -> str:
            return "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |"

        exponent = _floor_exponent(self.eps_mach)
        caption = f"MORscores({self.n_max}, 1e{exponent})"
        if self.variant:
            caption += f", {self.variant}"
        if self.mode:
            caption += f", {self.mode} composition"
        rule = "|" + "|".join("-" * (w + 2) for w in widths) + "|"
        return "\n".join([caption, "", line(header), rule, *(line(r) for r in body)]) + "\n"


def write_error_graph(graph: ErrorGraph, path: Path) -> Path:
    """Write (n, eps) columns, full precision."""
    ensure_dir(path.parent)
    lines = ["n,eps"] + [f"{n},{format_float(e)}" for n, e in graph.points]
    path.write_text("\n".join(lines) + "\n")
    return path


def error_graph_filename(method: str, norm: str, mode: str) -> str:
    return f"errorgraph_{method}_{norm}_{mode}.csv"


def read_error_graph(path: Path) -> ErrorGraph:
    """Read an error-graph CSV; method, norm and mode come from the file name."""
    stem = path.stem
    parts = stem.split("_")
    if len(parts) != 4 or parts[0] != "errorgraph":
        raise ScoreError(f"Not an error-graph file name: {path.name}")
    _, method, norm, mode = parts
    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames != ["n", "eps"]:
            raise ScoreError(f"{path.name}: expected columns n,eps, got {reader.fieldnames}")
        points = [(int(row["n"]), float(row["eps"])) for row in reader]
    return ErrorGraph.from_points(points, method=method, norm=norm, variant=path.parent.name, mode=mode)
