"""
Thermal block benchmark.

Heat equation on the unit square with parametric conductivity in circular inclusions,
discretized by cell-centred finite volumes in conservative form. Heat flows in at the
left edge, the right edge is held at zero, top and bottom are insulated, and the
outputs are the mean temperatures of the inclusions.
"""

from __future__ import annotations

import math
from typing import Literal, Sequence

import numpy as np
import scipy.sparse as sp
from loguru import logger

from morbench.config.schema import ThermalBlockConfig
from morbench.errors import BenchmarkError, DimensionError
from morbench.system.types import AffineLTISystem, ParameterPoint

BACKGROUND = 0
FIXED_LEVEL = math.sqrt(10.0)


def node_centres(grid_n: int) -> np.ndarray:
    """(grid_n², 2) array of cell centres, node k = j * grid_n + i at ((i+½)h, (j+½)h)."""
    h = 1.0 / grid_n
    coords = (np.arange(grid_n) + 0.5) * h
    x, y = np.meshgrid(coords, coords)
    return np.column_stack([x.ravel(), y.ravel()])


def _check_geometry(config: ThermalBlockConfig) -> None:
    r = config.circle_radius
    centres = np.asarray(config.circle_centers, dtype=float)
    if centres.ndim != 2 or centres.shape[1] != 2 or len(centres) == 0:
        raise BenchmarkError(f"circle_centers must be a nonempty list of points, got {config.circle_centers}")
    for p, (cx, cy) in enumerate(centres, start=1):
        if not (r < cx < 1.0 - r and r < cy < 1.0 - r):
            raise BenchmarkError(f"Circle {p} at ({cx}, {cy}) with radius {r} is not strictly inside the unit square")
    for p in range(len(centres)):
        for q in range(p + 1, len(centres)):
            if np.linalg.norm(centres[p] - centres[q]) <= 2.0 * r:
                raise BenchmarkError(f"Circles {p + 1} and {q + 1} overlap or touch")


def region_labels(config: ThermalBlockConfig) -> np.ndarray:
    """Per-node region label: 0 for background, p for nodes inside circle p."""
    _check_geometry(config)
    nodes = node_centres(config.grid_n)
    labels = np.full(len(nodes), BACKGROUND, dtype=int)
    claims = np.zeros(len(nodes), dtype=int)
    for p, centre in enumerate(np.asarray(config.circle_centers, dtype=float), start=1):
        inside = np.linalg.norm(nodes - centre, axis=1) < config.circle_radius
        if not np.any(inside):
            raise BenchmarkError(f"Circle {p} contains no grid node at grid_n={config.grid_n}")
        labels[inside] = p
        claims += inside
    if np.any(claims > 1):
        raise BenchmarkError(f"A grid node lies in two circles at grid_n={config.grid_n}")
    return labels


def _faces(grid_n: int) -> tuple[np.ndarray, np.ndarray]:
    """Endpoints (a, b) of every interior face."""
    idx = np.arange(grid_n * grid_n).reshape(grid_n, grid_n)
    a = np.concatenate([idx[:, :-1].ravel(), idx[:-1, :].ravel()])
    b = np.concatenate([idx[:, 1:].ravel(), idx[1:, :].ravel()])
    return a, b


def _dirichlet_nodes(grid_n: int) -> np.ndarray:
    return np.arange(grid_n * grid_n).reshape(grid_n, grid_n)[:, -1]


def _face_stencil(a: np.ndarray, b: np.ndarray, w: np.ndarray, n_states: int) -> sp.csr_matrix:
    rows = np.concatenate([a, b, a, b])
    cols = np.concatenate([a, b, b, a])
    vals = np.concatenate([-w, -w, w, w])
    return sp.csr_matrix((vals, (rows, cols)), shape=(n_states, n_states))


def _unit_terms(labels: np.ndarray, grid_n: int, n_regions: int) -> list[sp.csr_matrix]:
    """Operator contributions per region for unit conductivity, background first."""
    n_states = grid_n * grid_n
    inv_h2 = float(grid_n * grid_n)
    a, b = _faces(grid_n)
    dirichlet = _dirichlet_nodes(grid_n)

    terms = []
    for p in range(n_regions + 1):
        # Each face carries ½(κ_a + κ_b); the κ_a half belongs to a's region.
        w = 0.5 * inv_h2 * ((labels[a] == p).astype(float) + (labels[b] == p).astype(float))
        term = _face_stencil(a, b, w, n_states)
        own = dirichlet[labels[dirichlet] == p]
        term = term + sp.csr_matrix(
            (np.full(own.size, -2.0 * inv_h2), (own, own)), shape=(n_states, n_states)
        )
        term.eliminate_zeros()
        terms.append(term.tocsr())
    return terms


def _input_matrix(grid_n: int) -> np.ndarray:
    B = np.zeros((grid_n * grid_n, 1))
    left = np.arange(grid_n * grid_n).reshape(grid_n, grid_n)[:, 0]
    B[left, 0] = float(grid_n)
    return B


def _output_matrix(labels: np.ndarray, n_regions: int) -> np.ndarray:
    C = np.zeros((n_regions, labels.size))
    for p in range(1, n_regions + 1):
        members = labels == p
        C[p - 1, members] = 1.0 / np.count_nonzero(members)
    return C


def build(config: ThermalBlockConfig | None = None) -> AffineLTISystem:
    """
    Assemble the affine thermal-block system.

    Returns:
        System with E = I (sparse), A_0 the θ₀-weighted background part, A_p the
        inclusion parts, one inflow input and one mean-temperature output per inclusion.
    """
    config = config or ThermalBlockConfig()
    labels = region_labels(config)
    n_regions = len(config.circle_centers)
    terms = _unit_terms(labels, config.grid_n, n_regions)
    n_states = config.grid_n**2

    system = AffineLTISystem(
        E=sp.identity(n_states, format="csr"),
        A_terms=(config.theta0 * terms[0], *terms[1:]),
        B=_input_matrix(config.grid_n),
        C=_output_matrix(labels, n_regions),
        param_bounds=tuple(tuple(config.theta_bounds) for _ in range(n_regions)),
        name=f"thermal_block_{config.grid_n}",
        metadata={"grid_n": config.grid_n, "region_sizes": np.bincount(labels).tolist()},
    )
    logger.debug(
        f"Thermal block: grid_n={config.grid_n}, N={system.N}, "
        f"region sizes {system.metadata['region_sizes']}"
    )
    return system


def assemble_direct(config: ThermalBlockConfig, theta: ParameterPoint | Sequence[float]) -> sp.csr_matrix:
    """κ-weighted operator assembled face by face for a given θ, without the affine split."""
    labels = region_labels(config)
    point = ParameterPoint.of(theta)
    n_regions = len(config.circle_centers)
    if point.size != n_regions:
        raise DimensionError(f"θ has {point.size} entries for {n_regions} inclusions")
    kappa = np.concatenate([[config.theta0], point.as_array()])[labels]

    grid_n = config.grid_n
    n_states = grid_n * grid_n
    inv_h2 = float(grid_n * grid_n)
    a, b = _faces(grid_n)
    A = _face_stencil(a, b, 0.5 * inv_h2 * (kappa[a] + kappa[b]), n_states)
    dirichlet = _dirichlet_nodes(grid_n)
    A = A + sp.csr_matrix((-2.0 * inv_h2 * kappa[dirichlet], (dirichlet, dirichlet)), shape=(n_states, n_states))
    return A.tocsr()


VariantKind = Literal["fixed", "single", "multi"]


def variant_theta(
    variant: VariantKind,
    value: float | Sequence[float] | None = None,
    n_regions: int = 4,
) -> ParameterPoint:
    """
    Map a benchmark variant to the system parameter θ.

    fixed: √10 · (5, 5/2, 5/3, 5/4); single(s): s · (5, 5/2, 5/3, 5/4); multi(θ): θ itself.
    """
    weights = np.array([5.0 / p for p in range(1, n_regions + 1)])
    if variant == "fixed":
        return ParameterPoint.of(FIXED_LEVEL * weights)
    if variant == "single":
        if value is None or np.ndim(value) != 0:
            raise ValueError("single variant needs a scalar s")
        return ParameterPoint.of(float(value) * weights)
    if variant == "multi":
        if value is None:
            raise ValueError("multi variant needs a full θ")
        point = ParameterPoint.of(value)
        if point.size != n_regions:
            raise DimensionError(f"θ has {point.size} entries for {n_regions} inclusions")
        return point
    raise ValueError(f"Unknown variant {variant!r}")
