"""Empirical controllability, observability and cross Gramians from impulse responses."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import reduce
from pathlib import Path
from typing import Callable, Iterator, Literal, Sequence

import numpy as np
from loguru import logger

from morbench.errors import DimensionError, GramianError, MorbenchError
from morbench.system.integrator import DEFAULT_DENSE_THRESHOLD, ImplicitEuler, impulse_state
from morbench.system.io import write_matrix
from morbench.system.types import AffineLTISystem, ParameterPoint, SimGrid

GramianKind = Literal["WC", "WO", "WX", "WZ"]


@dataclass(frozen=True, eq=False)
class GramianSet:
    """An empirical Gramian together with the excitation it was built from."""
    kind: GramianKind
    matrix: np.ndarray
    scales_c: np.ndarray
    scales_d: np.ndarray
    grid: SimGrid
    params_used: tuple[ParameterPoint, ...] = ()

    def __post_init__(self) -> None:
        n = self.matrix.shape[0]
        if self.matrix.shape != (n, n):
            raise DimensionError(f"Gramian must be square, got {self.matrix.shape}")

    @property
    def N(self) -> int:
        return self.matrix.shape[0]

    def __add__(self, other: "GramianSet") -> "GramianSet":
        if other.kind != self.kind or other.matrix.shape != self.matrix.shape:
            raise DimensionError(f"Cannot add {other.kind}{other.matrix.shape} to {self.kind}{self.matrix.shape}")
        return replace(
            self,
            matrix=self.matrix + other.matrix,
            params_used=self.params_used + other.params_used,
        )


@dataclass(frozen=True, eq=False)
class GramianBundle:
    """W_C, W_O and W_Z of one system, built from shared trajectories."""
    wc: GramianSet
    wo: GramianSet
    wz: GramianSet
    params_used: tuple[ParameterPoint, ...] = field(default=())

    def __add__(self, other: "GramianBundle") -> "GramianBundle":
        return GramianBundle(
            wc=self.wc + other.wc,
            wo=self.wo + other.wo,
            wz=self.wz + other.wz,
            params_used=self.params_used + other.params_used,
        )


def _scales(values: Sequence[float] | np.ndarray | None, count: int, label: str) -> np.ndarray:
    if values is None:
        return np.ones(count)
    arr = np.atleast_1d(np.asarray(values, dtype=float)).ravel()
    if arr.size != count:
        raise DimensionError(f"{label} has {arr.size} entries, expected {count}")
    return arr


def _impulse_responses(
    system: AffineLTISystem,
    theta: ParameterPoint,
    grid: SimGrid,
    scales: np.ndarray,
    dense_threshold: int,
) -> Iterator[np.ndarray]:
    """Yield the N x K state response to the impulse on each input channel in turn."""
    integrator = ImplicitEuler(system, theta, grid.dt, dense_threshold)
    for m in range(system.M):
        w = np.zeros(system.M)
        w[m] = scales[m]
        X = integrator.run(impulse_state(system, w), None, grid.steps)
        if not np.all(np.isfinite(X)):
            raise GramianError(f"Trajectory for channel {m} diverged (non-finite samples)")
        yield X


def _symmetric(W: np.ndarray) -> np.ndarray:
    return 0.5 * (W + W.T)


def empirical_wc(
    system: AffineLTISystem,
    theta: ParameterPoint | Sequence[float] | np.ndarray,
    grid: SimGrid,
    scales_c: Sequence[float] | np.ndarray | None = None,
    scales_d: Sequence[float] | np.ndarray | None = None,
    dense_threshold: int = DEFAULT_DENSE_THRESHOLD,
) -> GramianSet:
    """Empirical controllability Gramian: sum over input channels of dt * X_m X_m^T."""
    point = ParameterPoint.of(theta)
    c = _scales(scales_c, system.M, "scales_c")
    d = _scales(scales_d, system.Q, "scales_d")
    W = np.zeros((system.N, system.N))
    for X in _impulse_responses(system, point, grid, c, dense_threshold):
        W += grid.dt * (X @ X.T)
    return GramianSet("WC", _symmetric(W), c, d, grid, (point,))


def empirical_wo(
    system: AffineLTISystem,
    theta: ParameterPoint | Sequence[float] | np.ndarray,
    grid: SimGrid,
    scales_c: Sequence[float] | np.ndarray | None = None,
    scales_d: Sequence[float] | np.ndarray | None = None,
    dense_threshold: int = DEFAULT_DENSE_THRESHOLD,
) -> GramianSet:
    """Empirical observability Gramian from dual impulse responses of each output channel."""
    point = ParameterPoint.of(theta)
    c = _scales(scales_c, system.M, "scales_c")
    d = _scales(scales_d, system.Q, "scales_d")
    W = np.zeros((system.N, system.N))
    for Z in _impulse_responses(system.dual(), point, grid, d, dense_threshold):
        W += grid.dt * (Z @ Z.T)
    return GramianSet("WO", _symmetric(W), c, d, grid, (point,))


def empirical_wx(
    system: AffineLTISystem,
    theta: ParameterPoint | Sequence[float] | np.ndarray,
    grid: SimGrid,
    scales_c: Sequence[float] | np.ndarray | None = None,
    scales_d: Sequence[float] | np.ndarray | None = None,
    dense_threshold: int = DEFAULT_DENSE_THRESHOLD,
) -> GramianSet:
    """Empirical cross Gramian of a square system, pairing input channel m with output channel m."""
    if system.M != system.Q:
        raise DimensionError(
            f"Cross Gramian needs a square system (M={system.M}, Q={system.Q}); use empirical_wz"
        )
    point = ParameterPoint.of(theta)
    c = _scales(scales_c, system.M, "scales_c")
    d = _scales(scales_d, system.Q, "scales_d")
    W = np.zeros((system.N, system.N))
    primal = _impulse_responses(system, point, grid, c, dense_threshold)
    dual = _impulse_responses(system.dual(), point, grid, d, dense_threshold)
    for X, Z in zip(primal, dual):
        W += grid.dt * (X @ Z.T)
    return GramianSet("WX", W, c, d, grid, (point,))


def empirical_wz(
    system: AffineLTISystem,
    theta: ParameterPoint | Sequence[float] | np.ndarray,
    grid: SimGrid,
    scales_c: Sequence[float] | np.ndarray | None = None,
    scales_d: Sequence[float] | np.ndarray | None = None,
    dense_threshold: int = DEFAULT_DENSE_THRESHOLD,
) -> GramianSet:
    """
    Cross Gramian of the averaged system.

    Inputs and outputs are collapsed into B_bar = sum_m c_m B[:, m] and
    C_bar = sum_q d_q C[q, :], so any M, Q is accepted.
    """
    c = _scales(scales_c, system.M, "scales_c")
    d = _scales(scales_d, system.Q, "scales_d")
    averaged = system.with_io(system.B @ c, (d @ system.C).reshape(1, -1))
    wx = empirical_wx(averaged, theta, grid, dense_threshold=dense_threshold)
    return replace(wx, kind="WZ", scales_c=c, scales_d=d)


def empirical_gramians(
    system: AffineLTISystem,
    theta: ParameterPoint | Sequence[float] | np.ndarray,
    grid: SimGrid,
    scales_c: Sequence[float] | np.ndarray | None = None,
    scales_d: Sequence[float] | np.ndarray | None = None,
    dense_threshold: int = DEFAULT_DENSE_THRESHOLD,
) -> GramianBundle:
    """
    Build W_C, W_O and W_Z at one parameter from M primal and Q dual runs.

    W_Z reuses the per-channel responses: by linearity the averaged system's impulse
    responses are the sums of the scaled per-channel ones.
    """
    point = ParameterPoint.of(theta)
    c = _scales(scales_c, system.M, "scales_c")
    d = _scales(scales_d, system.Q, "scales_d")
    n, dt = system.N, grid.dt

    wc = np.zeros((n, n))
    x_sum = np.zeros((n, grid.steps))
    for X in _impulse_responses(system, point, grid, c, dense_threshold):
        wc += dt * (X @ X.T)
        x_sum += X
    wo = np.zeros((n, n))
    z_sum = np.zeros((n, grid.steps))
    for Z in _impulse_responses(system.dual(), point, grid, d, dense_threshold):
        wo += dt * (Z @ Z.T)
        z_sum += Z
    wz = dt * (x_sum @ z_sum.T)

    logger.debug(f"Gramians at θ={point.values}: tr(W_C)={np.trace(wc):.3e}, tr(W_O)={np.trace(wo):.3e}")
    return GramianBundle(
        wc=GramianSet("WC", _symmetric(wc), c, d, grid, (point,)),
        wo=GramianSet("WO", _symmetric(wo), c, d, grid, (point,)),
        wz=GramianSet("WZ", wz, c, d, grid, (point,)),
        params_used=(point,),
    )


GramianBuilder = Callable[..., GramianSet | GramianBundle]


def parametric_average(
    builder: GramianBuilder,
    system: AffineLTISystem,
    thetas: Sequence[ParameterPoint | Sequence[float] | np.ndarray],
    grid: SimGrid,
    **kwargs,
) -> GramianSet | GramianBundle:
    """
    Parameter-averaged Gramian: the sum of the builder's Gramians over all thetas.

    Args:
        builder: One of the empirical_* builders (or empirical_gramians for a bundle).
        system: The system.
        thetas: Nonempty training parameter set.
        grid: Time grid.
        **kwargs: Passed through to the builder (scales, dense_threshold).

    Returns:
        Summed GramianSet (or bundle) recording every parameter used.
    """
    if not thetas:
        raise GramianError("Parameter set for averaging is empty")
    parts = []
    for theta in thetas:
        point = ParameterPoint.of(theta)
        try:
            parts.append(builder(system, point, grid, **kwargs))
        except MorbenchError as e:
            raise GramianError(f"Gramian failed at θ={point.values}: {e}") from e
    return reduce(lambda a, b: a + b, parts)


def save_gramian(gramian: GramianSet, path: Path) -> Path:
    """Export a Gramian in Matrix Market format for external cross-checks."""
    params = "; ".join(str(p.values) for p in gramian.params_used)
    return write_matrix(path, gramian.matrix, comment=f"{gramian.kind} dt={gramian.grid.dt} steps={gramian.grid.steps} params={params}")
