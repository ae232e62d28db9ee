"""System types: affine-parametric LTI systems, parameters, time grids, trajectories."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from morbench.errors import DimensionError

Matrix = np.ndarray | sp.spmatrix


def to_dense(matrix: Matrix) -> np.ndarray:
    """Return a dense float copy-or-view of a dense or sparse matrix."""
    if sp.issparse(matrix):
        return matrix.toarray().astype(float, copy=False)
    return np.asarray(matrix, dtype=float)


def _as_operator(matrix: Matrix) -> Matrix:
    if sp.issparse(matrix):
        return sp.csr_matrix(matrix, dtype=float)
    arr = np.asarray(matrix, dtype=float)
    return np.atleast_2d(arr)


@dataclass(frozen=True)
class ParameterPoint:
    """A parameter vector θ, optionally checked against per-component bounds."""
    values: tuple[float, ...] = ()

    @classmethod
    def of(cls, theta: "ParameterPoint | Sequence[float] | np.ndarray") -> "ParameterPoint":
        if isinstance(theta, ParameterPoint):
            return theta
        arr = np.atleast_1d(np.asarray(theta, dtype=float)).ravel()
        return cls(tuple(float(v) for v in arr))

    @property
    def size(self) -> int:
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def within(self, bounds: Sequence[tuple[float, float]]) -> bool:
        """Check every component against its (lo, hi) interval."""
        if len(bounds) != self.size:
            return False
        return all(lo <= v <= hi for v, (lo, hi) in zip(self.values, bounds))


@dataclass(frozen=True)
class SimGrid:
    """Fixed-step time grid: K steps of size dt, horizon T = dt * K."""
    dt: float
    steps: int

    def __post_init__(self) -> None:
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")

    @classmethod
    def from_horizon(cls, horizon: float, dt: float) -> "SimGrid":
        return cls(dt=dt, steps=max(1, int(round(horizon / dt))))

    @property
    def horizon(self) -> float:
        return self.dt * self.steps

    @property
    def times(self) -> np.ndarray:
        """Sample times t_k = k * dt, k = 1..K."""
        return self.dt * np.arange(1, self.steps + 1)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    Sampled trajectory.

    Column k-1 of `values` holds the sample after step k, at t = k * dt.
    """
    values: np.ndarray
    grid: SimGrid

    def __post_init__(self) -> None:
        if self.values.ndim != 2 or self.values.shape[1] != self.grid.steps:
            raise DimensionError(
                f"Trajectory has shape {self.values.shape}, expected (D, {self.grid.steps})"
            )

    @property
    def dim(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True, eq=False)
class AffineLTISystem:
    """
    Generalized affine-parametric LTI system.

        E x'(t) = (A_0 + sum_p theta_p A_p) x(t) + B u(t)
           y(t) = C x(t)

    E and the A terms may be dense arrays or scipy sparse matrices; B and C are dense.
    """
    E: Matrix
    A_terms: tuple[Matrix, ...]
    B: np.ndarray
    C: np.ndarray
    param_bounds: tuple[tuple[float, float], ...] | None = None
    name: str = ""
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "E", _as_operator(self.E))
        object.__setattr__(self, "A_terms", tuple(_as_operator(a) for a in self.A_terms))
        object.__setattr__(self, "B", np.atleast_2d(to_dense(self.B)))
        object.__setattr__(self, "C", np.atleast_2d(to_dense(self.C)))
        if self.B.ndim == 2 and self.B.shape[0] == 1 and self.E.shape[0] > 1:
            object.__setattr__(self, "B", self.B.T)

        if not self.A_terms:
            raise DimensionError("A_terms must contain at least A_0")
        n = self.E.shape[0]
        if self.E.shape != (n, n):
            raise DimensionError(f"E must be square, got {self.E.shape}")
        for p, a in enumerate(self.A_terms):
            if a.shape != (n, n):
                raise DimensionError(f"A_{p} has shape {a.shape}, expected {(n, n)}")
        if self.B.shape[0] != n:
            raise DimensionError(f"B has shape {self.B.shape}, expected ({n}, M)")
        if self.C.shape[1] != n:
            raise DimensionError(f"C has shape {self.C.shape}, expected (Q, {n})")
        if self.param_bounds is not None:
            bounds = tuple((float(lo), float(hi)) for lo, hi in self.param_bounds)
            if len(bounds) != self.P:
                raise DimensionError(f"{len(bounds)} parameter bounds for P={self.P}")
            object.__setattr__(self, "param_bounds", bounds)

    @property
    def N(self) -> int:
        return self.E.shape[0]

    @property
    def M(self) -> int:
        return self.B.shape[1]

    @property
    def Q(self) -> int:
        return self.C.shape[0]

    @property
    def P(self) -> int:
        return len(self.A_terms) - 1

    @property
    def is_sparse(self) -> bool:
        return sp.issparse(self.E) or any(sp.issparse(a) for a in self.A_terms)

    def dual(self) -> "AffineLTISystem":
        """Dual system (E^T, A_p^T, C^T, B^T)."""
        return AffineLTISystem(
            E=self.E.T,
            A_terms=tuple(a.T for a in self.A_terms),
            B=self.C.T,
            C=self.B.T,
            param_bounds=self.param_bounds,
            name=f"{self.name}:dual" if self.name else "dual",
        )

    def densified(self) -> "AffineLTISystem":
        """Copy with all matrices stored dense."""
        return AffineLTISystem(
            E=to_dense(self.E),
            A_terms=tuple(to_dense(a) for a in self.A_terms),
            B=self.B,
            C=self.C,
            param_bounds=self.param_bounds,
            name=self.name,
            metadata=dict(self.metadata),
        )

    def with_io(self, B: np.ndarray, C: np.ndarray) -> "AffineLTISystem":
        """Same dynamics with replaced input/output matrices."""
        return AffineLTISystem(
            E=self.E,
            A_terms=self.A_terms,
            B=B,
            C=C,
            param_bounds=self.param_bounds,
            name=self.name,
        )
