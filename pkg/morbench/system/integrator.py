"""Parameter assembly, implicit-Euler simulation and stability assessment."""

from __future__ import annotations

from typing import Callable, Literal, Sequence

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp
import scipy.sparse.linalg as spla
from loguru import logger

from morbench.errors import DimensionError, EigenvalueError, SimulationError
from morbench.system.types import (
    AffineLTISystem,
    Matrix,
    ParameterPoint,
    SimGrid,
    Trajectory,
    to_dense,
)

Capture = Literal["state", "output"]
InputSignal = Callable[[float], Sequence[float] | float] | np.ndarray | None

DEFAULT_DENSE_THRESHOLD = 2000


def assemble(system: AffineLTISystem, theta: ParameterPoint | Sequence[float] | np.ndarray) -> Matrix:
    """Return A(θ) = A_0 + Σ θ_p A_p (sparse if A_0 is sparse)."""
    point = ParameterPoint.of(() if theta is None else theta)
    if point.size != system.P:
        raise DimensionError(f"θ has {point.size} entries, system has P={system.P}")
    A = system.A_terms[0].copy()
    for coeff, term in zip(point.values, system.A_terms[1:]):
        A = A + coeff * term
    return A


def _input_matrix(u: InputSignal, m: int, grid: SimGrid) -> np.ndarray | None:
    """Sample an input signal into an M x K matrix; column k-1 drives step k."""
    if u is None:
        return None
    if callable(u):
        cols = [np.atleast_1d(np.asarray(u(t), dtype=float)) for t in grid.times]
        U = np.column_stack(cols)
    else:
        U = np.asarray(u, dtype=float)
        if U.ndim == 1:
            U = U.reshape(1, -1) if m == 1 else U.reshape(-1, 1)
    if U.shape != (m, grid.steps):
        raise DimensionError(f"Input has shape {U.shape}, expected ({m}, {grid.steps})")
    if not np.all(np.isfinite(U)):
        raise SimulationError("Input signal contains non-finite values")
    return U


class ImplicitEuler:
    """
    Fixed-step implicit Euler integrator for E x' = A(θ) x + B u.

    One factorization of (E - dt A(θ)) is made at construction and reused for every
    step and every right-hand side. Small systems are densified and stepped with the
    precomputed propagators S = (E - dt A)^-1 E and R = dt (E - dt A)^-1 B.
    """

    def __init__(
        self,
        system: AffineLTISystem,
        theta: ParameterPoint | Sequence[float] | np.ndarray,
        dt: float,
        dense_threshold: int = DEFAULT_DENSE_THRESHOLD,
    ):
        if not dt > 0:
            raise ValueError(f"dt must be positive, got {dt}")
        self.system = system
        self.dt = dt
        A = assemble(system, theta)
        self.dense = system.N <= dense_threshold or not system.is_sparse

        if self.dense:
            E = to_dense(system.E)
            step = E - dt * to_dense(A)
            lu, piv = la.lu_factor(step, check_finite=False)
            if not np.all(np.isfinite(lu)) or np.any(np.diag(lu) == 0.0):
                raise SimulationError("Step matrix (E - dt*A) is singular")
            self.S = la.lu_solve((lu, piv), E)
            self.R = la.lu_solve((lu, piv), dt * system.B)
        else:
            step = sp.csc_matrix(system.E - dt * A)
            try:
                self._lu = spla.splu(step)
            except RuntimeError as e:
                raise SimulationError(f"Step matrix (E - dt*A) is singular: {e}") from e
            self._E = sp.csr_matrix(system.E)

    def run(self, x0: np.ndarray, U: np.ndarray | None, steps: int) -> np.ndarray:
        """March from x0 for `steps` steps; returns the N x steps state samples."""
        n = self.system.N
        x = np.asarray(x0, dtype=float).reshape(n)
        if not np.all(np.isfinite(x)):
            raise SimulationError("Initial state contains non-finite values")
        X = np.empty((n, steps))

        with np.errstate(over="ignore", invalid="ignore"):
            if self.dense:
                S = self.S
                F = None if U is None else self.R @ U
                for k in range(steps):
                    x = S @ x
                    if F is not None:
                        x += F[:, k]
                    X[:, k] = x
            else:
                BU = None if U is None else self.dt * (self.system.B @ U)
                for k in range(steps):
                    rhs = self._E @ x
                    if BU is not None:
                        rhs = rhs + BU[:, k]
                    x = self._lu.solve(rhs)
                    X[:, k] = x
        return X


def impulse_state(system: AffineLTISystem, w: np.ndarray) -> np.ndarray:
    """Initial state E^-1 B w realizing the impulse input δ(t) w."""
    b = system.B @ np.asarray(w, dtype=float).reshape(system.M)
    if sp.issparse(system.E):
        return np.asarray(spla.spsolve(sp.csc_matrix(system.E), b), dtype=float).reshape(-1)
    return la.solve(system.E, b)


def simulate(
    system: AffineLTISystem,
    theta: ParameterPoint | Sequence[float] | np.ndarray,
    u: InputSignal = None,
    x0: np.ndarray | None = None,
    grid: SimGrid | None = None,
    capture: Capture = "state",
    dense_threshold: int = DEFAULT_DENSE_THRESHOLD,
    integrator: ImplicitEuler | None = None,
) -> Trajectory:
    """
    Simulate E x' = A(θ) x + B u from x(0) = x0 with implicit Euler.

    Args:
        system: The system to simulate.
        theta: Parameter point.
        u: None (zero input), callable t -> M-vector, or M x K sample matrix.
        x0: Initial state (defaults to zero).
        grid: Time grid.
        capture: "state" returns x_k, "output" returns y_k = C x_k.
        dense_threshold: State dimension up to which matrices are densified.
        integrator: Optional prebuilt integrator for the same (system, θ, dt).

    Returns:
        Trajectory of the captured quantity.
    """
    if grid is None:
        raise ValueError("A SimGrid is required")
    if integrator is None:
        integrator = ImplicitEuler(system, theta, grid.dt, dense_threshold)
    U = _input_matrix(u, system.M, grid)
    x0 = np.zeros(system.N) if x0 is None else np.asarray(x0, dtype=float)
    X = integrator.run(x0, U, grid.steps)
    if capture == "output":
        return Trajectory(system.C @ X, grid)
    return Trajectory(X, grid)


def simulate_dual(
    system: AffineLTISystem,
    theta: ParameterPoint | Sequence[float] | np.ndarray,
    v: InputSignal = None,
    z0: np.ndarray | None = None,
    grid: SimGrid | None = None,
    capture: Capture = "state",
    dense_threshold: int = DEFAULT_DENSE_THRESHOLD,
) -> Trajectory:
    """Simulate the dual system E^T z' = A(θ)^T z + C^T v; output capture is B^T z."""
    return simulate(system.dual(), theta, v, z0, grid, capture, dense_threshold)


def spectral_abscissa(E_r: Matrix, A_r: Matrix) -> float:
    """Largest real part over the generalized eigenvalues of the pencil (A_r, E_r)."""
    E = to_dense(E_r)
    A = to_dense(A_r)
    try:
        if np.array_equal(E, np.eye(E.shape[0])):
            eigs = la.eigvals(A)
        else:
            eigs = la.eigvals(A, E)
    except (la.LinAlgError, ValueError) as e:
        raise EigenvalueError(f"Eigenvalue iteration failed: {e}") from e
    if not np.all(np.isfinite(eigs)):
        raise EigenvalueError("Pencil has infinite or undefined eigenvalues (singular E)")
    abscissa = float(np.max(eigs.real))
    logger.debug(f"Spectral abscissa {abscissa:.3e} for order {A.shape[0]}")
    return abscissa
