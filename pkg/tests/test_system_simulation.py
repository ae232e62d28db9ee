import numpy as np
import pytest
import scipy.sparse as sp

from morbench.errors import DimensionError, EigenvalueError, SimulationError
from morbench.system import (
    AffineLTISystem,
    SimGrid,
    Trajectory,
    assemble,
    simulate,
    simulate_dual,
    spectral_abscissa,
)


def _scalar(a: float, b: float = 1.0, c: float = 1.0) -> AffineLTISystem:
    return AffineLTISystem(E=[[1.0]], A_terms=([[a]],), B=[[b]], C=[[c]])


def _random_stable(n: int, m: int, seed: int = 0) -> AffineLTISystem:
    rng = np.random.default_rng(seed)
    M = rng.standard_normal((n, n))
    A = -(M @ M.T) / n - np.eye(n)
    return AffineLTISystem(E=np.eye(n), A_terms=(A,), B=rng.standard_normal((n, m)), C=rng.standard_normal((2, n)))


def test_assemble_without_parameters_returns_a0() -> None:
    A0 = np.array([[-1.0, 2.0], [0.0, -3.0]])
    system = AffineLTISystem(E=np.eye(2), A_terms=(A0,), B=np.ones((2, 1)), C=np.ones((1, 2)))
    np.testing.assert_array_equal(assemble(system, ()), A0)


def test_assemble_scales_parameter_terms() -> None:
    system = AffineLTISystem(
        E=np.eye(2), A_terms=(np.zeros((2, 2)), np.eye(2)), B=np.ones((2, 1)), C=np.ones((1, 2))
    )
    np.testing.assert_array_equal(assemble(system, [3.0]), 3.0 * np.eye(2))

    system = AffineLTISystem(
        E=np.eye(2),
        A_terms=(np.diag([-1.0, -2.0]), np.array([[0.0, 1.0], [0.0, 0.0]])),
        B=np.ones((2, 1)),
        C=np.ones((1, 2)),
    )
    np.testing.assert_array_equal(assemble(system, [0.5]), [[-1.0, 0.5], [0.0, -2.0]])


def test_assemble_rejects_wrong_parameter_length() -> None:
    system = AffineLTISystem(
        E=np.eye(2), A_terms=(np.zeros((2, 2)), np.eye(2)), B=np.ones((2, 1)), C=np.ones((1, 2))
    )
    with pytest.raises(DimensionError, match="θ has 2 entries"):
        assemble(system, [1.0, 2.0])


def test_assemble_is_affine_in_theta() -> None:
    rng = np.random.default_rng(3)
    terms = tuple(rng.standard_normal((4, 4)) for _ in range(3))
    system = AffineLTISystem(E=np.eye(4), A_terms=terms, B=np.ones((4, 1)), C=np.ones((1, 4)))
    t1, t2 = np.array([0.5, 2.0]), np.array([1.5, -1.0])
    base = assemble(system, [0.0, 0.0])
    lhs = assemble(system, t1 + t2) - base
    rhs = (assemble(system, t1) - base) + (assemble(system, t2) - base)
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_system_validates_dimensions() -> None:
    with pytest.raises(DimensionError):
        AffineLTISystem(E=np.eye(2), A_terms=(np.eye(3),), B=np.ones((2, 1)), C=np.ones((1, 2)))
    with pytest.raises(DimensionError):
        AffineLTISystem(E=np.eye(2), A_terms=(np.eye(2),), B=np.ones((2, 1)), C=np.ones((1, 3)))


def test_scalar_decay_matches_exponential() -> None:
    system = _scalar(-1.0, b=0.0)
    traj = simulate(system, (), x0=np.array([1.0]), grid=SimGrid(dt=1e-4, steps=10_000))
    assert traj.values.shape == (1, 10_000)
    assert traj.values[0, -1] == pytest.approx(np.exp(-1.0), abs=1e-4)


def test_zero_input_and_state_stay_zero() -> None:
    system = _random_stable(5, 2)
    traj = simulate(system, (), grid=SimGrid(dt=1e-2, steps=50))
    assert np.all(traj.values == 0.0)


def test_step_response_settles_at_one() -> None:
    system = _scalar(-1.0)
    grid = SimGrid.from_horizon(20.0, 1e-3)
    traj = simulate(system, (), u=np.ones((1, grid.steps)), grid=grid)
    assert abs(traj.values[0, -1] - 1.0) < 1e-3

    from_callable = simulate(system, (), u=lambda t: 1.0, grid=grid)
    np.testing.assert_array_equal(from_callable.values, traj.values)


def test_output_capture_applies_c() -> None:
    system = _random_stable(4, 1)
    grid = SimGrid(dt=1e-2, steps=20)
    u = np.ones((1, grid.steps))
    states = simulate(system, (), u=u, grid=grid)
    outputs = simulate(system, (), u=u, grid=grid, capture="output")
    np.testing.assert_allclose(outputs.values, system.C @ states.values)


def test_dual_scalar_impulse() -> None:
    system = AffineLTISystem(E=[[1.0]], A_terms=([[-2.0]],), B=[[1.0]], C=[[3.0]])
    traj = simulate_dual(system, (), z0=np.array([3.0]), grid=SimGrid(dt=1e-4, steps=10_000))
    assert traj.values[0, -1] == pytest.approx(3.0 * np.exp(-2.0), abs=1e-3)


def test_dual_of_symmetric_system_matches_primal() -> None:
    rng = np.random.default_rng(1)
    M = rng.standard_normal((4, 4))
    A = -(M @ M.T) - np.eye(4)
    B = rng.standard_normal((4, 1))
    system = AffineLTISystem(E=np.eye(4), A_terms=(A,), B=B, C=B.T)
    grid = SimGrid(dt=1e-2, steps=30)
    u = rng.standard_normal((1, grid.steps))
    primal = simulate(system, (), u=u, grid=grid)
    dual = simulate_dual(system, (), v=u, grid=grid)
    np.testing.assert_allclose(dual.values, primal.values, rtol=1e-12, atol=1e-14)


def test_simulation_is_linear_in_the_input() -> None:
    system = _random_stable(10, 2, seed=4)
    grid = SimGrid(dt=1e-2, steps=100)
    rng = np.random.default_rng(5)
    u1, u2 = rng.standard_normal((2, grid.steps)), rng.standard_normal((2, grid.steps))
    a, b = 0.7, -1.3
    combined = simulate(system, (), u=a * u1 + b * u2, grid=grid).values
    separate = a * simulate(system, (), u=u1, grid=grid).values + b * simulate(system, (), u=u2, grid=grid).values
    scale = np.max(np.abs(combined))
    np.testing.assert_allclose(combined, separate, rtol=1e-10, atol=1e-10 * scale)


def test_sparse_and_dense_paths_agree() -> None:
    dense = _random_stable(6, 1, seed=7)
    sparse = AffineLTISystem(
        E=sp.identity(6, format="csr"),
        A_terms=(sp.csr_matrix(dense.A_terms[0]),),
        B=dense.B,
        C=dense.C,
    )
    grid = SimGrid(dt=1e-2, steps=40)
    u = np.ones((1, grid.steps))
    a = simulate(dense, (), u=u, grid=grid).values
    b = simulate(sparse, (), u=u, grid=grid, dense_threshold=0).values
    np.testing.assert_allclose(a, b, rtol=1e-10, atol=1e-12)


def test_non_finite_input_is_rejected() -> None:
    system = _scalar(-1.0)
    grid = SimGrid(dt=1e-2, steps=3)
    with pytest.raises(SimulationError, match="non-finite"):
        simulate(system, (), u=np.array([[1.0, np.nan, 1.0]]), grid=grid)
    with pytest.raises(SimulationError, match="non-finite"):
        simulate(system, (), x0=np.array([np.inf]), grid=grid)


def test_singular_step_matrix_is_rejected() -> None:
    # E - dt*A = 1 - 1 = 0
    system = _scalar(1.0)
    with pytest.raises(SimulationError, match="singular"):
        simulate(system, (), grid=SimGrid(dt=1.0, steps=2))


def test_trajectory_checks_column_count() -> None:
    with pytest.raises(DimensionError):
        Trajectory(np.zeros((2, 3)), SimGrid(dt=0.1, steps=4))
    assert SimGrid(dt=0.5, steps=4).horizon == 2.0
    np.testing.assert_allclose(SimGrid(dt=0.5, steps=4).times, [0.5, 1.0, 1.5, 2.0])


def test_spectral_abscissa() -> None:
    A = np.diag([-1.0, -3.0])
    assert spectral_abscissa(np.eye(2), A) == pytest.approx(-1.0)
    assert spectral_abscissa(2.0 * np.eye(2), A) == pytest.approx(-0.5)
    rotation = np.array([[0.0, 1.0], [-1.0, 0.0]])
    assert abs(spectral_abscissa(np.eye(2), rotation)) < 1e-12


def test_spectral_abscissa_rejects_singular_mass_matrix() -> None:
    with pytest.raises(EigenvalueError):
        spectral_abscissa(np.array([[1.0, 0.0], [0.0, 0.0]]), -np.eye(2))
