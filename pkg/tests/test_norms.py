import numpy as np
import pytest

from morbench.errors import NormError
from morbench.norms import (
    EPS_MACH,
    ErrorContext,
    NormId,
    discarded_basis,
    evaluate,
    full_order_normalizers,
    h2_approx,
    hankel_norm,
    hinf_approx,
    hsh_approx,
    induced_dual,
    induced_primal,
    l0_approx,
    l1_signal,
    l2_signal,
    linf_signal,
    parametric_compose,
    relative_error,
)
from morbench.reducers import BalancedRealization, ProjectionPair


def _realization(hsv, B=None, C=None, WZ=None, U=None) -> BalancedRealization:
    hsv = np.asarray(hsv, dtype=float)
    r = hsv.size
    B = np.ones((r, 1)) if B is None else np.asarray(B, dtype=float)
    C = np.ones((1, r)) if C is None else np.asarray(C, dtype=float)
    U = np.eye(r) if U is None else U
    pair = ProjectionPair(U, U.T.copy(), "petrov_galerkin", hsv)
    return BalancedRealization(hsv, B, C, pair, None if WZ is None else np.asarray(WZ, dtype=float))


def _context(realization: BalancedRealization, n: int, N: int | None = None, **kwargs) -> ErrorContext:
    y = kwargs.pop("y", np.ones((1, 4)))
    return ErrorContext(y, kwargs.pop("y_red", None), kwargs.pop("dt", 0.25), realization, n, N or realization.rank, **kwargs)


# ---------------------------------------------------------------------------
# Signal norms
# ---------------------------------------------------------------------------


def test_l0_is_geometric_mean_of_errors() -> None:
    assert l0_approx(np.full((1, 5), 3.0)) == pytest.approx(3.0)
    assert l0_approx(np.array([[1.0, 4.0]])) == pytest.approx(2.0)
    assert l0_approx(np.ones((2, 3)), np.ones((2, 3))) == pytest.approx(1e-300)


def test_constant_error_signal_norms() -> None:
    y = np.zeros((1, 100))
    y_red = np.full((1, 100), -0.5)
    assert l1_signal(y, y_red, dt=0.01) == pytest.approx(0.5)
    assert l2_signal(y, y_red, dt=0.01) == pytest.approx(0.5)
    assert linf_signal(y, y_red) == pytest.approx(0.5)


def test_impulse_signal_norms() -> None:
    y = np.array([[1.0, 0.0, 0.0, 0.0]])
    assert l2_signal(y, dt=0.25) == pytest.approx(0.5)
    assert l1_signal(y, dt=0.25) == pytest.approx(0.25)
    assert linf_signal(np.array([[-3.0, 2.0]])) == 3.0


def test_signal_norms_reject_mismatched_shapes() -> None:
    with pytest.raises(ValueError):
        l2_signal(np.ones((2, 3)), np.ones((3, 2)))


# ---------------------------------------------------------------------------
# Gramian-based norms
# ---------------------------------------------------------------------------


def test_hankel_norm_is_next_singular_value() -> None:
    bal = _realization([2.0, 1.0, 0.5])
    assert hankel_norm(_context(bal, 0)) == pytest.approx(2.0)
    assert hankel_norm(_context(bal, 1)) == pytest.approx(1.0)
    assert hankel_norm(_context(bal, 3)) == 0.0


def test_hinf_and_hsh_multipliers() -> None:
    bal = _realization([1.0, 0.1, 0.05])
    ctx = _context(bal, 1, N=3)
    assert hinf_approx(ctx) == pytest.approx(0.4)
    assert hsh_approx(ctx) == pytest.approx(np.sqrt(2.0) * 0.1)


def test_rank_limits_multiplier() -> None:
    bal = _realization([1.0, 0.1, 0.05])
    assert _context(bal, 1, N=100).discarded_count() == 2
    assert _context(bal, 3, N=100).discarded_count() == 0


def test_h2_of_scalar_realization() -> None:
    bal = _realization([0.5], WZ=[[0.5]])
    assert h2_approx(_context(bal, 0)) == pytest.approx(np.sqrt(0.5))
    assert h2_approx(_context(bal, 1)) == 0.0


def test_h2_needs_cross_gramian() -> None:
    with pytest.raises(NormError, match="cross Gramian"):
        h2_approx(_context(_realization([1.0, 0.5]), 1))


def test_induced_norms_of_siso_realization() -> None:
    b = np.array([[2.0], [1.0], [3.0]])
    c = np.array([[1.0, 0.5, 2.0]])
    bal = _realization([4.0, 1.0, 0.25], B=b, C=c)
    ctx = _context(bal, 1)
    assert induced_primal(ctx) == pytest.approx(np.sqrt(1.0 * 1.0 + 9.0 * 0.25))
    assert induced_dual(ctx) == pytest.approx(np.sqrt(0.25 * 1.0 + 4.0 * 0.25))
    assert induced_primal(_context(bal, 3)) == 0.0
    assert induced_dual(_context(bal, 3)) == 0.0


def test_discarded_basis_for_balanced_truncation_matches_trailing_modes() -> None:
    hsv = [3.0, 2.0, 1.0, 0.5]
    bal = _realization(hsv, B=np.arange(1.0, 5.0)[:, None], C=np.ones((1, 4)), WZ=np.diag(hsv))
    for n in range(0, 5):
        U_n = bal.projections.U[:, :n] if n else None
        trailing = _context(bal, n)
        aware = _context(bal, n, discarded=discarded_basis(bal, U_n))
        for norm in (NormId.HANKEL, NormId.HINF, NormId.HSH, NormId.H2, NormId.IND_PRIMAL, NormId.IND_DUAL):
            assert evaluate(aware, norm) == pytest.approx(evaluate(trailing, norm), abs=1e-12), (n, norm)


def test_hsv_norms_decrease_for_nested_trial_spaces() -> None:
    rng = np.random.default_rng(3)
    hsv = np.array([5.0, 2.0, 1.0, 0.4, 0.1, 0.01])
    bal = _realization(hsv, B=rng.standard_normal((6, 2)), C=rng.standard_normal((2, 6)))
    Q, _ = np.linalg.qr(rng.standard_normal((6, 6)))
    previous = {NormId.HANKEL: np.inf, NormId.HINF: np.inf, NormId.HSH: np.inf}
    for n in range(0, 7):
        ctx = _context(bal, n, discarded=discarded_basis(bal, Q[:, :n]))
        for norm in previous:
            value = evaluate(ctx, norm)
            assert value <= previous[norm] + 1e-12
            previous[norm] = value
    assert previous[NormId.HANKEL] == pytest.approx(0.0, abs=1e-12)


# ---------------------------------------------------------------------------
# Relative errors and parametric composition
# ---------------------------------------------------------------------------


def test_relative_error_of_exact_reproduction_is_machine_epsilon() -> None:
    y = np.array([[1.0, 2.0, 3.0]])
    ctx = _context(_realization([1.0]), 1, y=y, y_red=y.copy())
    for norm in (NormId.L1, NormId.L2, NormId.LINF, NormId.L0):
        assert relative_error(ctx, norm) == EPS_MACH


def test_relative_error_of_unstable_rom_is_one() -> None:
    y = np.array([[1.0, 2.0, 3.0]])
    ctx = _context(_realization([1.0, 0.5]), 1, y=y, y_red=y.copy(), stable=False)
    assert relative_error(ctx, NormId.L2) == 1.0
    assert relative_error(ctx, NormId.HANKEL) == 1.0


def test_relative_error_of_diverged_output_is_one() -> None:
    y = np.array([[1.0, 2.0, 3.0]])
    ctx = _context(_realization([1.0]), 1, y=y, y_red=np.array([[1.0, np.inf, 3.0]]))
    assert relative_error(ctx, NormId.L2) == 1.0


def test_relative_hankel_error() -> None:
    ctx = _context(_realization([2.0, 1.0, 0.5]), 1)
    assert relative_error(ctx, NormId.HANKEL) == pytest.approx(0.5)


def test_relative_error_rejects_zero_normalizer() -> None:
    ctx = _context(_realization([1.0]), 1, y=np.zeros((1, 3)), y_red=np.zeros((1, 3)))
    with pytest.raises(NormError, match="normalizer"):
        relative_error(ctx, NormId.L2)


def test_full_order_normalizers() -> None:
    y = np.array([[1.0, 0.0, 0.0, 0.0]])
    scales = full_order_normalizers(y, 0.25, _realization([2.0, 1.0], WZ=np.diag([2.0, 1.0])), 2)
    assert scales[NormId.L2] == pytest.approx(0.5)
    assert scales[NormId.HANKEL] == pytest.approx(2.0)
    assert scales[NormId.HINF] == pytest.approx(8.0)
    assert set(scales) == set(NormId)


def test_parametric_composition() -> None:
    assert parametric_compose([0.1, 0.2], "L1") == pytest.approx(0.3)
    assert parametric_compose([0.3, 0.4], "L2") == pytest.approx(0.5)
    assert parametric_compose([0.1, 0.7, 0.2], "Linf") == pytest.approx(0.7)
    with pytest.raises(NormError):
        parametric_compose([], "L2")
    with pytest.raises(ValueError):
        parametric_compose([1.0], "L3")


def test_composition_ordering() -> None:
    values = np.random.default_rng(4).random(6)
    linf = parametric_compose(values, "Linf")
    l2 = parametric_compose(values, "L2")
    l1 = parametric_compose(values, "L1")
    assert linf <= l2 <= l1


def test_normalized_composition_stays_relative() -> None:
    errors = [0.05, 0.3]
    scales = [1.0, 3.0]
    assert parametric_compose(errors, "L1", scales) == pytest.approx(0.35 / 4.0)
    assert parametric_compose(errors, "Linf", scales) == pytest.approx(0.1)
    with pytest.raises(NormError):
        parametric_compose(errors, "L2", [1.0, 0.0])
