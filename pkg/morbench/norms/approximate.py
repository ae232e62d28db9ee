"""Approximate signal, system and induced norms of the reduction error."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Literal, Sequence

import numpy as np
import scipy.linalg as la

from morbench.errors import DimensionError, NormError
from morbench.reducers.projections import BalancedRealization

L0_FLOOR = 1e-300
EPS_MACH = float(np.finfo(np.float64).eps)

ComposeMode = Literal["L1", "L2", "Linf"]
COMPOSE_MODES: tuple[ComposeMode, ...] = ("L1", "L2", "Linf")


class NormId(str, Enum):
    """Error norms in table-column order."""
    L0 = "L0"
    L1 = "L1"
    L2 = "L2"
    LINF = "Linf"
    H2 = "H2"
    HINF = "Hinf"
    HSH = "HSH"
    HANKEL = "Hankel"
    IND_PRIMAL = "IndPrimal"
    IND_DUAL = "IndDual"

    @property
    def is_signal(self) -> bool:
        return self in SIGNAL_NORMS


SIGNAL_NORMS = frozenset({NormId.L0, NormId.L1, NormId.L2, NormId.LINF})


def _error_vector(y: np.ndarray, y_red: np.ndarray | None) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if y.size == 0:
        raise NormError("Empty trajectory")
    if y_red is None:
        return y.ravel()
    y_red = np.asarray(y_red, dtype=float)
    if y_red.shape != y.shape:
        raise DimensionError(f"Reduced output {y_red.shape} does not match full output {y.shape}")
    return (y - y_red).ravel()


def l0_approx(y: np.ndarray, y_red: np.ndarray | None = None) -> float:
    """Geometric mean of the entrywise absolute error (log-space, entries floored at 1e-300)."""
    e = np.maximum(np.abs(_error_vector(y, y_red)), L0_FLOOR)
    return float(np.exp(np.mean(np.log(e))))


def l1_signal(y: np.ndarray, y_red: np.ndarray | None = None, dt: float = 1.0) -> float:
    return float(dt * np.sum(np.abs(_error_vector(y, y_red))))


def l2_signal(y: np.ndarray, y_red: np.ndarray | None = None, dt: float = 1.0) -> float:
    return float(np.sqrt(dt) * np.linalg.norm(_error_vector(y, y_red)))


def linf_signal(y: np.ndarray, y_red: np.ndarray | None = None) -> float:
    return float(np.max(np.abs(_error_vector(y, y_red))))


def discarded_basis(realization: BalancedRealization, U_n: np.ndarray | None) -> np.ndarray:
    """
    Orthonormal basis (r x k) of the balanced coordinates a ROM does not capture.

    The ROM trial basis is mapped into balanced coordinates; the orthogonal complement
    of its span is returned. None stands for the empty trial space (n = 0).
    """
    r = realization.rank
    if U_n is None or U_n.shape[1] == 0:
        return np.eye(r)
    captured = realization.projections.V @ U_n
    return la.null_space(captured.T)


@dataclass(eq=False)
class ErrorContext:
    """
    Inputs for evaluating every norm of one ROM at one parameter.

    `discarded` is an r x k orthonormal basis of the discarded balanced coordinates;
    None means balanced-truncation ordering, i.e. the trailing r - n modes.
    """
    y: np.ndarray
    y_red: np.ndarray | None
    dt: float
    realization: BalancedRealization
    n: int
    N: int
    discarded: np.ndarray | None = None
    stable: bool = True
    normalizers: dict[NormId, float] | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.y_red is not None and np.shape(self.y_red) != np.shape(self.y):
            raise DimensionError(f"y_red {np.shape(self.y_red)} and y {np.shape(self.y)} differ")
        if self.n < 0:
            raise ValueError(f"Reduced order must be >= 0, got {self.n}")

    @property
    def n_eff(self) -> int:
        return min(self.N, self.realization.rank)

    def basis(self) -> np.ndarray:
        """Discarded basis, materialized (trailing identity block when unset)."""
        if self.discarded is not None:
            return self.discarded
        r = self.realization.rank
        return np.eye(r)[:, min(self.n, r):]

    def discarded_count(self) -> int:
        """Multiplier N_eff - n, with n the number of captured balanced directions."""
        if self.discarded is None:
            return max(self.n_eff - self.n, 0)
        k = self.basis().shape[1]
        captured = self.realization.rank - k
        return max(self.n_eff - captured, 0) if k else 0

    def hsv22(self) -> np.ndarray:
        """Compression of diag(σ) onto the discarded coordinates."""
        P = self.basis()
        if self.discarded is None:
            return np.diag(self.realization.hsv[min(self.n, self.realization.rank):])
        return P.T @ (self.realization.hsv[:, None] * P)


def _lambda_max(S: np.ndarray) -> float:
    if S.size == 0:
        return 0.0
    return float(max(np.max(la.eigvalsh(0.5 * (S + S.T))), 0.0))


def hankel_norm(ctx: ErrorContext) -> float:
    """σ_{n+1}, or 0 when nothing is discarded."""
    return _lambda_max(ctx.hsv22())


def hinf_approx(ctx: ErrorContext) -> float:
    """2 (N_eff - n) σ_{n+1}."""
    return 2.0 * ctx.discarded_count() * hankel_norm(ctx)


def hsh_approx(ctx: ErrorContext) -> float:
    """√(N_eff - n) σ_{n+1}."""
    return float(np.sqrt(ctx.discarded_count())) * hankel_norm(ctx)


def h2_approx(ctx: ErrorContext) -> float:
    """√|C̄₂ W_Z,22 B̄₂| with the input/output-averaged balanced maps."""
    bal = ctx.realization
    if bal.WZ_bal is None:
        raise NormError("Balanced realization carries no cross Gramian")
    P = ctx.basis()
    if P.shape[1] == 0:
        return 0.0
    b = P.T @ bal.B_bal.sum(axis=1)
    c = bal.C_bal.sum(axis=0) @ P
    value = c @ (P.T @ bal.WZ_bal @ P) @ b
    return float(np.sqrt(abs(value)))


def induced_primal(ctx: ErrorContext) -> float:
    """√λ_max(B̂₂^T W_O,22 B̂₂) with W_O,22 the compressed diag(σ)."""
    P = ctx.basis()
    if P.shape[1] == 0:
        return 0.0
    B2 = P.T @ ctx.realization.B_bal
    return float(np.sqrt(_lambda_max(B2.T @ ctx.hsv22() @ B2)))


def induced_dual(ctx: ErrorContext) -> float:
    """√λ_max(Ĉ₂ W_C,22 Ĉ₂^T) with W_C,22 the compressed diag(σ)."""
    P = ctx.basis()
    if P.shape[1] == 0:
        return 0.0
    C2 = ctx.realization.C_bal @ P
    return float(np.sqrt(_lambda_max(C2 @ ctx.hsv22() @ C2.T)))


def evaluate(ctx: ErrorContext, norm: NormId) -> float:
    """Absolute value of one norm for the context's ROM."""
    norm = NormId(norm)
    if norm is NormId.L0:
        return l0_approx(ctx.y, ctx.y_red)
    if norm is NormId.L1:
        return l1_signal(ctx.y, ctx.y_red, ctx.dt)
    if norm is NormId.L2:
        return l2_signal(ctx.y, ctx.y_red, ctx.dt)
    if norm is NormId.LINF:
        return linf_signal(ctx.y, ctx.y_red)
    if norm is NormId.H2:
        return h2_approx(ctx)
    if norm is NormId.HINF:
        return hinf_approx(ctx)
    if norm is NormId.HSH:
        return hsh_approx(ctx)
    if norm is NormId.HANKEL:
        return hankel_norm(ctx)
    if norm is NormId.IND_PRIMAL:
        return induced_primal(ctx)
    return induced_dual(ctx)


def full_order_normalizers(
    y: np.ndarray,
    dt: float,
    realization: BalancedRealization,
    N: int,
    norms: Sequence[NormId] = tuple(NormId),
) -> dict[NormId, float]:
    """Norm of the full output (signal norms) and the n = 0 value (Gramian-based norms)."""
    base = ErrorContext(y, None, dt, realization, 0, N)
    return {NormId(k): evaluate(base, NormId(k)) for k in norms}


def relative_error(ctx: ErrorContext, norm: NormId, eps_mach: float = EPS_MACH) -> float:
    """
    Relative error in (0, 1]: the norm divided by its full-order normalizer.

    Unstable ROMs and diverged reduced outputs give 1.
    """
    norm = NormId(norm)
    if not ctx.stable:
        return 1.0
    if norm.is_signal and (ctx.y_red is None or not np.all(np.isfinite(ctx.y_red))):
        return 1.0
    if ctx.normalizers is None:
        ctx.normalizers = {}
    scale = ctx.normalizers.get(norm)
    if scale is None:
        scale = full_order_normalizers(ctx.y, ctx.dt, ctx.realization, ctx.N, (norm,))[norm]
        ctx.normalizers[norm] = scale
    if not scale > 0:
        raise NormError(f"Full-order {norm.value} normalizer is zero")
    value = evaluate(ctx, norm) / scale
    if not np.isfinite(value):
        return 1.0
    return float(min(max(value, eps_mach), 1.0))


def parametric_compose(
    values: Sequence[float],
    mode: ComposeMode,
    normalizers: Sequence[float] | None = None,
) -> float:
    """
    Compose per-parameter errors by sum (L1), root-sum-square (L2) or max (Linf).

    With normalizers, L1 and L2 divide by the identically composed normalizers and Linf
    takes the largest per-parameter ratio, so relative errors stay in (0, 1].
    """
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise NormError("No values to compose")
    if normalizers is None:
        if mode == "L1":
            return float(np.sum(v))
        if mode == "L2":
            return float(np.sqrt(np.sum(v**2)))
        if mode == "Linf":
            return float(np.max(v))
        raise ValueError(f"Unknown composition mode {mode!r}")

    s = np.asarray(normalizers, dtype=float)
    if s.shape != v.shape:
        raise DimensionError(f"{s.size} normalizers for {v.size} values")
    if np.any(s <= 0):
        raise NormError("Normalizers must be positive")
    if mode == "Linf":
        return float(np.max(v / s))
    return parametric_compose(v, mode) / parametric_compose(s, mode)
