"""Projection-based reducers: PM, AB, DS, BT and BG, plus the projection step itself."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Literal

import numpy as np
from loguru import logger

from morbench.errors import BalancingError, DimensionError, ReductionError
from morbench.gramians.empirical import GramianSet
from morbench.reducers.decomposition import tsvd
from morbench.system.io import save_system
from morbench.system.types import AffineLTISystem

ProjectionKind = Literal["galerkin", "petrov_galerkin", "oblique"]

HSV_CUTOFF = 1e-14
MAX_CONDITION = 1e12


def _matrix(gramian: GramianSet | np.ndarray) -> np.ndarray:
    if isinstance(gramian, GramianSet):
        return gramian.matrix
    return np.asarray(gramian, dtype=float)


@dataclass(frozen=True, eq=False)
class ProjectionPair:
    """
    Reconstructing map U (N x r) and reducing map V (r x N).

    Truncation to order n keeps the leading n columns of U and rows of V.
    """
    U: np.ndarray
    V: np.ndarray
    kind: ProjectionKind
    order_weights: np.ndarray

    def __post_init__(self) -> None:
        if self.U.ndim != 2 or self.V.shape != (self.U.shape[1], self.U.shape[0]):
            raise DimensionError(f"U {self.U.shape} and V {self.V.shape} do not form a projection pair")
        if self.order_weights.shape != (self.U.shape[1],):
            raise DimensionError(f"{self.order_weights.size} order weights for rank {self.U.shape[1]}")

    @property
    def rank(self) -> int:
        return self.U.shape[1]

    @property
    def N(self) -> int:
        return self.U.shape[0]

    def truncate(self, n: int) -> "ProjectionPair":
        if not 1 <= n <= self.rank:
            raise ReductionError(f"Order {n} outside 1..{self.rank}")
        return ProjectionPair(self.U[:, :n], self.V[:n, :], self.kind, self.order_weights[:n])


@dataclass(frozen=True, eq=False)
class BalancedRealization:
    """Hankel singular values and the balanced input/output maps of a full system."""
    hsv: np.ndarray
    B_bal: np.ndarray
    C_bal: np.ndarray
    projections: ProjectionPair
    WZ_bal: np.ndarray | None = None

    @property
    def rank(self) -> int:
        return self.hsv.size


@dataclass(frozen=True, eq=False)
class ReducedModel:
    """A projected system of order n and where it came from."""
    system: AffineLTISystem
    order: int
    projection: ProjectionPair
    method: str = ""
    flavor: str = ""

    @property
    def label(self) -> str:
        return f"{self.method}-{self.flavor}" if self.flavor else self.method


def pm(gramian: GramianSet | np.ndarray, r_max: int) -> ProjectionPair:
    """Pure (POD-style) Galerkin projection onto the Gramian's dominant singular vectors."""
    U, S, _ = tsvd(_matrix(gramian), r_max)
    return ProjectionPair(U, U.T.copy(), "galerkin", S)


def ab_wcwo(wc: GramianSet | np.ndarray, wo: GramianSet | np.ndarray, r_max: int) -> ProjectionPair:
    """Approximate balancing: trial space from W_C, test space from W_O, not bi-orthogonalized."""
    U_c, S_c, _ = tsvd(_matrix(wc), r_max)
    U_o, _, _ = tsvd(_matrix(wo), r_max)
    r = min(U_c.shape[1], U_o.shape[1])
    return ProjectionPair(U_c[:, :r], U_o[:, :r].T.copy(), "oblique", S_c[:r])


def ab_wx(wz: GramianSet | np.ndarray, r_max: int) -> ProjectionPair:
    """Approximate balancing from the left and right singular vectors of the cross Gramian."""
    U, S, Vh = tsvd(_matrix(wz), r_max)
    return ProjectionPair(U, Vh, "oblique", S)


def ds(
    first: GramianSet | np.ndarray,
    second: GramianSet | np.ndarray | None = None,
    r_max: int = 100,
) -> ProjectionPair:
    """
    Dominant subspaces: conjoin weighted singular vectors, orthogonalize by SVD.

    With a cross Gramian (kind WX/WZ, or `second` omitted for a plain matrix) the left
    and right singular vectors of that one Gramian are conjoined; otherwise those of
    W_C and W_O.
    """
    cross = second is None
    if isinstance(first, GramianSet) and first.kind in ("WX", "WZ"):
        cross = True
    if cross:
        U, S, Vh = tsvd(_matrix(first), r_max)
        blocks = np.hstack([U * S, Vh.T * S])
    else:
        U_c, S_c, _ = tsvd(_matrix(first), r_max)
        U_o, S_o, _ = tsvd(_matrix(second), r_max)
        blocks = np.hstack([U_c * S_c, U_o * S_o])
    Q, W, _ = tsvd(blocks, r_max)
    return ProjectionPair(Q, Q.T.copy(), "galerkin", W)


def _io_maps(system: AffineLTISystem | None, U: np.ndarray, V: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if system is None:
        return np.zeros((V.shape[0], 0)), np.zeros((0, U.shape[1]))
    return V @ system.B, system.C @ U


def balance_wcwo(
    wc: GramianSet | np.ndarray,
    wo: GramianSet | np.ndarray,
    r_max: int,
    system: AffineLTISystem | None = None,
    wz: GramianSet | np.ndarray | None = None,
) -> BalancedRealization:
    """
    Square-root balancing from truncated-SVD factors W_C ≈ Z_C Z_C^T, W_O ≈ Z_O Z_O^T.

    Hankel singular values below 1e-14 * σ₁ are dropped; the achieved rank can thus
    fall short of r_max.
    """
    U_c, S_c, _ = tsvd(_matrix(wc), r_max)
    U_o, S_o, _ = tsvd(_matrix(wo), r_max)
    Z_c = U_c * np.sqrt(S_c)
    Z_o = U_o * np.sqrt(S_o)

    U_h, hsv, Vh_h = tsvd(Z_o.T @ Z_c, r_max)
    if hsv.size == 0 or not hsv[0] > 0:
        raise BalancingError("Gramian product is zero; nothing to balance", achieved_rank=0)
    keep = int(np.count_nonzero(hsv > HSV_CUTOFF * hsv[0]))
    if keep < min(r_max, hsv.size):
        logger.warning(f"Balancing: rank collapsed, achieved rank {keep} of {min(r_max, hsv.size)}")
    hsv, U_h, Vh_h = hsv[:keep], U_h[:, :keep], Vh_h[:keep, :]

    inv_root = 1.0 / np.sqrt(hsv)
    U = (Z_c @ Vh_h.T) * inv_root
    V = inv_root[:, None] * (U_h.T @ Z_o.T)
    B_bal, C_bal = _io_maps(system, U, V)
    WZ_bal = None if wz is None else V @ _matrix(wz) @ U
    pair = ProjectionPair(U, V, "petrov_galerkin", hsv)
    return BalancedRealization(hsv, B_bal, C_bal, pair, WZ_bal)


def balance_wx(
    wz: GramianSet | np.ndarray,
    r_max: int,
    system: AffineLTISystem | None = None,
    allow_rank_drop: bool = True,
) -> BalancedRealization:
    """
    Cross-Gramian balancing with a bi-orthogonal correction of the test space.

    With W_Z ≈ U_sv S Vh, the trial basis is U0 = U_sv S^½ and the test basis
    V = (V0 U0)^-1 V0 for V0 = S^½ Vh, so V U0 = I. The inverse is formed as
    S^-½ (Vh U_sv)^-1 S^-½ V0 = S^-½ (Vh U_sv)^-1 Vh.

    The 1e12 condition guard is applied to the unscaled coupling Vh U_sv, not to
    V0 U0 = S^½ (Vh U_sv) S^½, so the spread of the singular values alone never
    trips it. A failing guard does not raise by default: the rank is reduced to the
    largest acceptable leading block with a warning. BalancingError (carrying the
    achieved rank) is raised only when no block is acceptable or allow_rank_drop is
    False.
    """
    W = _matrix(wz)
    U_sv, S, Vh = tsvd(W, r_max)
    if S.size == 0 or not S[0] > 0:
        raise BalancingError("Cross Gramian is zero; nothing to balance", achieved_rank=0)
    keep = int(np.count_nonzero(S > HSV_CUTOFF * S[0]))

    rank = keep
    while rank > 0 and not np.linalg.cond(Vh[:rank] @ U_sv[:, :rank]) <= MAX_CONDITION:
        rank -= 1
    if rank < keep:
        if not allow_rank_drop or rank == 0:
            raise BalancingError(
                f"Bi-orthogonal correction is ill-conditioned beyond rank {rank}",
                achieved_rank=rank,
            )
        logger.warning(f"Cross-Gramian balancing: coupling ill-conditioned, rank reduced {keep} -> {rank}")

    U_sv, S, Vh = U_sv[:, :rank], S[:rank], Vh[:rank]
    root = np.sqrt(S)
    U = U_sv * root
    V = (1.0 / root)[:, None] * np.linalg.solve(Vh @ U_sv, Vh)
    B_bal, C_bal = _io_maps(system, U, V)
    pair = ProjectionPair(U, V, "petrov_galerkin", S)
    return BalancedRealization(S, B_bal, C_bal, pair, V @ W @ U)


def bt(bal: BalancedRealization, n: int | None = None) -> ProjectionPair:
    """Balanced truncation: keep the modes of the n largest Hankel singular values."""
    pair = bal.projections
    return pair if n is None else pair.truncate(n)


def balanced_gains(bal: BalancedRealization) -> np.ndarray:
    """Per-mode gains d_k = ||ĉ_k||² σ_k."""
    return np.sum(bal.C_bal**2, axis=0) * bal.hsv


def bg(bal: BalancedRealization, n: int | None = None) -> ProjectionPair:
    """Balanced gains: balanced modes reordered by descending d_k (ties by σ, then index)."""
    d = balanced_gains(bal)
    order = np.lexsort((np.arange(d.size), -bal.hsv, -d))
    pair = bal.projections
    reordered = ProjectionPair(pair.U[:, order], pair.V[order, :], pair.kind, d[order])
    return reordered if n is None else reordered.truncate(n)


def reduce(
    system: AffineLTISystem,
    pair: ProjectionPair,
    n: int,
    method: str = "",
    flavor: str = "",
) -> ReducedModel:
    """Project every system matrix: E~ = V E U, A~_p = V A_p U, B~ = V B, C~ = C U."""
    if pair.N != system.N:
        raise ReductionError(f"Projection is for N={pair.N}, system has N={system.N}")
    if n < 1:
        raise ReductionError(f"Reduced order must be >= 1, got {n}")
    if n > pair.rank:
        raise ReductionError(f"Order {n} exceeds projection rank {pair.rank}")
    trunc = pair.truncate(n)
    U, V = trunc.U, trunc.V

    def project(matrix) -> np.ndarray:
        return np.asarray(V @ (matrix @ U), dtype=float)

    reduced = AffineLTISystem(
        E=project(system.E),
        A_terms=tuple(project(a) for a in system.A_terms),
        B=V @ system.B,
        C=system.C @ U,
        param_bounds=system.param_bounds,
        name=f"{system.name}:{method}-{flavor}:{n}" if method else f"{system.name}:rom{n}",
    )
    return ReducedModel(reduced, n, trunc, method, flavor)


def save_reduced_model(model: ReducedModel, directory: Path) -> Path:
    """Export a reduced model in the same Matrix Market layout as full systems."""
    return save_system(model.system, directory)
