"""Truncated singular value decomposition with a fixed sign convention."""

import numpy as np
import scipy.linalg as la
from loguru import logger

from morbench.errors import DecompositionError


def tsvd(matrix: np.ndarray, r_max: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Rank-r_max truncated SVD: matrix ≈ U @ diag(S) @ Vh.

    The largest-magnitude entry of every left singular vector is made nonnegative
    (the matching row of Vh flips with it), so results are reproducible.

    Args:
        matrix: Dense 2-D array.
        r_max: Maximum rank kept (clipped to min(matrix.shape)).

    Returns:
        U (rows x r), S (r,) nonincreasing, Vh (r x cols).
    """
    if r_max < 1:
        raise ValueError(f"r_max must be >= 1, got {r_max}")
    A = np.asarray(matrix, dtype=float)
    if not np.all(np.isfinite(A)):
        raise DecompositionError("Matrix contains non-finite entries")
    try:
        U, S, Vh = la.svd(A, full_matrices=False, check_finite=False)
    except la.LinAlgError:
        logger.debug("SVD (gesdd) did not converge, retrying with gesvd")
        try:
            U, S, Vh = la.svd(A, full_matrices=False, check_finite=False, lapack_driver="gesvd")
        except la.LinAlgError as e:
            raise DecompositionError(f"SVD did not converge: {e}") from e

    r = min(r_max, S.size)
    U, S, Vh = U[:, :r], S[:r], Vh[:r, :]
    pivots = np.argmax(np.abs(U), axis=0)
    signs = np.where(U[pivots, np.arange(r)] < 0, -1.0, 1.0)
    return U * signs, S, Vh * signs[:, None]
