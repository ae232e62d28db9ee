"""Approximate error norms and their parametric composition."""

from morbench.norms.approximate import (
    COMPOSE_MODES,
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

__all__ = [
    "COMPOSE_MODES",
    "EPS_MACH",
    "ErrorContext",
    "NormId",
    "discarded_basis",
    "evaluate",
    "full_order_normalizers",
    "h2_approx",
    "hankel_norm",
    "hinf_approx",
    "hsh_approx",
    "induced_dual",
    "induced_primal",
    "l0_approx",
    "l1_signal",
    "l2_signal",
    "linf_signal",
    "parametric_compose",
    "relative_error",
]
