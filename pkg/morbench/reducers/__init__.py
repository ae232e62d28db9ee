"""Projection-based model reduction methods."""

from morbench.reducers.base import ReductionInputs, Reducer
from morbench.reducers.decomposition import tsvd
from morbench.reducers.projections import (
    BalancedRealization,
    ProjectionPair,
    ReducedModel,
    ab_wcwo,
    ab_wx,
    balance_wcwo,
    balance_wx,
    balanced_gains,
    bg,
    bt,
    ds,
    pm,
    reduce,
    save_reduced_model,
)
from morbench.reducers.registry import ReducerRegistry, default_registry

__all__ = [
    "BalancedRealization",
    "ProjectionPair",
    "ReducedModel",
    "ReducerRegistry",
    "ReductionInputs",
    "Reducer",
    "ab_wcwo",
    "ab_wx",
    "balance_wcwo",
    "balance_wx",
    "balanced_gains",
    "bg",
    "bt",
    "default_registry",
    "ds",
    "pm",
    "reduce",
    "save_reduced_model",
    "tsvd",
]
