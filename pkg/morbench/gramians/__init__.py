"""Empirical Gramians."""

from morbench.gramians.empirical import (
    GramianBundle,
    GramianSet,
    empirical_gramians,
    empirical_wc,
    empirical_wo,
    empirical_wx,
    empirical_wz,
    parametric_average,
    save_gramian,
)

__all__ = [
    "GramianBundle",
    "GramianSet",
    "empirical_gramians",
    "empirical_wc",
    "empirical_wo",
    "empirical_wx",
    "empirical_wz",
    "parametric_average",
    "save_gramian",
]
