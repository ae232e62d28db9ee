"""Base class for registered reduction methods."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Literal

from morbench.gramians.empirical import GramianBundle
from morbench.reducers.projections import (
    BalancedRealization,
    ProjectionPair,
    balance_wcwo,
    balance_wx,
)
from morbench.system.types import AffineLTISystem

Flavor = Literal["WC", "WO", "WCWO", "WZ"]


@dataclass(eq=False)
class ReductionInputs:
    """
    Everything a reducer may consume: the (averaged) Gramians, the system and the rank.

    Balanced realizations are computed once per flavor and shared between BT and BG.
    """
    system: AffineLTISystem
    gramians: GramianBundle
    r_max: int
    _balanced: dict[str, BalancedRealization] = field(default_factory=dict, repr=False)

    def balanced(self, flavor: Flavor) -> BalancedRealization:
        if flavor not in self._balanced:
            g = self.gramians
            if flavor == "WZ":
                self._balanced[flavor] = balance_wx(g.wz, self.r_max, self.system)
            else:
                self._balanced[flavor] = balance_wcwo(g.wc, g.wo, self.r_max, self.system, g.wz)
        return self._balanced[flavor]


class Reducer(ABC):
    """
    Abstract base class for reduction methods.

    A reducer turns Gramians into a ProjectionPair of maximal rank; truncation to a
    given order happens later.
    """

    @property
    @abstractmethod
    def method(self) -> str:
        """Method family, e.g. "BT"."""
        pass

    @property
    @abstractmethod
    def flavor(self) -> Flavor:
        """Which Gramians the method consumes."""
        pass

    @property
    def name(self) -> str:
        """Registry key and file-name slug, e.g. "BT-WCWO"."""
        return f"{self.method}-{self.flavor}"

    @property
    def title(self) -> str:
        """Table row label, e.g. "BT(W_C,W_O)"."""
        parts = {"WC": "W_C", "WO": "W_O", "WCWO": "W_C,W_O", "WZ": "W_Z"}
        return f"{self.method}({parts[self.flavor]})"

    @property
    def uses_cross_gramian(self) -> bool:
        return self.flavor == "WZ"

    @abstractmethod
    def build(self, inputs: ReductionInputs) -> ProjectionPair:
        """
        Construct the projection pair.

        Args:
            inputs: Gramians, system and maximal rank.

        Returns:
            ProjectionPair of rank at most inputs.r_max.
        """
        pass
