"""The five projection methods, each in its Gramian flavors."""

from morbench.reducers.base import Flavor, ReductionInputs, Reducer
from morbench.reducers.projections import ProjectionPair, ab_wcwo, ab_wx, bg, bt, ds, pm


class _FlavoredReducer(Reducer):
    method_name: str = ""

    def __init__(self, flavor: Flavor):
        self._flavor = flavor

    @property
    def method(self) -> str:
        return self.method_name

    @property
    def flavor(self) -> Flavor:
        return self._flavor


class PodReducer(_FlavoredReducer):
    """Pure method: Galerkin projection onto W_C (POD) or W_O (adjoint POD)."""
    method_name = "PM"

    def __init__(self, flavor: Flavor):
        if flavor not in ("WC", "WO"):
            raise ValueError(f"PM takes W_C or W_O, not {flavor}")
        super().__init__(flavor)

    def build(self, inputs: ReductionInputs) -> ProjectionPair:
        g = inputs.gramians
        return pm(g.wc if self.flavor == "WC" else g.wo, inputs.r_max)


class ApproximateBalancingReducer(_FlavoredReducer):
    """Approximate balancing (modified POD) with oblique projections."""
    method_name = "AB"

    def build(self, inputs: ReductionInputs) -> ProjectionPair:
        g = inputs.gramians
        if self.uses_cross_gramian:
            return ab_wx(g.wz, inputs.r_max)
        return ab_wcwo(g.wc, g.wo, inputs.r_max)


class DominantSubspaceReducer(_FlavoredReducer):
    """Dominant subspaces: orthogonalized union of weighted singular vectors."""
    method_name = "DS"

    def build(self, inputs: ReductionInputs) -> ProjectionPair:
        g = inputs.gramians
        if self.uses_cross_gramian:
            return ds(g.wz, r_max=inputs.r_max)
        return ds(g.wc, g.wo, r_max=inputs.r_max)


class BalancedTruncationReducer(_FlavoredReducer):
    """Balanced truncation in Hankel singular value order."""
    method_name = "BT"

    def build(self, inputs: ReductionInputs) -> ProjectionPair:
        return bt(inputs.balanced(self.flavor))


class BalancedGainsReducer(_FlavoredReducer):
    """Balanced gains: balanced modes in output-gain order."""
    method_name = "BG"

    def build(self, inputs: ReductionInputs) -> ProjectionPair:
        return bg(inputs.balanced(self.flavor))
