"""Reducer registry for selecting and building methods by name."""

from loguru import logger

from morbench.errors import MorbenchError, ReductionError
from morbench.reducers.base import ReductionInputs, Reducer
from morbench.reducers.methods import (
    ApproximateBalancingReducer,
    BalancedGainsReducer,
    BalancedTruncationReducer,
    DominantSubspaceReducer,
    PodReducer,
)
from morbench.reducers.projections import ProjectionPair


class ReducerRegistry:
    """
    Registry for reduction methods.

    Keeps registration order, which is the row order of the score tables.
    """

    def __init__(self):
        self._reducers: dict[str, Reducer] = {}

    def register(self, reducer: Reducer) -> None:
        """Register a reducer."""
        self._reducers[reducer.name] = reducer

    def unregister(self, name: str) -> None:
        """Unregister a reducer by name."""
        self._reducers.pop(name, None)

    def get(self, name: str) -> Reducer | None:
        """Get a reducer by name."""
        return self._reducers.get(name)

    def has(self, name: str) -> bool:
        """Check if a reducer is registered."""
        return name in self._reducers

    def build(self, name: str, inputs: ReductionInputs) -> ProjectionPair:
        """
        Build one method's projection pair.

        Raises:
            ReductionError: If the method is not registered.
        """
        reducer = self._reducers.get(name)
        if not reducer:
            raise ReductionError(f"Reducer '{name}' not found; registered: {self.names}")
        return reducer.build(inputs)

    def build_all(
        self, inputs: ReductionInputs, names: list[str] | None = None
    ) -> dict[str, ProjectionPair | MorbenchError]:
        """
        Build several methods, collecting failures instead of raising.

        Returns:
            Mapping name -> pair or the error that prevented it, in registry order.
        """
        wanted = self.names if names is None else [n for n in self.names if n in names]
        results: dict[str, ProjectionPair | MorbenchError] = {}
        for name in wanted:
            try:
                results[name] = self.build(name, inputs)
                logger.debug(f"Reducer {name}: rank {results[name].rank}")
            except MorbenchError as e:
                logger.warning(f"Reducer {name} failed: {e}")
                results[name] = e
        return results

    @property
    def names(self) -> list[str]:
        """Get list of registered reducer names."""
        return list(self._reducers.keys())

    def __len__(self) -> int:
        return len(self._reducers)

    def __contains__(self, name: str) -> bool:
        return name in self._reducers


def default_registry() -> ReducerRegistry:
    """All ten method/flavor combinations in table order."""
    registry = ReducerRegistry()
    for reducer in (
        PodReducer("WC"),
        PodReducer("WO"),
        ApproximateBalancingReducer("WCWO"),
        ApproximateBalancingReducer("WZ"),
        DominantSubspaceReducer("WCWO"),
        DominantSubspaceReducer("WZ"),
        BalancedTruncationReducer("WCWO"),
        BalancedTruncationReducer("WZ"),
        BalancedGainsReducer("WCWO"),
        BalancedGainsReducer("WZ"),
    ):
        registry.register(reducer)
    return registry
