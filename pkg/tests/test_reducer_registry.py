import numpy as np
import pytest

from morbench.config.schema import METHOD_LABELS
from morbench.errors import BalancingError, ReductionError
from morbench.gramians import empirical_gramians
from morbench.reducers import ProjectionPair, ReducerRegistry, ReductionInputs, Reducer, default_registry
from morbench.reducers.methods import BalancedTruncationReducer, PodReducer
from morbench.system import AffineLTISystem, SimGrid


class BrokenReducer(Reducer):
    @property
    def method(self) -> str:
        return "XX"

    @property
    def flavor(self) -> str:
        return "WZ"

    def build(self, inputs: ReductionInputs) -> ProjectionPair:
        raise BalancingError("coupling singular", achieved_rank=0)


def _inputs(r_max: int = 3) -> ReductionInputs:
    A = np.diag([-1.0, -2.0, -3.0, -4.0])
    system = AffineLTISystem(E=np.eye(4), A_terms=(A,), B=np.ones((4, 1)), C=np.ones((1, 4)))
    bundle = empirical_gramians(system, (), SimGrid(dt=1e-2, steps=500))
    return ReductionInputs(system, bundle, r_max)


def test_default_registry_holds_all_methods_in_table_order() -> None:
    registry = default_registry()
    assert len(registry) == 10
    assert registry.names == list(METHOD_LABELS)
    assert registry.get("BT-WCWO").title == "BT(W_C,W_O)"
    assert registry.get("PM-WO").title == "PM(W_O)"
    assert registry.get("BG-WZ").uses_cross_gramian
    assert not registry.get("DS-WCWO").uses_cross_gramian


def test_register_and_unregister() -> None:
    registry = ReducerRegistry()
    registry.register(PodReducer("WC"))
    assert "PM-WC" in registry
    assert registry.has("PM-WC")
    registry.unregister("PM-WC")
    assert "PM-WC" not in registry
    assert registry.get("PM-WC") is None


def test_pm_only_accepts_single_gramians() -> None:
    with pytest.raises(ValueError, match="PM takes"):
        PodReducer("WZ")


def test_build_unknown_method() -> None:
    with pytest.raises(ReductionError, match="not found"):
        ReducerRegistry().build("BT-WCWO", _inputs())


def test_build_all_returns_pairs_in_registry_order() -> None:
    results = default_registry().build_all(_inputs())
    assert list(results) == list(METHOD_LABELS)
    for name, pair in results.items():
        assert isinstance(pair, ProjectionPair), name
        assert 1 <= pair.rank <= 3


def test_build_all_filters_by_name() -> None:
    results = default_registry().build_all(_inputs(), names=["BT-WZ", "PM-WC"])
    assert list(results) == ["PM-WC", "BT-WZ"]


def test_build_all_collects_failures() -> None:
    registry = ReducerRegistry()
    registry.register(PodReducer("WC"))
    registry.register(BrokenReducer())
    results = registry.build_all(_inputs())
    assert isinstance(results["PM-WC"], ProjectionPair)
    assert isinstance(results["XX-WZ"], BalancingError)


def test_balanced_realization_is_shared_between_bt_and_bg() -> None:
    inputs = _inputs()
    registry = default_registry()
    bt_pair = registry.build("BT-WCWO", inputs)
    registry.build("BG-WCWO", inputs)
    assert inputs.balanced("WCWO").projections is bt_pair
    assert BalancedTruncationReducer("WCWO").build(inputs) is bt_pair
