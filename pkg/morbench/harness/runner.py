"""Benchmark sweep: Gramians, projections, ROM evaluation and scoring."""

from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from loguru import logger

from morbench.benchmarks.thermal_block import build
from morbench.config.schema import Config
from morbench.errors import BenchmarkError, MorbenchError
from morbench.gramians.empirical import GramianBundle, empirical_gramians, parametric_average
from morbench.harness.sampling import ParameterSpace, sample_test, sample_training, seed_streams
from morbench.harness.types import ExperimentResult, MethodStatus, PointResult, RunRecord
from morbench.norms.approximate import (
    COMPOSE_MODES,
    ErrorContext,
    NormId,
    discarded_basis,
    evaluate,
    full_order_normalizers,
    parametric_compose,
    relative_error,
)
from morbench.reducers.base import ReductionInputs
from morbench.reducers.projections import BalancedRealization, ProjectionPair, balance_wcwo, reduce
from morbench.reducers.registry import ReducerRegistry, default_registry
from morbench.score.morscore import ErrorGraph, MORscoreTable, aggregate_unstable
from morbench.system.integrator import assemble, simulate, spectral_abscissa
from morbench.system.types import AffineLTISystem, ParameterPoint, SimGrid

WCWO_GROUP = ("PM-WC", "DS-WCWO", "BT-WCWO")
WZ_GROUP = ("DS-WZ", "BT-WZ")


class ExperimentRunner:
    """
    Runs the method x norm comparison for one benchmark variant.

    Training Gramians are averaged over the training set and turned into one projection
    pair per method. Each test parameter gets a seeded random input, the full output,
    a reference balanced realization and the ROMs of every order up to n_max.
    """

    def __init__(
        self,
        config: Config,
        system: AffineLTISystem | None = None,
        registry: ReducerRegistry | None = None,
        space: ParameterSpace | None = None,
    ):
        self.config = config
        self.system = system if system is not None else build(config.benchmark)
        self.registry = registry or default_registry()
        variant = config.experiment.variant
        if space is not None:
            self.space = space
        elif system is None:
            self.space = ParameterSpace.thermal_block(
                variant, config.benchmark.theta_bounds, len(config.benchmark.circle_centers)
            )
        else:
            self.space = ParameterSpace.for_system(self.system, variant)
        self.grid = SimGrid.from_horizon(config.simulation.horizon, config.simulation.dt)
        self.norms = [NormId(n) for n in config.experiment.norms]
        self._references: dict[tuple[float, ...], BalancedRealization] = {}
        self._bundles: dict[tuple[float, ...], GramianBundle] = {}
        self._lock = threading.Lock()

    @property
    def r_max(self) -> int:
        return min(self.config.experiment.tsvd_rank, self.system.N)

    def run(self) -> ExperimentResult:
        """Execute the sweep and return records, graphs and tables."""
        exp = self.config.experiment
        sim = self.config.simulation
        if self.system.N > exp.max_states:
            raise BenchmarkError(f"System has N={self.system.N} states, above max_states={exp.max_states}")
        if exp.n_max > self.system.N:
            logger.warning(f"Harness: n_max={exp.n_max} exceeds N={self.system.N}; higher orders will fail")

        training = sample_training(self.space)
        streams = seed_streams(exp.seed, exp.test_samples)
        test = sample_test(
            self.space,
            exp.test_samples,
            rng=streams[0],
            training=training if self.space.dim else None,
        )
        logger.info(
            f"Harness: {exp.variant} variant, N={self.system.N}, "
            f"{len(training)} training / {len(test)} test parameters, {self.grid.steps} steps"
        )

        bundle = parametric_average(
            empirical_gramians, self.system, training, self.grid, dense_threshold=sim.dense_threshold
        )
        if len(training) == 1:
            self._bundles[training[0].values] = bundle
        logger.info(f"Harness: training Gramians built (rank cap {self.r_max})")

        inputs = ReductionInputs(self.system, bundle, self.r_max)
        built = self.registry.build_all(inputs, exp.methods)
        statuses = []
        for name, pair in built.items():
            reducer = self.registry.get(name)
            if isinstance(pair, ProjectionPair):
                statuses.append(MethodStatus(name, reducer.title, rank=pair.rank))
            else:
                statuses.append(MethodStatus(name, reducer.title, error=str(pair)))
        logger.info(f"Harness: {sum(s.error is None for s in statuses)}/{len(statuses)} methods constructed")

        with ThreadPoolExecutor(max_workers=exp.workers) as pool:
            futures = [
                pool.submit(self._evaluate_point, i, theta, streams[i + 1], built)
                for i, theta in enumerate(test)
            ]
            points = [f.result() for f in futures]

        result = ExperimentResult(
            variant=exp.variant,
            seed=exp.seed,
            n_max=exp.n_max,
            training=training,
            points=points,
            methods=statuses,
        )
        self._score(result)
        return result

    def _reference(self, theta: ParameterPoint) -> BalancedRealization:
        """Balanced realization of the full system at theta, cached by theta."""
        key = theta.values
        with self._lock:
            cached = self._references.get(key)
            bundle = self._bundles.get(key)
        if cached is not None:
            return cached
        if bundle is None:
            bundle = empirical_gramians(
                self.system, theta, self.grid, dense_threshold=self.config.simulation.dense_threshold
            )
        realization = balance_wcwo(bundle.wc, bundle.wo, self.r_max, self.system, bundle.wz)
        with self._lock:
            self._references[key] = realization
        return realization

    def _evaluate_point(
        self,
        index: int,
        theta: ParameterPoint,
        rng: np.random.Generator,
        built: dict[str, ProjectionPair | MorbenchError],
    ) -> PointResult:
        exp = self.config.experiment
        sim = self.config.simulation
        point = PointResult(index, theta)
        u = rng.standard_normal((self.system.M, self.grid.steps))

        try:
            y = simulate(
                self.system, theta, u, grid=self.grid, capture="output", dense_threshold=sim.dense_threshold
            ).values
            reference = self._reference(theta)
            normalizers = full_order_normalizers(y, self.grid.dt, reference, self.system.N, self.norms)
        except MorbenchError as e:
            logger.error(f"Harness: reference at θ[{index}]={theta.values} failed: {e}")
            point.normalizers = {n.value: 1.0 for n in self.norms}
            for name in built:
                for order in range(1, exp.n_max + 1):
                    point.records.append(self._failed(name, order, index, str(e)))
            return point

        point.normalizers = {k.value: v for k, v in normalizers.items()}
        point.hsv = reference.hsv.tolist()
        for name, pair in built.items():
            for order in range(1, exp.n_max + 1):
                point.records.append(
                    self._evaluate_rom(name, pair, order, index, theta, u, y, reference, normalizers)
                )
        unstable = sum(not r.stable for r in point.records)
        logger.info(f"Harness: test parameter {index + 1} done ({unstable} unstable/failed ROMs)")
        return point

    def _failed(self, name: str, order: int, index: int, reason: str) -> RunRecord:
        return RunRecord(
            method=name,
            order=order,
            theta_index=index,
            stable=False,
            failed=True,
            relative={n.value: 1.0 for n in self.norms},
            error=reason,
        )

    def _evaluate_rom(
        self,
        name: str,
        pair: ProjectionPair | MorbenchError,
        order: int,
        index: int,
        theta: ParameterPoint,
        u: np.ndarray,
        y: np.ndarray,
        reference: BalancedRealization,
        normalizers: dict[NormId, float],
    ) -> RunRecord:
        if not isinstance(pair, ProjectionPair):
            return self._failed(name, order, index, str(pair))
        if order > pair.rank:
            return self._failed(name, order, index, f"order exceeds projection rank {pair.rank}")

        started = time.perf_counter()
        reducer = self.registry.get(name)
        try:
            rom = reduce(self.system, pair, order, reducer.method, reducer.flavor)
            abscissa = spectral_abscissa(rom.system.E, assemble(rom.system, theta))
            stable = abscissa < 0
            y_red = None
            if stable:
                y_red = simulate(rom.system, theta, u, grid=self.grid, capture="output").values
            ctx = ErrorContext(
                y=y,
                y_red=y_red,
                dt=self.grid.dt,
                realization=reference,
                n=order,
                N=self.system.N,
                discarded=discarded_basis(reference, rom.projection.U),
                stable=stable,
                normalizers=normalizers,
            )
            record = RunRecord(name, order, index, stable=stable, abscissa=abscissa)
            eps_mach = self.config.scoring.eps_mach
            for norm in self.norms:
                record.relative[norm.value] = relative_error(ctx, norm, eps_mach)
                if stable:
                    value = evaluate(ctx, norm)
                    if np.isfinite(value):
                        record.absolute[norm.value] = value
        except MorbenchError as e:
            logger.warning(f"Harness: {name} n={order} at θ[{index}] failed: {e}")
            return self._failed(name, order, index, str(e))
        record.elapsed_s = time.perf_counter() - started
        if not stable:
            logger.debug(f"Harness: {name} n={order} at θ[{index}] unstable (abscissa {abscissa:.3e})")
        return record

    def _score(self, result: ExperimentResult) -> None:
        """Compose error graphs, build tables and summaries."""
        exp = self.config.experiment
        eps_mach = self.config.scoring.eps_mach
        modes = ["L2"] if exp.variant == "fixed" else list(COMPOSE_MODES)
        methods = [s.name for s in result.methods]
        lookup = [{(r.method, r.order): r for r in p.records} for p in result.points]

        for name in methods:
            result.unstable_counts[name] = [
                sum(not r.stable for r in p.records if r.method == name) for p in result.points
            ]

        for mode in modes:
            table = MORscoreTable(
                methods=methods,
                norms=[n.value for n in self.norms],
                n_max=exp.n_max,
                eps_mach=eps_mach,
                variant=exp.variant,
                mode=mode,
                titles={s.name: s.title for s in result.methods},
            )
            for name in methods:
                for norm in self.norms:
                    eps = []
                    for order in range(1, exp.n_max + 1):
                        rel = [lk[(name, order)].relative[norm.value] for lk in lookup]
                        scales = [p.normalizers.get(norm.value, 1.0) for p in result.points]
                        value = compose_relative(rel, scales, mode)
                        eps.append(min(max(value, eps_mach), 1.0))
                    graph = ErrorGraph(np.array(eps), name, norm.value, exp.variant, mode)
                    result.graphs.append(graph)
                    table.set_graph(graph)
                table.unstable[name] = aggregate_unstable(result.unstable_counts[name], mode)
            result.tables[mode] = table

        result.error_decay = error_decay(result.graphs)
        if "L2" in result.tables:
            result.preference = gramian_pair_preference(result.tables["L2"])


def compose_relative(relative: list[float], scales: list[float], mode: str) -> float:
    """Compose relative errors over parameters, weighting by their full-order normalizers."""
    scales = [s if s > 0 else 1.0 for s in scales]
    absolute = [r * s for r, s in zip(relative, scales)]
    return parametric_compose(absolute, mode, scales)


def error_decay(graphs: list[ErrorGraph], norm: str = "L2", mode: str = "L2") -> dict[str, dict[str, float]]:
    """Per method: error at n=1, best order and best error for one norm and composition."""
    summary = {}
    for graph in graphs:
        if graph.norm != norm or graph.mode != mode:
            continue
        best = int(np.argmin(graph.eps))
        summary[graph.method] = {
            "first": float(graph.eps[0]),
            "bestOrder": best + 1,
            "best": float(graph.eps[best]),
            "gain": float(graph.eps[0] / graph.eps[best]),
        }
    return summary


def gramian_pair_preference(table: MORscoreTable, norm: str = "L2") -> dict[str, float | bool] | None:
    """
    Compare W_C/W_O-based methods against their W_Z counterparts in one norm column.

    Logs a warning (never fails) when the W_C/W_O group does not score higher.
    """
    wcwo = [table.get(m, norm) for m in WCWO_GROUP]
    wz = [table.get(m, norm) for m in WZ_GROUP]
    if any(v is None for v in wcwo + wz):
        logger.debug("Gramian-pair comparison skipped: methods or norm not selected")
        return None
    wcwo_mean = float(np.mean(wcwo))
    wz_mean = float(np.mean(wz))
    preferred = wcwo_mean > wz_mean
    if not preferred:
        logger.warning(
            f"W_C/W_O methods did not outperform W_Z methods in {norm}: "
            f"{wcwo_mean:.3f} vs {wz_mean:.3f}"
        )
    return {"wcwo": wcwo_mean, "wz": wz_mean, "preferred": preferred}


def run_experiment(config: Config, system: AffineLTISystem | None = None) -> ExperimentResult:
    """Run one variant of the benchmark as configured."""
    return ExperimentRunner(config, system=system).run()
