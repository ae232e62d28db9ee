"""CLI commands for morbench."""

import sys
from pathlib import Path
from typing import Any

import typer
from loguru import logger
from rich.console import Console
from rich.table import Table

from morbench import __logo__, __version__

app = typer.Typer(
    name="morbench",
    help=f"{__logo__} morbench - empirical-Gramian model reduction benchmark",
    no_args_is_help=True,
)

console = Console()

VARIANTS = ("fixed", "single", "multi")


def version_callback(value: bool):
    if value:
        console.print(f"{__logo__} morbench v{__version__}")
        raise typer.Exit()


@app.callback()
def main(
    version: bool = typer.Option(
        None, "--version", "-V", callback=version_callback, is_eager=True
    ),
):
    """morbench - MORscore benchmarking of empirical-Gramian reducers."""
    pass


def _configure_logging(verbose: bool) -> None:
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else "INFO")


def _split(value: str | None) -> list[str] | None:
    if not value:
        return None
    return [item.strip() for item in value.split(",") if item.strip()]


def _override(config: Any, **sections: dict[str, Any]) -> Any:
    """Return a revalidated copy of config with the given section fields replaced."""
    from morbench.config.schema import Config

    data = config.model_dump()
    for section, fields in sections.items():
        data[section].update({k: v for k, v in fields.items() if v is not None})
    return Config.model_validate(data)


def _print_table(table) -> None:
    view = Table(title=f"MORscores ({table.variant}, {table.mode})")
    view.add_column("Method", style="cyan")
    for column in table.columns:
        view.add_column(column, justify="right")
    for method, row in zip(table.methods, table.rows()):
        view.add_row(
            table.titles.get(method, method),
            *("-" if v is None else f"{v:.2f}" for v in row),
        )
    console.print(view)


# ============================================================================
# Setup
# ============================================================================


@app.command()
def init(
    force: bool = typer.Option(False, "--force", "-f", help="Overwrite an existing config"),
):
    """Write the default configuration file."""
    from morbench.config.loader import get_config_path, save_config
    from morbench.config.schema import Config

    config_path = get_config_path()
    if config_path.exists() and not force:
        console.print(f"[yellow]Config already exists at {config_path}[/yellow]")
        if not typer.confirm("Overwrite?"):
            raise typer.Exit()

    save_config(Config(), config_path)
    console.print(f"[green]✓[/green] Created config at {config_path}")
    console.print("\nNext steps:")
    console.print("  1. Adjust grid size, horizon or seed in the config if needed")
    console.print("  2. Run: [cyan]morbench run --variant fixed[/cyan]")


@app.command()
def status(
    config_file: Path | None = typer.Option(None, "--config", "-c", help="Config file"),
):
    """Show the effective configuration."""
    from morbench.config.loader import get_config_path, load_config

    config_path = config_file or get_config_path()
    config = load_config(config_path)

    console.print(f"{__logo__} morbench Status\n")
    console.print(f"Config: {config_path} {'[green]✓[/green]' if config_path.exists() else '[dim]defaults[/dim]'}")
    console.print(f"Results: {config.output_path} {'[green]✓[/green]' if config.output_path.exists() else '[dim]not created[/dim]'}")

    exp, sim, bench = config.experiment, config.simulation, config.benchmark
    table = Table(title="Experiment")
    table.add_column("Setting", style="cyan")
    table.add_column("Value")
    table.add_row("variant", exp.variant)
    table.add_row("grid", f"{bench.grid_n} x {bench.grid_n} (N={bench.grid_n ** 2})")
    table.add_row("time grid", f"dt={sim.dt}, T={sim.horizon} ({sim.steps} steps)")
    table.add_row("orders", f"1..{exp.n_max} (rank cap {exp.tsvd_rank})")
    table.add_row("test samples", str(exp.test_samples))
    table.add_row("seed", str(exp.seed))
    table.add_row("workers", str(exp.workers))
    table.add_row("methods", ", ".join(exp.methods))
    table.add_row("norms", ", ".join(exp.norms))
    console.print(table)


# ============================================================================
# Benchmark
# ============================================================================


@app.command()
def run(
    variant: str | None = typer.Option(None, "--variant", help="fixed, single, multi or all"),
    grid_n: int | None = typer.Option(None, "--grid-n", help="Cells per axis of the thermal block"),
    n_max: int | None = typer.Option(None, "--n-max", help="Largest reduced order"),
    seed: int | None = typer.Option(None, "--seed", help="Random seed"),
    out: Path | None = typer.Option(None, "--out", "-o", help="Output directory"),
    methods: str | None = typer.Option(None, "--methods", help="Comma-separated method slugs, e.g. BT-WCWO,PM-WC"),
    norms: str | None = typer.Option(None, "--norms", help="Comma-separated norm slugs, e.g. L2,Hankel"),
    workers: int | None = typer.Option(None, "--workers", help="Threads over test parameters"),
    config_file: Path | None = typer.Option(None, "--config", "-c", help="Config file"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
):
    """Run the benchmark and write MORscore tables, error graphs and records."""
    from morbench.config.loader import load_config
    from morbench.errors import MorbenchError
    from morbench.harness.emit import write_outputs
    from morbench.harness.runner import run_experiment

    _configure_logging(verbose)
    if variant is not None and variant not in (*VARIANTS, "all"):
        console.print(f"[red]Unknown variant '{variant}'; choose from {', '.join(VARIANTS)} or all[/red]")
        raise typer.Exit(1)

    try:
        config = _override(
            load_config(config_file),
            benchmark={"grid_n": grid_n},
            experiment={
                "n_max": n_max,
                "seed": seed,
                "output_dir": str(out) if out else None,
                "methods": _split(methods),
                "norms": _split(norms),
                "workers": workers,
            },
        )
    except ValueError as e:
        console.print(f"[red]Invalid configuration: {e}[/red]")
        raise typer.Exit(1)

    selected = list(VARIANTS) if variant == "all" else [variant or config.experiment.variant]
    console.print(f"{__logo__} Running {', '.join(selected)} on a {config.benchmark.grid_n}x{config.benchmark.grid_n} thermal block\n")

    for name in selected:
        try:
            cfg = _override(config, experiment={"variant": name})
            result = run_experiment(cfg)
            paths = write_outputs(result, cfg, cfg.output_path)
        except (MorbenchError, ValueError) as e:
            console.print(f"[red]Error ({name}): {e}[/red]")
            raise typer.Exit(1)

        for table in result.tables.values():
            _print_table(table)
        failed = [m.name for m in result.methods if m.error]
        if failed:
            console.print(f"[yellow]Methods without a projection: {', '.join(failed)}[/yellow]")
        console.print(f"[green]✓[/green] {len(paths)} files written to {cfg.output_path}\n")


@app.command()
def score(
    directory: Path = typer.Argument(..., help="Directory containing errorgraph_*.csv files"),
    eps_mach: float | None = typer.Option(None, "--eps-mach", help="Machine epsilon for normalization"),
    out: Path | None = typer.Option(None, "--out", "-o", help="Write rescored tables here"),
):
    """Recompute MORscores from error-graph CSV files."""
    from morbench.config.schema import METHOD_LABELS, NORM_LABELS
    from morbench.errors import MorbenchError
    from morbench.norms.approximate import EPS_MACH
    from morbench.score.morscore import MORscoreTable, read_error_graph
    from morbench.utils.helpers import ensure_dir

    files = sorted(directory.rglob("errorgraph_*.csv"))
    if not files:
        console.print(f"[red]No error graphs found under {directory}[/red]")
        raise typer.Exit(1)

    tables: dict[tuple[str, str], MORscoreTable] = {}
    try:
        graphs = [read_error_graph(f) for f in files]
        for graph in graphs:
            key = (graph.variant, graph.mode)
            if key not in tables:
                group = [g for g in graphs if (g.variant, g.mode) == key]
                present_m = {g.method for g in group}
                present_n = {g.norm for g in group}
                tables[key] = MORscoreTable(
                    methods=[m for m in METHOD_LABELS if m in present_m] + sorted(present_m - set(METHOD_LABELS)),
                    norms=[n for n in NORM_LABELS if n in present_n] + sorted(present_n - set(NORM_LABELS)),
                    n_max=graph.n_max,
                    eps_mach=eps_mach or EPS_MACH,
                    variant=graph.variant,
                    mode=graph.mode,
                )
            tables[key].set_graph(graph)
    except (MorbenchError, ValueError) as e:
        console.print(f"[red]Error: {e}[/red]")
        raise typer.Exit(1)

    for (variant, mode), table in sorted(tables.items()):
        _print_table(table)
        if out:
            ensure_dir(out)
            (out / f"morscore_{variant}_{mode}.csv").write_text(table.to_csv())
            (out / f"morscore_{variant}_{mode}.md").write_text(table.to_markdown())
    if out:
        console.print(f"[green]✓[/green] Rescored tables written to {out}")


@app.command("export-system")
def export_system(
    out: Path = typer.Argument(..., help="Target directory"),
    grid_n: int | None = typer.Option(None, "--grid-n", help="Cells per axis of the thermal block"),
    gramians: bool = typer.Option(False, "--gramians", help="Also export W_C, W_O, W_Z at the fixed parameter"),
    config_file: Path | None = typer.Option(None, "--config", "-c", help="Config file"),
):
    """Export the thermal block in Matrix Market format."""
    from morbench.benchmarks.thermal_block import build, variant_theta
    from morbench.config.loader import load_config
    from morbench.errors import MorbenchError
    from morbench.gramians.empirical import empirical_gramians, save_gramian
    from morbench.system.io import save_system
    from morbench.system.types import SimGrid

    try:
        config = _override(load_config(config_file), benchmark={"grid_n": grid_n})
        system = build(config.benchmark)
        save_system(system, out)
        console.print(f"[green]✓[/green] Exported N={system.N}, M={system.M}, Q={system.Q}, P={system.P} to {out}")
        if gramians:
            sim = config.simulation
            theta = variant_theta("fixed", n_regions=system.P)
            bundle = empirical_gramians(
                system, theta, SimGrid.from_horizon(sim.horizon, sim.dt), dense_threshold=sim.dense_threshold
            )
            for label, gramian in (("WC", bundle.wc), ("WO", bundle.wo), ("WZ", bundle.wz)):
                save_gramian(gramian, out / f"{label}.mtx")
            console.print("[green]✓[/green] Exported W_C, W_O, W_Z at the fixed parameter")
    except (MorbenchError, ValueError) as e:
        console.print(f"[red]Error: {e}[/red]")
        raise typer.Exit(1)


if __name__ == "__main__":
    app()
