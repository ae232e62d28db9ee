"""Writing tables, error graphs, run records and the run manifest."""

import csv
import io
import json
import platform
from pathlib import Path

import numpy as np
import scipy
from loguru import logger

from morbench import __version__
from morbench.config.loader import convert_to_camel
from morbench.config.schema import Config
from morbench.harness.types import ExperimentResult
from morbench.score.morscore import error_graph_filename, write_error_graph
from morbench.utils.helpers import ensure_dir, format_float


def table_paths(out_dir: Path, variant: str, mode: str) -> tuple[Path, Path]:
    stem = f"morscore_{variant}_{mode}"
    return out_dir / f"{stem}.csv", out_dir / f"{stem}.md"


def graph_dir(out_dir: Path, variant: str) -> Path:
    return out_dir / "errorgraphs" / variant


def _records_csv(result: ExperimentResult, norms: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["method", "order", "theta_index", "stable", "failed"]
        + [f"rel_{n}" for n in norms]
        + [f"abs_{n}" for n in norms]
    )
    for r in result.records:
        writer.writerow(
            [r.method, r.order, r.theta_index, int(r.stable), int(r.failed)]
            + [format_float(r.relative[n]) for n in norms]
            + [format_float(r.absolute[n]) if n in r.absolute else "" for n in norms]
        )
    return buf.getvalue()


def _manifest(result: ExperimentResult, config: Config) -> dict:
    return {
        "version": 1,
        "variant": result.variant,
        "seed": result.seed,
        "nMax": result.n_max,
        "config": convert_to_camel(config.model_dump(mode="json")),
        "versions": {
            "morbench": __version__,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "python": platform.python_version(),
        },
        "training": [list(p.values) for p in result.training],
        "test": [
            {
                "theta": list(p.theta.values),
                "normalizers": p.normalizers,
                "hsv": p.hsv[:10],
            }
            for p in result.points
        ],
        "methods": [
            {"name": m.name, "title": m.title, "rank": m.rank, "error": m.error}
            for m in result.methods
        ],
        "unstableCounts": result.unstable_counts,
        "errorDecay": result.error_decay,
        "gramianPairPreference": result.preference,
    }


def write_outputs(result: ExperimentResult, config: Config, out_dir: Path) -> list[Path]:
    """
    Write every artifact of a run under out_dir (created if missing).

    No timestamps or timings are written, so a rerun with the same seed reproduces
    the files byte for byte.
    """
    ensure_dir(out_dir)
    written: list[Path] = []

    for mode, table in result.tables.items():
        csv_path, md_path = table_paths(out_dir, result.variant, mode)
        csv_path.write_text(table.to_csv())
        md_path.write_text(table.to_markdown())
        written += [csv_path, md_path]

    graphs = graph_dir(out_dir, result.variant)
    for graph in result.graphs:
        written.append(write_error_graph(graph, graphs / error_graph_filename(graph.method, graph.norm, graph.mode)))

    records_path = out_dir / f"records_{result.variant}.csv"
    records_path.write_text(_records_csv(result, list(config.experiment.norms)))
    written.append(records_path)

    manifest_path = out_dir / f"manifest_{result.variant}.json"
    manifest_path.write_text(json.dumps(_manifest(result, config), indent=2) + "\n")
    written.append(manifest_path)

    logger.info(f"Harness: wrote {len(written)} files to {out_dir}")
    return written
