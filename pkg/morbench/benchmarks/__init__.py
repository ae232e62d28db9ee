"""Built-in benchmark systems."""

from morbench.benchmarks.thermal_block import (
    assemble_direct,
    build,
    node_centres,
    region_labels,
    variant_theta,
)

__all__ = ["assemble_direct", "build", "node_centres", "region_labels", "variant_theta"]
