"""MORscore computation and table emitters."""

from morbench.score.morscore import (
    ErrorGraph,
    MORscoreTable,
    aggregate_unstable,
    error_graph_filename,
    morscore,
    phi_eps,
    phi_n,
    read_error_graph,
    write_error_graph,
)

__all__ = [
    "ErrorGraph",
    "MORscoreTable",
    "aggregate_unstable",
    "error_graph_filename",
    "morscore",
    "phi_eps",
    "phi_n",
    "read_error_graph",
    "write_error_graph",
]
