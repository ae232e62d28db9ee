"""Affine-parametric LTI systems: types, simulation and I/O."""

from morbench.system.integrator import (
    ImplicitEuler,
    assemble,
    impulse_state,
    simulate,
    simulate_dual,
    spectral_abscissa,
)
from morbench.system.io import load_system, read_matrix, save_system, write_matrix
from morbench.system.types import AffineLTISystem, ParameterPoint, SimGrid, Trajectory, to_dense

__all__ = [
    "AffineLTISystem",
    "ImplicitEuler",
    "ParameterPoint",
    "SimGrid",
    "Trajectory",
    "assemble",
    "impulse_state",
    "load_system",
    "read_matrix",
    "save_system",
    "simulate",
    "simulate_dual",
    "spectral_abscissa",
    "to_dense",
    "write_matrix",
]
