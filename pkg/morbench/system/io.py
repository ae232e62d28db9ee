"""Matrix Market import/export for systems and dense matrices."""

import json
from pathlib import Path

import numpy as np
import scipy.io as sio
import scipy.sparse as sp
from loguru import logger

from morbench.errors import DimensionError
from morbench.system.types import AffineLTISystem, Matrix
from morbench.utils.helpers import ensure_dir

METADATA_FILE = "system.json"


def write_matrix(path: Path, matrix: Matrix, comment: str = "") -> Path:
    """Write a dense or sparse matrix in Matrix Market format (full round-trip precision)."""
    ensure_dir(path.parent)
    if sp.issparse(matrix):
        data = sp.coo_matrix(matrix)
    else:
        data = np.atleast_2d(np.asarray(matrix, dtype=float))
    sio.mmwrite(str(path), data, comment=comment, precision=17)
    return path


def read_matrix(path: Path, sparse: bool = False) -> Matrix:
    """Read a Matrix Market file; coordinate files come back as CSR unless densified."""
    if not path.exists():
        raise FileNotFoundError(f"Matrix file not found: {path}")
    data = sio.mmread(str(path))
    if sp.issparse(data):
        return sp.csr_matrix(data, dtype=float) if sparse else data.toarray().astype(float)
    return np.atleast_2d(np.asarray(data, dtype=float))


def save_system(system: AffineLTISystem, directory: Path) -> Path:
    """
    Export a system as E.mtx, A0.mtx..AP.mtx, B.mtx, C.mtx plus system.json.

    Returns:
        The directory written.
    """
    ensure_dir(directory)
    write_matrix(directory / "E.mtx", system.E)
    for p, term in enumerate(system.A_terms):
        write_matrix(directory / f"A{p}.mtx", term)
    write_matrix(directory / "B.mtx", system.B)
    write_matrix(directory / "C.mtx", system.C)

    meta = {
        "name": system.name,
        "N": system.N,
        "M": system.M,
        "Q": system.Q,
        "P": system.P,
        "sparse": system.is_sparse,
        "paramBounds": [list(b) for b in system.param_bounds] if system.param_bounds else None,
    }
    (directory / METADATA_FILE).write_text(json.dumps(meta, indent=2) + "\n")
    logger.info(f"Exported system '{system.name}' (N={system.N}) to {directory}")
    return directory


def load_system(directory: Path) -> AffineLTISystem:
    """Import a system written by save_system (or laid out the same way by hand)."""
    meta_path = directory / METADATA_FILE
    if not meta_path.exists():
        raise FileNotFoundError(f"No {METADATA_FILE} in {directory}")
    meta = json.loads(meta_path.read_text())
    sparse = bool(meta.get("sparse", False))
    n_params = int(meta.get("P", 0))

    E = read_matrix(directory / "E.mtx", sparse=sparse)
    A_terms = tuple(read_matrix(directory / f"A{p}.mtx", sparse=sparse) for p in range(n_params + 1))
    B = read_matrix(directory / "B.mtx")
    C = read_matrix(directory / "C.mtx")

    bounds = meta.get("paramBounds")
    system = AffineLTISystem(
        E=E,
        A_terms=A_terms,
        B=B,
        C=C,
        param_bounds=tuple(tuple(b) for b in bounds) if bounds else None,
        name=meta.get("name", directory.name),
    )
    for key in ("N", "M", "Q"):
        if key in meta and int(meta[key]) != getattr(system, key):
            raise DimensionError(f"{METADATA_FILE} declares {key}={meta[key]}, matrices give {getattr(system, key)}")
    logger.debug(f"Loaded system '{system.name}' (N={system.N}, M={system.M}, Q={system.Q}, P={system.P})")
    return system
