import json

import numpy as np
import pytest
import scipy.sparse as sp

from morbench.benchmarks.thermal_block import build
from morbench.config.schema import ThermalBlockConfig
from morbench.errors import DimensionError
from morbench.system import load_system, read_matrix, save_system, write_matrix


def test_dense_matrix_keeps_full_precision(tmp_path) -> None:
    matrix = np.array([[1.0 / 3.0, -2.0e-17], [np.pi, 1e300]])
    path = write_matrix(tmp_path / "m.mtx", matrix)
    np.testing.assert_array_equal(read_matrix(path), matrix)


def test_sparse_matrix_reads_back_as_csr(tmp_path) -> None:
    matrix = sp.csr_matrix(np.array([[0.0, 2.5], [1.0, 0.0]]))
    path = write_matrix(tmp_path / "s.mtx", matrix)
    loaded = read_matrix(path, sparse=True)
    assert sp.issparse(loaded)
    np.testing.assert_array_equal(loaded.toarray(), matrix.toarray())
    assert isinstance(read_matrix(path), np.ndarray)


def test_missing_matrix_file(tmp_path) -> None:
    with pytest.raises(FileNotFoundError):
        read_matrix(tmp_path / "absent.mtx")


def test_thermal_block_export_and_import(tmp_path) -> None:
    system = build(ThermalBlockConfig(grid_n=8))
    save_system(system, tmp_path / "tb")

    for name in ("E", "A0", "A1", "A2", "A3", "A4", "B", "C"):
        assert (tmp_path / "tb" / f"{name}.mtx").exists()
    meta = json.loads((tmp_path / "tb" / "system.json").read_text())
    assert meta["N"] == 64
    assert meta["P"] == 4
    assert meta["paramBounds"] == [[1.0, 10.0]] * 4

    loaded = load_system(tmp_path / "tb")
    assert (loaded.N, loaded.M, loaded.Q, loaded.P) == (64, 1, 4, 4)
    assert loaded.param_bounds == system.param_bounds
    for original, restored in zip(system.A_terms, loaded.A_terms):
        np.testing.assert_array_equal(restored.toarray(), original.toarray())
    np.testing.assert_array_equal(loaded.B, system.B)
    np.testing.assert_array_equal(loaded.C, system.C)


def test_load_rejects_inconsistent_metadata(tmp_path) -> None:
    system = build(ThermalBlockConfig(grid_n=8))
    save_system(system, tmp_path)
    meta_path = tmp_path / "system.json"
    meta = json.loads(meta_path.read_text())
    meta["N"] = 65
    meta_path.write_text(json.dumps(meta))
    with pytest.raises(DimensionError, match="N=65"):
        load_system(tmp_path)


def test_load_requires_metadata(tmp_path) -> None:
    with pytest.raises(FileNotFoundError):
        load_system(tmp_path)
