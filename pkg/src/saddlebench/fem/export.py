"""Persist assembled systems as Matrix Market files plus a JSON sidecar."""

import json
from pathlib import Path

import numpy as np

from ..linalg import CsrMatrix, mm_read, mm_write

_MATRIX_FILES = {
    "a_matrix": "a_matrix.mtx",
    "b_matrix": "b_matrix.mtx",
    "pressure_mass": "pressure_mass.mtx",
}
_VECTOR_FILES = {"rhs_f": "rhs_f.mtx", "rhs_g": "rhs_g.mtx"}


def _vector_matrix(v):
    v = np.asarray(v, dtype=np.float64).ravel()
    return CsrMatrix.from_coo(
        np.arange(len(v), dtype=np.int64),
        np.zeros(len(v), dtype=np.int64),
        v,
        (len(v), 1),
    )


def export_system(system, directory):
    """Write the matrices, right-hand sides, and metadata of ``system``.

    Returns the directory as a ``Path``.  Vectors are stored as single
    column matrices so one file format covers everything.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    mm_write(directory / _MATRIX_FILES["a_matrix"], system.a_matrix)
    mm_write(directory / _MATRIX_FILES["b_matrix"], system.b_matrix)
    mm_write(directory / _MATRIX_FILES["pressure_mass"], system.pressure_mass)
    mm_write(directory / _VECTOR_FILES["rhs_f"], _vector_matrix(system.rhs_f))
    mm_write(directory / _VECTOR_FILES["rhs_g"], _vector_matrix(system.rhs_g))
    meta = {
        "domain": system.spec.domain,
        "n": system.spec.n,
        "label": system.grid.label,
        "equation": system.spec.equation,
        "viscosity": system.spec.viscosity,
        "n_split": system.n_split,
        "n_velocity": system.n_velocity,
        "n_pressure": system.n_pressure,
        "total_dofs": system.total_dofs,
        "enclosed": system.enclosed,
        "files": {**_MATRIX_FILES, **_VECTOR_FILES},
    }
    with open(directory / "meta.json", "w") as handle:
        json.dump(meta, handle, indent=2)
        handle.write("\n")
    return directory


def load_system_vectors(directory):
    """Read back the right-hand sides written by :func:`export_system`."""
    directory = Path(directory)
    out = {}
    for key, name in _VECTOR_FILES.items():
        mat = mm_read(directory / name)
        dense = mat.to_dense()
        out[key] = dense[:, 0]
    return out
