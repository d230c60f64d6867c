"""Matrix-free linear operators."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .csr import CsrMatrix, spmv, spmv_transpose


@dataclass
class LinearOperator:
    """A linear map given by its action on a vector."""

    n_rows: int
    n_cols: int
    apply: Callable[[np.ndarray], np.ndarray]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.apply(x)

    def to_dense(self) -> np.ndarray:
        """Materialize by probing with unit vectors. Small operators only."""
        out = np.empty((self.n_rows, self.n_cols))
        e = np.zeros(self.n_cols)
        for j in range(self.n_cols):
            e[j] = 1.0
            out[:, j] = self.apply(e)
            e[j] = 0.0
        return out


def as_operator(m) -> LinearOperator:
    if isinstance(m, LinearOperator):
        return m
    if isinstance(m, CsrMatrix):
        return LinearOperator(m.n_rows, m.n_cols, lambda x: spmv(m, x))
    if isinstance(m, np.ndarray) and m.ndim == 2:
        return LinearOperator(m.shape[0], m.shape[1], lambda x: m @ x)
    raise TypeError(f"cannot interpret {type(m).__name__} as a linear operator")


def transpose_operator(m: CsrMatrix) -> LinearOperator:
    return LinearOperator(m.n_cols, m.n_rows, lambda x: spmv_transpose(m, x))


def identity_operator(n: int) -> LinearOperator:
    return LinearOperator(n, n, lambda x: x.copy())


def diagonal_operator(d: np.ndarray) -> LinearOperator:
    d = np.asarray(d, dtype=np.float64)
    return LinearOperator(d.size, d.size, lambda x: d * x)
