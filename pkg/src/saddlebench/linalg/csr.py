"""Compressed sparse row matrices.

The storage is canonical: within each row the column indices are strictly
increasing, and duplicate (i, j) entries have been summed at construction
time. Explicitly stored zeros are permitted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels


@dataclass
class CsrMatrix:
    """Sparse matrix in CSR form.

    Attributes
    ----------
    n_rows, n_cols : int
        Matrix dimensions.
    indptr : ndarray of int64, shape (n_rows + 1,)
        Row pointer array; row i occupies indptr[i]:indptr[i+1].
    indices : ndarray of int64
        Column index of each stored entry.
    data : ndarray of float64
        Value of each stored entry.
    """

    n_rows: int
    n_cols: int
    indptr: np.ndarray
    indices: np.ndarray
    data: np.ndarray
    _row_of_entry: np.ndarray | None = field(default=None, repr=False, compare=False)

    # -- construction -------------------------------------------------------

    @classmethod
    def from_coo(cls, rows, cols, values, shape) -> "CsrMatrix":
        """Build from triplets, summing duplicates and sorting columns."""
        n_rows, n_cols = int(shape[0]), int(shape[1])
        rows = np.asarray(rows, dtype=np.int64).ravel()
        cols = np.asarray(cols, dtype=np.int64).ravel()
        values = np.asarray(values, dtype=np.float64).ravel()
        if not (rows.shape == cols.shape == values.shape):
            raise ValueError("rows, cols and values must have equal length")
        if rows.size:
            if rows.min() < 0 or rows.max() >= n_rows:
                raise ValueError("row index out of bounds")
            if cols.min() < 0 or cols.max() >= n_cols:
                raise ValueError("column index out of bounds")
            order = np.lexsort((cols, rows))
            rows, cols, values = rows[order], cols[order], values[order]
            fresh = np.empty(rows.size, dtype=bool)
            fresh[0] = True
            fresh[1:] = (rows[1:] != rows[:-1]) | (cols[1:] != cols[:-1])
            starts = np.flatnonzero(fresh)
            values = np.add.reduceat(values, starts)
            rows, cols = rows[starts], cols[starts]
        counts = np.bincount(rows, minlength=n_rows)
        indptr = np.zeros(n_rows + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        return cls(n_rows, n_cols, indptr, cols, values)

    @classmethod
    def from_dense(cls, a) -> "CsrMatrix":
        a = np.asarray(a, dtype=np.float64)
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        rows, cols = np.nonzero(a)
        return cls.from_coo(rows, cols, a[rows, cols], a.shape)

    @classmethod
    def identity(cls, n) -> "CsrMatrix":
        idx = np.arange(n, dtype=np.int64)
        return cls(n, n, np.arange(n + 1, dtype=np.int64), idx, np.ones(n))

    @classmethod
    def from_diagonal(cls, d) -> "CsrMatrix":
        d = np.asarray(d, dtype=np.float64)
        n = d.shape[0]
        idx = np.arange(n, dtype=np.int64)
        return cls(n, n, np.arange(n + 1, dtype=np.int64), idx, d.copy())

    # -- queries -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    @property
    def nnz(self) -> int:
        return int(self.indptr[-1])

    def validate(self) -> None:
        """Check structural invariants, raising ValueError on violation."""
        if self.indptr.shape != (self.n_rows + 1,):
            raise ValueError("indptr has the wrong length")
        if self.indptr[0] != 0 or self.indptr[-1] != self.indices.size:
            raise ValueError("indptr endpoints disagree with nnz")
        if np.any(np.diff(self.indptr) < 0):
            raise ValueError("indptr must be non-decreasing")
        if self.indices.size != self.data.size:
            raise ValueError("indices and data length mismatch")
        if self.indices.size:
            if self.indices.min() < 0 or self.indices.max() >= self.n_cols:
                raise ValueError("column index out of bounds")
        for i in range(self.n_rows):
            cols = self.indices[self.indptr[i] : self.indptr[i + 1]]
            if cols.size > 1 and np.any(np.diff(cols) <= 0):
                raise ValueError(f"row {i}: column indices not strictly increasing")

    def row_of_entry(self) -> np.ndarray:
        if self._row_of_entry is None:
            self._row_of_entry = np.repeat(
                np.arange(self.n_rows), np.diff(self.indptr)
            )
        return self._row_of_entry

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape)
        out[self.row_of_entry(), self.indices] = self.data
        return out

    def diagonal(self) -> np.ndarray:
        d = np.zeros(min(self.n_rows, self.n_cols))
        r = self.row_of_entry()
        mask = r == self.indices
        d_idx = r[mask]
        d[d_idx] = self.data[mask]
        return d

    def transpose(self) -> "CsrMatrix":
        return CsrMatrix.from_coo(
            self.indices, self.row_of_entry(), self.data, (self.n_cols, self.n_rows)
        )

    def submatrix(self, row_start, row_stop, col_start, col_stop) -> "CsrMatrix":
        """Extract the contiguous block [row_start:row_stop, col_start:col_stop]."""
        r = self.row_of_entry()
        mask = (
            (r >= row_start)
            & (r < row_stop)
            & (self.indices >= col_start)
            & (self.indices < col_stop)
        )
        return CsrMatrix.from_coo(
            r[mask] - row_start,
            self.indices[mask] - col_start,
            self.data[mask],
            (row_stop - row_start, col_stop - col_start),
        )

    def scaled(self, factor) -> "CsrMatrix":
        return CsrMatrix(
            self.n_rows,
            self.n_cols,
            self.indptr,
            self.indices,
            self.data * float(factor),
        )

    def __matmul__(self, x):
        return spmv(self, x)

    def __add__(self, other) -> "CsrMatrix":
        if not isinstance(other, CsrMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} + {other.shape}")
        return CsrMatrix.from_coo(
            np.concatenate([self.row_of_entry(), other.row_of_entry()]),
            np.concatenate([self.indices, other.indices]),
            np.concatenate([self.data, other.data]),
            self.shape,
        )


def spmv(m: CsrMatrix, x: np.ndarray) -> np.ndarray:
    """y = M x."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (m.n_cols,):
        raise ValueError(f"operand has shape {x.shape}, expected ({m.n_cols},)")
    return kernels.csr_matvec(
        m.indptr, m.indices, m.data, x, m.n_rows, m.row_of_entry()
    )


def spmv_transpose(m: CsrMatrix, x: np.ndarray) -> np.ndarray:
    """y = M^T x without materializing the transpose."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (m.n_rows,):
        raise ValueError(f"operand has shape {x.shape}, expected ({m.n_rows},)")
    return kernels.csr_matvec_transpose(
        m.indptr, m.indices, m.data, x, m.n_cols, m.row_of_entry()
    )


def weighted_gram(m: CsrMatrix, weights=None, chunk_entries: int = 1 << 21) -> CsrMatrix:
    """G = M diag(weights) M^T as an explicit CSR matrix.

    The entry (i, k) of M contributes ``m_ik * w_k`` times row k of M^T to
    row i of G. The expansion is processed in chunks whose triplet arrays
    stay below ``chunk_entries`` so intermediate storage stays bounded on
    matrices with dense-ish rows.
    """
    mt = m.transpose()
    if weights is None:
        coef_all = m.data
    else:
        weights = np.asarray(weights, dtype=np.float64)
        if weights.shape != (m.n_cols,):
            raise ValueError(
                f"weights have shape {weights.shape}, expected ({m.n_cols},)"
            )
        coef_all = m.data * weights[m.indices]
    row_all = m.row_of_entry()
    col_all = m.indices
    lens_all = np.diff(mt.indptr)[col_all]
    grown = np.cumsum(lens_all)

    result = CsrMatrix.from_coo([], [], [], (m.n_rows, m.n_rows))
    start = 0
    base = 0
    while start < m.nnz:
        stop = int(np.searchsorted(grown, base + chunk_entries, side="right"))
        stop = max(stop, start + 1)
        k = col_all[start:stop]
        lens = lens_all[start:stop]
        total = int(lens.sum())
        base = grown[stop - 1]
        if total:
            ends = np.cumsum(lens)
            flat = (
                np.arange(total, dtype=np.int64)
                - np.repeat(ends - lens, lens)
                + np.repeat(mt.indptr[k], lens)
            )
            part = CsrMatrix.from_coo(
                np.repeat(row_all[start:stop], lens),
                mt.indices[flat],
                np.repeat(coef_all[start:stop], lens) * mt.data[flat],
                (m.n_rows, m.n_rows),
            )
            result = result + part
        start = stop
    return result
