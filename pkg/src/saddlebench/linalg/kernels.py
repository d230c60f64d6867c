"""Low-level array kernels with numba and pure-numpy implementations.

Every public function here dispatches on :func:`saddlebench.backend.backend`.
The numba variants are compiled lazily on first call; the numpy variants are
vectorized where possible and fall back to plain python loops for the
inherently sequential sweeps.
"""

from __future__ import annotations

import numpy as np

from ..backend import NUMBA_AVAILABLE, backend

if NUMBA_AVAILABLE:
    from numba import njit
else:  # pragma: no cover - only without numba installed

    def njit(*args, **kwargs):
        def wrap(func):
            return func

        if len(args) == 1 and callable(args[0]):
            return args[0]
        return wrap


# ---------------------------------------------------------------------------
# CSR matrix-vector products
# ---------------------------------------------------------------------------


@njit(cache=True)
def _spmv_numba(indptr, indices, data, x, out):
    for i in range(out.shape[0]):
        acc = 0.0
        for k in range(indptr[i], indptr[i + 1]):
            acc += data[k] * x[indices[k]]
        out[i] = acc


@njit(cache=True)
def _spmv_t_numba(indptr, indices, data, x, out):
    out[:] = 0.0
    for i in range(x.shape[0]):
        xi = x[i]
        if xi != 0.0:
            for k in range(indptr[i], indptr[i + 1]):
                out[indices[k]] += data[k] * xi


def csr_matvec(indptr, indices, data, x, n_rows, row_of_entry=None):
    """out = M @ x for a CSR matrix given by (indptr, indices, data)."""
    if backend() == "numba":
        out = np.empty(n_rows)
        _spmv_numba(indptr, indices, data, x, out)
        return out
    prod = data * x[indices]
    if row_of_entry is None:
        row_of_entry = np.repeat(np.arange(n_rows), np.diff(indptr))
    return np.bincount(row_of_entry, weights=prod, minlength=n_rows)


def csr_matvec_transpose(indptr, indices, data, x, n_cols, row_of_entry=None):
    """out = M.T @ x, computed by scattering rows of M."""
    if backend() == "numba":
        out = np.empty(n_cols)
        _spmv_t_numba(indptr, indices, data, x, out)
        return out
    if row_of_entry is None:
        row_of_entry = np.repeat(np.arange(indptr.shape[0] - 1), np.diff(indptr))
    return np.bincount(indices, weights=data * x[row_of_entry], minlength=n_cols)


# ---------------------------------------------------------------------------
# Symmetric Gauss-Seidel sweep, used as an inner-solve preconditioner
# ---------------------------------------------------------------------------


@njit(cache=True)
def _sgs_numba(indptr, indices, data, diag, r, out):
    n = r.shape[0]
    # forward: (D + L) y = r
    for i in range(n):
        acc = r[i]
        for k in range(indptr[i], indptr[i + 1]):
            j = indices[k]
            if j < i:
                acc -= data[k] * out[j]
        out[i] = acc / diag[i]
    # backward: (D + U) x = D y
    for i in range(n - 1, -1, -1):
        acc = diag[i] * out[i]
        for k in range(indptr[i], indptr[i + 1]):
            j = indices[k]
            if j > i:
                acc -= data[k] * out[j]
        out[i] = acc / diag[i]


def _sgs_python(indptr, indices, data, diag, r, out):
    n = r.shape[0]
    for i in range(n):
        acc = r[i]
        for k in range(indptr[i], indptr[i + 1]):
            j = indices[k]
            if j < i:
                acc -= data[k] * out[j]
        out[i] = acc / diag[i]
    for i in range(n - 1, -1, -1):
        acc = diag[i] * out[i]
        for k in range(indptr[i], indptr[i + 1]):
            j = indices[k]
            if j > i:
                acc -= data[k] * out[j]
        out[i] = acc / diag[i]


def sgs_solve(indptr, indices, data, diag, r):
    """Apply the symmetric Gauss-Seidel preconditioner M^{-1} r.

    M = (D + L) D^{-1} (D + U) built from the CSR triangles; requires a
    nonzero diagonal (passed separately so callers can cache it).
    """
    out = np.empty_like(r)
    if backend() == "numba":
        _sgs_numba(indptr, indices, data, diag, r, out)
    else:
        _sgs_python(indptr, indices, data, diag, r, out)
    return out


# ---------------------------------------------------------------------------
# Modified Gram-Schmidt step for Arnoldi bases stored row-wise
# ---------------------------------------------------------------------------


@njit(cache=True)
def _mgs_numba(basis, w, j_plus_1, h):
    n = w.shape[0]
    for i in range(j_plus_1):
        vi = basis[i]
        s = 0.0
        for k in range(n):
            s += vi[k] * w[k]
        h[i] += s
        for k in range(n):
            w[k] -= s * vi[k]


def mgs_orthogonalize(basis, w, j_plus_1, h):
    """One modified Gram-Schmidt pass of w against basis[0:j_plus_1].

    ``basis`` holds orthonormal vectors as rows. Projection coefficients are
    accumulated into ``h`` so a reorthogonalization pass can reuse it.
    ``w`` is modified in place.
    """
    if backend() == "numba":
        _mgs_numba(basis, w, j_plus_1, h)
        return
    for i in range(j_plus_1):
        s = float(np.dot(basis[i], w))
        h[i] += s
        w -= s * basis[i]
