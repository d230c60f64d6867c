"""Small dense least-squares solves used by the acceleration window."""

from __future__ import annotations

import numpy as np


def least_squares_solve(mat, rhs, drop_tol: float = 1e-12, return_dropped: bool = False):
    """Minimize ||mat @ coef - rhs|| by QR factorization.

    Columns whose R-diagonal magnitude falls below ``drop_tol * ||mat||_F``
    are nearly dependent on earlier columns; their coefficients are pinned
    to zero and the remaining columns are re-solved. With ``return_dropped``
    the indices of such columns are returned as well, so callers managing a
    sliding window can shrink it.
    """
    mat = np.atleast_2d(np.asarray(mat, dtype=np.float64))
    rhs = np.asarray(rhs, dtype=np.float64).ravel()
    n, k = mat.shape
    if rhs.shape[0] != n:
        raise ValueError(f"rhs has length {rhs.shape[0]}, expected {n}")
    if k == 0:
        coef = np.zeros(0)
        return (coef, []) if return_dropped else coef

    q, r = np.linalg.qr(mat)
    fnorm = float(np.linalg.norm(mat))
    rdiag = np.abs(np.diag(r))
    keep = np.zeros(k, dtype=bool)
    keep[: rdiag.size] = rdiag >= drop_tol * max(fnorm, 1e-300)

    if keep.all():
        coef = np.linalg.solve(r, q.T @ rhs)
    else:
        coef = np.zeros(k)
        kept = np.flatnonzero(keep)
        if kept.size:
            coef[kept] = np.linalg.lstsq(mat[:, kept], rhs, rcond=None)[0]

    if return_dropped:
        return coef, [int(i) for i in np.flatnonzero(~keep)]
    return coef
