"""Krylov solvers: conjugate gradients and restarted GMRES.

Both solvers measure convergence as ||b - A x|| / ||b|| and return a
:class:`SolveReport` whose residual history has exactly one entry per
iteration plus the initial residual. Recurrence-based residual estimates
are replaced by true (recomputed) residuals at verification points, and
iteration continues if the true residual has not actually met the
tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .operators import LinearOperator, as_operator


class IndefiniteOperatorError(RuntimeError):
    """Raised when CG meets a direction of non-positive curvature."""


@dataclass
class SolveReport:
    iterations: int
    final_relative_residual: float
    converged: bool
    residual_history: list[float] = field(default_factory=list)
    stagnated: bool = False
    diverged: bool = False


def _as_square_operator(op) -> LinearOperator:
    a = as_operator(op)
    if a.n_rows != a.n_cols:
        raise ValueError(f"operator must be square, got shape {a.shape}")
    return a


def cg_solve(
    op,
    b,
    x0=None,
    tol: float = 1e-6,
    max_iters: int | None = None,
    precond=None,
):
    """Conjugate gradients for symmetric positive definite operators.

    Parameters
    ----------
    op : CsrMatrix, LinearOperator or dense array
    b : ndarray
    x0 : ndarray, optional
        Starting iterate, zero by default.
    tol : float
        Relative residual target.
    max_iters : int, optional
        Iteration cap; defaults to ``2 n + 50``.
    precond : callable, optional
        Application of an SPD preconditioner inverse, ``z = M^{-1} r``.

    Raises
    ------
    IndefiniteOperatorError
        If a search direction has non-positive curvature, which means the
        operator (or preconditioner) is not positive definite.
    """
    a = _as_square_operator(op)
    n = a.n_rows
    b = np.asarray(b, dtype=np.float64)
    if max_iters is None:
        max_iters = 2 * n + 50
    b_norm = float(np.linalg.norm(b))
    if b_norm == 0.0:
        return np.zeros(n), SolveReport(0, 0.0, True, [0.0])

    if x0 is None:
        x = np.zeros(n)
        r = b.copy()
    else:
        x = np.asarray(x0, dtype=np.float64).copy()
        r = b - a(x)
    rel = float(np.linalg.norm(r)) / b_norm
    history = [rel]
    total = 0

    while True:
        # one CG sweep on the current residual, using recurrence residuals
        z = precond(r) if precond is not None else r.copy()
        rz = float(r @ z)
        p = z.copy()
        while rel > tol and total < max_iters:
            ap = a(p)
            pap = float(p @ ap)
            if pap <= 0.0:
                raise IndefiniteOperatorError(
                    f"non-positive curvature p^T A p = {pap:.3e} at iteration {total}"
                )
            alpha = rz / pap
            x += alpha * p
            r -= alpha * ap
            rel = float(np.linalg.norm(r)) / b_norm
            history.append(rel)
            total += 1
            if rel <= tol or total >= max_iters:
                break
            z = precond(r) if precond is not None else r.copy()
            rz_new = float(r @ z)
            p = z + (rz_new / rz) * p
            rz = rz_new
        # verify with a recomputed residual before declaring convergence
        r = b - a(x)
        rel = float(np.linalg.norm(r)) / b_norm
        history[-1] = rel
        if rel <= tol or total >= max_iters:
            break

    return x, SolveReport(total, rel, rel <= tol, history)


def gmres_solve(
    op,
    b,
    x0=None,
    tol: float = 1e-6,
    restart: int = 30,
    max_iters: int = 1000,
    callback=None,
    breakdown_tol: float = 1e-14,
):
    """Restarted GMRES with modified Gram-Schmidt Arnoldi.

    One reorthogonalization pass runs whenever the orthogonalized vector
    loses more than a fixed fraction of its norm. Residual history entries
    are the Givens least-squares estimates, overwritten by the true
    recomputed residual at every restart boundary and at termination.
    A cycle without residual decrease sets ``stagnated`` on the report but
    is not an error.

    Parameters
    ----------
    callback : callable, optional
        Invoked as ``callback(k, x_k, rel_k)`` after every inner step with
        the reconstructed iterate; reconstruction costs extra work, so use
        only for diagnostics.
    """
    a = _as_square_operator(op)
    n = a.n_rows
    b = np.asarray(b, dtype=np.float64)
    if restart < 1:
        raise ValueError("restart must be at least 1")
    b_norm = float(np.linalg.norm(b))
    if b_norm == 0.0:
        return np.zeros(n), SolveReport(0, 0.0, True, [0.0])

    if x0 is None:
        x = np.zeros(n)
        r = b.copy()
    else:
        x = np.asarray(x0, dtype=np.float64).copy()
        r = b - a(x)
    beta = float(np.linalg.norm(r))
    rel = beta / b_norm
    history = [rel]
    it = 0
    converged = rel <= tol
    stagnated = False
    prev_cycle_rel = rel

    while not converged and it < max_iters and beta > 0.0:
        m = min(restart, max_iters - it)
        basis = np.empty((m + 1, n))
        hess = np.zeros((m + 1, m))
        cs = np.zeros(m)
        sn = np.zeros(m)
        g = np.zeros(m + 1)
        basis[0] = r / beta
        g[0] = beta
        j_done = 0
        breakdown = False

        for j in range(m):
            w = a(basis[j]).astype(np.float64, copy=True)
            wnorm0 = float(np.linalg.norm(w))
            hcol = np.zeros(j + 1)
            kernels.mgs_orthogonalize(basis, w, j + 1, hcol)
            wnorm1 = float(np.linalg.norm(w))
            if wnorm1 < 0.7 * wnorm0:
                kernels.mgs_orthogonalize(basis, w, j + 1, hcol)
                wnorm1 = float(np.linalg.norm(w))
            hess[: j + 1, j] = hcol
            hess[j + 1, j] = wnorm1
            breakdown = wnorm1 <= breakdown_tol * max(wnorm0, 1e-300)
            if not breakdown:
                basis[j + 1] = w / wnorm1

            for i in range(j):
                t = cs[i] * hess[i, j] + sn[i] * hess[i + 1, j]
                hess[i + 1, j] = -sn[i] * hess[i, j] + cs[i] * hess[i + 1, j]
                hess[i, j] = t
            denom = math.hypot(hess[j, j], hess[j + 1, j])
            if denom == 0.0:
                cs[j], sn[j] = 1.0, 0.0
            else:
                cs[j] = hess[j, j] / denom
                sn[j] = hess[j + 1, j] / denom
            hess[j, j] = cs[j] * hess[j, j] + sn[j] * hess[j + 1, j]
            hess[j + 1, j] = 0.0
            g[j + 1] = -sn[j] * g[j]
            g[j] = cs[j] * g[j]

            it += 1
            j_done = j + 1
            rel_est = abs(g[j + 1]) / b_norm
            history.append(rel_est)
            if callback is not None:
                y = _solve_upper(hess[:j_done, :j_done], g[:j_done])
                callback(it, x + y @ basis[:j_done], rel_est)
            if rel_est <= tol or breakdown:
                break

        y = _solve_upper(hess[:j_done, :j_done], g[:j_done])
        x = x + y @ basis[:j_done]
        r = b - a(x)
        beta = float(np.linalg.norm(r))
        rel = beta / b_norm
        history[-1] = rel
        converged = rel <= tol
        if not converged and rel >= prev_cycle_rel:
            stagnated = True
            if breakdown:
                # the Krylov space was exhausted without progress; another
                # restart from the same residual cannot improve on it
                break
        prev_cycle_rel = rel

    return x, SolveReport(it, rel, converged, history, stagnated=stagnated)


def _solve_upper(r: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    if r.size == 0:
        return np.zeros(0)
    if np.all(np.abs(np.diag(r)) > 0.0):
        return np.linalg.solve(r, rhs)
    return np.linalg.lstsq(r, rhs, rcond=None)[0]
