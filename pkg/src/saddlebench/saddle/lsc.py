"""Least-squares commutator preconditioner for the pressure block.

The inverse action approximates the dual operator's inverse by

    Q_B^{-1} = P^{-1} (B W B^T-style middle factor) P^{-1},
    P = B M1^{-1} B^T,

where M1 is the diagonal of the velocity mass matrix and the middle factor
is B M1^{-1} A M1^{-1} B^T. Applying it costs two solves with the sparse
matrix P (conjugate gradients, symmetric Gauss-Seidel preconditioned) and
one product with the velocity block. On enclosed domains P annihilates the
constant pressure, so right-hand sides are projected onto its range and the
solves stay in that complement.
"""

from __future__ import annotations

import numpy as np

from ..linalg.csr import spmv_transpose, weighted_gram
from ..linalg.iterative import IndefiniteOperatorError, cg_solve
from .inner import InnerSolveError, sgs_preconditioner


class LscPreconditioner:
    """Inverse action on pressure vectors; see the module docstring."""

    def __init__(self, system, inner_tol: float = 1e-10):
        mass = system.velocity_mass_diagonal
        if np.any(mass <= 0.0):
            raise ValueError("velocity mass diagonal must be strictly positive")
        self.system = system
        self.inner_tol = inner_tol
        self.inv_mass = 1.0 / mass
        self.poisson = weighted_gram(system.b_matrix, self.inv_mass)
        if np.any(self.poisson.diagonal() == 0.0):
            raise ValueError(
                "the scaled divergence gram matrix has an empty row; the "
                "pressure space is degenerate beyond its constant mode"
            )
        self.enclosed = system.enclosed
        self._sgs = sgs_preconditioner(self.poisson)
        self.n = system.n_pressure

    def _project(self, r: np.ndarray) -> np.ndarray:
        return r - r.mean()

    def _solve_poisson(self, rhs: np.ndarray) -> np.ndarray:
        if self.enclosed:
            rhs = self._project(rhs)
            precond = lambda r: self._project(self._sgs(self._project(r)))  # noqa: E731
        else:
            precond = self._sgs
        try:
            x, report = cg_solve(
                self.poisson, rhs, tol=self.inner_tol, precond=precond
            )
        except IndefiniteOperatorError as exc:
            raise InnerSolveError(
                f"pressure gram solve in the commutator preconditioner: {exc}"
            ) from exc
        if not report.converged:
            raise InnerSolveError(
                "pressure gram solve in the commutator preconditioner stalled "
                f"at relative residual {report.final_relative_residual:.3e}"
            )
        return x

    def apply(self, r: np.ndarray) -> np.ndarray:
        """z = Q_B^{-1} r."""
        if r.shape != (self.n,):
            raise ValueError(f"operand has shape {r.shape}, expected ({self.n},)")
        z = self._solve_poisson(r)
        t = self.inv_mass * spmv_transpose(self.system.b_matrix, z)
        t = self.inv_mass * (self.system.a_matrix @ t)
        return self._solve_poisson(self.system.b_matrix @ t)


def lsc_apply(system, r: np.ndarray, inner_tol: float = 1e-10) -> np.ndarray:
    """One-off inverse application; builds the preconditioner transiently."""
    return LscPreconditioner(system, inner_tol=inner_tol).apply(r)
