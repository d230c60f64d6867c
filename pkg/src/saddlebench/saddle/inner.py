"""Inner solves shared by the saddle-point methods.

Every outer method needs the same small toolbox: solves with the velocity
block (one scalar component at a time), solves with the pressure mass
matrix, forward applications of the full saddle operator, and the residual
of the coupled system. :class:`SaddleOps` bundles these for one assembled
system so preconditioner setup (diagonals, symmetric Gauss-Seidel data)
happens once.
"""

from __future__ import annotations

import numpy as np

from ..linalg import kernels
from ..linalg.csr import CsrMatrix, spmv_transpose
from ..linalg.iterative import IndefiniteOperatorError, cg_solve, gmres_solve
from ..linalg.operators import LinearOperator


class InnerSolveError(RuntimeError):
    """An inner solve failed to reach its tolerance."""


def sgs_preconditioner(matrix: CsrMatrix):
    """Return r -> M^{-1} r for the symmetric Gauss-Seidel splitting."""
    diag = matrix.diagonal()
    if np.any(diag == 0.0):
        raise ValueError("Gauss-Seidel preconditioning needs a nonzero diagonal")
    indptr, indices, data = matrix.indptr, matrix.indices, matrix.data

    def apply(r):
        return kernels.sgs_solve(indptr, indices, data, diag, r)

    return apply


# Largest block the dense fallback will factor; 6000^2 doubles stay
# within a few hundred megabytes.
DENSE_FALLBACK_LIMIT = 6000


def make_matrix_solver(matrix: CsrMatrix, symmetric: bool, tol: float, label: str):
    """Return rhs -> x solving ``matrix @ x = rhs`` to ``tol``.

    Symmetric blocks use conjugate gradients with symmetric Gauss-Seidel
    preconditioning; the rest use restarted GMRES with the same sweep as a
    right preconditioner, so the monitored residual is that of the original
    system.

    The sweep's triangular solves amplify exponentially once convection
    makes the off-diagonal mass outweigh the diagonal, which defeats the
    iterative path outright. Blocks that show that amplification, or whose
    iteration stalls, fall back to a dense factorization held for the
    lifetime of the solver; it is exact at the block sizes this package
    targets. Blocks too large for the fallback raise
    :class:`InnerSolveError` naming the block.
    """
    if matrix.n_rows != matrix.n_cols:
        raise ValueError(f"{label}: matrix must be square, got {matrix.shape}")
    n = matrix.n_rows
    precond = sgs_preconditioner(matrix)
    max_iters = max(2000, 2 * n + 50)

    dense_apply = None

    def dense_solve(rhs):
        nonlocal dense_apply
        if dense_apply is None:
            if n > DENSE_FALLBACK_LIMIT:
                raise InnerSolveError(
                    f"{label}: the Gauss-Seidel sweep is unstable on this "
                    f"block, and {n} unknowns exceeds the dense-fallback "
                    f"limit of {DENSE_FALLBACK_LIMIT}"
                )
            dense_apply = np.linalg.inv(matrix.to_dense())
        x = dense_apply @ rhs
        scale = float(np.linalg.norm(rhs))
        if scale == 0.0:
            return np.zeros_like(rhs)
        # a few refinement steps push the inverse-apply error below tol
        for _ in range(3):
            residual = rhs - matrix @ x
            if np.linalg.norm(residual) <= tol * scale:
                return x
            x = x + dense_apply @ residual
        raise InnerSolveError(
            f"{label}: dense fallback stalled above the target {tol:.1e}"
        )

    probe = precond(np.ones(n))
    sweep_unstable = not np.all(np.isfinite(probe)) or float(
        np.linalg.norm(probe)
    ) > 1e10 * np.sqrt(n)

    def solve(rhs):
        if sweep_unstable or dense_apply is not None:
            return dense_solve(rhs)
        try:
            if symmetric:
                x, report = cg_solve(
                    matrix, rhs, tol=tol, max_iters=max_iters, precond=precond
                )
            else:
                composed = LinearOperator(n, n, lambda v: matrix @ precond(v))
                y, report = gmres_solve(
                    composed, rhs, tol=tol, restart=100, max_iters=max_iters
                )
                x = precond(y)
        except IndefiniteOperatorError as exc:
            raise InnerSolveError(f"{label}: {exc}") from exc
        if not report.converged:
            if n <= DENSE_FALLBACK_LIMIT:
                return dense_solve(rhs)
            raise InnerSolveError(
                f"{label}: inner solve stalled at relative residual "
                f"{report.final_relative_residual:.3e} after "
                f"{report.iterations} iterations (target {tol:.1e})"
            )
        return x

    return solve


class SaddleOps:
    """Assembled-system toolbox: inner solves and coupled-system products."""

    def __init__(self, system, inner_tol: float | None = None):
        self.system = system
        if inner_tol is None:
            inner_tol = 1e-12 if system.spec.equation == "stokes" else 1e-10
        self.inner_tol = inner_tol
        symmetric = system.spec.equation == "stokes"
        self._component_solve = make_matrix_solver(
            system.velocity_block, symmetric, inner_tol, "velocity block"
        )
        # systems whose velocity block covers every velocity dof at once
        # (scalar probes, synthetic fixtures) get a single solve instead of
        # the per-component pair
        self._single_block = (
            system.velocity_block.n_rows == system.a_matrix.n_rows
        )
        self._pressure_mass_solve = None
        self._lsc = None

    # -- forward products ----------------------------------------------------

    def apply_velocity(self, v: np.ndarray) -> np.ndarray:
        return self.system.a_matrix @ v

    def apply_divergence(self, v: np.ndarray) -> np.ndarray:
        return self.system.b_matrix @ v

    def apply_gradient(self, p: np.ndarray) -> np.ndarray:
        return spmv_transpose(self.system.b_matrix, p)

    def apply_saddle(self, xi: np.ndarray) -> np.ndarray:
        """Product with [[A, B^T], [B, 0]] on a stacked (u, p) vector."""
        u, p = self.split(xi)
        return np.concatenate(
            [self.apply_velocity(u) + self.apply_gradient(p), self.apply_divergence(u)]
        )

    def split(self, xi: np.ndarray):
        nv = self.system.n_velocity
        return xi[:nv], xi[nv:]

    def saddle_rhs(self) -> np.ndarray:
        return np.concatenate([self.system.rhs_f, self.system.rhs_g])

    # -- inner solves ----------------------------------------------------------

    def solve_velocity(self, rhs: np.ndarray) -> np.ndarray:
        """Solve A z = rhs, one scalar component block at a time."""
        n = self.system.a_matrix.n_rows
        if rhs.shape != (n,):
            raise ValueError(f"rhs has shape {rhs.shape}, expected ({n},)")
        if self._single_block:
            return self._component_solve(rhs)
        ns = n // 2
        return np.concatenate(
            [self._component_solve(rhs[:ns]), self._component_solve(rhs[ns:])]
        )

    def solve_pressure_mass(self, rhs: np.ndarray) -> np.ndarray:
        if self._pressure_mass_solve is None:
            self._pressure_mass_solve = make_matrix_solver(
                self.system.pressure_mass, True, self.inner_tol, "pressure mass"
            )
        return self._pressure_mass_solve(rhs)

    def lsc(self):
        if self._lsc is None:
            from .lsc import LscPreconditioner

            self._lsc = LscPreconditioner(self.system, inner_tol=self.inner_tol)
        return self._lsc

    # -- pressure preconditioner dispatch -------------------------------------

    def qb_solve(self, qb: str, r: np.ndarray) -> np.ndarray:
        """z = Q_B^{-1} r for the named pressure preconditioner."""
        if qb == "identity":
            return r.copy()
        if qb == "pressure_mass":
            return self.solve_pressure_mass(r)
        if qb == "lsc":
            return self.lsc().apply(r)
        raise ValueError(f"unknown pressure preconditioner {qb!r}")

    def qb_apply(self, qb: str, r: np.ndarray) -> np.ndarray:
        """z = Q_B r. Only preconditioners with an explicit matrix support this."""
        if qb == "identity":
            return r.copy()
        if qb == "pressure_mass":
            return self.system.pressure_mass @ r
        if qb == "lsc":
            raise ValueError(
                "the least-squares commutator preconditioner defines only an "
                "inverse action, not a forward matrix"
            )
        raise ValueError(f"unknown pressure preconditioner {qb!r}")

    # -- residuals -------------------------------------------------------------

    def residual_norm(self, xi: np.ndarray) -> float:
        """Norm of (f, g) minus the coupled-system product at xi."""
        return float(np.linalg.norm(self.saddle_rhs() - self.apply_saddle(xi)))
