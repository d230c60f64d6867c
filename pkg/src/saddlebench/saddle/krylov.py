"""Krylov routes for the coupled system under exact velocity solves.

With Q_A = A the left-preconditioned coupled system collapses to a block
upper-triangular one,

    [[I, A^{-1} B^T], [0, omega Q_B^{-1} B A^{-1} B^T]] (u, p) = c,
    c = (A^{-1} f, omega Q_B^{-1} (B A^{-1} f - g)),

so each operator application costs one velocity solve and one pressure
preconditioner solve. Alternatively the pressure can be found first from
the (preconditioned) dual system and the velocity recovered by one more
solve; both routes are provided.
"""

from __future__ import annotations

import numpy as np

from ..linalg.iterative import cg_solve, gmres_solve
from ..linalg.operators import LinearOperator
from .config import UzawaConfig
from .inner import SaddleOps


def _require_exact(cfg: UzawaConfig) -> None:
    if not cfg.qa_is_exact:
        raise ValueError(
            "the coupled Krylov routes assume exact velocity solves "
            '(qa="exact")'
        )


def pgmres_operator(system, cfg: UzawaConfig, ops=None):
    """Return (operator, rhs) of the collapsed coupled system."""
    _require_exact(cfg)
    if ops is None:
        ops = SaddleOps(system, cfg.inner_tol)
    n = system.total_dofs

    def apply(xi):
        u, p = ops.split(xi)
        z = ops.solve_velocity(ops.apply_gradient(p))
        bottom = cfg.omega * ops.qb_solve(cfg.qb, ops.apply_divergence(z))
        return np.concatenate([u + z, bottom])

    lifted = ops.solve_velocity(system.rhs_f)
    rhs = np.concatenate(
        [
            lifted,
            cfg.omega
            * ops.qb_solve(cfg.qb, ops.apply_divergence(lifted) - system.rhs_g),
        ]
    )
    return LinearOperator(n, n, apply), rhs


def pgmres_solve(
    system,
    cfg: UzawaConfig,
    restart: int = 20,
    tol: float = 1e-6,
    max_iters: int = 1000,
    ops=None,
):
    """Restarted GMRES on the collapsed system; returns (u, p, SolveReport)."""
    if ops is None:
        ops = SaddleOps(system, cfg.inner_tol)
    operator, rhs = pgmres_operator(system, cfg, ops)
    xi, report = gmres_solve(
        operator, rhs, tol=tol, restart=restart, max_iters=max_iters
    )
    u, p = ops.split(xi)
    return u, p, report


def schur_solve_route(
    system,
    cfg: UzawaConfig,
    tol: float = 1e-6,
    max_iters: int = 1000,
    restart: int = 50,
    ops=None,
):
    """Solve the pressure dual system first, then recover the velocity.

    The dual operator S = B A^{-1} B^T is iterated preconditioned by Q_B:
    conjugate gradients when both are symmetric positive (semi)definite,
    otherwise GMRES on the left-preconditioned form. Returns
    (u, p, SolveReport) where the report describes the pressure solve.
    """
    _require_exact(cfg)
    if ops is None:
        ops = SaddleOps(system, cfg.inner_tol)
    n_p = system.n_pressure

    def schur_apply(p):
        return ops.apply_divergence(ops.solve_velocity(ops.apply_gradient(p)))

    dual_rhs = (
        ops.apply_divergence(ops.solve_velocity(system.rhs_f)) - system.rhs_g
    )

    symmetric = system.spec.equation == "stokes" and cfg.qb != "lsc"
    if symmetric:
        precond = None
        if cfg.qb != "identity":
            precond = lambda r: ops.qb_solve(cfg.qb, r)  # noqa: E731
        p, report = cg_solve(
            LinearOperator(n_p, n_p, schur_apply),
            dual_rhs,
            tol=tol,
            max_iters=max_iters,
            precond=precond,
        )
    else:
        preconditioned = LinearOperator(
            n_p, n_p, lambda q: ops.qb_solve(cfg.qb, schur_apply(q))
        )
        p, report = gmres_solve(
            preconditioned,
            ops.qb_solve(cfg.qb, dual_rhs),
            tol=tol,
            restart=restart,
            max_iters=max_iters,
        )
    u = ops.solve_velocity(system.rhs_f - ops.apply_gradient(p))
    return u, p, report
