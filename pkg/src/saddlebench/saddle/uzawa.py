"""The velocity/pressure relaxation iteration and its fixed-point form.

One sweep updates the velocity by a preconditioned momentum correction and
then relaxes the pressure with the scaled divergence residual:

    u' = u + Q_A^{-1} (f - A u - B^T p)
    p' = p + omega Q_B^{-1} (B u' - g)

The same sweep, read as a stationary iteration, is induced by splitting the
coupled matrix into a block-triangular part M = [[Q_A, 0], [B, -Q_B/omega]]
and the remainder N = M - K, giving the map G(x) = M^{-1}(N x + b). Both
views are implemented here and tested against each other; the solver driver
below runs the map either plainly or under window-limited extrapolation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..accel import aa_solve
from ..linalg.iterative import SolveReport
from ..linalg.operators import LinearOperator
from .config import UzawaConfig
from .inner import SaddleOps, make_matrix_solver


def _qa_solver(system, cfg: UzawaConfig, ops: SaddleOps):
    if cfg.qa_is_exact:
        return ops.solve_velocity
    nv = system.n_velocity
    if cfg.qa.shape != (nv, nv):
        raise ValueError(
            f"velocity preconditioner has shape {cfg.qa.shape}, expected ({nv}, {nv})"
        )
    return make_matrix_solver(
        cfg.qa, False, ops.inner_tol, "velocity preconditioner"
    )


def uzawa_step(system, cfg: UzawaConfig, u, p, ops=None, qa_solve=None):
    """One relaxation sweep; returns (u', p')."""
    if ops is None:
        ops = SaddleOps(system, cfg.inner_tol)
    if qa_solve is None:
        qa_solve = _qa_solver(system, cfg, ops)
    u_next = u + qa_solve(
        system.rhs_f - ops.apply_velocity(u) - ops.apply_gradient(p)
    )
    p_next = p + cfg.omega * ops.qb_solve(
        cfg.qb, ops.apply_divergence(u_next) - system.rhs_g
    )
    return u_next, p_next


class FixedPointMap:
    """The sweep as a map on stacked (u, p) vectors."""

    def __init__(self, system, cfg: UzawaConfig, ops=None):
        self.system = system
        self.cfg = cfg
        self.ops = ops if ops is not None else SaddleOps(system, cfg.inner_tol)
        self._qa_solve = _qa_solver(system, cfg, self.ops)
        self.n = system.total_dofs
        rhs_norm = float(np.linalg.norm(self.ops.saddle_rhs()))
        self._rhs_norm = rhs_norm if rhs_norm > 0.0 else 1.0

    def __call__(self, xi: np.ndarray) -> np.ndarray:
        u, p = self.ops.split(xi)
        u_next, p_next = uzawa_step(
            self.system, self.cfg, u, p, ops=self.ops, qa_solve=self._qa_solve
        )
        return np.concatenate([u_next, p_next])

    def relative_residual(self, xi: np.ndarray) -> float:
        """Residual of the coupled system at xi, relative to its rhs."""
        return self.ops.residual_norm(xi) / self._rhs_norm


def uzawa_fixed_point_map(system, cfg: UzawaConfig, ops=None) -> FixedPointMap:
    return FixedPointMap(system, cfg, ops)


@dataclass
class SplitOperators:
    """Actions of the splitting behind the sweep: M^{-1} and N."""

    m_apply_inverse: LinearOperator
    n_apply: LinearOperator


def split_operators(system, cfg: UzawaConfig, ops=None) -> SplitOperators:
    if ops is None:
        ops = SaddleOps(system, cfg.inner_tol)
    qa_solve = _qa_solver(system, cfg, ops)
    n = system.total_dofs

    def m_inverse(r):
        r1, r2 = ops.split(r)
        z1 = qa_solve(r1)
        z2 = cfg.omega * ops.qb_solve(cfg.qb, ops.apply_divergence(z1) - r2)
        return np.concatenate([z1, z2])

    def n_forward(x):
        x1, x2 = ops.split(x)
        w1 = -ops.apply_gradient(x2)
        if not cfg.qa_is_exact:
            w1 += cfg.qa @ x1 - ops.apply_velocity(x1)
        w2 = (-1.0 / cfg.omega) * ops.qb_apply(cfg.qb, x2)
        return np.concatenate([w1, w2])

    return SplitOperators(
        m_apply_inverse=LinearOperator(n, n, m_inverse),
        n_apply=LinearOperator(n, n, n_forward),
    )


def uzawa_solve(
    system,
    cfg: UzawaConfig,
    window: int = 0,
    tol: float = 1e-6,
    max_iters: int = 1000,
    x0=None,
    ops=None,
):
    """Run the sweep to tolerance; returns (u, p, SolveReport).

    ``window`` = 0 iterates the plain sweep; a positive window applies
    least-squares extrapolation over that many stored differences.
    Convergence is measured on the coupled-system residual relative to
    (f, g), evaluated at every iterate including the initial one.
    """
    gmap = FixedPointMap(system, cfg, ops)
    if x0 is None:
        x0 = np.zeros(gmap.n)

    def residual_fn(x, gx):
        return gmap.relative_residual(x)

    x, report = aa_solve(
        gmap, x0, window, tol=tol, max_iters=max_iters, residual_fn=residual_fn
    )
    u, p = gmap.ops.split(x)
    return u, p, report


__all__ = [
    "FixedPointMap",
    "SolveReport",
    "SplitOperators",
    "split_operators",
    "uzawa_fixed_point_map",
    "uzawa_solve",
    "uzawa_step",
]
