"""Relaxed directional-factorization preconditioner.

The coupled system is first rewritten with the sign of the divergence row
flipped, [[A, B^T], [-B, 0]] (u, p) = (f, -g), which keeps the velocity
block in front and moves the field of values off the imaginary axis. With
the velocity split into scalar components, A = blockdiag(A1, A2) and
B = (B1, B2), the preconditioner is

    M = [[A1, -(1/beta) B1^T B2, B1^T],
         [0,   A2,               B2^T],
         [-B1, -B2,              beta I]],

which factors exactly into four block-triangular terms whose only
non-trivial solves involve the augmented blocks Ahat_i = A_i +
(1/beta) B_i^T B_i. The factored solve is implemented directly; a dense
builder of the factors backs the algebra tests.
"""

from __future__ import annotations

import numpy as np

from ..linalg.csr import spmv_transpose, weighted_gram
from ..linalg.iterative import gmres_solve
from ..linalg.operators import LinearOperator
from .config import RdfConfig
from .inner import make_matrix_solver


class RdfFactors:
    """Factored inverse action of the relaxation preconditioner."""

    def __init__(self, a1, a2, b1, b2, beta, inner_tol=1e-10, symmetric=True):
        if beta <= 0.0:
            raise ValueError(f"beta must be positive, got {beta}")
        n1, n2 = a1.n_rows, a2.n_rows
        n_p = b1.n_rows
        if b1.shape != (n_p, n1) or b2.shape != (n_p, n2):
            raise ValueError("divergence blocks do not conform with the velocity blocks")
        self.b1, self.b2 = b1, b2
        self.beta = float(beta)
        self.n1, self.n2, self.n_p = n1, n2, n_p
        a_hat1 = a1 + weighted_gram(b1.transpose()).scaled(1.0 / beta)
        a_hat2 = a2 + weighted_gram(b2.transpose()).scaled(1.0 / beta)
        self._solve1 = make_matrix_solver(
            a_hat1, symmetric, inner_tol, "first augmented velocity block"
        )
        self._solve2 = make_matrix_solver(
            a_hat2, symmetric, inner_tol, "second augmented velocity block"
        )

    @property
    def n(self) -> int:
        return self.n1 + self.n2 + self.n_p

    def apply(self, r: np.ndarray) -> np.ndarray:
        """z = M^{-1} r via the four triangular factors."""
        if r.shape != (self.n,):
            raise ValueError(f"operand has shape {r.shape}, expected ({self.n},)")
        r1 = r[: self.n1]
        r2 = r[self.n1 : self.n1 + self.n2]
        r3 = r[self.n1 + self.n2 :]
        z1 = self._solve1(r1 - spmv_transpose(self.b1, r3) / self.beta)
        w3 = (r3 + self.b1 @ z1) / self.beta
        z2 = self._solve2(r2 - spmv_transpose(self.b2, w3))
        z3 = w3 + (self.b2 @ z2) / self.beta
        return np.concatenate([z1, z2, z3])

    def operator(self) -> LinearOperator:
        return LinearOperator(self.n, self.n, self.apply)


def dense_factors(a1, a2, b1, b2, beta):
    """The four dense factors and the dense preconditioner they multiply to.

    Returns (L1, D1, D2, L2, M); desk-scale blocks only.
    """
    a1, a2 = np.asarray(a1, dtype=float), np.asarray(a2, dtype=float)
    b1, b2 = np.asarray(b1, dtype=float), np.asarray(b2, dtype=float)
    n1, n2, n_p = a1.shape[0], a2.shape[0], b1.shape[0]
    a_hat1 = a1 + b1.T @ b1 / beta
    a_hat2 = a2 + b2.T @ b2 / beta

    def blocks(rows):
        return np.block(rows)

    z = np.zeros
    i1, i2, ip = np.eye(n1), np.eye(n2), np.eye(n_p)
    l1 = blocks(
        [[i1, z((n1, n2)), b1.T / beta], [z((n2, n1)), i2, z((n2, n_p))],
         [z((n_p, n1)), z((n_p, n2)), ip]]
    )
    d1 = blocks(
        [[a_hat1, z((n1, n2)), z((n1, n_p))], [z((n2, n1)), i2, z((n2, n_p))],
         [-b1, z((n_p, n2)), ip]]
    )
    d2 = blocks(
        [[i1, z((n1, n2)), z((n1, n_p))], [z((n2, n1)), a_hat2, b2.T],
         [z((n_p, n1)), z((n_p, n2)), beta * ip]]
    )
    l2 = blocks(
        [[i1, z((n1, n2)), z((n1, n_p))], [z((n2, n1)), i2, z((n2, n_p))],
         [z((n_p, n1)), -b2 / beta, ip]]
    )
    m = blocks(
        [[a1, -b1.T @ b2 / beta, b1.T], [z((n2, n1)), a2, b2.T],
         [-b1, -b2, beta * ip]]
    )
    return l1, d1, d2, l2, m


def component_blocks(system):
    """Split the assembled divergence matrix into its component halves."""
    ns = system.n_split
    n_p = system.n_pressure
    b1 = system.b_matrix.submatrix(0, n_p, 0, ns)
    b2 = system.b_matrix.submatrix(0, n_p, ns, 2 * ns)
    return b1, b2


def rdf_preconditioner(system, cfg: RdfConfig) -> LinearOperator:
    """Inverse action of the preconditioner for an assembled system."""
    b1, b2 = component_blocks(system)
    factors = RdfFactors(
        system.velocity_block,
        system.velocity_block,
        b1,
        b2,
        cfg.beta,
        inner_tol=cfg.inner_tol,
        symmetric=system.spec.equation == "stokes",
    )
    return factors.operator()


def signed_saddle_operator(system):
    """Forward product with [[A, B^T], [-B, 0]] and the rhs (f, -g)."""
    n = system.total_dofs
    nv = system.n_velocity

    def apply(xi):
        u, p = xi[:nv], xi[nv:]
        return np.concatenate(
            [
                system.a_matrix @ u + spmv_transpose(system.b_matrix, p),
                -(system.b_matrix @ u),
            ]
        )

    rhs = np.concatenate([system.rhs_f, -system.rhs_g])
    return LinearOperator(n, n, apply), rhs


def rdf_solve(
    system,
    cfg: RdfConfig,
    restart: int = 20,
    tol: float = 1e-6,
    max_iters: int = 1000,
):
    """Left-preconditioned restarted GMRES on the sign-flipped system.

    Returns (u, p, SolveReport); the report's residuals are those of the
    preconditioned system, which is what the iteration monitors.
    """
    preconditioner = rdf_preconditioner(system, cfg)
    operator, rhs = signed_saddle_operator(system)
    n = system.total_dofs
    composed = LinearOperator(n, n, lambda x: preconditioner(operator(x)))
    xi, report = gmres_solve(
        composed,
        preconditioner(rhs),
        tol=tol,
        restart=restart,
        max_iters=max_iters,
    )
    nv = system.n_velocity
    return xi[:nv], xi[nv:], report


__all__ = [
    "RdfFactors",
    "component_blocks",
    "dense_factors",
    "rdf_preconditioner",
    "rdf_solve",
    "signed_saddle_operator",
]
