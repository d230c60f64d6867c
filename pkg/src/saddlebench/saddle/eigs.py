"""Extreme eigenvalues of the dual operator and the relaxation they imply.

For a symmetric velocity block the pressure update converges fastest with
omega = 2 / (lambda_min + lambda_max), the extreme eigenvalues of
S = B A^{-1} B^T. Both are estimated by power iteration in operator form:
lambda_max directly on S, lambda_min through the shifted operator
lambda_max I - S whose dominant eigenvalue is lambda_max - lambda_min.
On enclosed domains the constant pressure mode is S's null space and is
projected out, so lambda_min is taken over its complement.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .inner import SaddleOps

_ESTIMATE_INNER_TOL = 1e-8


@dataclass(frozen=True)
class SchurEstimate:
    lambda_min: float
    lambda_max: float
    omega_opt: float

    def __post_init__(self):
        if not (0.0 < self.lambda_min <= self.lambda_max):
            raise ValueError(
                f"eigenvalue estimates must satisfy 0 < min <= max, got "
                f"({self.lambda_min}, {self.lambda_max})"
            )


class EigenIterationError(RuntimeError):
    """Power iteration failed to settle within its iteration cap."""


def _power_iteration(apply, n, project, tol, max_iters, rng, label):
    """Dominant eigenvalue of a symmetric PSD operator via power iteration.

    Convergence is declared when the Rayleigh quotient moves by less than
    ``tol`` relatively over a short lag, which guards against the
    step-to-step increments dipping early on clustered spectra. A vector
    annihilated by the operator reports eigenvalue zero.
    """
    v = project(rng.standard_normal(n))
    norm = np.linalg.norm(v)
    if norm == 0.0:
        raise ValueError("projection annihilated the start vector")
    v /= norm
    lag = 4
    recent = []
    value = None
    for _ in range(max_iters):
        w = project(apply(v))
        value = float(v @ w)
        w_norm = float(np.linalg.norm(w))
        if w_norm <= 1e-300 or value <= 1e-300:
            return max(value, 0.0)
        recent.append(value)
        if len(recent) > lag:
            recent.pop(0)
            spread = max(recent) - min(recent)
            if spread <= tol * abs(value):
                return value
        v = w / w_norm
    raise EigenIterationError(
        f"{label}: power iteration did not settle to {tol:.1e} within "
        f"{max_iters} iterations (last value {value})"
    )


def estimate_schur_omega(
    system,
    ops=None,
    tol: float = 1e-4,
    max_iters: int = 20000,
    seed: int = 0,
) -> SchurEstimate:
    """Estimate the extreme dual eigenvalues and the optimal relaxation."""
    if system.spec.equation != "stokes":
        raise ValueError(
            "the relaxation estimate assumes a symmetric positive velocity "
            "block; assemble without a convection wind"
        )
    if ops is None:
        ops = SaddleOps(system, inner_tol=_ESTIMATE_INNER_TOL)
    n_p = system.n_pressure
    rng = np.random.default_rng(seed)

    def schur_apply(p):
        return ops.apply_divergence(ops.solve_velocity(ops.apply_gradient(p)))

    if system.enclosed:
        project = lambda r: r - r.mean()  # noqa: E731
    else:
        project = lambda r: r  # noqa: E731

    lam_max = _power_iteration(
        schur_apply, n_p, project, tol, max_iters, rng, "largest dual eigenvalue"
    )
    shifted = lambda p: lam_max * p - schur_apply(p)  # noqa: E731
    gap = _power_iteration(
        shifted, n_p, project, tol, max_iters, rng, "smallest dual eigenvalue"
    )
    lam_min = lam_max - gap
    return SchurEstimate(
        lambda_min=lam_min,
        lambda_max=lam_max,
        omega_opt=2.0 / (lam_min + lam_max),
    )
