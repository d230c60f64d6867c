"""Configuration records for the saddle-point solvers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..linalg.csr import CsrMatrix

QB_CHOICES = ("identity", "pressure_mass", "lsc")


def _check_inner_tol(value) -> None:
    if value is None:
        return
    if not (0.0 < value <= 1e-6):
        raise ValueError(f"inner_tol must lie in (0, 1e-6], got {value}")


@dataclass(frozen=True)
class UzawaConfig:
    """Parameters of the velocity/pressure relaxation iteration.

    ``omega`` scales the pressure update. ``qa`` is either the string
    "exact", meaning the velocity update solves with the velocity block
    itself, or an explicit matrix to solve with instead. ``qb`` names the
    pressure preconditioner. ``inner_tol`` bounds the relative residual of
    every inner solve; None picks a default suited to the equation
    (1e-12 when the velocity block is symmetric, 1e-10 otherwise).
    """

    omega: float
    qa: object = "exact"
    qb: str = "identity"
    inner_tol: float | None = None

    def __post_init__(self):
        if not np.isfinite(self.omega) or self.omega <= 0.0:
            raise ValueError(f"omega must be a positive number, got {self.omega}")
        if self.qa != "exact" and not isinstance(self.qa, CsrMatrix):
            raise ValueError('qa must be "exact" or a CsrMatrix')
        if self.qb not in QB_CHOICES:
            raise ValueError(f"qb must be one of {QB_CHOICES}, got {self.qb!r}")
        _check_inner_tol(self.inner_tol)

    @property
    def qa_is_exact(self) -> bool:
        return isinstance(self.qa, str)


@dataclass(frozen=True)
class RdfConfig:
    """Parameters of the relaxed directional-factorization preconditioner.

    ``beta`` is the relaxation weight of the factored approximation;
    ``inner_tol`` governs the solves with the two augmented velocity
    blocks.
    """

    beta: float
    inner_tol: float = 1e-10

    def __post_init__(self):
        if not np.isfinite(self.beta) or self.beta <= 0.0:
            raise ValueError(f"beta must be a positive number, got {self.beta}")
        _check_inner_tol(self.inner_tol)
