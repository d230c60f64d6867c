"""Saddle-point solvers: relaxation sweeps, Krylov routes, preconditioners."""

from .config import QB_CHOICES, RdfConfig, UzawaConfig
from .eigs import EigenIterationError, SchurEstimate, estimate_schur_omega
from .inner import InnerSolveError, SaddleOps, make_matrix_solver, sgs_preconditioner
from .krylov import pgmres_operator, pgmres_solve, schur_solve_route
from .lsc import LscPreconditioner, lsc_apply
from .rdf import (
    RdfFactors,
    component_blocks,
    dense_factors,
    rdf_preconditioner,
    rdf_solve,
    signed_saddle_operator,
)
from .uzawa import (
    FixedPointMap,
    SplitOperators,
    split_operators,
    uzawa_fixed_point_map,
    uzawa_solve,
    uzawa_step,
)

__all__ = [
    "QB_CHOICES",
    "EigenIterationError",
    "FixedPointMap",
    "InnerSolveError",
    "LscPreconditioner",
    "RdfConfig",
    "RdfFactors",
    "SaddleOps",
    "SchurEstimate",
    "SplitOperators",
    "UzawaConfig",
    "component_blocks",
    "dense_factors",
    "estimate_schur_omega",
    "lsc_apply",
    "make_matrix_solver",
    "pgmres_operator",
    "pgmres_solve",
    "rdf_preconditioner",
    "rdf_solve",
    "schur_solve_route",
    "sgs_preconditioner",
    "split_operators",
    "uzawa_fixed_point_map",
    "uzawa_solve",
    "uzawa_step",
]
