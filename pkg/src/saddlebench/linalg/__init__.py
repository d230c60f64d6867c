from .csr import CsrMatrix, spmv, spmv_transpose, weighted_gram
from .iterative import IndefiniteOperatorError, SolveReport, cg_solve, gmres_solve
from .lstsq import least_squares_solve
from .mmio import MatrixMarketError, mm_read, mm_write
from .operators import (
    LinearOperator,
    as_operator,
    diagonal_operator,
    identity_operator,
    transpose_operator,
)

__all__ = [
    "CsrMatrix",
    "IndefiniteOperatorError",
    "LinearOperator",
    "MatrixMarketError",
    "SolveReport",
    "as_operator",
    "cg_solve",
    "diagonal_operator",
    "gmres_solve",
    "identity_operator",
    "least_squares_solve",
    "mm_read",
    "mm_write",
    "spmv",
    "spmv_transpose",
    "transpose_operator",
    "weighted_gram",
]
