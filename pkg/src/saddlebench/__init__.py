"""saddlebench: saddle-point solvers and a Stokes/Oseen benchmark suite.

The package provides Uzawa iterations (standard and preconditioned),
Anderson acceleration of their fixed-point form, preconditioned GMRES on
the equivalent Uzawa-splitting system, and a relaxed dimensional
factorization preconditioner, together with a Q2-Q1 finite element
assembler for four classic incompressible-flow test problems and a CLI
that reruns the bundled reference iteration-count tables.
"""

from .backend import backend, set_backend

__version__ = "0.1.0"

__all__ = ["backend", "set_backend", "__version__"]
