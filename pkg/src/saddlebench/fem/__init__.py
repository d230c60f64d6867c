"""Biquadratic/bilinear finite elements on structured benchmark domains."""

from .assemble import EQUATIONS, ProblemSpec, SaddleSystem, assemble, element_matrices
from .export import export_system, load_system_vectors
from .grid import DOMAINS, StructuredGrid, build_grid
from .profiles import dirichlet_conditions
from .wind import picard_wind

__all__ = [
    "DOMAINS",
    "EQUATIONS",
    "ProblemSpec",
    "SaddleSystem",
    "StructuredGrid",
    "assemble",
    "build_grid",
    "dirichlet_conditions",
    "element_matrices",
    "export_system",
    "load_system_vectors",
    "picard_wind",
]
