"""Assembly of the discrete saddle-point systems.

The assembled problem is

    [ A  B^T ] [u]   [f]
    [ B  0   ] [p] = [g]

with ``A`` block diagonal over the two velocity components (diffusion
plus, for the convected equation, a wind term) and ``B`` the negative
discrete divergence.  Velocity unknowns are ordered all-x then all-y, so
``n_split`` gives the per-component block size.

Prescribed boundary values are eliminated symmetrically: constrained
rows and columns of ``A`` are cleared to the identity, the matching
columns of ``B`` are cleared, and the right-hand sides absorb the moved
terms.  The eliminated unknowns stay in the vectors, so dof counts are
unchanged and solving the system reproduces the boundary values exactly.
"""

from dataclasses import dataclass

import numpy as np

from ..linalg import CsrMatrix
from . import reference
from .grid import StructuredGrid, build_grid
from .profiles import dirichlet_conditions

EQUATIONS = ("stokes", "oseen")


@dataclass(frozen=True)
class ProblemSpec:
    """Which discrete problem to assemble."""

    domain: str
    n: int
    equation: str = "stokes"
    viscosity: float = 1.0

    def __post_init__(self):
        if self.equation not in EQUATIONS:
            raise ValueError(f"equation must be one of {EQUATIONS}, got {self.equation!r}")
        if not self.viscosity > 0:
            raise ValueError(f"viscosity must be positive, got {self.viscosity}")


@dataclass
class SaddleSystem:
    """An assembled system together with the data solvers need."""

    spec: ProblemSpec
    grid: StructuredGrid
    a_matrix: CsrMatrix
    b_matrix: CsrMatrix
    rhs_f: np.ndarray
    rhs_g: np.ndarray
    n_split: int
    velocity_block: CsrMatrix
    velocity_mass_diagonal: np.ndarray
    pressure_mass: CsrMatrix
    dirichlet_mask: np.ndarray
    dirichlet_values: np.ndarray
    enclosed: bool

    @property
    def n_velocity(self):
        return 2 * self.n_split

    @property
    def n_pressure(self):
        return self.b_matrix.n_rows

    @property
    def total_dofs(self):
        return self.n_velocity + self.n_pressure


def element_matrices(hx, hy):
    """Single-element matrices on a ``hx`` by ``hy`` rectangle.

    Returns a dict with the velocity ``stiffness`` and ``mass`` (9 x 9),
    the negative-divergence couplings ``div_x`` and ``div_y`` (4 x 9),
    and the ``pressure_mass`` (4 x 4).
    """
    points, weights = reference.quadrature_points()
    values, d_xi, d_eta = reference.biquadratic_basis(points)
    pressure = reference.bilinear_basis(points)
    scale = weights * (hx * hy / 4.0)
    dx = d_xi * (2.0 / hx)
    dy = d_eta * (2.0 / hy)
    stiffness = np.einsum("q,qi,qj->ij", scale, dx, dx) + np.einsum(
        "q,qi,qj->ij", scale, dy, dy
    )
    mass = np.einsum("q,qi,qj->ij", scale, values, values)
    div_x = -np.einsum("q,qk,qj->kj", scale, pressure, dx)
    div_y = -np.einsum("q,qk,qj->kj", scale, pressure, dy)
    pressure_mass = np.einsum("q,qk,ql->kl", scale, pressure, pressure)
    return {
        "stiffness": stiffness,
        "mass": mass,
        "div_x": div_x,
        "div_y": div_y,
        "pressure_mass": pressure_mass,
    }


def _convection_blocks(grid, wind):
    """Per-element wind matrices, shape ``(n_cells, 9, 9)``."""
    points, weights = reference.quadrature_points()
    values, d_xi, d_eta = reference.biquadratic_basis(points)
    scale = weights * (grid.hx * grid.hy / 4.0)
    dx = d_xi * (2.0 / grid.hx)
    dy = d_eta * (2.0 / grid.hy)
    cells = grid.cell_velocity_nodes
    n_nodes = grid.n_velocity_nodes
    wind_x_at_q = wind[:n_nodes][cells] @ values.T
    wind_y_at_q = wind[n_nodes:][cells] @ values.T
    blocks = np.einsum("q,qi,eq,qj->eij", scale, values, wind_x_at_q, dx, optimize=True)
    blocks += np.einsum("q,qi,eq,qj->eij", scale, values, wind_y_at_q, dy, optimize=True)
    return blocks


def assemble(spec, wind=None):
    """Assemble the system described by ``spec``.

    ``wind`` supplies nodal values of the convecting velocity for the
    ``oseen`` equation, ordered like the velocity unknowns; omit it (or
    pass zeros) to recover the symmetric problem.
    """
    grid = build_grid(spec.domain, spec.n)
    n_nodes = grid.n_velocity_nodes
    n_pressure = grid.n_pressure_nodes
    cells = grid.cell_velocity_nodes
    pcells = grid.cell_pressure_nodes
    n_cells = grid.n_cells

    parts = element_matrices(grid.hx, grid.hy)
    block_data = np.broadcast_to(
        spec.viscosity * parts["stiffness"], (n_cells, 9, 9)
    )
    if wind is not None:
        wind = np.asarray(wind, dtype=np.float64).ravel()
        if wind.shape != (2 * n_nodes,):
            raise ValueError(
                f"wind must have length {2 * n_nodes} "
                f"(two components per velocity node), got {wind.shape}"
            )
        if spec.equation == "stokes":
            raise ValueError("wind is only meaningful for the oseen equation")
        block_data = block_data + _convection_blocks(grid, wind)

    rows = np.broadcast_to(cells[:, :, None], (n_cells, 9, 9)).ravel()
    cols = np.broadcast_to(cells[:, None, :], (n_cells, 9, 9)).ravel()
    data = np.ascontiguousarray(block_data).ravel()
    velocity_raw = CsrMatrix.from_coo(rows, cols, data, (n_nodes, n_nodes))

    b_rows = np.broadcast_to(pcells[:, :, None], (n_cells, 4, 9)).ravel()
    b_cols = np.broadcast_to(cells[:, None, :], (n_cells, 4, 9)).ravel()
    bx_data = np.broadcast_to(parts["div_x"], (n_cells, 4, 9)).ravel()
    by_data = np.broadcast_to(parts["div_y"], (n_cells, 4, 9)).ravel()
    div_x_raw = CsrMatrix.from_coo(b_rows, b_cols, bx_data, (n_pressure, n_nodes))
    div_y_raw = CsrMatrix.from_coo(b_rows, b_cols, by_data, (n_pressure, n_nodes))

    mp_rows = np.broadcast_to(pcells[:, :, None], (n_cells, 4, 4)).ravel()
    mp_cols = np.broadcast_to(pcells[:, None, :], (n_cells, 4, 4)).ravel()
    mp_data = np.broadcast_to(parts["pressure_mass"], (n_cells, 4, 4)).ravel()
    pressure_mass = CsrMatrix.from_coo(mp_rows, mp_cols, mp_data, (n_pressure, n_pressure))

    mass_diag = np.zeros(n_nodes)
    np.add.at(
        mass_diag,
        cells.ravel(),
        np.broadcast_to(np.diag(parts["mass"]), (n_cells, 9)).ravel(),
    )

    pinned_nodes, pinned_values = dirichlet_conditions(grid)
    pinned = np.zeros(n_nodes, dtype=bool)
    pinned[pinned_nodes] = True
    lift_x = np.zeros(n_nodes)
    lift_y = np.zeros(n_nodes)
    lift_x[pinned_nodes] = pinned_values[:, 0]
    lift_y[pinned_nodes] = pinned_values[:, 1]

    rhs_f = np.concatenate([-(velocity_raw @ lift_x), -(velocity_raw @ lift_y)])
    rhs_f[np.concatenate([pinned, pinned])] = np.concatenate(
        [lift_x[pinned], lift_y[pinned]]
    )
    rhs_g = -(div_x_raw @ lift_x) - (div_y_raw @ lift_y)

    keep = ~(pinned[rows] | pinned[cols])
    diag_ids = pinned_nodes.astype(np.int64)
    block_rows = np.concatenate([rows[keep], diag_ids])
    block_cols = np.concatenate([cols[keep], diag_ids])
    block_vals = np.concatenate([data[keep], np.ones(len(diag_ids))])
    velocity_block = CsrMatrix.from_coo(
        block_rows, block_cols, block_vals, (n_nodes, n_nodes)
    )

    a_matrix = CsrMatrix.from_coo(
        np.concatenate([block_rows, block_rows + n_nodes]),
        np.concatenate([block_cols, block_cols + n_nodes]),
        np.concatenate([block_vals, block_vals]),
        (2 * n_nodes, 2 * n_nodes),
    )

    b_keep = ~pinned[b_cols]
    b_matrix = CsrMatrix.from_coo(
        np.concatenate([b_rows[b_keep], b_rows[b_keep]]),
        np.concatenate([b_cols[b_keep], b_cols[b_keep] + n_nodes]),
        np.concatenate([bx_data[b_keep], by_data[b_keep]]),
        (n_pressure, 2 * n_nodes),
    )

    return SaddleSystem(
        spec=spec,
        grid=grid,
        a_matrix=a_matrix,
        b_matrix=b_matrix,
        rhs_f=rhs_f,
        rhs_g=rhs_g,
        n_split=n_nodes,
        velocity_block=velocity_block,
        velocity_mass_diagonal=np.concatenate([mass_diag, mass_diag]),
        pressure_mass=pressure_mass,
        dirichlet_mask=np.concatenate([pinned, pinned]),
        dirichlet_values=np.concatenate([lift_x, lift_y]),
        enclosed=spec.domain in ("channel", "cavity"),
    )
