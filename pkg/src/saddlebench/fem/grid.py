"""Structured macro-element meshes for the four benchmark flow domains.

Each macro element carries nine velocity nodes (vertices, edge midpoints,
centroid) and four pressure nodes (vertices), so the velocity lattice is
twice as fine as the pressure lattice.  The resolution parameter ``n``
counts velocity intervals across the reference side of the domain; the
macro elements are always squares of width ``4 / n``.

Domains:

``channel``
    The square [-1, 1]^2 with flow driven left to right.
``cavity``
    The same square, driven by a sliding lid.
``obstacle``
    The duct [0, 8] x [-1, 1] with a square block [7/4, 9/4] x [-1/4, 1/4]
    cut out of the flow.
``step``
    The duct [-1, 5] x [-1, 1] with the quadrant x < 0, y < 0 removed, so
    the channel expands downward at x = 0.
"""

from dataclasses import dataclass

import numpy as np

DOMAINS = ("channel", "cavity", "obstacle", "step")


@dataclass(frozen=True)
class StructuredGrid:
    """Mesh connectivity and geometry for one domain at one resolution."""

    domain: str
    n: int
    label: str
    x_range: tuple
    y_range: tuple
    n_cells_x: int
    n_cells_y: int
    hx: float
    hy: float
    velocity_coords: np.ndarray
    pressure_coords: np.ndarray
    cell_velocity_nodes: np.ndarray
    cell_pressure_nodes: np.ndarray

    @property
    def n_velocity_nodes(self):
        return self.velocity_coords.shape[0]

    @property
    def n_pressure_nodes(self):
        return self.pressure_coords.shape[0]

    @property
    def n_cells(self):
        return self.cell_velocity_nodes.shape[0]

    @property
    def total_dofs(self):
        """Velocity components plus pressure unknowns."""
        return 2 * self.n_velocity_nodes + self.n_pressure_nodes


def _validate_resolution(domain, n):
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise ValueError(f"resolution must be an integer, got {n!r}")
    if domain in ("channel", "cavity"):
        if n < 2 or n % 2 != 0:
            raise ValueError(f"{domain} grids need an even resolution >= 2, got {n}")
    elif domain == "step":
        if n < 4 or n % 4 != 0:
            raise ValueError(
                f"step grids need a multiple of 4 so the corner lands on a "
                f"macro-element edge, got {n}"
            )
    elif domain == "obstacle":
        if n < 16 or n % 16 != 0:
            raise ValueError(
                f"obstacle grids need a multiple of 16 so the block faces land "
                f"on macro-element edges, got {n}"
            )
    else:
        raise ValueError(f"unknown domain {domain!r}; expected one of {DOMAINS}")


def build_grid(domain, n):
    """Construct the mesh for ``domain`` at resolution ``n``."""
    _validate_resolution(domain, n)

    if domain in ("channel", "cavity"):
        x_range, y_range = (-1.0, 1.0), (-1.0, 1.0)
        n_cells_x = n_cells_y = n // 2
        label = f"{n}x{n}"
    elif domain == "obstacle":
        x_range, y_range = (0.0, 8.0), (-1.0, 1.0)
        n_cells_x, n_cells_y = 2 * n, n // 2
        label = f"{n}x{2 * n}"
    else:
        x_range, y_range = (-1.0, 5.0), (-1.0, 1.0)
        n_cells_x, n_cells_y = 3 * n // 2, n // 2
        label = f"{n}x{3 * n}"

    active = np.ones((n_cells_y, n_cells_x), dtype=bool)
    if domain == "obstacle":
        # Block spans x in [7/4, 9/4], y in [-1/4, 1/4]; the alignment rule
        # guarantees these are whole numbers of cells.
        active[3 * n // 16 : 5 * n // 16, 7 * n // 16 : 9 * n // 16] = False
    elif domain == "step":
        active[: n // 4, : n // 4] = False

    hx = (x_range[1] - x_range[0]) / n_cells_x
    hy = (y_range[1] - y_range[0]) / n_cells_y

    cell_y, cell_x = np.nonzero(active)

    n_fine_x, n_fine_y = 2 * n_cells_x, 2 * n_cells_y
    velocity_active = np.zeros((n_fine_y + 1, n_fine_x + 1), dtype=bool)
    pressure_active = np.zeros((n_cells_y + 1, n_cells_x + 1), dtype=bool)
    for j in range(3):
        for i in range(3):
            velocity_active[2 * cell_y + j, 2 * cell_x + i] = True
    for d in range(2):
        for c in range(2):
            pressure_active[cell_y + d, cell_x + c] = True

    velocity_index = np.full(velocity_active.shape, -1, dtype=np.int64)
    velocity_index[velocity_active] = np.arange(int(velocity_active.sum()))
    pressure_index = np.full(pressure_active.shape, -1, dtype=np.int64)
    pressure_index[pressure_active] = np.arange(int(pressure_active.sum()))

    fine_x = np.linspace(x_range[0], x_range[1], n_fine_x + 1)
    fine_y = np.linspace(y_range[0], y_range[1], n_fine_y + 1)
    coarse_x = fine_x[::2]
    coarse_y = fine_y[::2]

    v_iy, v_ix = np.nonzero(velocity_active)
    velocity_coords = np.column_stack([fine_x[v_ix], fine_y[v_iy]])
    p_iy, p_ix = np.nonzero(pressure_active)
    pressure_coords = np.column_stack([coarse_x[p_ix], coarse_y[p_iy]])

    n_cells = len(cell_x)
    cell_velocity_nodes = np.empty((n_cells, 9), dtype=np.int64)
    for j in range(3):
        for i in range(3):
            cell_velocity_nodes[:, 3 * j + i] = velocity_index[2 * cell_y + j, 2 * cell_x + i]
    cell_pressure_nodes = np.empty((n_cells, 4), dtype=np.int64)
    for d in range(2):
        for c in range(2):
            cell_pressure_nodes[:, 2 * d + c] = pressure_index[cell_y + d, cell_x + c]

    return StructuredGrid(
        domain=domain,
        n=n,
        label=label,
        x_range=x_range,
        y_range=y_range,
        n_cells_x=n_cells_x,
        n_cells_y=n_cells_y,
        hx=hx,
        hy=hy,
        velocity_coords=velocity_coords,
        pressure_coords=pressure_coords,
        cell_velocity_nodes=cell_velocity_nodes,
        cell_pressure_nodes=cell_pressure_nodes,
    )
