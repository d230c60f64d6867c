"""Published iteration counts and tuned parameters for the benchmark tables.

Each table below transcribes one published experiment grid: per cell, the
iteration count reported there plus the parameters that produced it (the
pressure-update damping factor, the acceleration window or restart length,
and the factorization weight where the factorized preconditioner ran).
Two sentinel strings mirror the published notation for runs that did not
finish: ``">1000"`` for iterations still reducing the residual at the cap
and ``"*"`` for iterates that were not converging at all. A damping factor
of ``None`` records that no workable value was found for that cell, so
there is nothing to rerun.
"""

from __future__ import annotations

from dataclasses import dataclass

EXCEEDED = ">1000"
DIVERGED = "*"

AUTO_OMEGA = "auto"


@dataclass(frozen=True)
class ReferenceCell:
    """One published measurement: a (problem, method, parameters) point."""

    problem: str
    equation: str
    nu: float
    grid: int
    method: str
    window: int
    omega: float | str | None
    beta: float | None
    published: int | str


@dataclass(frozen=True)
class ReferenceTable:
    table_id: int
    title: str
    cells: tuple[ReferenceCell, ...]


# Channel Stokes, plain splitting (no pressure preconditioner), damping
# estimated from the extreme dual eigenvalues.
# (grid, ASU(20), NASU, PGMRES(20))
_TABLE1_ROWS = (
    (16, 20, 261, 19),
    (32, 26, 268, 29),
    (64, 26, 228, 29),
    (128, 25, 175, 26),
    (256, 22, 119, 25),
)

# Channel Stokes with the pressure-mass preconditioner, damping 1.
# (grid, APU(10), NAPU, PGMRES(10), RDF(10), beta)
_TABLE2_ROWS = (
    (16, 10, 44, 10, 10, 0.0044),
    (32, 10, 43, 11, 11, 0.0014),
    (64, 11, 41, 12, 11, 0.0003),
    (128, 11, 38, 12, 10, 0.0001),
    (256, 11, 36, 12, 9, 0.0003),
)

# Lid-driven cavity Stokes, same methods and damping as table 2.
_TABLE3_ROWS = (
    (16, 12, 49, 12, 12, 0.004),
    (32, 12, 50, 14, 12, 0.0015),
    (64, 12, 50, 14, 13, 0.0004),
    (128, 11, 49, 14, 13, 0.0001),
    (256, 11, 48, 14, 13, 0.00002),
)

# Lid-driven cavity Oseen with the least-squares commutator, window 20.
# (nu, grid, omega, APU(20), NAPU, PGMRES(20))
_TABLE4_ROWS = (
    (0.1, 16, 0.64, 10, 11, 10),
    (0.1, 32, 0.45, 12, 17, 12),
    (0.1, 64, 0.29, 15, 27, 15),
    (0.1, 128, 0.16, 18, 46, 18),
    (0.1, 256, 0.087, 28, 77, 41),
    (0.01, 16, 1.2, 16, 51, 16),
    (0.01, 32, 0.74, 21, 91, 20),
    (0.01, 64, 0.43, 23, 148, 24),
    (0.01, 128, 0.24, 31, 244, 40),
    (0.01, 256, 0.12, 32, 402, 48),
    (0.001, 16, None, DIVERGED, DIVERGED, DIVERGED),
    (0.001, 32, 1.6, 99, DIVERGED, 378),
    (0.001, 64, 0.87, 111, DIVERGED, 600),
    (0.001, 128, 0.31, 99, DIVERGED, EXCEEDED),
    (0.001, 256, 0.17, 113, DIVERGED, EXCEEDED),
)

# Restart sweep: cavity Oseen nu=0.001 on the 64x64 grid, damping 0.87.
# (restart, iterations)
_TABLE5_ROWS = (
    (20, 600),
    (30, 343),
    (40, 190),
    (50, 167),
    (60, 131),
    (70, 98),
)

# Backward-facing step Oseen, window 20 throughout.
# (nu, grid, omega, APU(20), NAPU, PGMRES(20), RDF(20), beta)
_TABLE6_ROWS = (
    (0.1, 16, 0.64, 11, 12, 11, 15, 0.035),
    (0.1, 32, 0.45, 14, 17, 14, 14, 0.014),
    (0.1, 64, 0.29, 17, 26, 17, 13, 0.005),
    (0.1, 128, 0.17, 20, 40, 19, 14, 0.0009),
    (0.01, 16, 0.93, 24, 61, 24, 15, 0.140),
    (0.01, 32, 0.55, 15, 25, 14, 15, 0.043),
    (0.01, 64, 0.46, 14, 24, 14, 16, 0.013),
    (0.01, 128, 0.38, 19, 32, 20, 17, 0.005),
    (0.005, 16, 0.44, 41, 400, 40, 20, 0.170),
    (0.005, 32, 0.42, 28, 112, 31, 19, 0.061),
    (0.005, 64, 0.32, 20, 49, 20, 19, 0.017),
    (0.005, 128, 0.31, 21, 36, 20, 19, 0.006),
)

# Flow past an obstacle, same layout as the step table. These rows have
# no run_table id; they back single-experiment runs and spot checks.
_OBSTACLE_ROWS = (
    (0.1, 16, 0.72, 12, 13, 11, 16, 0.044),
    (0.1, 32, 0.49, 13, 17, 13, 17, 0.014),
    (0.1, 64, 0.34, 16, 25, 15, 17, 0.005),
    (0.1, 128, 0.21, 19, 39, 18, 16, 0.001),
    (0.01, 16, 1.61, 34, 138, 36, 18, 0.096),
    (0.01, 32, 1.12, 25, 67, 26, 20, 0.041),
    (0.01, 64, 0.85, 16, 21, 16, 22, 0.013),
    (0.01, 128, 0.49, 14, 19, 16, 24, 0.004),
    (0.005, 16, 1.28, 55, 489, 66, 21, 0.100),
    (0.005, 32, 0.76, 50, 332, 57, 19, 0.050),
    (0.005, 64, 0.76, 28, 77, 30, 31, 0.013),
    (0.005, 128, 0.52, 16, 36, 16, 34, 0.005),
)


def _stokes_plain_cells():
    cells = []
    for grid, asu, nasu, pg in _TABLE1_ROWS:
        common = dict(problem="channel", equation="stokes", nu=1.0, grid=grid)
        cells.append(
            ReferenceCell(
                method="ASU", window=20, omega=AUTO_OMEGA, beta=None,
                published=asu, **common,
            )
        )
        cells.append(
            ReferenceCell(
                method="NASU", window=0, omega=AUTO_OMEGA, beta=None,
                published=nasu, **common,
            )
        )
        cells.append(
            ReferenceCell(
                method="PGMRES", window=20, omega=AUTO_OMEGA, beta=None,
                published=pg, **common,
            )
        )
    return tuple(cells)


def _stokes_mass_cells(problem, rows):
    cells = []
    for grid, apu, napu, pg, rdf, beta in rows:
        common = dict(problem=problem, equation="stokes", nu=1.0, grid=grid)
        cells.append(
            ReferenceCell(
                method="APU", window=10, omega=1.0, beta=None,
                published=apu, **common,
            )
        )
        cells.append(
            ReferenceCell(
                method="NAPU", window=0, omega=1.0, beta=None,
                published=napu, **common,
            )
        )
        cells.append(
            ReferenceCell(
                method="PGMRES", window=10, omega=1.0, beta=None,
                published=pg, **common,
            )
        )
        cells.append(
            ReferenceCell(
                method="RDF", window=10, omega=None, beta=beta,
                published=rdf, **common,
            )
        )
    return tuple(cells)


def _oseen_cells(problem, rows, with_rdf):
    cells = []
    for row in rows:
        if with_rdf:
            nu, grid, omega, apu, napu, pg, rdf, beta = row
        else:
            nu, grid, omega, apu, napu, pg = row
        common = dict(problem=problem, equation="oseen", nu=nu, grid=grid)
        cells.append(
            ReferenceCell(
                method="APU", window=20, omega=omega, beta=None,
                published=apu, **common,
            )
        )
        cells.append(
            ReferenceCell(
                method="NAPU", window=0, omega=omega, beta=None,
                published=napu, **common,
            )
        )
        cells.append(
            ReferenceCell(
                method="PGMRES", window=20, omega=omega, beta=None,
                published=pg, **common,
            )
        )
        if with_rdf:
            cells.append(
                ReferenceCell(
                    method="RDF", window=20, omega=None, beta=beta,
                    published=rdf, **common,
                )
            )
    return tuple(cells)


def _restart_cells():
    return tuple(
        ReferenceCell(
            problem="cavity", equation="oseen", nu=0.001, grid=64,
            method="PGMRES", window=restart, omega=0.87, beta=None,
            published=count,
        )
        for restart, count in _TABLE5_ROWS
    )


TABLES = {
    1: ReferenceTable(1, "channel Stokes, plain splitting", _stokes_plain_cells()),
    2: ReferenceTable(
        2, "channel Stokes, pressure-mass preconditioner",
        _stokes_mass_cells("channel", _TABLE2_ROWS),
    ),
    3: ReferenceTable(
        3, "lid-driven cavity Stokes, pressure-mass preconditioner",
        _stokes_mass_cells("cavity", _TABLE3_ROWS),
    ),
    4: ReferenceTable(
        4, "lid-driven cavity Oseen, least-squares commutator",
        _oseen_cells("cavity", _TABLE4_ROWS, with_rdf=False),
    ),
    5: ReferenceTable(
        5, "restart sweep, cavity Oseen nu=0.001 on the 64x64 grid",
        _restart_cells(),
    ),
    6: ReferenceTable(
        6, "backward-facing step Oseen, least-squares commutator",
        _oseen_cells("step", _TABLE6_ROWS, with_rdf=True),
    ),
}

OBSTACLE = ReferenceTable(
    0, "flow past an obstacle, least-squares commutator",
    _oseen_cells("obstacle", _OBSTACLE_ROWS, with_rdf=True),
)


def table_ids():
    return tuple(sorted(TABLES))


def lookup(problem, equation, nu, grid, method, window=None):
    """Find the published cell for one configuration, or None.

    ``window`` narrows the search when one configuration was measured at
    several window or restart lengths.
    """
    pools = list(TABLES.values()) + [OBSTACLE]
    for table in pools:
        for cell in table.cells:
            if (
                cell.problem == problem
                and cell.equation == equation
                and cell.nu == nu
                and cell.grid == grid
                and cell.method == method
                and (window is None or cell.window == window)
            ):
                return cell
    return None
