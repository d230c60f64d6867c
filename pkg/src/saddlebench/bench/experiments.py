"""Experiment driver: assemble a problem, run one method, record the run.

Every run follows the same protocol: both unknown vectors start at zero,
iterations are counted per outer step, and the run stops once the residual
of the monitored system drops below ``tol`` relative to its right-hand
side. The sweep methods monitor the original coupled system; the Krylov
methods monitor the system they actually iterate.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from ..fem import DOMAINS, EQUATIONS, ProblemSpec, assemble, build_grid, picard_wind
from ..saddle import (
    RdfConfig,
    UzawaConfig,
    estimate_schur_omega,
    pgmres_solve,
    rdf_solve,
    uzawa_solve,
)
from . import reference

METHODS = ("NASU", "ASU", "NAPU", "APU", "PGMRES", "RDF")
_PLAIN_SWEEPS = ("NASU", "NAPU")
_WINDOWED = ("ASU", "APU", "PGMRES", "RDF")

STATUS_CONVERGED = "converged"
STATUS_EXCEEDED = "exceeded_1000"
STATUS_DIVERGED = "diverged"
STATUSES = (STATUS_CONVERGED, STATUS_EXCEEDED, STATUS_DIVERGED)

PICARD_STEPS = 5


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to reproduce one benchmark measurement.

    ``window`` is the acceleration depth for ASU/APU, the restart length
    for PGMRES/RDF, and must stay 0 for the plain sweeps. ``omega`` is the
    pressure-update damping: a positive number, or "auto" to estimate it
    from the extreme dual eigenvalues (symmetric problems only). ``qb``
    overrides the pressure-preconditioner choice; left to None it follows
    the method family (plain splitting for NASU/ASU, pressure mass for
    preconditioned Stokes runs, least-squares commutator for Oseen).
    ``inner_tol`` overrides the accuracy of the block solves inside the
    operator; None keeps the per-equation default. Slowly converging runs
    at small restarts only reproduce once inner noise sits well below the
    outer stagnation level, so those cells want a tighter setting.
    Runs are deterministic: the same config always yields the same record.
    """

    problem: str
    grid: int
    method: str
    equation: str = "stokes"
    nu: float = 1.0
    window: int = 0
    omega: float | str = 1.0
    beta: float | None = None
    qb: str | None = None
    tol: float = 1e-6
    max_iters: int = 1000
    inner_tol: float | None = None

    def __post_init__(self):
        if self.problem not in DOMAINS:
            raise ValueError(f"problem must be one of {DOMAINS}, got {self.problem!r}")
        if self.equation not in EQUATIONS:
            raise ValueError(
                f"equation must be one of {EQUATIONS}, got {self.equation!r}"
            )
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.method in _PLAIN_SWEEPS and self.window != 0:
            raise ValueError(f"{self.method} is a plain sweep; window must be 0")
        if self.method in _WINDOWED and self.window < 1:
            raise ValueError(f"{self.method} needs a window/restart of at least 1")
        if self.nu <= 0.0:
            raise ValueError(f"nu must be positive, got {self.nu}")
        if self.omega != reference.AUTO_OMEGA:
            if not isinstance(self.omega, (int, float)) or self.omega <= 0.0:
                raise ValueError(
                    f'omega must be a positive number or "auto", got {self.omega!r}'
                )
        elif self.equation != "stokes":
            raise ValueError(
                'omega="auto" estimates eigenvalues of a symmetric operator; '
                "pick an explicit value for convected problems"
            )
        if self.method == "RDF":
            if self.beta is None:
                raise ValueError("RDF needs an explicit beta")
            if self.beta <= 0.0:
                raise ValueError(f"beta must be positive, got {self.beta}")
            if self.qb is not None:
                raise ValueError("RDF does not take a pressure preconditioner")
        elif self.beta is not None:
            raise ValueError("beta only applies to RDF")
        if self.tol <= 0.0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be at least 1, got {self.max_iters}")
        if self.inner_tol is not None and not 0.0 < self.inner_tol <= 1e-6:
            raise ValueError(
                f"inner_tol must lie in (0, 1e-6], got {self.inner_tol}"
            )


@dataclass(frozen=True)
class RunRecord:
    """Outcome of one experiment, self-describing for serialization."""

    config: ExperimentConfig
    iterations: int
    status: str
    residual_history: tuple[float, ...]
    wall_time: float

    @property
    def converged(self):
        return self.status == STATUS_CONVERGED


def resolve_qb(cfg: ExperimentConfig) -> str:
    """Pressure-preconditioner implied by the method family.

    The plain-splitting methods run without one. A PGMRES run asking for
    the estimated damping is the plain-splitting comparison column, so it
    follows suit. Everything else gets the pressure mass matrix on
    symmetric problems and the least-squares commutator on convected ones.
    """
    if cfg.qb is not None:
        return cfg.qb
    if cfg.method in ("NASU", "ASU"):
        return "identity"
    if cfg.method == "PGMRES" and cfg.omega == reference.AUTO_OMEGA:
        return "identity"
    return "pressure_mass" if cfg.equation == "stokes" else "lsc"


def resolve_omega(cfg: ExperimentConfig, system) -> float:
    if cfg.omega == reference.AUTO_OMEGA:
        return estimate_schur_omega(system).omega_opt
    return float(cfg.omega)


def build_system(cfg: ExperimentConfig):
    """Assemble the saddle system for a config, generating wind if needed."""
    grid = build_grid(cfg.problem, cfg.grid)
    wind = None
    if cfg.equation == "oseen":
        wind = picard_wind(grid, cfg.nu, PICARD_STEPS)
    spec = ProblemSpec(cfg.problem, cfg.grid, equation=cfg.equation, viscosity=cfg.nu)
    return assemble(spec, wind=wind)


def _status_of(report):
    if report.converged:
        return STATUS_CONVERGED
    if report.diverged:
        return STATUS_DIVERGED
    return STATUS_EXCEEDED


def run_experiment(cfg: ExperimentConfig, system=None) -> RunRecord:
    """Run one configured experiment and return its record.

    ``system`` short-circuits assembly when the caller already holds the
    matching system (table sweeps reuse one assembly across methods).
    ``wall_time`` covers the iteration loop only, not assembly or the
    damping estimate, so repeated methods on one system compare fairly.
    """
    if system is None:
        system = build_system(cfg)

    if cfg.method == "RDF":
        rdf_cfg = RdfConfig(beta=cfg.beta)
        if cfg.inner_tol is not None:
            rdf_cfg = RdfConfig(beta=cfg.beta, inner_tol=cfg.inner_tol)
        start = time.perf_counter()
        _, _, report = rdf_solve(
            system,
            rdf_cfg,
            restart=cfg.window,
            tol=cfg.tol,
            max_iters=cfg.max_iters,
        )
        wall = time.perf_counter() - start
    else:
        sweep_cfg = UzawaConfig(
            omega=resolve_omega(cfg, system),
            qb=resolve_qb(cfg),
            inner_tol=cfg.inner_tol,
        )
        start = time.perf_counter()
        if cfg.method == "PGMRES":
            _, _, report = pgmres_solve(
                system,
                sweep_cfg,
                restart=cfg.window,
                tol=cfg.tol,
                max_iters=cfg.max_iters,
            )
        else:
            _, _, report = uzawa_solve(
                system,
                sweep_cfg,
                window=cfg.window,
                tol=cfg.tol,
                max_iters=cfg.max_iters,
            )
        wall = time.perf_counter() - start

    return RunRecord(
        config=cfg,
        iterations=report.iterations,
        status=_status_of(report),
        residual_history=tuple(float(r) for r in report.residual_history),
        wall_time=wall,
    )


@dataclass(frozen=True)
class CellResult:
    """One table cell: the published count next to the fresh measurement.

    ``ours`` mirrors the published notation: an iteration count, ">1000"
    for a capped run, "*" for a diverging one, and None when the cell was
    not rerun because no workable damping factor exists for it.
    ``deviation`` is ours minus published when both are plain counts.
    """

    cell: reference.ReferenceCell
    ours: int | str | None
    status: str | None
    deviation: int | None
    wall_time: float | None


@dataclass(frozen=True)
class TableSummary:
    table_id: int
    title: str
    max_grid: int
    results: tuple[CellResult, ...]

    def format_text(self) -> str:
        header = (
            f"table {self.table_id}: {self.title} (grids up to {self.max_grid})"
        )
        rows = [
            ("grid", "method", "window", "omega", "beta", "published", "ours",
             "deviation", "status"),
        ]
        for result in self.results:
            cell = result.cell
            label = _grid_label(cell.problem, cell.grid)
            rows.append((
                label,
                cell.method,
                str(cell.window),
                _fmt(cell.omega),
                _fmt(cell.beta),
                str(cell.published),
                "-" if result.ours is None else str(result.ours),
                "-" if result.deviation is None else f"{result.deviation:+d}",
                result.status or "not run",
            ))
        widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
        lines = [header]
        for row in rows:
            lines.append("  ".join(col.ljust(w) for col, w in zip(row, widths)))
        return "\n".join(lines)


def _fmt(value):
    if value is None:
        return "-"
    if isinstance(value, str):
        return value
    return f"{value:g}"


def _grid_label(problem, n):
    return build_grid(problem, n).label


def _as_notation(record: RunRecord) -> int | str:
    if record.status == STATUS_CONVERGED:
        return record.iterations
    if record.status == STATUS_DIVERGED:
        return reference.DIVERGED
    return reference.EXCEEDED


def run_table(
    table_id: int,
    max_grid: int = 64,
    tol: float = 1e-6,
    max_iters: int = 1000,
    inner_tol: float | None = None,
    progress=None,
) -> TableSummary:
    """Rerun every cell of one published table at desk scale.

    Grids above ``max_grid`` are skipped by default because the larger
    discretizations take disproportionally long on a workstation; raise
    the cap to sweep them. Cells whose published damping factor is None
    are reported but not rerun. ``progress`` is called with each
    CellResult as it lands, for live output.
    """
    if table_id not in reference.TABLES:
        raise ValueError(
            f"table id must be one of {reference.table_ids()}, got {table_id}"
        )
    table = reference.TABLES[table_id]
    results = []
    systems = {}
    for cell in table.cells:
        if cell.grid > max_grid:
            continue
        if cell.omega is None and cell.method != "RDF":
            result = CellResult(cell, None, None, None, None)
        else:
            cfg = ExperimentConfig(
                problem=cell.problem,
                grid=cell.grid,
                method=cell.method,
                equation=cell.equation,
                nu=cell.nu,
                window=cell.window,
                omega=1.0 if cell.method == "RDF" else cell.omega,
                beta=cell.beta,
                tol=tol,
                max_iters=max_iters,
                inner_tol=inner_tol,
            )
            key = (cell.problem, cell.equation, cell.nu, cell.grid)
            if key not in systems:
                systems[key] = build_system(cfg)
            record = run_experiment(cfg, system=systems[key])
            ours = _as_notation(record)
            deviation = None
            if isinstance(ours, int) and isinstance(cell.published, int):
                deviation = ours - cell.published
            result = CellResult(cell, ours, record.status, deviation,
                                record.wall_time)
        results.append(result)
        if progress is not None:
            progress(result)
    return TableSummary(table_id, table.title, max_grid, tuple(results))
