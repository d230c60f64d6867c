"""Serialization of experiment outcomes.

Two formats cover the two consumers. CSV holds just the convergence
history, one row per outer iteration starting at iteration 0, which is
what the plotting tooling reads. JSON holds the full record including the
config echo, and round-trips losslessly through ``load_record``.
"""

from __future__ import annotations

import csv
import json
from dataclasses import asdict
from pathlib import Path

from .experiments import CellResult, ExperimentConfig, RunRecord, TableSummary

CSV_FIELDS = ("iter", "relative_residual")

TABLE_CSV_FIELDS = (
    "problem", "equation", "nu", "grid", "method", "window", "omega",
    "beta", "published", "ours", "deviation", "status", "wall_time",
)


def emit(record: RunRecord, fmt: str, path) -> Path:
    """Write one record to ``path`` as ``fmt`` ("csv" or "json")."""
    path = Path(path)
    if fmt == "csv":
        with path.open("w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(CSV_FIELDS)
            for step, residual in enumerate(record.residual_history):
                writer.writerow((step, f"{residual:.16e}"))
    elif fmt == "json":
        payload = {
            "config": asdict(record.config),
            "iterations": record.iterations,
            "status": record.status,
            "residual_history": list(record.residual_history),
            "wall_time": record.wall_time,
        }
        path.write_text(json.dumps(payload, indent=2) + "\n")
    else:
        raise ValueError(f'format must be "csv" or "json", got {fmt!r}')
    return path


def load_record(path) -> RunRecord:
    """Rebuild a record from its JSON form."""
    payload = json.loads(Path(path).read_text())
    return RunRecord(
        config=ExperimentConfig(**payload["config"]),
        iterations=payload["iterations"],
        status=payload["status"],
        residual_history=tuple(payload["residual_history"]),
        wall_time=payload["wall_time"],
    )


def emit_table(summary: TableSummary, path) -> Path:
    """Write a table summary as CSV, one row per cell."""
    path = Path(path)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(TABLE_CSV_FIELDS)
        for result in summary.results:
            writer.writerow(_table_row(result))
    return path


def _table_row(result: CellResult):
    cell = result.cell
    return (
        cell.problem,
        cell.equation,
        cell.nu,
        cell.grid,
        cell.method,
        cell.window,
        "" if cell.omega is None else cell.omega,
        "" if cell.beta is None else cell.beta,
        cell.published,
        "" if result.ours is None else result.ours,
        "" if result.deviation is None else result.deviation,
        result.status or "",
        "" if result.wall_time is None else f"{result.wall_time:.3f}",
    )
