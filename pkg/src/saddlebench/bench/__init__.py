"""Benchmark layer: published reference data, experiment runner, CLI."""

from .emit import emit, emit_table, load_record
from .experiments import (
    METHODS,
    STATUS_CONVERGED,
    STATUS_DIVERGED,
    STATUS_EXCEEDED,
    STATUSES,
    CellResult,
    ExperimentConfig,
    RunRecord,
    TableSummary,
    build_system,
    resolve_omega,
    resolve_qb,
    run_experiment,
    run_table,
)
from .reference import (
    AUTO_OMEGA,
    DIVERGED,
    EXCEEDED,
    OBSTACLE,
    TABLES,
    ReferenceCell,
    ReferenceTable,
    lookup,
    table_ids,
)

__all__ = [
    "AUTO_OMEGA",
    "DIVERGED",
    "EXCEEDED",
    "METHODS",
    "OBSTACLE",
    "STATUSES",
    "STATUS_CONVERGED",
    "STATUS_DIVERGED",
    "STATUS_EXCEEDED",
    "TABLES",
    "CellResult",
    "ExperimentConfig",
    "ReferenceCell",
    "ReferenceTable",
    "RunRecord",
    "TableSummary",
    "build_system",
    "emit",
    "emit_table",
    "load_record",
    "lookup",
    "resolve_omega",
    "resolve_qb",
    "run_experiment",
    "run_table",
    "table_ids",
]
