"""Command-line front end for single experiments and table sweeps.

Two modes share one flag set. With ``--table N`` the runner sweeps every
cell of published table N up to ``--max-grid`` and prints the comparison.
Without it, the run is a single experiment described by ``--problem``,
``--grid``, ``--method`` and friends, optionally written to ``--out``.

Exit codes mirror run outcomes: 0 when the run converged, 2 when it hit
the iteration cap, 3 when it diverged. Bad invocations exit with 64 so
they can never be mistaken for a capped run.
"""

from __future__ import annotations

import argparse
import sys

from ..fem import DOMAINS, EQUATIONS
from ..saddle import QB_CHOICES
from . import reference
from .emit import emit, emit_table
from .experiments import (
    METHODS,
    STATUS_CONVERGED,
    STATUS_DIVERGED,
    ExperimentConfig,
    build_system,
    run_experiment,
    run_table,
)

_USAGE_EXIT = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(_USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _parse_omega(text):
    if text == reference.AUTO_OMEGA:
        return text
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f'omega must be a number or "auto", got {text!r}'
        ) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="saddlebench.bench",
        description="Run saddle-point solver benchmarks and record them.",
    )
    parser.add_argument("--table", type=int, metavar="N",
                        help="rerun published table N instead of one experiment")
    parser.add_argument("--max-grid", type=int, default=64, metavar="N",
                        help="largest grid parameter a table sweep touches")
    parser.add_argument("--problem", choices=DOMAINS)
    parser.add_argument("--equation", choices=EQUATIONS, default="stokes")
    parser.add_argument("--nu", type=float, default=1.0,
                        help="viscosity (and wind viscosity for convected runs)")
    parser.add_argument("--grid", type=int, help="grid parameter n")
    parser.add_argument("--method", choices=METHODS)
    parser.add_argument("--window", type=int, default=0,
                        help="acceleration window or restart length")
    parser.add_argument("--omega", type=_parse_omega, default=1.0,
                        help='pressure-update damping, or "auto"')
    parser.add_argument("--beta", type=float, help="factorization weight (RDF)")
    parser.add_argument("--qb", choices=QB_CHOICES,
                        help="override the pressure-preconditioner choice")
    parser.add_argument("--tol", type=float, default=1e-6)
    parser.add_argument("--max-iters", type=int, default=1000)
    parser.add_argument("--inner-tol", type=float,
                        help="accuracy of the block solves inside the operator")
    parser.add_argument("--out", metavar="PATH",
                        help="write the record (or table summary) here")
    parser.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="single-run output format")
    parser.add_argument("--export-matrices", metavar="DIR",
                        help="also write the assembled system to DIR")
    return parser


def _run_table_mode(args, parser):
    if args.method or args.problem or args.grid:
        parser.error("--table sweeps published cells; drop the single-run flags")

    def progress(result):
        cell = result.cell
        ours = "-" if result.ours is None else result.ours
        print(
            f"  {cell.problem} n={cell.grid} {cell.method}({cell.window}): "
            f"{ours} (published {cell.published})",
            file=sys.stderr,
            flush=True,
        )

    try:
        summary = run_table(
            args.table,
            max_grid=args.max_grid,
            tol=args.tol,
            max_iters=args.max_iters,
            inner_tol=args.inner_tol,
            progress=progress,
        )
    except ValueError as exc:
        parser.error(str(exc))
    print(summary.format_text())
    if args.out:
        emit_table(summary, args.out)
        print(f"summary written to {args.out}")
    return 0


def _run_single_mode(args, parser):
    missing = [
        flag
        for flag, value in (("--problem", args.problem), ("--grid", args.grid))
        if value is None
    ]
    if not args.method and not args.export_matrices:
        missing.append("--method")
    if missing:
        parser.error(f"single runs need {', '.join(missing)}")

    try:
        if args.method:
            cfg = ExperimentConfig(
                problem=args.problem,
                grid=args.grid,
                method=args.method,
                equation=args.equation,
                nu=args.nu,
                window=args.window,
                omega=args.omega,
                beta=args.beta,
                qb=args.qb,
                tol=args.tol,
                max_iters=args.max_iters,
                inner_tol=args.inner_tol,
            )
            system = build_system(cfg)
        else:
            from ..fem import ProblemSpec, assemble, build_grid, picard_wind

            wind = None
            if args.equation == "oseen":
                wind = picard_wind(build_grid(args.problem, args.grid), args.nu)
            system = assemble(
                ProblemSpec(args.problem, args.grid,
                            equation=args.equation, viscosity=args.nu),
                wind=wind,
            )
    except ValueError as exc:
        parser.error(str(exc))

    if args.export_matrices:
        from ..fem import export_system

        export_system(system, args.export_matrices)
        print(f"system written to {args.export_matrices}")
        if not args.method:
            return 0

    record = run_experiment(cfg, system=system)
    label = f"{cfg.problem} n={cfg.grid} {cfg.method}"
    if cfg.window:
        label += f"({cfg.window})"
    print(
        f"{label}: {record.iterations} iterations, {record.status}, "
        f"final residual {record.residual_history[-1]:.3e}, "
        f"{record.wall_time:.2f}s"
    )
    if args.out:
        emit(record, args.format, args.out)
        print(f"record written to {args.out}")

    if record.status == STATUS_CONVERGED:
        return 0
    if record.status == STATUS_DIVERGED:
        return 3
    return 2


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.table is not None:
        return _run_table_mode(args, parser)
    return _run_single_mode(args, parser)
