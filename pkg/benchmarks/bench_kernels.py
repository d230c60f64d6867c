#!/usr/bin/env python3
"""Time the numba kernels against the pure-numpy fallbacks.

The four hot kernels (CSR product, CSR transpose product, symmetric
Gauss-Seidel sweep, modified Gram-Schmidt step) run on operators
assembled from a real problem so the sparsity patterns match what the
solvers see. Each kernel is timed under both backends via
``set_backend``; the numba numbers exclude compilation because every
measurement is preceded by a warmup call.

Usage: python3 benchmarks/bench_kernels.py [--grid N] [--repeats R]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from saddlebench.backend import NUMBA_AVAILABLE, set_backend
from saddlebench.fem import ProblemSpec, assemble
from saddlebench.linalg import kernels

# One timing sample repeats the kernel until it has run at least this long,
# so per-call noise stays well below the measurement.
SAMPLE_SECONDS = 0.02


def sample_best(fn, repeats: int) -> float:
    """Best per-call seconds over ``repeats`` samples (first call warms up)."""
    fn()
    t0 = time.perf_counter()
    fn()
    once = time.perf_counter() - t0
    loops = max(1, int(SAMPLE_SECONDS / max(once, 1e-9)))
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for _ in range(loops):
            fn()
        best = min(best, (time.perf_counter() - t0) / loops)
    return best


def build_workloads(grid: int):
    """Kernel closures over operators from the channel Stokes problem."""
    system = assemble(ProblemSpec("channel", grid))
    rng = np.random.default_rng(0)

    a = system.a_matrix
    x_a = rng.standard_normal(a.n_cols)
    rows_a = a.row_of_entry()

    b = system.b_matrix
    x_b = rng.standard_normal(b.n_rows)
    rows_b = b.row_of_entry()

    v = system.velocity_block
    diag = v.diagonal()
    r = rng.standard_normal(v.n_rows)

    n = a.n_rows
    depth = 30
    basis = np.linalg.qr(rng.standard_normal((n, depth)))[0].T.copy()
    w = rng.standard_normal(n)
    h = np.zeros(depth + 1)

    return [
        (
            "csr_matvec",
            f"n={a.n_rows} nnz={a.nnz}",
            lambda: kernels.csr_matvec(a.indptr, a.indices, a.data, x_a,
                                       a.n_rows, rows_a),
        ),
        (
            "csr_matvec_transpose",
            f"n={b.n_rows}x{b.n_cols} nnz={b.nnz}",
            lambda: kernels.csr_matvec_transpose(b.indptr, b.indices, b.data,
                                                 x_b, b.n_cols, rows_b),
        ),
        (
            "sgs_solve",
            f"n={v.n_rows} nnz={v.nnz}",
            lambda: kernels.sgs_solve(v.indptr, v.indices, v.data, diag, r),
        ),
        (
            "mgs_orthogonalize",
            f"n={n} depth={depth}",
            lambda: kernels.mgs_orthogonalize(basis, w, depth, h),
        ),
    ]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="compare the numba and numpy kernel backends"
    )
    parser.add_argument("--grid", type=int, default=64,
                        help="grid parameter of the assembled problem")
    parser.add_argument("--repeats", type=int, default=7,
                        help="timing samples per kernel and backend")
    args = parser.parse_args(argv)

    backends = ["numpy"] + (["numba"] if NUMBA_AVAILABLE else [])
    if not NUMBA_AVAILABLE:
        print("numba is not importable; timing the numpy fallback only")

    workloads = build_workloads(args.grid)
    timings: dict[str, dict[str, float]] = {name: {} for name, _, _ in workloads}
    for name_of_backend in backends:
        set_backend(name_of_backend)
        for name, _, fn in workloads:
            timings[name][name_of_backend] = sample_best(fn, args.repeats)

    print(f"kernel timings on channel {args.grid}x{args.grid} (best of "
          f"{args.repeats}, per call)")
    header = f"{'kernel':<22}{'size':<26}{'numpy':>10}"
    if "numba" in backends:
        header += f"{'numba':>10}{'speedup':>9}"
    print(header)
    for name, size, _ in workloads:
        row = f"{name:<22}{size:<26}{timings[name]['numpy'] * 1e6:>8.0f} us"
        if "numba" in backends:
            numba_t = timings[name]["numba"]
            row += (f"{numba_t * 1e6:>8.0f} us"
                    f"{timings[name]['numpy'] / numba_t:>8.1f}x")
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
