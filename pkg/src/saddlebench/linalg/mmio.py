"""Matrix Market coordinate I/O for CSR matrices.

Writing always produces the ``real general`` flavor with 17 significant
digits, which round-trips float64 exactly. Reading accepts ``general`` and
``symmetric`` real or integer coordinate files. Errors report the offending
line number.
"""

from __future__ import annotations

import numpy as np

from .csr import CsrMatrix

_BANNER = "%%MatrixMarket"


class MatrixMarketError(ValueError):
    def __init__(self, path, line_no, message):
        super().__init__(f"{path}:{line_no}: {message}")
        self.line_no = line_no


def mm_write(path, m: CsrMatrix) -> None:
    with open(path, "w") as fh:
        fh.write("%%MatrixMarket matrix coordinate real general\n")
        fh.write(f"{m.n_rows} {m.n_cols} {m.nnz}\n")
        rows = m.row_of_entry() + 1
        cols = m.indices + 1
        for i, j, v in zip(rows, cols, m.data):
            fh.write(f"{i} {j} {v:.17g}\n")


def mm_read(path) -> CsrMatrix:
    with open(path) as fh:
        lines = fh.readlines()

    if not lines:
        raise MatrixMarketError(path, 1, "empty file")
    banner = lines[0].split()
    if len(banner) != 5 or banner[0] != _BANNER:
        raise MatrixMarketError(path, 1, "malformed Matrix Market banner")
    _, obj, fmt, field, symmetry = (t.lower() for t in banner)
    if obj != "matrix" or fmt != "coordinate":
        raise MatrixMarketError(path, 1, f"unsupported header: {obj} {fmt}")
    if field not in ("real", "integer"):
        raise MatrixMarketError(path, 1, f"unsupported field type: {field}")
    if symmetry not in ("general", "symmetric"):
        raise MatrixMarketError(path, 1, f"unsupported symmetry: {symmetry}")

    line_no = 1
    size = None
    for raw in lines[1:]:
        line_no += 1
        stripped = raw.strip()
        if not stripped or stripped.startswith("%"):
            continue
        parts = stripped.split()
        if len(parts) != 3:
            raise MatrixMarketError(path, line_no, "size line must have three fields")
        try:
            n_rows, n_cols, nnz = (int(p) for p in parts)
        except ValueError:
            raise MatrixMarketError(path, line_no, "size line fields must be integers")
        if n_rows < 0 or n_cols < 0 or nnz < 0:
            raise MatrixMarketError(path, line_no, "size fields must be non-negative")
        size = (n_rows, n_cols, nnz)
        break
    if size is None:
        raise MatrixMarketError(path, line_no, "missing size line")
    n_rows, n_cols, nnz = size

    rows = np.empty(nnz, dtype=np.int64)
    cols = np.empty(nnz, dtype=np.int64)
    vals = np.empty(nnz, dtype=np.float64)
    count = 0
    start = line_no
    for offset, raw in enumerate(lines[start:], start=start + 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("%"):
            continue
        if count >= nnz:
            raise MatrixMarketError(path, offset, "more entries than declared")
        parts = stripped.split()
        if len(parts) != 3:
            raise MatrixMarketError(path, offset, "entry line must have three fields")
        try:
            i = int(parts[0])
            j = int(parts[1])
            v = float(parts[2])
        except ValueError:
            raise MatrixMarketError(path, offset, f"cannot parse entry: {stripped!r}")
        if not (1 <= i <= n_rows) or not (1 <= j <= n_cols):
            raise MatrixMarketError(
                path, offset, f"index ({i}, {j}) out of range for {n_rows}x{n_cols}"
            )
        rows[count] = i - 1
        cols[count] = j - 1
        vals[count] = v
        count += 1
    if count != nnz:
        raise MatrixMarketError(
            path, len(lines), f"declared {nnz} entries but found {count}"
        )

    if symmetry == "symmetric":
        off = rows != cols
        rows, cols, vals = (
            np.concatenate([rows, cols[off]]),
            np.concatenate([cols, rows[off]]),
            np.concatenate([vals, vals[off]]),
        )

    return CsrMatrix.from_coo(rows, cols, vals, (n_rows, n_cols))
