"""Kernel backend selection.

Hot kernels (sparse matrix-vector products, triangular sweeps, Gram-Schmidt
steps) exist in two variants: numba-compiled and pure numpy/python. The
active variant is chosen once from the environment:

    SADDLEBENCH_BACKEND=numba   use the compiled kernels (default when numba imports)
    SADDLEBENCH_BACKEND=numpy   force the pure-numpy fallback

``set_backend`` overrides the choice at runtime, which the test suite and
the kernel benchmark use to compare both paths.
"""

from __future__ import annotations

import os

try:
    import numba  # noqa: F401

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba installed
    NUMBA_AVAILABLE = False

_VALID = ("numba", "numpy")

_backend: str | None = None


def _resolve_default() -> str:
    env = os.environ.get("SADDLEBENCH_BACKEND", "").strip().lower()
    if env:
        if env not in _VALID:
            raise ValueError(
                f"SADDLEBENCH_BACKEND must be one of {_VALID}, got {env!r}"
            )
        if env == "numba" and not NUMBA_AVAILABLE:
            raise ValueError("SADDLEBENCH_BACKEND=numba but numba is not importable")
        return env
    return "numba" if NUMBA_AVAILABLE else "numpy"


def backend() -> str:
    """Name of the active kernel backend, ``"numba"`` or ``"numpy"``."""
    global _backend
    if _backend is None:
        _backend = _resolve_default()
    return _backend


def set_backend(name: str) -> str:
    """Switch the kernel backend; returns the previous one."""
    global _backend
    if name not in _VALID:
        raise ValueError(f"backend must be one of {_VALID}, got {name!r}")
    if name == "numba" and not NUMBA_AVAILABLE:
        raise ValueError("numba backend requested but numba is not importable")
    prev = backend()
    _backend = name
    return prev
