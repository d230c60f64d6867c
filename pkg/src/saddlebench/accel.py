"""Window-limited extrapolation of fixed-point iterations.

Given a map ``G`` with fixed point ``x* = G(x*)``, each step combines the
last few iterates so the combined update residual is smallest in the
least-squares sense.  With the residual ``f_k = G(x_k) - x_k`` and the
difference histories

    dF = [f_{k-m+1} - f_{k-m}, ..., f_k - f_{k-1}]
    dG = [g_{k-m+1} - g_{k-m}, ..., g_k - g_{k-1}]

the step solves ``min_gamma |f_k - dF gamma|`` and sets

    x_{k+1} = g_k - dG gamma.

Equivalently the new iterate is a combination ``sum_i alpha_i g_i`` whose
weights sum to one; the weights are exposed on the state for inspection.
A window of zero reproduces the plain fixed-point iteration.  When the
difference history loses rank, the stale columns up to the newest
dependent one are discarded before the next step.
"""

from dataclasses import dataclass, field

import numpy as np

from .linalg.iterative import SolveReport
from .linalg.lstsq import least_squares_solve


@dataclass
class AcceleratorState:
    """Rolling history for the extrapolated iteration."""

    window: int
    prev_g: np.ndarray = None
    prev_f: np.ndarray = None
    delta_g: list = field(default_factory=list)
    delta_f: list = field(default_factory=list)
    last_weights: np.ndarray = None

    def __post_init__(self):
        if self.window < 0:
            raise ValueError(f"window must be non-negative, got {self.window}")

    @property
    def depth(self):
        return len(self.delta_f)


def _check_finite(name, value):
    if not np.all(np.isfinite(value)):
        raise FloatingPointError(f"{name} produced non-finite entries")


def aa_step(g_map, x, state, g_value=None):
    """Advance one step from ``x``; returns the next iterate.

    ``g_value`` may pass in an already-computed ``G(x)`` so callers that
    evaluated the map for a convergence check do not pay twice.  The
    state is updated in place.
    """
    g_here = g_map(x) if g_value is None else g_value
    _check_finite("fixed-point map", g_here)
    f_here = g_here - x

    if state.prev_f is not None and state.window > 0:
        state.delta_f.append(f_here - state.prev_f)
        state.delta_g.append(g_here - state.prev_g)
        while len(state.delta_f) > state.window:
            state.delta_f.pop(0)
            state.delta_g.pop(0)
    state.prev_f = f_here
    state.prev_g = g_here

    if not state.delta_f:
        state.last_weights = np.array([1.0])
        return g_here.copy()

    matrix = np.column_stack(state.delta_f)
    gamma, dropped = least_squares_solve(matrix, f_here, return_dropped=True)
    x_next = g_here - np.column_stack(state.delta_g) @ gamma

    # Mixing weights over the stored iterates, recovered from gamma; they
    # sum to one by construction.
    weights = np.empty(len(gamma) + 1)
    weights[0] = gamma[0]
    weights[1:-1] = np.diff(gamma)
    weights[-1] = 1.0 - gamma[-1]
    state.last_weights = weights

    if len(dropped) > 0:
        cut = int(max(dropped)) + 1
        del state.delta_f[:cut]
        del state.delta_g[:cut]

    return x_next


def aa_solve(g_map, x0, window, tol=1e-6, max_iters=1000, residual_fn=None):
    """Iterate to a fixed point; returns ``(x, SolveReport)``.

    The default convergence measure is ``|G(x) - x|`` relative to its
    initial value; pass ``residual_fn(x, gx)`` to stop on a different
    quantity (it is compared against ``tol`` directly).
    """
    x = np.asarray(x0, dtype=np.float64).copy()
    state = AcceleratorState(window=window)
    history = []
    initial_raw = None
    diverged = False

    for iteration in range(max_iters + 1):
        g_here = g_map(x)
        _check_finite("fixed-point map", g_here)
        if residual_fn is not None:
            residual = float(residual_fn(x, g_here))
        else:
            raw = float(np.linalg.norm(g_here - x))
            if initial_raw is None:
                initial_raw = raw if raw > 0 else 1.0
            residual = raw / initial_raw
        history.append(residual)
        if residual <= tol:
            return x, SolveReport(
                iterations=iteration,
                final_relative_residual=residual,
                converged=True,
                residual_history=history,
            )
        if residual > 1e8 * max(history[0], 1e-300):
            diverged = True
            break
        if iteration == max_iters:
            break
        x = aa_step(g_map, x, state, g_value=g_here)

    return x, SolveReport(
        iterations=len(history) - 1,
        final_relative_residual=history[-1],
        converged=False,
        residual_history=history,
        diverged=diverged,
    )
