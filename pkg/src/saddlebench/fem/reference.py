"""Shape functions and quadrature on the [-1, 1]^2 reference square.

Velocity components use the nine-node biquadratic basis, pressure the
four-node bilinear one.  Local numbering is tensorized with the first
coordinate running fastest: biquadratic node ``3*j + i`` sits at
``(xi_i, eta_j)`` with ``xi, eta`` in ``{-1, 0, +1}``, bilinear node
``2*d + c`` at corners with ``xi, eta`` in ``{-1, +1}``.
"""

import numpy as np

# Three-point Gauss-Legendre rule per direction, exact through degree 5.
_GAUSS_NODES = np.array([-np.sqrt(0.6), 0.0, np.sqrt(0.6)])
_GAUSS_WEIGHTS = np.array([5.0, 8.0, 5.0]) / 9.0


def quadrature_points():
    """Tensor-product Gauss rule: points of shape (9, 2) and weights (9,)."""
    xi = np.repeat(_GAUSS_NODES, 3)
    eta = np.tile(_GAUSS_NODES, 3)
    points = np.column_stack([xi, eta])
    weights = np.repeat(_GAUSS_WEIGHTS, 3) * np.tile(_GAUSS_WEIGHTS, 3)
    return points, weights


def _quadratic_line(t):
    t = np.asarray(t, dtype=np.float64)
    return np.stack([0.5 * t * (t - 1.0), 1.0 - t * t, 0.5 * t * (t + 1.0)], axis=-1)


def _quadratic_line_deriv(t):
    t = np.asarray(t, dtype=np.float64)
    return np.stack([t - 0.5, -2.0 * t, t + 0.5], axis=-1)


def _linear_line(t):
    t = np.asarray(t, dtype=np.float64)
    return np.stack([0.5 * (1.0 - t), 0.5 * (1.0 + t)], axis=-1)


def _linear_line_deriv(t):
    t = np.asarray(t, dtype=np.float64)
    half = np.full(t.shape, 0.5)
    return np.stack([-half, half], axis=-1)


def biquadratic_basis(points):
    """Values and reference gradients of the nine velocity shapes.

    Returns ``(values, d_xi, d_eta)``, each of shape ``(len(points), 9)``.
    """
    points = np.asarray(points, dtype=np.float64)
    sx = _quadratic_line(points[:, 0])
    sy = _quadratic_line(points[:, 1])
    dx = _quadratic_line_deriv(points[:, 0])
    dy = _quadratic_line_deriv(points[:, 1])
    nq = len(points)
    values = (sy[:, :, None] * sx[:, None, :]).reshape(nq, 9)
    d_xi = (sy[:, :, None] * dx[:, None, :]).reshape(nq, 9)
    d_eta = (dy[:, :, None] * sx[:, None, :]).reshape(nq, 9)
    return values, d_xi, d_eta


def bilinear_basis(points):
    """Values of the four pressure shapes, shape ``(len(points), 4)``."""
    points = np.asarray(points, dtype=np.float64)
    sx = _linear_line(points[:, 0])
    sy = _linear_line(points[:, 1])
    return (sy[:, :, None] * sx[:, None, :]).reshape(len(points), 4)
