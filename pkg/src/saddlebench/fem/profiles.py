"""Prescribed-velocity boundary data for each benchmark domain.

Every solid wall gets a no-slip condition.  Inflow segments carry
parabolic profiles; the cavity lid slides tangentially at unit speed all
the way into its corners.  Outflow segments (the right end of the
obstacle and step ducts, away from the corners) are left free so the
natural condition applies there, which also pins down the pressure on
those domains.
"""

import numpy as np

_TOL = 1e-9


def dirichlet_conditions(grid):
    """Return ``(node_ids, values)`` for the constrained velocity nodes.

    ``values`` holds one ``(u_x, u_y)`` row per entry of ``node_ids``.
    Nodes not listed keep free momentum equations.
    """
    coords = grid.velocity_coords
    x, y = coords[:, 0], coords[:, 1]
    x0, x1 = grid.x_range
    y0, y1 = grid.y_range
    on_left = np.abs(x - x0) < _TOL
    on_right = np.abs(x - x1) < _TOL
    on_bottom = np.abs(y - y0) < _TOL
    on_top = np.abs(y - y1) < _TOL

    pinned = np.zeros(len(coords), dtype=bool)
    values = np.zeros((len(coords), 2))

    if grid.domain == "channel":
        pinned |= on_bottom | on_top
        through = on_left | on_right
        pinned |= through
        values[through, 0] = 1.0 - y[through] ** 2
    elif grid.domain == "cavity":
        pinned |= on_left | on_right | on_bottom | on_top
        values[on_top, 0] = 1.0
    elif grid.domain == "obstacle":
        pinned |= on_bottom | on_top
        block = (
            (x > 1.75 - _TOL)
            & (x < 2.25 + _TOL)
            & (y > -0.25 - _TOL)
            & (y < 0.25 + _TOL)
        )
        pinned |= block
        pinned |= on_left
        values[on_left, 0] = 1.0 - y[on_left] ** 2
        # on_right stays free except the duct corners already pinned above.
    else:  # step
        pinned |= on_bottom | on_top
        ledge = (np.abs(y) < _TOL) & (x < _TOL)
        face = (np.abs(x) < _TOL) & (y < _TOL)
        pinned |= ledge | face
        pinned |= on_left
        values[on_left, 0] = 4.0 * y[on_left] * (1.0 - y[on_left])
        # on_right stays free except the duct corners already pinned above.

    node_ids = np.nonzero(pinned)[0]
    return node_ids, values[node_ids]
