"""Classical fixed-step fourth-order Runge-Kutta."""

from __future__ import annotations

import numpy as np


def rk4_step(f, t, y, h):
    k1 = f(t, y)
    k2 = f(t + 0.5 * h, y + 0.5 * h * k1)
    k3 = f(t + 0.5 * h, y + 0.5 * h * k2)
    k4 = f(t + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def rk4_solve(f, y0, t_grid, max_step, post_step=None):
    """Integrate ``y' = f(t, y)`` and return the state at every point of ``t_grid``.

    Each interval is split into the fewest equal substeps no longer than
    ``max_step``. ``post_step(y)`` may project the state after every substep.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    y = np.array(y0, copy=True)
    out = np.empty((len(t_grid),) + y.shape, dtype=y.dtype)
    out[0] = y
    for i in range(1, len(t_grid)):
        t0, t1 = t_grid[i - 1], t_grid[i]
        n = max(1, int(np.ceil((t1 - t0) / max_step * (1 - 1e-12))))
        h = (t1 - t0) / n
        for j in range(n):
            y = rk4_step(f, t0 + j * h, y, h)
            if post_step is not None:
                y = post_step(y)
        out[i] = y
    return out
