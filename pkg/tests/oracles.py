"""Independent numerical oracles shared by the test modules."""

import numpy as np


def rk4_modes(b, m, xi, u0, u1, t_grid, h=1e-3):
    """Classic fixed-step RK4 on U'' + bU' + (m+ξ²)U = 0, vectorized over modes.

    Returns U at the requested t_grid points (which must be multiples of h).
    Independent of the closed-form mode solutions it is used to check.
    """
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    c = m + xi ** 2
    u = np.broadcast_to(np.asarray(u0, dtype=float), xi.shape).copy()
    v = np.broadcast_to(np.asarray(u1, dtype=float), xi.shape).copy()
    t_grid = np.asarray(t_grid, dtype=float)
    out = np.empty((len(t_grid), len(xi)))
    idx = 0
    n = int(round(t_grid[-1] / h))
    t = 0.0
    for step in range(n + 1):
        while idx < len(t_grid) and abs(t - t_grid[idx]) < h / 2:
            out[idx] = u
            idx += 1
        if step == n:
            break
        k1u, k1v = v, -b * v - c * u
        u2, v2 = u + h / 2 * k1u, v + h / 2 * k1v
        k2u, k2v = v2, -b * v2 - c * u2
        u3, v3 = u + h / 2 * k2u, v + h / 2 * k2v
        k3u, k3v = v3, -b * v3 - c * u3
        u4, v4 = u + h * k3u, v + h * k3v
        k4u, k4v = v4, -b * v4 - c * u4
        u = u + h / 6 * (k1u + 2 * k2u + 2 * k3u + k4u)
        v = v + h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v)
        t += h
    return out
