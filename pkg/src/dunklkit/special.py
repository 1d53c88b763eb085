"""Normalized Bessel functions and smooth cutoff profiles.

The normalized Bessel function

    j_nu(z) = Gamma(nu + 1) * (2/z)**nu * J_nu(z)

is an even entire function of z with j_nu(0) = 1.  It is the radial building
block of the rank-1 Dunkl kernel and of the radial transform kernel.
"""

from __future__ import annotations

import numpy as np
from scipy import special as sps

__all__ = ["normalized_bessel_j", "smoothstep", "smooth_cutoff"]


def normalized_bessel_j(nu: float, z: np.ndarray | float) -> np.ndarray:
    """Evaluate j_nu(z) = Gamma(nu+1) (2/z)^nu J_nu(z), elementwise.

    Even in z; the removable singularity at z = 0 is handled by the power
    series 1 - z^2/(4(nu+1)) + z^4/(32(nu+1)(nu+2)) for |z| < 1e-4, which is
    accurate to ~1e-25 there.
    """
    z = np.asarray(z, dtype=float)
    az = np.abs(z)
    out = np.empty_like(az)
    small = az < 1e-4
    if np.any(small):
        z2 = az[small] ** 2
        c1 = 1.0 / (4.0 * (nu + 1.0))
        c2 = 1.0 / (32.0 * (nu + 1.0) * (nu + 2.0))
        out[small] = 1.0 - c1 * z2 + c2 * z2 * z2
    if np.any(~small):
        zl = az[~small]
        out[~small] = sps.gamma(nu + 1.0) * (2.0 / zl) ** nu * sps.jv(nu, zl)
    return out


def smoothstep(u: np.ndarray | float) -> np.ndarray:
    """C-infinity step: 0 for u <= 0, 1 for u >= 1, strictly monotone between.

    Built from the classic mollifier e^{-1/u}; used for dyadic partitions and
    bump test functions.
    """
    u = np.asarray(u, dtype=float)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        a = np.where(u > 0.0, np.exp(-1.0 / np.maximum(u, 1e-300)), 0.0)
        b = np.where(1.0 - u > 0.0, np.exp(-1.0 / np.maximum(1.0 - u, 1e-300)), 0.0)
    return a / (a + b)


def smooth_cutoff(t: np.ndarray | float) -> np.ndarray:
    """C-infinity cutoff chi: 1 for t <= 1, 0 for t >= 2, decreasing between."""
    t = np.asarray(t, dtype=float)
    return 1.0 - smoothstep(t - 1.0)
