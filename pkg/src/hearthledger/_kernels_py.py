"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``."""

import numpy as np

BACKEND = "numpy"


def weighted_sum(y, f):
    return float(np.sum(f * y))


def power_sum(y, f, exponent, ref):
    mask = f != 0.0
    return float(np.sum(f[mask] * np.power(y[mask] / ref, exponent)))


def log_sum(y, f, ref):
    mask = f != 0.0
    return float(np.sum(f[mask] * np.log(y[mask] / ref)))


def gini_sorted(y, f):
    below = np.cumsum(f) - f
    return float(np.sum(f * y * (2.0 * below + f - 1.0)))
