# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for weighted sums over income points.

All sums use Neumaier compensation; ``f`` is expected to be normalized.
"""

from libc.math cimport pow, log, fabs, sqrt

BACKEND = "cython"


cdef inline void _acc(double x, double* s, double* c) noexcept nogil:
    cdef double t = s[0] + x
    if fabs(s[0]) >= fabs(x):
        c[0] += (s[0] - t) + x
    else:
        c[0] += (x - t) + s[0]
    s[0] = t


def weighted_sum(const double[::1] y, const double[::1] f):
    cdef Py_ssize_t i, n = y.shape[0]
    cdef double s = 0.0, c = 0.0
    with nogil:
        for i in range(n):
            _acc(f[i] * y[i], &s, &c)
    return s + c


def power_sum(const double[::1] y, const double[::1] f, double exponent, double ref):
    cdef Py_ssize_t i, n = y.shape[0]
    cdef double s = 0.0, c = 0.0
    cdef double r
    cdef int kind = 0
    # the common epsilons (2, 0.5, 1.5) need no general pow
    if exponent == -1.0:
        kind = 1
    elif exponent == 0.5:
        kind = 2
    elif exponent == -0.5:
        kind = 3
    with nogil:
        for i in range(n):
            if f[i] != 0.0:
                r = y[i] / ref
                if kind == 1:
                    r = 1.0 / r
                elif kind == 2:
                    r = sqrt(r)
                elif kind == 3:
                    r = 1.0 / sqrt(r)
                else:
                    r = pow(r, exponent)
                _acc(f[i] * r, &s, &c)
    return s + c


def log_sum(const double[::1] y, const double[::1] f, double ref):
    cdef Py_ssize_t i, n = y.shape[0]
    cdef double s = 0.0, c = 0.0
    with nogil:
        for i in range(n):
            if f[i] != 0.0:
                _acc(f[i] * log(y[i] / ref), &s, &c)
    return s + c


def gini_sorted(const double[::1] y, const double[::1] f):
    """Sum of f_k y_k (2 C_k + f_k - 1) over ascending ``y``; C_k is weight below k."""
    cdef Py_ssize_t i, n = y.shape[0]
    cdef double s = 0.0, c = 0.0, below = 0.0, below_c = 0.0, cum
    with nogil:
        for i in range(n):
            cum = below + below_c
            _acc(f[i] * y[i] * (2.0 * cum + f[i] - 1.0), &s, &c)
            _acc(f[i], &below, &below_c)
    return s + c
