# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled shell-projection kernels.

Rows of ``z`` are standard normals.  Each row is projected onto the shell of
sequences with mean ``mu`` whose distance from (mu, ..., mu) is ``radius``.
"""

from libc.math cimport log, sqrt, INFINITY

import numpy as np


cdef inline double _row_scale(const double[:, ::1] z, Py_ssize_t r, Py_ssize_t n,
                              double radius, double* mean_out) noexcept nogil:
    cdef Py_ssize_t k
    cdef double acc = 0.0, d, ss = 0.0, mean
    for k in range(n):
        acc += z[r, k]
    mean = acc / n
    for k in range(n):
        d = z[r, k] - mean
        ss += d * d
    mean_out[0] = mean
    if radius == 0.0 or ss == 0.0:
        return 0.0
    return radius / sqrt(ss)


def shell_project(const double[:, ::1] z, double mu, double radius):
    """Return the projected samples as a new (rows, n) array."""
    cdef Py_ssize_t rows = z.shape[0], n = z.shape[1], r, k
    out_arr = np.empty((rows, n), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double mean, scale
    with nogil:
        for r in range(rows):
            scale = _row_scale(z, r, n, radius, &mean)
            for k in range(n):
                out[r, k] = mu + (z[r, k] - mean) * scale
    return out_arr


def shell_extrema(const double[:, ::1] z, double mu, double radius, double lo, double hi):
    """Reduce a batch to (positive_count, min_log, max_log, violations).

    Only all-positive rows contribute.  A row is a violation when its
    log-product falls outside [lo, hi].  min/max are +inf/-inf when no row is
    positive.
    """
    cdef Py_ssize_t rows = z.shape[0], n = z.shape[1], r, k
    cdef double mean, scale, x, acc
    cdef double min_log = INFINITY, max_log = -INFINITY
    cdef long positive = 0, violations = 0
    cdef bint ok
    with nogil:
        for r in range(rows):
            scale = _row_scale(z, r, n, radius, &mean)
            acc = 0.0
            ok = True
            for k in range(n):
                x = mu + (z[r, k] - mean) * scale
                if x <= 0.0:
                    ok = False
                    break
                acc += log(x)
            if not ok:
                continue
            positive += 1
            if acc < min_log:
                min_log = acc
            if acc > max_log:
                max_log = acc
            if acc < lo or acc > hi:
                violations += 1
    return positive, min_log, max_log, violations
