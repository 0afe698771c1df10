# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled excitation-probability kernel."""

from libc.math cimport sin, fabs

import numpy as np


def excitation_sum(const double[::1] weights, const double[::1] rabi, const double[::1] area):
    """``out[m] = sum_j weights[j] * sin(area[m] * rabi[j])**2`` with Neumaier summation.

    Terms are accumulated in the order given; callers pass weights sorted in
    descending order.
    """
    cdef Py_ssize_t M = area.shape[0], N = weights.shape[0], m, j
    if rabi.shape[0] != N:
        raise ValueError("weights and rabi must have equal length")
    out = np.empty(M, dtype=np.float64)
    cdef double[::1] res = out
    cdef double s, c, term, tmp, sn, a
    with nogil:
        for m in range(M):
            a = area[m]
            s = 0.0
            c = 0.0
            if a != 0.0:
                for j in range(N):
                    sn = sin(a * rabi[j])
                    term = weights[j] * sn * sn
                    tmp = s + term
                    if fabs(s) >= fabs(term):
                        c += (s - tmp) + term
                    else:
                        c += (term - tmp) + s
                    s = tmp
            res[m] = s + c
    return out
