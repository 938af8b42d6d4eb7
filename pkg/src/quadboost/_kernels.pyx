# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner-loop kernels.

The voter evaluation matrix is kept voter-contiguous (one row per voter,
int8 entries in {-1,+1}) so each scan is a sequential pass over a row.
The build allows reassociation of the row-dot reduction (see setup.py)
so the compiler can widen the int8*double products; the reduction order
is frozen into the binary, so results stay reproducible run to run for
a given build.
"""

from libc.math cimport fabs

import numpy as np

NAME = "compiled"


def prepare_votes(votes_t):
    """Return the (n, m) +-1 matrix in this backend's scan layout."""
    return np.ascontiguousarray(votes_t, dtype=np.int8)


def prepare_vector(v):
    return np.ascontiguousarray(v, dtype=np.float64)


cdef inline double _dot_row(const signed char *h, const double *v, Py_ssize_t m) nogil:
    cdef Py_ssize_t k
    cdef double acc = 0.0
    for k in range(m):
        acc += h[k] * v[k]
    return acc


def corr_scan(const signed char[:, ::1] votes, const double[::1] v, double[::1] out):
    """out[j] = (1/m) * sum_k votes[j,k] * v[k]; returns argmax_j out[j] (first max)."""
    cdef Py_ssize_t n = votes.shape[0]
    cdef Py_ssize_t m = votes.shape[1]
    cdef Py_ssize_t j, best = 0
    cdef double val
    cdef double inv_m = 1.0 / m
    cdef double best_val = -1e300
    for j in range(n):
        val = _dot_row(&votes[j, 0], &v[0], m) * inv_m
        out[j] = val
        if val > best_val:
            best_val = val
            best = j
    return best


def edge_scan(const signed char[:, ::1] votes, const double[::1] v, double[::1] out):
    """Same scan as corr_scan but returns argmax_j |out[j]| (first max)."""
    cdef Py_ssize_t n = votes.shape[0]
    cdef Py_ssize_t m = votes.shape[1]
    cdef Py_ssize_t j, best = 0
    cdef double val
    cdef double inv_m = 1.0 / m
    cdef double best_val = -1.0
    for j in range(n):
        val = _dot_row(&votes[j, 0], &v[0], m) * inv_m
        out[j] = val
        if fabs(val) > best_val:
            best_val = fabs(val)
            best = j
    return best


def row_dot(const signed char[:, ::1] votes, Py_ssize_t j, const double[::1] v):
    """(1/m) * dot(votes[j], v) for a single voter row."""
    cdef Py_ssize_t m = votes.shape[1]
    return _dot_row(&votes[j, 0], &v[0], m) / m


def axpy_row(double[::1] out, const signed char[:, ::1] votes, Py_ssize_t j, double c):
    """out[k] += c * votes[j,k]."""
    cdef Py_ssize_t m = votes.shape[1]
    cdef Py_ssize_t k
    for k in range(m):
        out[k] += c * votes[j, k]
