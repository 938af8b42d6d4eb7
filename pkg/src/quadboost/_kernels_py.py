"""Pure-numpy fallback for the compiled kernels.

Same contracts as _kernels.pyx. The vote matrix is prepared as float64 so
every scan is a single BLAS matrix-vector product instead of a per-call
int8 upcast.
"""

import numpy as np

NAME = "python"


def prepare_votes(votes_t):
    return np.ascontiguousarray(votes_t, dtype=np.float64)


def prepare_vector(v):
    return np.ascontiguousarray(v, dtype=np.float64)


def corr_scan(votes, v, out):
    np.dot(votes, v, out=out)
    out /= votes.shape[1]
    return int(np.argmax(out))


def edge_scan(votes, v, out):
    np.dot(votes, v, out=out)
    out /= votes.shape[1]
    return int(np.argmax(np.abs(out)))


def row_dot(votes, j, v):
    return float(np.dot(votes[j], v)) / votes.shape[1]


def axpy_row(out, votes, j, c):
    out += c * votes[j]
