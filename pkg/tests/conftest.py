import numpy as np
import pytest

from quadboost.stumps import Stump, VoterPool
from quadboost.synth import noisy_linear_rule
from quadboost.stumps import generate_pool


@pytest.fixture(scope="session")
def noisy_setup():
    """Small noisy training problem shared by the slower engine tests."""
    ds = noisy_linear_rule(m=200, d=5, flip=0.1, seed=7)
    pool = generate_pool(ds, per_attribute=6)
    return ds, pool


def manual_pool(columns, ds):
    """Pool with hand-picked vote columns (complements appended per column).

    columns is (m, c); the returned pool has 2c voters with eval matrix
    [col0, -col0, col1, -col1, ...]. Stump parameters are placeholders,
    only the matrix matters for engine-level tests.
    """
    columns = np.asarray(columns, dtype=np.int8)
    stumps = []
    mat = np.empty((columns.shape[0], 2 * columns.shape[1]), dtype=np.int8)
    for c in range(columns.shape[1]):
        stumps.append(Stump(0, float(c), 1))
        stumps.append(Stump(0, float(c), -1))
        mat[:, 2 * c] = columns[:, c]
        mat[:, 2 * c + 1] = -columns[:, c]
    return VoterPool(stumps, mat)
