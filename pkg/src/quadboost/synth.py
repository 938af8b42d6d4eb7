"""Synthetic binary-classification generators for tests and benchmarks.

Each generator returns a Dataset with +-1 labels. Label noise is applied
by flipping a fixed fraction of labels chosen by the seeded RNG, so the
achievable error floor is roughly the flip rate.
"""

import numpy as np

from .data import Dataset


def _flip_labels(y, flip, rng):
    if flip > 0:
        idx = rng.choice(y.shape[0], size=int(round(flip * y.shape[0])), replace=False)
        y[idx] = -y[idx]
    return y


def _sign(z):
    return np.where(z > 0, 1.0, -1.0)


def noisy_linear_rule(m=200, d=5, flip=0.1, seed=7, name="noisy-linear"):
    """Gaussian features, labels from a fixed random hyperplane, then flips."""
    rng = np.random.default_rng(seed)
    w = rng.standard_normal(d)
    x = rng.standard_normal((m, d))
    y = _sign(x @ w)
    y = _flip_labels(y, flip, rng)
    return Dataset(x, y, name=name)


def step_rule(m=1000, d=6, flip=0.12, seed=11, name="steps"):
    """Axis-aligned rule: vote of three attribute thresholds, rest is noise.

    Friendly territory for stumps; boosting should reach close to the
    flip-rate floor quickly.
    """
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((m, d))
    votes = _sign(x[:, 0] - 0.2) + _sign(0.5 - x[:, 1]) + _sign(x[:, 2])
    y = _sign(votes)
    y = _flip_labels(y, flip, rng)
    return Dataset(x, y, name=name)


def tilted_plane(m=1100, d=5, flip=0.08, seed=19, name="tilted"):
    """Dense linear rule with unequal attribute weights.

    Stumps have to stack many shallow cuts along each axis, so accuracy
    climbs slowly with rounds; separates the round-count grids.
    """
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((m, d))
    w = np.array([1.0, -0.8, 0.6, 0.4, -0.3])[:d]
    y = _sign(x @ w)
    y = _flip_labels(y, flip, rng)
    return Dataset(x, y, name=name)


def pulse_rule(m=1000, d=5, flip=0.12, seed=29, name="pulse"):
    """One dominant attribute threshold decides the label, rest is noise.

    The kind of data where a handful of high-margin stumps carry the whole
    model; heavy shrinkage or weight clamps cost little accuracy here.
    """
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((m, d))
    y = _sign(x[:, 0] - 0.15)
    y = _flip_labels(y, flip, rng)
    return Dataset(x, y, name=name)


def band_rule(m=1200, d=6, flip=0.1, seed=23, name="band"):
    """Positive inside a band of one attribute, modulated by a second.

    Not linearly separable; needs at least paired stumps per attribute.
    """
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((m, d))
    inside = (np.abs(x[:, 0]) < 0.9).astype(np.float64) * 2.0 - 1.0
    tilt = _sign(x[:, 1] + 0.3)
    y = _sign(inside + 0.5 * tilt)
    y = _flip_labels(y, flip, rng)
    return Dataset(x, y, name=name)


def dataset_to_csv(ds, path):
    """Feature columns then the +-1 label, no header, full float precision."""
    with open(path, "w") as fh:
        for k in range(ds.m):
            row = [repr(float(v)) for v in ds.features[k]]
            row.append(str(int(ds.labels[k])))
            fh.write(",".join(row) + "\n")
