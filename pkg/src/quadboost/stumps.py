"""Decision stump voters and the symmetric voter pool.

A stump thresholds one attribute: output is `polarity` when
x[attribute] <= threshold and -polarity otherwise. Pools are closed under
negation (every stump is stored next to its complement), so the voter
class is symmetric and its mean squared output eta is exactly 1.
"""

import json
from dataclasses import dataclass

import numpy as np

from . import backend


@dataclass(frozen=True)
class Stump:
    attribute: int
    threshold: float
    polarity: int

    def __post_init__(self):
        if self.polarity not in (-1, 1):
            raise ValueError(f"polarity must be -1 or +1, got {self.polarity}")

    def complement(self):
        return Stump(self.attribute, self.threshold, -self.polarity)


def stump_eval(stump, x):
    """Evaluate one stump on one feature vector; returns -1 or +1."""
    x = np.asarray(x)
    if not 0 <= stump.attribute < x.shape[0]:
        raise ValueError(f"attribute {stump.attribute} out of range for {x.shape[0]} features")
    return stump.polarity if x[stump.attribute] <= stump.threshold else -stump.polarity


def stump_column(stump, features):
    """Evaluate one stump on every row of an (m, d) feature matrix."""
    if not 0 <= stump.attribute < features.shape[1]:
        raise ValueError(
            f"attribute {stump.attribute} out of range for {features.shape[1]} features"
        )
    below = features[:, stump.attribute] <= stump.threshold
    out = np.where(below, np.int8(stump.polarity), np.int8(-stump.polarity))
    return out.astype(np.int8, copy=False)


class VoterPool:
    """A finite symmetric stump pool with its +-1 evaluation matrix.

    eval_matrix is (m, n) with entry (k, j) = h_j(x_k). The scan kernels use
    the voter-contiguous transpose, prepared once per pool in the layout the
    active backend wants.
    """

    def __init__(self, stumps, eval_matrix, backend_name=None):
        eval_matrix = np.asarray(eval_matrix, dtype=np.int8)
        if eval_matrix.ndim != 2 or eval_matrix.shape[1] != len(stumps):
            raise ValueError("eval_matrix must be (m, n) with one column per stump")
        if len(stumps) % 2 != 0:
            raise ValueError("pool size must be even (complement closure)")
        if not np.all(np.abs(eval_matrix) == 1):
            raise ValueError("eval_matrix entries must be -1 or +1")
        self.stumps = list(stumps)
        self.eval_matrix = eval_matrix
        self.votes_t = np.ascontiguousarray(eval_matrix.T)
        # Mean squared voter output; exactly 1 for +-1 voters (Eq-level
        # invariant the engine relies on, so assert rather than recompute).
        self.eta = np.ones(len(stumps), dtype=np.float64)
        self.backend_name = backend_name if backend_name is not None else backend.ACTIVE
        self.kernels = backend.get(self.backend_name)
        self.scan_votes = self.kernels.prepare_votes(self.votes_t)

    @property
    def n(self):
        return len(self.stumps)

    @property
    def m(self):
        return self.eval_matrix.shape[0]

    @classmethod
    def from_stumps(cls, stumps, ds, backend_name=None):
        matrix = np.empty((ds.m, len(stumps)), dtype=np.int8)
        for j, s in enumerate(stumps):
            matrix[:, j] = stump_column(s, ds.features)
        return cls(stumps, matrix, backend_name=backend_name)

    def subset_rows(self, indices):
        """Same stumps, evaluation rows restricted to `indices`."""
        return VoterPool(self.stumps, self.eval_matrix[np.asarray(indices, dtype=np.intp)],
                         backend_name=self.backend_name)

    def to_json(self):
        return {
            "stumps": [
                {"attribute": s.attribute, "threshold": s.threshold, "polarity": s.polarity}
                for s in self.stumps
            ]
        }

    @classmethod
    def from_json(cls, obj, ds, backend_name=None):
        stumps = [
            Stump(int(d["attribute"]), float(d["threshold"]), int(d["polarity"]))
            for d in obj["stumps"]
        ]
        return cls.from_stumps(stumps, ds, backend_name=backend_name)


def generate_pool(train, per_attribute=10, backend_name=None):
    """Quantile-placed stumps: per attribute, thresholds at the i/(per+1)
    quantiles of the training values (i = 1..per), each with both polarities.

    Pool size is 2 * per_attribute * attribute_count. Quantile ties can
    produce duplicate stumps; they are kept so the size contract holds.
    """
    if per_attribute < 1:
        raise ValueError("per_attribute must be at least 1")
    levels = np.arange(1, per_attribute + 1) / (per_attribute + 1)
    stumps = []
    for attr in range(train.attribute_count):
        thresholds = np.quantile(train.features[:, attr], levels)
        for theta in thresholds:
            s = Stump(attr, float(theta), 1)
            stumps.append(s)
            stumps.append(s.complement())
    return VoterPool.from_stumps(stumps, train, backend_name=backend_name)


def eval_pool(pool, ds):
    """(m, n) +-1 matrix of every pool stump on every row of ds."""
    if ds.attribute_count <= max(s.attribute for s in pool.stumps):
        raise ValueError(
            f"dataset has {ds.attribute_count} attributes but the pool references more"
        )
    matrix = np.empty((ds.m, pool.n), dtype=np.int8)
    for j, s in enumerate(pool.stumps):
        matrix[:, j] = stump_column(s, ds.features)
    return matrix


def save_pool(pool, path):
    with open(path, "w") as fh:
        json.dump(pool.to_json(), fh, indent=1)


def load_pool(path, ds, backend_name=None):
    with open(path) as fh:
        return VoterPool.from_json(json.load(fh), ds, backend_name=backend_name)
