"""Dataset ingestion, tanh normalization, and train/test/fold splitting.

Labels are binary (+-1; 0/1 CSV files are accepted with 0 mapped to -1).
Normalization is a per-attribute z-score squashed through tanh, with the
center/scale fit on training data only. Splits and folds are pure
functions of (dataset, seed).
"""

import csv
import math
import os
from dataclasses import dataclass

import numpy as np

# Largest double strictly below 1; keeps normalized features inside (-1, 1)
# even when tanh of an extreme z-score rounds to exactly 1.0.
_TANH_CAP = np.nextafter(1.0, 0.0)


@dataclass(frozen=True)
class LabeledSample:
    features: np.ndarray
    label: int


class Dataset:
    """Feature matrix (m, d) plus +-1 labels (m,)."""

    def __init__(self, features, labels, name=""):
        features = np.asarray(features, dtype=np.float64)
        labels = np.asarray(labels, dtype=np.float64)
        if features.ndim != 2:
            raise ValueError(f"features must be 2-D, got shape {features.shape}")
        if features.shape[0] != labels.shape[0]:
            raise ValueError(
                f"{features.shape[0]} feature rows but {labels.shape[0]} labels"
            )
        if features.shape[0] < 1:
            raise ValueError("dataset needs at least one sample")
        if not np.all(np.abs(labels) == 1.0):
            bad = np.flatnonzero(np.abs(labels) != 1.0)[0]
            raise ValueError(f"label at row {bad + 1} is {labels[bad]}, expected -1 or +1")
        self.features = features
        self.labels = labels
        self.name = name

    @property
    def m(self):
        return self.features.shape[0]

    @property
    def attribute_count(self):
        return self.features.shape[1]

    def __len__(self):
        return self.m

    def sample(self, i):
        return LabeledSample(self.features[i], int(self.labels[i]))

    @property
    def samples(self):
        return [self.sample(i) for i in range(self.m)]

    def subset(self, indices, name=None):
        indices = np.asarray(indices, dtype=np.intp)
        return Dataset(
            self.features[indices].copy(),
            self.labels[indices].copy(),
            name if name is not None else self.name,
        )


@dataclass(frozen=True)
class Normalizer:
    """Per-attribute center/scale for x -> tanh((x - center) / scale)."""

    center: np.ndarray
    scale: np.ndarray

    def __post_init__(self):
        if np.any(self.scale <= 0):
            raise ValueError("normalizer scales must be positive")


def load_csv(path, label_column=None, header=False):
    """Parse a numeric CSV into a Dataset.

    label_column is a 0-based column index; None means the last column.
    Accepted label values are -1, +1, 0, 1 with 0 mapped to -1.
    """
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        for row in reader:
            if row:
                rows.append(row)
    if header and rows:
        rows = rows[1:]
    if not rows:
        raise ValueError(f"{path}: no data rows")

    width = len(rows[0])
    if width < 2:
        raise ValueError(f"{path}: rows need at least 2 columns (features + label)")
    label_col = width - 1 if label_column is None else label_column
    if not 0 <= label_col < width:
        raise ValueError(f"{path}: label column {label_col} out of range for {width} columns")

    m = len(rows)
    features = np.empty((m, width - 1), dtype=np.float64)
    labels = np.empty(m, dtype=np.float64)
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ValueError(f"{path}: row {i + 1} has {len(row)} columns, expected {width}")
        col_out = 0
        for j, cell in enumerate(row):
            try:
                value = float(cell)
            except ValueError:
                raise ValueError(
                    f"{path}: row {i + 1}, column {j + 1}: could not parse {cell!r} as a number"
                ) from None
            if not math.isfinite(value):
                raise ValueError(f"{path}: row {i + 1}, column {j + 1}: non-finite value {cell!r}")
            if j == label_col:
                if value not in (-1.0, 0.0, 1.0):
                    raise ValueError(
                        f"{path}: row {i + 1}, column {j + 1}: label {cell!r} not in {{-1, 0, 1}}"
                    )
                labels[i] = -1.0 if value == 0.0 else value
            else:
                features[i, col_out] = value
                col_out += 1

    name = os.path.splitext(os.path.basename(path))[0]
    return Dataset(features, labels, name=name)


def fit_normalizer(train):
    """Per-attribute mean and population (divisor m) standard deviation.

    Attributes with zero variance get scale 1 so they map to tanh(0) = 0.
    """
    center = train.features.mean(axis=0)
    scale = train.features.std(axis=0)
    scale = np.where(scale == 0.0, 1.0, scale)
    return Normalizer(center=center, scale=scale)


def apply_features(norm, features):
    """tanh((x - center)/scale), squeezed just inside (-1, 1)."""
    if norm.center.shape[0] != features.shape[1]:
        raise ValueError(
            f"normalizer has {norm.center.shape[0]} attributes, data has {features.shape[1]}"
        )
    out = np.tanh((features - norm.center) / norm.scale)
    np.clip(out, -_TANH_CAP, _TANH_CAP, out=out)
    return out


def apply_normalizer(norm, ds):
    return Dataset(apply_features(norm, ds.features), ds.labels.copy(), name=ds.name)


def split_train_test(ds, seed):
    """Random split: training size min(ceil(m/2), 500), rest is test."""
    if ds.m < 2:
        raise ValueError("need at least 2 samples to split")
    n_train = min((ds.m + 1) // 2, 500)
    perm = np.random.default_rng(seed).permutation(ds.m)
    return (
        ds.subset(perm[:n_train], name=f"{ds.name}:train"),
        ds.subset(perm[n_train:], name=f"{ds.name}:test"),
    )


def kfold(ds, k, seed):
    """k disjoint (train-fold, validation-fold) pairs; sizes differ by at most 1."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if ds.m < k:
        raise ValueError(f"cannot make {k} folds from {ds.m} samples")
    perm = np.random.default_rng(seed).permutation(ds.m)
    parts = np.array_split(perm, k)
    folds = []
    for i, val_idx in enumerate(parts):
        train_idx = np.concatenate([parts[j] for j in range(k) if j != i])
        folds.append(
            (
                ds.subset(train_idx, name=f"{ds.name}:fold{i}-train"),
                ds.subset(val_idx, name=f"{ds.name}:fold{i}-val"),
            )
        )
    return folds


def fold_indices(m, k, seed):
    """Validation index arrays backing kfold; same permutation, same seed."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if m < k:
        raise ValueError(f"cannot make {k} folds from {m} samples")
    perm = np.random.default_rng(seed).permutation(m)
    return np.array_split(perm, k)
