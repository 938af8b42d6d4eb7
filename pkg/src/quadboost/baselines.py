"""AdaBoost over the same voter pools, for convergence and accuracy baselines.

Standard algorithm: keep a distribution w over training examples, pick the
voter minimizing the weighted error eps_t = sum_k w_k I(h(x_k) != y_k), set
alpha_t = (1/2) ln((1-eps)/eps), reweight w_k by exp(-alpha_t y_k h(x_k)),
renormalize. Since voters are +-1 valued, eps_j = (1 - sum_k w_k y_k h_j(x_k))/2,
so the per-round scan is the same correlation kernel the quadratic trainer uses.
"""

import math
from dataclasses import dataclass

import numpy as np

from .engine import Ensemble, training_error

# exp(2 * ALPHA_CAP) = 1e15, the implied (1-eps)/eps odds for a perfect voter
ALPHA_CAP = 0.5 * math.log(1e15)


@dataclass
class AdaRound:
    round_index: int
    voter_index: int
    error: float
    alpha: float
    edge: float
    zero_one_error: float


def adaboost_train(train_ds, pool, rounds, round_callback=None):
    """Returns (Ensemble, list of AdaRound).

    Stops early on a perfect voter (eps = 0: its weight is capped at
    ALPHA_CAP and the round is kept) or when no voter beats chance
    (eps >= 1/2; with a symmetric pool the best eps is always <= 1/2).
    Repeat selections of one voter accumulate into a single entry, so
    the model stays comparable with the quadratic trainer's.
    round_callback, if given, is called with (ensemble, round record)
    after each accepted round.
    """
    if rounds < 1:
        raise ValueError("rounds must be at least 1")
    if pool.m != train_ds.m:
        raise ValueError(f"pool evaluated on {pool.m} rows, dataset has {train_ds.m}")
    m = train_ds.m
    y = train_ds.labels
    w = np.full(m, 1.0 / m)
    ensemble = Ensemble(y)
    history = []
    corr = np.empty(pool.n, dtype=np.float64)
    for t in range(1, rounds + 1):
        # corr_scan divides by m, so feed m*w*y to get sum_k w_k y_k h_j(x_k)
        v = pool.kernels.prepare_vector(m * w * y)
        j = pool.kernels.corr_scan(pool.scan_votes, v, corr)
        eps = 0.5 * (1.0 - float(corr[j]))
        if eps >= 0.5:
            break
        if eps <= 0.0:
            alpha = ALPHA_CAP
        else:
            alpha = 0.5 * math.log((1.0 - eps) / eps)
        ensemble.set_weight(j, ensemble.weight_of(j) + alpha)
        pool.kernels.axpy_row(ensemble.residuals, pool.scan_votes, j, -alpha)
        h_col = pool.votes_t[j].astype(np.float64)
        w = w * np.exp(-alpha * y * h_col)
        w /= w.sum()
        record = AdaRound(
            round_index=t,
            voter_index=j,
            error=eps,
            alpha=alpha,
            edge=0.5 - eps,
            zero_one_error=training_error(ensemble),
        )
        history.append(record)
        if round_callback is not None:
            round_callback(ensemble, record)
        if eps <= 0.0:
            break
    return ensemble, history


def adaboost_bound(gamma, rounds):
    """exp(-2 gamma^2 T), the training-error bound for edge-gamma rounds."""
    if not 0 < gamma <= 0.5:
        raise ValueError("gamma must be in (0, 1/2]")
    if rounds < 1:
        raise ValueError("rounds must be at least 1")
    return math.exp(-2.0 * gamma * gamma * rounds)


def iterations_for_error(gamma, target):
    """Rounds needed for the bound to reach target: (1/(2 gamma^2)) ln(1/target)."""
    if not 0 < gamma <= 0.5:
        raise ValueError("gamma must be in (0, 1/2]")
    if not 0 < target < 1:
        raise ValueError("target must be in (0, 1)")
    return math.log(1.0 / target) / (2.0 * gamma * gamma)


def round_bound_products(history):
    """(prod_t sqrt(1-4 gamma_t^2), exp(-2 sum_t gamma_t^2)) per prefix.

    Both sequences upper-bound the training error after each round, the
    first more tightly. Returned as two arrays aligned with the history.
    """
    g = np.array([r.edge for r in history], dtype=np.float64)
    tight = np.cumprod(np.sqrt(np.maximum(0.0, 1.0 - 4.0 * g * g)))
    loose = np.exp(-2.0 * np.cumsum(g * g))
    return tight, loose
