"""Greedy quadratic-loss boosting with closed-form weight rules.

The trainer keeps the residual vector r = y - score. The edge of voter j
against the current ensemble, g_j = (1/m) sum_k h_j(x_k) r_k, is the margin
minus the correlation with the voters already picked, so each round is one
scan of the vote matrix: pick argmax |g_j|, set its weight by the variant's
rule, subtract the new contribution from r.

Weight rules (eta_j = mean squared output of voter j, 1 for stumps):

    vanilla   alpha = g / eta
    l1        alpha = sign(g) * max(|g| - lam, 0) / eta   (soft threshold)
    l2        alpha = g / (eta + lam)
    linf      alpha = clamp(g / eta, +-alpha_max)

Each rule is the exact minimizer of the penalized one-dimensional risk
-2*alpha*g + alpha^2*eta (+ penalty) in its coordinate, so vanilla rounds
decrease the quadratic risk by exactly g^2/eta and l1 rounds decrease the
penalized objective risk + 2*lam*||alpha||_1.
"""

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np

VARIANTS = ("vanilla", "l1", "l2", "linf")


@dataclass
class BoostConfig:
    variant: str = "vanilla"
    lam: float = 0.0
    alpha_max: float = 1.0
    rounds: int = 100
    reweight_every: int = 0
    stop_tolerance: float = 1e-12
    seed: int = 0

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.rounds < 1:
            raise ValueError("rounds must be at least 1")
        if self.lam < 0:
            raise ValueError("lam must be non-negative")
        if self.variant == "linf" and self.alpha_max <= 0:
            raise ValueError("alpha_max must be positive")
        if self.reweight_every < 0:
            raise ValueError("reweight_every must be non-negative")
        if self.stop_tolerance < 0:
            raise ValueError("stop_tolerance must be non-negative")

    def to_json(self):
        return {
            "variant": self.variant,
            "lam": self.lam,
            "alpha_max": self.alpha_max,
            "rounds": self.rounds,
            "reweight_every": self.reweight_every,
            "stop_tolerance": self.stop_tolerance,
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, obj):
        return cls(**{k: obj[k] for k in (
            "variant", "lam", "alpha_max", "rounds", "reweight_every",
            "stop_tolerance", "seed")})


@dataclass
class RoundStats:
    round_index: int
    voter_index: int
    edge: float
    eta: float
    alpha: float
    quadratic_risk: float
    zero_one_error: float


class Ensemble:
    """Ordered (voter index, weight) entries plus the cached residual vector."""

    def __init__(self, y):
        y = np.asarray(y, dtype=np.float64)
        self.y = y
        self.residuals = y.copy()
        self.entries = []
        self._position = {}

    @property
    def m(self):
        return self.residuals.shape[0]

    @property
    def dim(self):
        return len(self.entries)

    def weight_of(self, voter):
        pos = self._position.get(voter)
        return 0.0 if pos is None else self.entries[pos][1]

    def weights(self):
        return np.array([w for _, w in self.entries], dtype=np.float64)

    def norm(self, p):
        w = self.weights()
        if w.size == 0:
            return 0.0
        if p == math.inf:
            return float(np.max(np.abs(w)))
        if p == 1:
            return float(np.sum(np.abs(w)))
        return float(np.sum(np.abs(w) ** p) ** (1.0 / p))

    def set_weight(self, voter, weight):
        """Insert, update, or (weight 0 on an existing entry) delete a voter."""
        pos = self._position.get(voter)
        if pos is None:
            if weight != 0.0:
                self._position[voter] = len(self.entries)
                self.entries.append((voter, weight))
        elif weight == 0.0:
            del self.entries[pos]
            del self._position[voter]
            for v, p in self._position.items():
                if p > pos:
                    self._position[v] = p - 1
        else:
            self.entries[pos] = (voter, weight)


def empty_ensemble(ds):
    return Ensemble(ds.labels)


def quadratic_risk(ensemble):
    """(1/m) sum r_k^2; equals 1 for an empty ensemble on +-1 labels."""
    r = ensemble.residuals
    return float(np.dot(r, r)) / r.shape[0]


def training_error(ensemble):
    """Zero-one error of sgn(score) against y, with sgn(0) = -1."""
    score = ensemble.y - ensemble.residuals
    pred = np.where(score > 0, 1.0, -1.0)
    return float(np.mean(pred != ensemble.y))


def edges(pool, residuals):
    """g_j = (1/m) sum_k h_j(x_k) r_k for every voter; r = y gives the margins."""
    if residuals.shape[0] != pool.m:
        raise ValueError(f"residual length {residuals.shape[0]} != pool m {pool.m}")
    out = np.empty(pool.n, dtype=np.float64)
    pool.kernels.edge_scan(pool.scan_votes, residuals, out)
    return out


def select_voter(g):
    """Index and value of the largest |g_j|; ties go to the lowest index."""
    if len(g) == 0:
        raise ValueError("empty edge vector")
    idx = int(np.argmax(np.abs(g)))
    return idx, float(g[idx])


def weight_vanilla(g, eta):
    if eta <= 0:
        raise ValueError("eta must be positive")
    return g / eta


def weight_l1(g, eta, lam):
    if eta <= 0:
        raise ValueError("eta must be positive")
    if lam < 0:
        raise ValueError("lam must be non-negative")
    if g > lam:
        return (g - lam) / eta
    if -g > lam:
        return (g + lam) / eta
    return 0.0


def weight_l2(g, eta, lam):
    if eta <= 0:
        raise ValueError("eta must be positive")
    if lam < 0:
        raise ValueError("lam must be non-negative")
    return g / (eta + lam)


def weight_linf(g, eta, alpha_max):
    if eta <= 0:
        raise ValueError("eta must be positive")
    if alpha_max <= 0:
        raise ValueError("alpha_max must be positive")
    a = g / eta
    if abs(a) <= alpha_max:
        return a
    return alpha_max if g > 0 else -alpha_max


def _rule(config, g, eta):
    if config.variant == "vanilla":
        return weight_vanilla(g, eta)
    if config.variant == "l1":
        return weight_l1(g, eta, config.lam)
    if config.variant == "l2":
        return weight_l2(g, eta, config.lam)
    return weight_linf(g, eta, config.alpha_max)


def _should_stop(config, g_max_abs):
    if config.variant == "l1":
        return g_max_abs <= config.lam
    return g_max_abs <= config.stop_tolerance


def boost_round(ensemble, pool, config, round_index=0):
    """One greedy round. Returns (ensemble, RoundStats or None).

    None means the variant's stopping condition fired (or the update was an
    exact no-op, see train) and the ensemble was left unchanged. A re-selected
    voter is updated in place through the reweighting identity: its old
    contribution folds into the edge, so the new weight is the rule applied to
    g + alpha_old * eta and dim(alpha) keeps counting distinct voters.
    """
    g = np.empty(pool.n, dtype=np.float64)
    j = pool.kernels.edge_scan(pool.scan_votes, ensemble.residuals, g)
    g_j = float(g[j])
    if _should_stop(config, abs(g_j)):
        return ensemble, None

    eta = float(pool.eta[j])
    alpha_old = ensemble.weight_of(j)
    alpha_new = _rule(config, g_j + alpha_old * eta, eta)
    delta = alpha_new - alpha_old
    if delta == 0.0:
        # Fixed point: this round changes nothing, so every later round
        # would repeat it. The caller decides whether that means stop.
        return ensemble, None

    ensemble.set_weight(j, alpha_new)
    pool.kernels.axpy_row(ensemble.residuals, pool.scan_votes, j, -delta)
    stats = RoundStats(
        round_index=round_index,
        voter_index=j,
        edge=g_j,
        eta=eta,
        alpha=alpha_new,
        quadratic_risk=quadratic_risk(ensemble),
        zero_one_error=training_error(ensemble),
    )
    return ensemble, stats


def reweight_pass(ensemble, pool, config):
    """Re-fit every existing weight in insertion order (one coordinate-descent
    sweep). Under l1 a weight can hit zero, deleting its entry. Each step is
    the exact coordinate minimizer, so the penalized objective never rises."""
    if ensemble.dim == 0:
        raise ValueError("cannot reweight an empty ensemble")
    i = 0
    while i < len(ensemble.entries):
        j, alpha_old = ensemble.entries[i]
        eta = float(pool.eta[j])
        g = pool.kernels.row_dot(pool.scan_votes, j, ensemble.residuals)
        alpha_new = _rule(config, g + alpha_old * eta, eta)
        delta = alpha_new - alpha_old
        if delta != 0.0:
            ensemble.set_weight(j, alpha_new)
            pool.kernels.axpy_row(ensemble.residuals, pool.scan_votes, j, -delta)
        if alpha_new != 0.0:
            i += 1
        # deletion shifts the next entry into slot i
    return ensemble


def train(train_ds, pool, config, round_callback=None):
    """Run up to config.rounds greedy rounds on a pool built over train_ds.

    Stops early when the variant's condition fires (l1: max|g| <= lam,
    otherwise max|g| <= stop_tolerance) or, with reweighting off, when a
    round becomes an exact no-op. Returns (ensemble, per-round history).
    """
    if pool.m != train_ds.m:
        raise ValueError(f"pool evaluated on {pool.m} rows, dataset has {train_ds.m}")
    ensemble = Ensemble(train_ds.labels)
    history = []
    for t in range(1, config.rounds + 1):
        ensemble, stats = boost_round(ensemble, pool, config, round_index=t)
        if stats is None:
            if config.reweight_every == 0 or ensemble.dim == 0:
                break
            g = edges(pool, ensemble.residuals)
            if _should_stop(config, float(np.max(np.abs(g)))):
                break
            # Greedy step was an exact no-op but the edge is still live:
            # a reweight pass may unblock it. If the pass moves nothing
            # either, the whole state is a fixed point.
            before = list(ensemble.entries)
            reweight_pass(ensemble, pool, config)
            if ensemble.entries == before:
                break
            continue
        history.append(stats)
        if round_callback is not None:
            round_callback(ensemble, stats)
        if config.reweight_every > 0 and t % config.reweight_every == 0 and ensemble.dim > 0:
            reweight_pass(ensemble, pool, config)
    return ensemble, history


def decision_scores(ensemble, pool, ds):
    """Weighted vote score alpha . h(x) for every row of ds."""
    max_attr = max((s.attribute for s in pool.stumps), default=-1)
    if max_attr >= ds.attribute_count:
        raise ValueError(
            f"pool references attribute {max_attr}, dataset has {ds.attribute_count}"
        )
    from .stumps import stump_column

    score = np.zeros(ds.m, dtype=np.float64)
    for j, alpha in ensemble.entries:
        score += alpha * stump_column(pool.stumps[j], ds.features)
    return score


def predict(ensemble, pool, ds):
    """sgn(alpha . h(x)) with sgn(0) = -1; returns an int8 +-1 vector."""
    score = decision_scores(ensemble, pool, ds)
    return np.where(score > 0, np.int8(1), np.int8(-1))


def zero_one_error(ensemble, pool, ds):
    return float(np.mean(predict(ensemble, pool, ds) != ds.labels))


def recomputed_residuals(ensemble, pool):
    """From-scratch y - alpha . h(x) on the pool's own evaluation rows."""
    score = np.zeros(pool.m, dtype=np.float64)
    for j, alpha in ensemble.entries:
        score += alpha * pool.eval_matrix[:, j].astype(np.float64)
    return ensemble.y - score


def model_to_json(ensemble, pool, variant, config, normalizer=None, metrics=None):
    """Self-contained model: stump parameters inline with each weight.

    variant is the algorithm name; config a JSON-ready dict (BoostConfig's
    to_json, or the baseline's own knobs).
    """
    obj = {
        "schema_version": 1,
        "variant": variant,
        "config": config,
        "entries": [
            {
                "attribute": pool.stumps[j].attribute,
                "threshold": pool.stumps[j].threshold,
                "polarity": pool.stumps[j].polarity,
                "weight": alpha,
            }
            for j, alpha in ensemble.entries
        ],
        "pool": pool.to_json(),
        "metrics": metrics or {},
    }
    if normalizer is not None:
        obj["normalizer"] = {
            "center": normalizer.center.tolist(),
            "scale": normalizer.scale.tolist(),
        }
    return obj


def save_model(obj, path):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1)


def load_model(path):
    with open(path) as fh:
        return json.load(fh)


def model_predict(model, features):
    """Score raw feature rows with a loaded model dict (applies its normalizer)."""
    from .data import Normalizer, apply_features
    from .stumps import Stump, stump_column

    features = np.asarray(features, dtype=np.float64)
    if "normalizer" in model:
        norm = Normalizer(
            center=np.asarray(model["normalizer"]["center"], dtype=np.float64),
            scale=np.asarray(model["normalizer"]["scale"], dtype=np.float64),
        )
        features = apply_features(norm, features)
    score = np.zeros(features.shape[0], dtype=np.float64)
    for e in model["entries"]:
        s = Stump(int(e["attribute"]), float(e["threshold"]), int(e["polarity"]))
        score += e["weight"] * stump_column(s, features)
    return np.where(score > 0, np.int8(1), np.int8(-1))


def history_to_csv(history, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["round", "voter", "edge", "eta", "alpha", "quadratic_risk", "zero_one_error"]
        )
        for s in history:
            writer.writerow(
                [s.round_index, s.voter_index, repr(s.edge), repr(s.eta), repr(s.alpha),
                 repr(s.quadratic_risk), repr(s.zero_one_error)]
            )
