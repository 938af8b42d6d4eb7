"""Self-contained invariant checks runnable from the command line.

Every check trains on built-in synthetic data and measures how far an
identity or inequality is from being violated. Checks go through the public
module functions (not copies of their logic), so a corrupted rule shows up
as a named failure here.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import engine
from .baselines import adaboost_train, round_bound_products
from .bounds import BoundInputs, draw_sigma, complexity_term, scaling_identity_check, scaling_identity_grid
from .data import Dataset
from .stumps import generate_pool
from .synth import noisy_linear_rule


@dataclass
class CheckResult:
    name: str
    passed: bool
    observed: float
    tolerance: float

    def line(self):
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag} {self.name}: observed={self.observed:.3e} tolerance={self.tolerance:.3e}"


def _check_max(name, observed, tolerance):
    return CheckResult(name, observed <= tolerance, float(observed), float(tolerance))


def decomposition_replay(history, pool, labels):
    """Rebuild the risk from per-round terms along an explicit score prefix.

    For each recorded round, recompute the margin and the correlation with
    the weighted sum of everything placed before it, then assemble
    1 - 2 sum delta*(mu - M) + sum delta^2 eta. Returns that total and the
    largest gap between the recomputed mu - M and the edge the trainer
    recorded. Both numbers come from a different arithmetic route than the
    trainer's residual updates.
    """
    score = np.zeros(labels.shape[0], dtype=np.float64)
    weights = {}
    cross = 0.0
    squares = 0.0
    edge_dev = 0.0
    for s in history:
        h = pool.eval_matrix[:, s.voter_index].astype(np.float64)
        mu = float(np.mean(labels * h))
        corr = float(np.mean(h * score))
        delta = s.alpha - weights.get(s.voter_index, 0.0)
        weights[s.voter_index] = s.alpha
        edge_dev = max(edge_dev, abs((mu - corr) - s.edge))
        cross += delta * (mu - corr)
        squares += delta * delta * float(pool.eta[s.voter_index])
        score += delta * h
    return 1.0 - 2.0 * cross + squares, edge_dev


def _train_setup(seed=7):
    ds = noisy_linear_rule(m=200, d=5, flip=0.1, seed=seed)
    pool = generate_pool(ds, per_attribute=6)
    return ds, pool


def check_vanilla_decrease():
    ds, pool = _train_setup()
    config = engine.BoostConfig(variant="vanilla", rounds=40)
    _, history = engine.train(ds, pool, config)
    prev = 1.0
    dev = 0.0
    for s in history:
        drop = s.edge * s.edge / s.eta
        dev = max(dev, abs(s.quadratic_risk - (prev - drop)))
        prev = s.quadratic_risk
    return _check_max("vanilla-exact-decrease", dev, 1e-10)


def check_residual_identity():
    ds, pool = _train_setup()
    config = engine.BoostConfig(variant="l2", lam=0.5, rounds=60, reweight_every=3)
    ensemble, _ = engine.train(ds, pool, config)
    dev = float(np.max(np.abs(ensemble.residuals - engine.recomputed_residuals(ensemble, pool))))
    return _check_max("residual-identity", dev, 1e-9)


def check_decomposition():
    ds, pool = _train_setup()
    config = engine.BoostConfig(variant="vanilla", rounds=50)
    ensemble, history = engine.train(ds, pool, config)
    decomposed, edge_dev = decomposition_replay(history, pool, ds.labels)
    dev = max(abs(decomposed - engine.quadratic_risk(ensemble)), edge_dev)
    return _check_max("risk-decomposition-replay", dev, 1e-9)


def check_l1_objective_monotone():
    ds, pool = _train_setup()
    lam = 0.05
    config = engine.BoostConfig(variant="l1", lam=lam, rounds=80, reweight_every=5)
    seen = []

    def objective(ensemble, stats=None):
        seen.append(engine.quadratic_risk(ensemble) + 2.0 * lam * ensemble.norm(1))

    ensemble, _ = engine.train(ds, pool, config, round_callback=objective)
    objective(ensemble)
    increases = [b - a for a, b in zip(seen, seen[1:])]
    worst = max(increases) if increases else 0.0
    return _check_max("l1-objective-monotone", max(worst, 0.0), 1e-10)


def check_weight_rule_oracles():
    rng = np.random.default_rng(123)
    # eta as small as 0.1 with |g| up to 3 puts the optimum near +-30,
    # so the search grid has to extend well past that
    grid = np.linspace(-40.0, 40.0, 80001)
    resolution = grid[1] - grid[0]
    dev = 0.0
    for _ in range(300):
        g = float(rng.uniform(-3, 3))
        eta = float(rng.uniform(0.1, 2.0))
        lam = float(rng.uniform(0, 2))
        amax = float(rng.uniform(0.01, 2.0))
        pairs = [
            (engine.weight_l1(g, eta, lam), -2 * grid * g + grid ** 2 * eta + 2 * lam * np.abs(grid)),
            (engine.weight_l2(g, eta, lam), -2 * grid * g + grid ** 2 * (eta + lam)),
        ]
        for alpha, objective in pairs:
            dev = max(dev, abs(alpha - float(grid[np.argmin(objective)])))
        clipped = grid[np.abs(grid) <= amax]
        objective = -2 * clipped * g + clipped ** 2 * eta
        dev = max(dev, abs(engine.weight_linf(g, eta, amax) - float(clipped[np.argmin(objective)])))
    return _check_max("weight-rule-grid-oracles", dev, 2 * resolution)


def check_reductions():
    ds, pool = _train_setup()
    rounds = 60
    base_cfg = engine.BoostConfig(variant="vanilla", rounds=rounds)
    _, base = engine.train(ds, pool, base_cfg)
    dev = 0.0
    for variant, extra in (("l1", {"lam": 0.0}), ("l2", {"lam": 0.0}),
                           ("linf", {"alpha_max": 1e9})):
        cfg = engine.BoostConfig(variant=variant, rounds=rounds, **extra)
        _, hist = engine.train(ds, pool, cfg)
        if len(hist) != len(base):
            return CheckResult("regularizer-reductions", False, float(abs(len(hist) - len(base))), 0.0)
        for a, b in zip(hist, base):
            if a.voter_index != b.voter_index or a.alpha != b.alpha:
                dev = max(dev, abs(a.alpha - b.alpha) + abs(a.voter_index - b.voter_index))
    return _check_max("regularizer-reductions", dev, 0.0)


def check_adaboost_bound():
    ds, pool = _train_setup()
    _, history = adaboost_train(ds, pool, 60)
    tight, loose = round_bound_products(history)
    errors = np.array([r.zero_one_error for r in history])
    dev = float(np.max(errors - tight))
    dev = max(dev, float(np.max(tight - loose)))
    return _check_max("adaboost-error-bound", dev, 1e-9)


def check_scaling_identity():
    ds, pool = _train_setup()
    results = scaling_identity_grid(pool, [1, 1.5, 2, 4], [1, 2, 5, 16], n_draws=20, seed=3)
    dev = max(abs(r["diff"]) for r in results)
    return _check_max("combination-scaling-identity", dev, 1e-12)


def check_zero_one_vs_risk():
    ds, pool = _train_setup()
    dev = -1.0
    for variant, extra in (("vanilla", {}), ("l1", {"lam": 0.02}),
                           ("l2", {"lam": 1.0}), ("linf", {"alpha_max": 0.05})):
        cfg = engine.BoostConfig(variant=variant, rounds=50, **extra)
        ensemble, _ = engine.train(ds, pool, cfg)
        dev = max(dev, engine.training_error(ensemble) - engine.quadratic_risk(ensemble))
    return _check_max("zero-one-under-quadratic", max(dev, 0.0), 1e-12)


def check_bound_monotonicity():
    def term(p, dim):
        return complexity_term(BoundInputs(
            p=p, delta=0.05, m=200, rademacher=0.1, dim_alpha=dim,
            norm_alpha=2.0, empirical_surrogate_risk=0.3))

    dims = range(1, 41)
    p1 = [term(1, d) for d in dims]
    spread = max(p1) - min(p1)
    for p in (2.0, math.inf):
        series = [term(p, d) for d in dims]
        diffs = [b - a for a, b in zip(series, series[1:])]
        if min(diffs) <= 0:
            return CheckResult("complexity-term-monotonicity", False, float(min(diffs)), 0.0)
    return _check_max("complexity-term-monotonicity", spread, 0.0)


def check_sign_convention():
    ds, pool = _train_setup()
    ensemble = engine.empty_ensemble(ds)
    preds = engine.predict(ensemble, pool, ds)
    dev = float(np.max(np.abs(preds - (-1))))
    return _check_max("zero-score-predicts-negative", dev, 0.0)


def check_tie_break():
    idx, value = engine.select_voter(np.array([0.2, -0.2]))
    ok = idx == 0 and value == 0.2
    return CheckResult("selection-tie-break", ok, 0.0 if ok else 1.0, 0.0)


ALL_CHECKS = [
    check_vanilla_decrease,
    check_residual_identity,
    check_decomposition,
    check_l1_objective_monotone,
    check_weight_rule_oracles,
    check_reductions,
    check_adaboost_bound,
    check_scaling_identity,
    check_zero_one_vs_risk,
    check_bound_monotonicity,
    check_sign_convention,
    check_tie_break,
]


def run_checks(out=print):
    """Run every check, print one line each, return the failures."""
    failures = []
    for check in ALL_CHECKS:
        result = check()
        out(result.line())
        if not result.passed:
            failures.append(result)
    return failures


def run_scaling_report(p, n, n_draws=20, seed=0, out=print):
    """Per-draw lhs/rhs listing for the combination scaling identity."""
    ds, pool = _train_setup()
    worst = 0.0
    for i in range(n_draws):
        sigma = draw_sigma(seed, i, pool.m)
        lhs, rhs = scaling_identity_check(pool, p, n, sigma)
        worst = max(worst, abs(lhs - rhs))
        out(f"draw {i:3d}: lhs={lhs:.15f} rhs={rhs:.15f} diff={lhs - rhs:+.2e}")
    out(f"max |lhs-rhs| = {worst:.3e} over {n_draws} draws (tolerance 1e-12)")
    return worst <= 1e-12
