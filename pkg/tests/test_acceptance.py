"""End-to-end acceptance checks, one per shipped guarantee.

Each test prints a single PASS/FAIL line; run with `-s` to see them live:

    pytest tests/test_acceptance.py -v -s

The benchmark pair (criteria 9 and 10) trains every algorithm twice on the
three committed datasets and dominates the suite's runtime.
"""

import json
import math
import time
from pathlib import Path

import numpy as np
import pytest

from quadboost import engine
from quadboost.baselines import adaboost_train
from quadboost.bounds import (
    BoundInputs,
    bound_value,
    draw_sigma,
    holder_oracle,
    scaling_identity_check,
    scaling_identity_grid,
    pool_sup,
)
from quadboost.cv import bench, log_grid
from quadboost.data import load_csv
from quadboost.stumps import generate_pool
from quadboost.synth import noisy_linear_rule

DATA_DIR = Path(__file__).resolve().parents[1] / "data"
VARIANTS = ("quadboost-vanilla", "quadboost-l1", "quadboost-l2", "quadboost-linf")


def check(num, desc, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {num}: {desc}"
    if detail:
        line += f"  [{detail}]"
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def synthetic():
    ds = noisy_linear_rule(m=200, d=5, flip=0.1, seed=7)
    pool = generate_pool(ds, per_attribute=6)
    return ds, pool


@pytest.fixture(scope="module")
def bench_pair():
    datasets = [load_csv(str(DATA_DIR / name))
                for name in ("steps.csv", "pulse.csv", "band.csv")]
    start = time.perf_counter()
    first = bench(datasets, seed=0, max_rounds_cap=10_000)
    second = bench(datasets, seed=0, max_rounds_cap=10_000)
    wall = time.perf_counter() - start
    return first, second, wall


def test_criterion_1_exact_per_round_decrease(synthetic):
    ds, pool = synthetic
    start = time.perf_counter()
    _, history = engine.train(ds, pool, engine.BoostConfig(variant="vanilla", rounds=60))
    elapsed = time.perf_counter() - start
    prev = 1.0
    worst = 0.0
    for s in history:
        worst = max(worst, abs(s.quadratic_risk - (prev - s.edge ** 2 / s.eta)))
        prev = s.quadratic_risk
    check(1, "risk_after = risk_before - g^2/eta every vanilla round (1e-10), <1s",
          worst <= 1e-10 and elapsed < 1.0,
          f"max dev {worst:.2e} over {len(history)} rounds, {elapsed:.3f}s")


def test_criterion_2_convergence_bound(synthetic):
    ds, pool = synthetic
    ok = True
    parts = []
    for T in (10, 50):
        _, hist = engine.train(ds, pool, engine.BoostConfig(variant="vanilla", rounds=T))
        gamma = min(abs(s.edge) for s in hist)
        limit = 1.0 - len(hist) * gamma ** 2
        final = hist[-1].quadratic_risk
        ok = ok and len(hist) == T and final <= limit + 1e-9
        ok = ok and all(s.zero_one_error <= s.quadratic_risk + 1e-12 for s in hist)
        parts.append(f"T={T}: {final:.4f} <= {limit:.4f}")
    check(2, "final risk <= 1 - T*gamma^2 for T in {10,50}; zero-one <= risk each round",
          ok, "; ".join(parts))


def test_criterion_3_adaboost_error_bound(synthetic):
    ds, pool = synthetic
    _, hist = adaboost_train(ds, pool, 60)
    edge_sq_sum = 0.0
    worst = -math.inf
    for r in hist:
        edge_sq_sum += r.edge ** 2
        worst = max(worst, r.zero_one_error - math.exp(-2.0 * edge_sq_sum))
    check(3, "adaboost training error <= exp(-2 sum gamma_t^2) every round (1e-9)",
          worst <= 1e-9, f"worst margin {worst:.2e} over {len(hist)} rounds")


def test_criterion_4_scaling_identity_and_holder_oracle(synthetic):
    ds, pool = synthetic
    assert pool.n == 60
    results = scaling_identity_grid(pool, (1.0, 1.5, 2.0, 4.0), (1, 2, 5, 16),
                            n_draws=100, seed=0)
    worst = max(abs(r["diff"]) for r in results)

    sigma = draw_sigma(0, 0, pool.m)
    s = pool_sup(pool, sigma)
    lhs, _ = scaling_identity_check(pool, 2.0, 4, sigma)
    best = holder_oracle(np.full(4, s), 2.0, n_draws=10 ** 6, seed=1)
    ok = worst <= 1e-12 and best <= lhs and best >= 0.99 * lhs
    check(4, "combination sup identity to 1e-12 on 60-voter pool; 1e6-draw "
             "randomized oracle within 1% from below (p=2, n=4)",
          ok, f"max |lhs-rhs| {worst:.2e}; oracle {best:.6f} vs exact {lhs:.6f}")


def test_criterion_5_weight_rules_match_grid_search():
    rng = np.random.default_rng(42)
    grid = np.linspace(-10.0, 10.0, 100_000)
    tol = 2 * (grid[1] - grid[0])
    worst = 0.0
    for _ in range(1000):
        g = float(rng.uniform(-3.0, 3.0))
        eta = float(rng.uniform(0.5, 2.0))
        lam = float(rng.uniform(0.0, 2.0))
        amax = float(rng.uniform(0.01, 2.0))
        base = -2.0 * grid * g + grid * grid * eta
        worst = max(worst, abs(
            engine.weight_l1(g, eta, lam)
            - float(grid[np.argmin(base + 2.0 * lam * np.abs(grid))])))
        worst = max(worst, abs(
            engine.weight_l2(g, eta, lam)
            - float(grid[np.argmin(-2.0 * grid * g + grid * grid * (eta + lam))])))
        inside = np.abs(grid) <= amax
        worst = max(worst, abs(
            engine.weight_linf(g, eta, amax)
            - float(grid[inside][np.argmin(base[inside])])))
    check(5, "l1/l2/linf weights match 1e5-point grid minimizers on 1000 triples",
          worst <= tol, f"max dev {worst:.2e}, allowed {tol:.2e}")


def test_criterion_6_penalty_free_reductions(synthetic):
    ds, pool = synthetic
    rounds = 60
    _, base = engine.train(ds, pool, engine.BoostConfig(variant="vanilla", rounds=rounds))
    ok = True
    for variant, kw in (("l1", {"lam": 0.0}), ("l2", {"lam": 0.0}),
                        ("linf", {"alpha_max": 1e9})):
        _, hist = engine.train(ds, pool,
                               engine.BoostConfig(variant=variant, rounds=rounds, **kw))
        # dataclass equality compares every float field exactly
        ok = ok and hist == base
    check(6, "lam=0 collapses l1/l2 to vanilla bit-for-bit; alpha_max=1e9 collapses linf",
          ok, f"{len(base)} rounds compared per variant")


def test_criterion_7_l1_stop_and_sparsity(synthetic):
    ds, pool = synthetic
    initial = np.abs(pool.eval_matrix.T.astype(np.float64) @ ds.labels) / ds.m
    lam_hi = float(np.max(initial)) * 1.001
    ensemble, hist = engine.train(
        ds, pool, engine.BoostConfig(variant="l1", lam=lam_hi, rounds=50))
    stop_ok = ensemble.dim == 0 and hist == []

    dims = []
    for lam in log_grid(1e-4, 1.0, 10):
        ensemble, _ = engine.train(
            ds, pool, engine.BoostConfig(variant="l1", lam=lam, rounds=10_000))
        dims.append(ensemble.dim)
    mono_ok = all(b <= a for a, b in zip(dims, dims[1:]))
    check(7, "lam above max initial |edge| stops at round 0 empty; voters "
             "non-increasing over the 10-value lam grid",
          stop_ok and mono_ok, f"dims {dims}")


def test_criterion_8_complexity_term_dim_dependence():
    dims = [1, 2, 4, 8, 16, 32, 64]

    def complexity(p, dim):
        inputs = BoundInputs(p=p, delta=0.05, m=500, rademacher=0.08,
                             dim_alpha=dim, norm_alpha=1.5,
                             empirical_surrogate_risk=0.2)
        return bound_value(inputs)[1]["complexity"]

    at_p1 = [complexity(1.0, d) for d in dims]
    spread = max(at_p1) - min(at_p1)
    strict = True
    for p in (2.0, math.inf):
        vals = [complexity(p, d) for d in dims]
        strict = strict and all(b > a for a, b in zip(vals, vals[1:]))
    check(8, "complexity term constant in voter count at p=1, strictly increasing at p in {2,inf}",
          spread == 0.0 and strict, f"p=1 spread {spread}")


def test_criterion_9_benchmark_protocol(bench_pair):
    result, _, wall = bench_pair
    rows = result["rows"]
    ada = {r["dataset"]: r["risks"]["adaboost"] for r in rows}
    ok = all(v is not None for v in ada.values())
    parts = []
    for algo in VARIANTS:
        close = 0
        for r in rows:
            risk = r["risks"][algo]
            if risk is not None and risk <= ada[r["dataset"]] + 0.05:
                close += 1
        ok = ok and close >= 2
        parts.append(f"{algo.removeprefix('quadboost-')} {close}/3")
    times = result["mean_time_seconds"]
    ok = ok and times["quadboost-vanilla"] < times["adaboost"]
    ok = ok and wall < 600.0
    check(9, "every variant within 0.05 of adaboost on >=2 of 3 datasets; "
             "vanilla faster than adaboost; both sweeps under 10 min",
          ok, "; ".join(parts) + f"; vanilla {times['quadboost-vanilla']:.2f}s vs "
          f"adaboost {times['adaboost']:.2f}s; total {wall:.0f}s")


def test_criterion_10_repeat_runs_byte_identical(bench_pair):
    first, second, _ = bench_pair
    a = {k: v for k, v in first.items() if k != "mean_time_seconds"}
    b = {k: v for k, v in second.items() if k != "mean_time_seconds"}
    ok = json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    check(10, "repeated sweep is byte-identical after dropping timing fields", ok)
