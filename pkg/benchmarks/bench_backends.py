"""Compare the compiled and pure-Python kernel backends.

Times the raw edge scan (the per-round hot loop) and a full vanilla
training run on each available backend, at two sizes: the scale the CV
harness actually trains at (a few hundred rows) and a larger one where
the scan is memory-bound. Also checks that both backends produce the
same voter choices.

Run:  python3 benchmarks/bench_backends.py
"""

import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

import numpy as np

from quadboost import BoostConfig, backend, generate_pool, train
from quadboost.engine import quadratic_risk
from quadboost.synth import step_rule


def time_edge_scan(pool, residuals, repeats):
    out = np.empty(pool.n, dtype=np.float64)
    v = pool.kernels.prepare_vector(residuals)
    pool.kernels.edge_scan(pool.scan_votes, v, out)  # warm up
    t0 = time.perf_counter()
    for _ in range(repeats):
        pool.kernels.edge_scan(pool.scan_votes, v, out)
    return (time.perf_counter() - t0) / repeats


def time_training(ds, pool, rounds=400):
    config = BoostConfig(variant="vanilla", rounds=rounds)
    t0 = time.perf_counter()
    ensemble, history = train(ds, pool, config)
    return time.perf_counter() - t0, ensemble, history


def bench_size(label, ds, scan_repeats):
    names = backend.available()
    print(f"{label}: {ds.m} rows x {ds.attribute_count} attributes")
    rows = []
    runs = {}
    for name in names:
        pool = generate_pool(ds, per_attribute=10, backend_name=name)
        scan = time_edge_scan(pool, ds.labels.copy(), scan_repeats)
        seconds, ensemble, history = time_training(ds, pool)
        rows.append((name, pool.n, scan, seconds))
        runs[name] = (history, quadratic_risk(ensemble))
    print(f"  {'backend':10s} {'voters':>6s} {'edge-scan':>12s} {'train-400r':>12s}")
    for name, n, scan, seconds in rows:
        print(f"  {name:10s} {n:6d} {scan * 1e6:10.1f}us {seconds:10.3f}s")
    if len(rows) == 2:
        speedup = rows[1][3] / rows[0][3] if rows[0][0] == "compiled" else rows[0][3] / rows[1][3]
        print(f"  training speedup (compiled vs python): {speedup:.1f}x")
    if len(runs) == 2:
        a, b = (runs[n] for n in names)
        same_path = [s.voter_index for s in a[0]] == [s.voter_index for s in b[0]]
        print(f"  same voter sequence: {same_path}; "
              f"final risks {a[1]:.12f} / {b[1]:.12f}")
    print()


def main():
    bench_size("cv-scale", step_rule(m=500, d=6, seed=5), scan_repeats=2000)
    bench_size("large", step_rule(m=4000, d=8, seed=5), scan_repeats=200)


if __name__ == "__main__":
    main()
