"""Cross-validated hyperparameter selection and the benchmark harness.

Protocol per dataset: random train/test split (training side capped at 500
examples), tanh normalization fit on the training side only, one stump pool
built on the normalized training side, k-fold CV over log-spaced grids,
final fit on the full training side with the winning cell, one evaluation
on the held-out test side.

Round-count grids share work: training a T_max-round model passes through
the exact state of every smaller-T model (rounds never look ahead), so one
trajectory per fold serves the whole rounds axis. Validation error is read
off at each grid value by a round callback. This shortcut is only sound
with reweighting off; with reweight_every > 0 every cell runs separately.
"""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import engine
from .baselines import adaboost_train
from .data import apply_normalizer, fit_normalizer, fold_indices, load_csv, split_train_test
from .stumps import generate_pool

ALGORITHMS = (
    "quadboost-vanilla",
    "quadboost-l1",
    "quadboost-l2",
    "quadboost-linf",
    "adaboost",
)

# (min, max, count) per hyperparameter; rounds maxima get capped by
# max_rounds_cap before spacing. l1 has no rounds grid: it stops on its own
# (or at the cap).
DEFAULT_GRIDS = {
    "quadboost-vanilla": {"rounds": (1.0, 1e3, 10)},
    "quadboost-l1": {"lam": (1e-4, 1.0, 10)},
    "quadboost-l2": {"lam": (1.0, 1e3, 10), "rounds": (1e1, 1e5, 10)},
    "quadboost-linf": {"alpha_max": (1e-4, 0.1, 10), "rounds": (1.0, 1e5, 10)},
    "adaboost": {"rounds": (1e2, 1e6, 10)},
}


@dataclass
class ExperimentSpec:
    data_path: str
    algo: str
    seed: int = 0
    folds: int = 5
    grids: dict = field(default_factory=dict)
    reweight_every: int = 0
    max_rounds_cap: int = 10_000
    label_column: int = None
    header: bool = False
    out_path: str = None


def log_grid(lo, hi, count):
    """count log-spaced floats from lo to hi inclusive."""
    if lo <= 0 or hi <= 0:
        raise ValueError("log grid endpoints must be positive")
    if hi < lo:
        raise ValueError("grid max below min")
    if count < 1:
        raise ValueError("grid count must be at least 1")
    return [float(v) for v in np.logspace(math.log10(lo), math.log10(hi), int(count))]


def int_log_grid(lo, hi, count, cap=None):
    """Log grid rounded to integers, deduplicated, upper end capped."""
    if cap is not None:
        hi = min(hi, cap)
        lo = min(lo, hi)
    out = []
    for v in log_grid(lo, hi, count):
        t = max(1, int(round(v)))
        if t not in out:
            out.append(t)
    return out


def build_cells(algo, grids, cap):
    """Grid cells for one algorithm.

    Returns (cells, bases, rounds_values, grid_used): cells are the
    reportable parameter dicts in selection order; bases the non-rounds
    parameter combinations, each owning one trajectory per fold;
    rounds_values the shared rounds axis ([cap] internally when the
    algorithm has no rounds hyperparameter).
    """
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}")
    spec = dict(DEFAULT_GRIDS[algo])
    for name, triple in (grids or {}).items():
        if name not in spec:
            raise ValueError(f"{algo} takes no {name!r} grid")
        spec[name] = tuple(triple)

    grid_used = {}
    if "rounds" in spec:
        lo, hi, count = spec["rounds"]
        rounds_values = int_log_grid(lo, hi, count, cap=cap)
        grid_used["rounds"] = rounds_values
        rounds_in_cells = True
    else:
        rounds_values = [int(cap)]
        rounds_in_cells = False

    base_name = next((k for k in ("lam", "alpha_max") if k in spec), None)
    if base_name is None:
        bases = [{}]
    else:
        lo, hi, count = spec[base_name]
        values = log_grid(lo, hi, count)
        grid_used[base_name] = values
        bases = [{base_name: v} for v in values]

    cells = []
    for base in bases:
        if rounds_in_cells:
            for t in rounds_values:
                cell = dict(base)
                cell["rounds"] = t
                cells.append(cell)
        else:
            cells.append(dict(base))
    return cells, bases, rounds_values, grid_used


def _val_error(entries, val_votes, val_labels):
    """Zero-one error of the weighted vote on pre-evaluated validation rows."""
    score = np.zeros(val_votes.shape[0], dtype=np.float64)
    for j, alpha in entries:
        score += alpha * val_votes[:, j]
    pred = np.where(score > 0, 1.0, -1.0)
    return float(np.mean(pred != val_labels))


class _GridRecorder:
    """Round callback that snapshots validation error at each grid value."""

    def __init__(self, thresholds, val_votes, val_labels):
        self.remaining = sorted(thresholds)
        self.val_votes = val_votes
        self.val_labels = val_labels
        self.risks = {}
        self.seconds = {}
        self.start = time.perf_counter()

    def _record(self, t, ensemble):
        self.risks[t] = _val_error(ensemble.entries, self.val_votes, self.val_labels)
        self.seconds[t] = time.perf_counter() - self.start

    def __call__(self, ensemble, stats):
        if self.remaining and stats.round_index == self.remaining[0]:
            self._record(self.remaining.pop(0), ensemble)

    def finish(self, ensemble):
        # training stopped early: every larger grid value sees the same model
        for t in self.remaining:
            self._record(t, ensemble)
        self.remaining = []


def _make_config(algo, params, rounds, reweight_every, seed):
    variant = algo.removeprefix("quadboost-")
    kwargs = {"variant": variant, "rounds": rounds,
              "reweight_every": reweight_every, "seed": seed}
    if "lam" in params:
        kwargs["lam"] = params["lam"]
    if "alpha_max" in params:
        kwargs["alpha_max"] = params["alpha_max"]
    return engine.BoostConfig(**kwargs)


def _train_algo(algo, ds, pool, params, rounds, reweight_every, seed, callback=None):
    if algo == "adaboost":
        return adaboost_train(ds, pool, rounds, round_callback=callback)
    config = _make_config(algo, params, rounds, reweight_every, seed)
    return engine.train(ds, pool, config, round_callback=callback)


def run_experiment(ds, algo, seed=0, folds=5, grids=None, reweight_every=0,
                   max_rounds_cap=10_000, per_attribute=10, backend_name=None):
    """Full protocol on one dataset. Returns (report dict, final round history)."""
    wall0 = time.perf_counter()
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}")
    train_raw, test_raw = split_train_test(ds, seed)
    if train_raw.m < folds:
        raise ValueError(f"training split has {train_raw.m} rows, fewer than {folds} folds")
    norm = fit_normalizer(train_raw)
    train_n = apply_normalizer(norm, train_raw)
    test_n = apply_normalizer(norm, test_raw)
    pool = generate_pool(train_n, per_attribute=per_attribute, backend_name=backend_name)
    cells, bases, rounds_values, grid_used = build_cells(algo, grids, max_rounds_cap)
    rounds_max = max(rounds_values)
    n_rounds_axis = len(rounds_values)

    cell_risks = [[] for _ in cells]
    cell_seconds = [[] for _ in cells]
    train_wall = 0.0
    prefix_ok = reweight_every == 0 or algo == "adaboost"
    rounds_in_cells = "rounds" in grid_used

    for val_idx in fold_indices(train_n.m, folds, seed):
        train_idx = np.setdiff1d(np.arange(train_n.m), val_idx)
        fold_pool = pool.subset_rows(train_idx)
        fold_train = train_n.subset(train_idx, name=f"{ds.name}-fold")
        val_votes = pool.eval_matrix[val_idx]
        val_labels = train_n.labels[val_idx]
        if prefix_ok:
            for b, base in enumerate(bases):
                recorder = _GridRecorder(rounds_values, val_votes, val_labels)
                t0 = time.perf_counter()
                ensemble, _ = _train_algo(algo, fold_train, fold_pool, base,
                                          rounds_max, reweight_every, seed,
                                          callback=recorder)
                train_wall += time.perf_counter() - t0
                recorder.finish(ensemble)
                for i, t in enumerate(rounds_values):
                    ci = b * n_rounds_axis + i if rounds_in_cells else b
                    cell_risks[ci].append(recorder.risks[t])
                    cell_seconds[ci].append(recorder.seconds[t])
        else:
            for ci, params in enumerate(cells):
                t0 = time.perf_counter()
                ensemble, _ = _train_algo(algo, fold_train, fold_pool, params,
                                          params.get("rounds", rounds_max),
                                          reweight_every, seed)
                dt = time.perf_counter() - t0
                train_wall += dt
                cell_risks[ci].append(_val_error(ensemble.entries, val_votes, val_labels))
                cell_seconds[ci].append(dt)

    mean_risks = [float(np.mean(r)) for r in cell_risks]
    best = min(range(len(cells)), key=lambda i: mean_risks[i])
    selected = cells[best]

    t0 = time.perf_counter()
    final_ensemble, final_history = _train_algo(
        algo, train_n, pool, selected, selected.get("rounds", rounds_max),
        reweight_every, seed)
    final_seconds = time.perf_counter() - t0
    train_wall += final_seconds

    test_risk = engine.zero_one_error(final_ensemble, pool, test_n)
    report = {
        "schema_version": 1,
        "dataset": ds.name,
        "rows": ds.m,
        "attributes": ds.attribute_count,
        "algo": algo,
        "backend": pool.backend_name,
        "seed": seed,
        "folds": folds,
        "reweight_every": reweight_every,
        "max_rounds_cap": max_rounds_cap,
        "per_attribute": per_attribute,
        "pool_size": pool.n,
        "train_size": train_n.m,
        "test_size": test_n.m,
        "grid": grid_used,
        "cells": [
            {"params": cells[i], "fold_risks": cell_risks[i], "mean_risk": mean_risks[i]}
            for i in range(len(cells))
        ],
        "selected": {"params": selected, "mean_risk": mean_risks[best]},
        "final": {
            "train_zero_one": engine.training_error(final_ensemble),
            "train_quadratic_risk": engine.quadratic_risk(final_ensemble),
            "test_risk": test_risk,
            "dim_alpha": final_ensemble.dim,
            "norms": {
                "l1": final_ensemble.norm(1),
                "l2": final_ensemble.norm(2),
                "linf": final_ensemble.norm(math.inf),
            },
            "rounds_run": len(final_history),
        },
        "timing": {
            "cell_train_seconds": [float(np.sum(s)) for s in cell_seconds],
            "final_train_seconds": final_seconds,
            "train_wall_seconds": train_wall,
            "wall_seconds": time.perf_counter() - wall0,
        },
    }
    return report, final_history


def cv_select(spec):
    """Load the experiment's CSV and run the full protocol. Returns (report, history)."""
    ds = load_csv(spec.data_path, label_column=spec.label_column, header=spec.header)
    return run_experiment(
        ds, spec.algo, seed=spec.seed, folds=spec.folds, grids=spec.grids,
        reweight_every=spec.reweight_every, max_rounds_cap=spec.max_rounds_cap)


def bench(datasets, algos=ALGORITHMS, seed=0, folds=5, reweight_every=0,
          max_rounds_cap=10_000, backend_name=None):
    """Run every algorithm on every dataset; tabulate test risks and times.

    A failing run is recorded in the row's errors and the sweep continues.
    Returns a JSON-ready dict; format_bench_table renders it as text.
    """
    datasets = list(datasets)
    if not datasets:
        raise ValueError("bench needs at least one dataset")
    algos = list(algos)
    rows = []
    times = {algo: [] for algo in algos}
    for ds in datasets:
        row = {"dataset": ds.name, "risks": {}, "selected": {}, "errors": {}}
        for algo in algos:
            try:
                report, _ = run_experiment(
                    ds, algo, seed=seed, folds=folds,
                    reweight_every=reweight_every,
                    max_rounds_cap=max_rounds_cap, backend_name=backend_name)
            except Exception as exc:
                row["risks"][algo] = None
                row["errors"][algo] = f"{type(exc).__name__}: {exc}"
                continue
            row["risks"][algo] = report["final"]["test_risk"]
            row["selected"][algo] = report["selected"]["params"]
            times[algo].append(report["timing"]["wall_seconds"])
        rows.append(row)
    mean_times = {
        algo: (float(np.mean(ts)) if ts else None) for algo, ts in times.items()
    }
    return {
        "schema_version": 1,
        "seed": seed,
        "folds": folds,
        "max_rounds_cap": max_rounds_cap,
        "algos": algos,
        "rows": rows,
        "mean_time_seconds": mean_times,
    }


def format_bench_table(result):
    """Aligned text table: dataset rows, algorithm columns, * on row minima."""
    algos = result["algos"]
    header = ["dataset"] + list(algos)
    lines = [header]
    for row in result["rows"]:
        risks = row["risks"]
        present = [v for v in risks.values() if v is not None]
        row_min = min(present) if present else None
        cells = [row["dataset"]]
        for algo in algos:
            v = risks.get(algo)
            if v is None:
                cells.append("FAIL")
            elif row_min is not None and v == row_min:
                cells.append(f"*{v:.3f}")
            else:
                cells.append(f"{v:.3f}")
        lines.append(cells)
    time_cells = ["mean-time-s"]
    for algo in algos:
        t = result["mean_time_seconds"].get(algo)
        time_cells.append("-" if t is None else f"{t:.1f}")
    lines.append(time_cells)
    widths = [max(len(line[i]) for line in lines) for i in range(len(header))]
    out = []
    for line in lines:
        out.append("  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip())
    return "\n".join(out)
