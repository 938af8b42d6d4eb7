"""Command-line harness: train, predict, cv, bench, bound, verify."""

import argparse
import json
import math
import sys

import numpy as np

from . import engine, verify
from .baselines import adaboost_train
from .bounds import BoundInputs, bound_value, rademacher_mc, theoretical_lambda
from .cv import ALGORITHMS, bench, format_bench_table, run_experiment
from .data import apply_normalizer, fit_normalizer, load_csv
from .stumps import VoterPool, generate_pool


def _add_data_args(p, multiple=False):
    if multiple:
        p.add_argument("--data", action="append", required=True,
                       help="CSV path; repeat for several datasets")
    else:
        p.add_argument("--data", required=True, help="CSV path")
    p.add_argument("--label-col", type=int, default=None,
                   help="0-based label column (default: last)")
    p.add_argument("--header", action="store_true", help="skip the first CSV row")


def _parse_grid(items):
    grids = {}
    for item in items or []:
        try:
            name, spec = item.split("=", 1)
            lo, hi, count = spec.split(":")
            grids[name] = (float(lo), float(hi), int(count))
        except ValueError:
            raise SystemExit(f"bad --grid {item!r}, expected name=min:max:count")
    return grids


def _parse_p(text):
    if text in ("inf", "infinity", "oo"):
        return math.inf
    return float(text)


def _write_json(obj, path):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")


def _load(args):
    return load_csv(args.data, label_column=args.label_col, header=args.header)


def cmd_train(args):
    ds = _load(args)
    norm = None
    if not args.no_normalize:
        norm = fit_normalizer(ds)
        ds = apply_normalizer(norm, ds)
    pool = generate_pool(ds, per_attribute=args.per_attribute)
    if args.algo == "adaboost":
        ensemble, history = adaboost_train(ds, pool, args.rounds)
        config_json = {"rounds": args.rounds, "seed": args.seed}
    else:
        config = engine.BoostConfig(
            variant=args.algo.removeprefix("quadboost-"),
            lam=args.lam, alpha_max=args.alpha_max, rounds=args.rounds,
            reweight_every=args.reweight_every, seed=args.seed)
        ensemble, history = engine.train(ds, pool, config)
        config_json = config.to_json()
    metrics = {
        "rounds_run": len(history),
        "dim_alpha": ensemble.dim,
        "train_quadratic_risk": engine.quadratic_risk(ensemble),
        "train_zero_one": engine.training_error(ensemble),
    }
    for key, value in metrics.items():
        print(f"{key}: {value}")
    if args.out:
        model = engine.model_to_json(ensemble, pool, args.algo, config_json,
                                     normalizer=norm, metrics=metrics)
        engine.save_model(model, args.out)
        print(f"model written to {args.out}")
    if args.history:
        engine.history_to_csv(history, args.history)
        print(f"history written to {args.history}")
    return 0


def cmd_predict(args):
    with open(args.model) as fh:
        model = json.load(fh)
    ds = _load(args)
    preds = engine.model_predict(model, ds.features)
    error = float(np.mean(preds != ds.labels))
    print(f"zero_one_error: {error}")
    if args.out:
        with open(args.out, "w") as fh:
            for v in preds:
                fh.write(f"{int(v)}\n")
        print(f"predictions written to {args.out}")
    return 0


def cmd_cv(args):
    ds = _load(args)
    report, history = run_experiment(
        ds, args.algo, seed=args.seed, folds=args.folds,
        grids=_parse_grid(args.grid), reweight_every=args.reweight_every,
        max_rounds_cap=args.max_rounds_cap)
    if args.history:
        engine.history_to_csv(history, args.history)
        report["final"]["history_path"] = args.history
    print(f"selected: {report['selected']['params']}"
          f" (mean cv risk {report['selected']['mean_risk']:.4f})")
    print(f"test_risk: {report['final']['test_risk']:.4f}")
    if args.out:
        _write_json(report, args.out)
        print(f"report written to {args.out}")
    return 0


def cmd_bench(args):
    datasets = [load_csv(path, label_column=args.label_col, header=args.header)
                for path in args.data]
    algos = args.algo or list(ALGORITHMS)
    result = bench(datasets, algos=algos, seed=args.seed, folds=args.folds,
                   reweight_every=args.reweight_every,
                   max_rounds_cap=args.max_rounds_cap)
    print(format_bench_table(result))
    failures = {row["dataset"]: row["errors"] for row in result["rows"] if row["errors"]}
    if failures:
        print(f"failures: {failures}")
    if args.out:
        _write_json(result, args.out)
        print(f"report written to {args.out}")
    return 0


def cmd_bound(args):
    with open(args.model) as fh:
        model = json.load(fh)
    ds = _load(args)
    if "normalizer" in model:
        from .data import Normalizer
        norm = Normalizer(
            center=np.asarray(model["normalizer"]["center"], dtype=np.float64),
            scale=np.asarray(model["normalizer"]["scale"], dtype=np.float64))
        ds = apply_normalizer(norm, ds)
    pool = VoterPool.from_json(model["pool"], ds)
    estimate = rademacher_mc(pool, n_draws=args.draws, seed=args.seed)

    from .stumps import Stump, stump_column
    score = np.zeros(ds.m, dtype=np.float64)
    weights = []
    for e in model["entries"]:
        s = Stump(int(e["attribute"]), float(e["threshold"]), int(e["polarity"]))
        score += e["weight"] * stump_column(s, ds.features)
        weights.append(e["weight"])
    weights = np.array(weights, dtype=np.float64)
    risk = float(np.mean((ds.labels - score) ** 2))

    p = args.p if args.p is not None else {
        "quadboost-l2": 2.0, "quadboost-linf": math.inf}.get(model["variant"], 1.0)
    norm_alpha = (float(np.max(np.abs(weights))) if p == math.inf
                  else float(np.sum(np.abs(weights) ** p) ** (1.0 / p)))
    inputs = BoundInputs(
        p=p, delta=args.delta, m=ds.m, rademacher=estimate.mean,
        dim_alpha=len(weights), norm_alpha=norm_alpha,
        empirical_surrogate_risk=risk)
    total, terms = bound_value(inputs)
    total_emp, terms_emp = bound_value(inputs, empirical=True)
    variant = model["variant"].removeprefix("quadboost-")
    theo = (theoretical_lambda(variant, estimate.mean, len(weights))
            if variant in ("l1", "l2", "linf") else None)
    out = {
        "schema_version": 1,
        "inputs": inputs.to_json(),
        "rademacher": estimate.to_json(),
        "bound": {"total": total, "terms": terms},
        "bound_empirical_rademacher": {"total": total_emp, "terms": terms_emp},
        "theoretical_lambda": theo,
    }
    for name, value in terms.items():
        print(f"{name}: {value:.6f}")
    print(f"total: {total:.6f}")
    print(f"total (empirical-complexity variant): {total_emp:.6f}")
    if args.out:
        _write_json(out, args.out)
        print(f"report written to {args.out}")
    return 0


def cmd_verify(args):
    if args.scaling:
        ok = verify.run_scaling_report(args.p, args.n, n_draws=args.draws, seed=args.seed)
        return 0 if ok else 1
    failures = verify.run_checks()
    if failures:
        print(f"{len(failures)} check(s) failed")
        return 1
    print("all checks passed")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quadboost",
        description="Quadratic-loss boosting with closed-form weight rules")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train one model on a CSV dataset")
    _add_data_args(p)
    p.add_argument("--algo", choices=ALGORITHMS, default="quadboost-vanilla")
    p.add_argument("--rounds", type=int, default=100)
    p.add_argument("--lam", type=float, default=0.0)
    p.add_argument("--alpha-max", type=float, default=1.0)
    p.add_argument("--reweight-every", type=int, default=0)
    p.add_argument("--per-attribute", type=int, default=10,
                   help="stump thresholds per attribute (pool has 2x this per attribute)")
    p.add_argument("--no-normalize", action="store_true",
                   help="skip tanh feature normalization")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="model JSON path")
    p.add_argument("--history", default=None, help="round history CSV path")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="evaluate a saved model on a CSV dataset")
    p.add_argument("--model", required=True)
    _add_data_args(p)
    p.add_argument("--out", default=None, help="predictions path, one +-1 per line")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("cv", help="cross-validated hyperparameter search")
    _add_data_args(p)
    p.add_argument("--algo", choices=ALGORITHMS, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--folds", type=int, default=5)
    p.add_argument("--grid", action="append", metavar="name=min:max:count",
                   help="override a hyperparameter grid; repeatable")
    p.add_argument("--reweight-every", type=int, default=0)
    p.add_argument("--max-rounds-cap", type=int, default=10_000)
    p.add_argument("--out", default=None, help="report JSON path")
    p.add_argument("--history", default=None, help="final-model history CSV path")
    p.set_defaults(func=cmd_cv)

    p = sub.add_parser("bench", help="compare algorithms across datasets")
    _add_data_args(p, multiple=True)
    p.add_argument("--algo", action="append", choices=ALGORITHMS,
                   help="algorithm to include; repeatable (default: all)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--folds", type=int, default=5)
    p.add_argument("--reweight-every", type=int, default=0)
    p.add_argument("--max-rounds-cap", type=int, default=10_000)
    p.add_argument("--out", default=None, help="report JSON path")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("bound", help="risk-bound terms for a saved model")
    p.add_argument("--model", required=True)
    _add_data_args(p)
    p.add_argument("--p", type=_parse_p, default=None,
                   help="norm order: 1, 2, inf (default from the model variant)")
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--draws", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="report JSON path")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("verify", help="run the invariant checks")
    p.add_argument("--scaling", action="store_true",
                   help="print per-draw lhs/rhs of the scaling identity")
    p.add_argument("--p", type=_parse_p, default=2.0)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--draws", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
