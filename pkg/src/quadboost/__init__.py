"""Quadratic-loss boosting with closed-form voter weights.

Greedy forward-stagewise training of stump ensembles under the quadratic
surrogate, with vanilla, soft-threshold (L1), shrinkage (L2), and clamped
(L∞) weight rules, an AdaBoost baseline, Rademacher-complexity tooling for
the matching risk bound, and a cross-validation benchmark harness.
"""

from . import backend
from .backend import ACTIVE as active_backend
from .baselines import AdaRound, adaboost_bound, adaboost_train, iterations_for_error
from .bounds import (
    BoundInputs,
    RademacherEstimate,
    bound_value,
    holder_oracle,
    scaling_identity_check,
    scaling_identity_grid,
    rademacher_mc,
    theoretical_lambda,
)
from .cv import ALGORITHMS, ExperimentSpec, bench, cv_select, format_bench_table, run_experiment
from .data import (
    Dataset,
    Normalizer,
    apply_normalizer,
    fit_normalizer,
    kfold,
    load_csv,
    split_train_test,
)
from .engine import (
    BoostConfig,
    Ensemble,
    RoundStats,
    boost_round,
    predict,
    quadratic_risk,
    reweight_pass,
    train,
    training_error,
    weight_l1,
    weight_l2,
    weight_linf,
    weight_vanilla,
    zero_one_error,
)
from .stumps import Stump, VoterPool, generate_pool

__version__ = "0.1.0"
