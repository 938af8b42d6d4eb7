import math

import numpy as np
import pytest

from quadboost.baselines import (
    ALPHA_CAP,
    adaboost_bound,
    adaboost_train,
    iterations_for_error,
    round_bound_products,
)
from quadboost.data import Dataset
from quadboost.engine import training_error

from conftest import manual_pool


def test_bound_values():
    assert adaboost_bound(0.1, 100) == pytest.approx(math.exp(-2.0), abs=1e-15)
    assert adaboost_bound(0.5, 1) == pytest.approx(math.exp(-0.5), abs=1e-15)


def test_bound_domain():
    for gamma, rounds in [(0.0, 10), (0.6, 10), (-0.1, 10), (0.1, 0)]:
        with pytest.raises(ValueError):
            adaboost_bound(gamma, rounds)


def test_iteration_count_inverts_bound():
    # (1/(2 gamma^2)) ln(1/eps) rounds bring the bound down to eps
    t = iterations_for_error(0.1, math.exp(-2.0))
    assert t == pytest.approx(100.0, abs=1e-9)
    for gamma, target in [(0.05, 0.3), (0.3, 0.01), (0.5, 0.9)]:
        t = iterations_for_error(gamma, target)
        assert math.exp(-2.0 * gamma * gamma * t) == pytest.approx(target, rel=1e-12)
    with pytest.raises(ValueError):
        iterations_for_error(0.1, 1.5)


def test_perfect_stump_stops_first_round():
    y = np.array([1.0, -1.0, 1.0, 1.0, -1.0])
    ds = Dataset(np.zeros((5, 1)), y)
    pool = manual_pool(y[:, None], ds)
    ensemble, history = adaboost_train(ds, pool, 50)
    assert len(history) == 1
    assert history[0].error == 0.0
    assert history[0].alpha == ALPHA_CAP
    assert training_error(ensemble) == 0.0


def test_no_voter_beats_chance_stops_immediately():
    # constant voters on balanced labels: weighted error is exactly 1/2
    y = np.array([1.0, -1.0])
    ds = Dataset(np.zeros((2, 1)), y)
    pool = manual_pool(np.ones((2, 1)), ds)
    ensemble, history = adaboost_train(ds, pool, 10)
    assert history == []
    assert ensemble.dim == 0


def test_training_error_below_both_bound_products(noisy_setup):
    ds, pool = noisy_setup
    _, history = adaboost_train(ds, pool, 60)
    assert len(history) == 60
    tight, loose = round_bound_products(history)
    errors = np.array([r.zero_one_error for r in history])
    assert np.all(errors <= tight + 1e-9)
    assert np.all(tight <= loose + 1e-9)


def test_round_bound_products_formulas():
    class R:
        def __init__(self, edge):
            self.edge = edge

    tight, loose = round_bound_products([R(0.1), R(0.2)])
    assert tight[0] == pytest.approx(math.sqrt(1 - 0.04))
    assert tight[1] == pytest.approx(math.sqrt(1 - 0.04) * math.sqrt(1 - 0.16))
    assert loose[1] == pytest.approx(math.exp(-2 * (0.01 + 0.04)))


def test_deterministic_reruns(noisy_setup):
    ds, pool = noisy_setup
    _, h1 = adaboost_train(ds, pool, 40)
    _, h2 = adaboost_train(ds, pool, 40)
    assert [(r.voter_index, r.alpha, r.error) for r in h1] == \
           [(r.voter_index, r.alpha, r.error) for r in h2]


def test_reselected_voter_accumulates_one_entry(noisy_setup):
    ds, pool = noisy_setup
    ensemble, history = adaboost_train(ds, pool, 80)
    picked = [r.voter_index for r in history]
    assert len(picked) > len(set(picked))
    assert ensemble.dim == len(set(picked))
    totals = {}
    for r in history:
        totals[r.voter_index] = totals.get(r.voter_index, 0.0) + r.alpha
    for j, w in ensemble.entries:
        assert w == pytest.approx(totals[j], abs=1e-12)


def test_round_records_are_consistent(noisy_setup):
    ds, pool = noisy_setup
    _, history = adaboost_train(ds, pool, 30)
    for r in history:
        assert 0.0 <= r.error < 0.5
        assert r.edge == pytest.approx(0.5 - r.error)
        assert r.alpha > 0.0
        assert r.alpha == pytest.approx(
            0.5 * math.log((1 - r.error) / r.error), abs=1e-12)


def test_adaboost_input_validation(noisy_setup):
    ds, pool = noisy_setup
    with pytest.raises(ValueError):
        adaboost_train(ds, pool, 0)
    small = Dataset(ds.features[:10], ds.labels[:10])
    with pytest.raises(ValueError):
        adaboost_train(small, pool, 5)
