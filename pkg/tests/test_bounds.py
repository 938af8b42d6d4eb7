import itertools
import math

import numpy as np
import pytest

from quadboost.bounds import (
    BoundInputs,
    bound_value,
    complexity_term,
    draw_sigma,
    dual_exponent,
    holder_oracle,
    scaling_identity_check,
    scaling_identity_grid,
    pool_sup,
    rademacher_mc,
    theoretical_lambda,
)
from quadboost.data import Dataset
from quadboost.stumps import generate_pool
from quadboost.synth import noisy_linear_rule

from conftest import manual_pool


def constant_pool(m):
    """{+1, -1} constant voters on m rows."""
    ds = Dataset(np.zeros((m, 1)), np.ones(m))
    return manual_pool(np.ones((m, 1)), ds)


def test_draw_sigma_deterministic_and_signed():
    a = draw_sigma(3, 17, 50)
    b = draw_sigma(3, 17, 50)
    assert np.array_equal(a, b)
    assert np.all(np.abs(a) == 1.0)
    assert not np.array_equal(a, draw_sigma(3, 18, 50))


def test_pool_sup_single_example_is_one():
    pool = constant_pool(1)
    for i in range(8):
        assert pool_sup(pool, draw_sigma(0, i, 1)) == 1.0
    est = rademacher_mc(pool, n_draws=10, seed=0)
    assert est.mean == 1.0
    assert est.stderr == 0.0


def test_pool_sup_two_examples_enumerated():
    # sup over {+-1 constant voter} of mean(sigma * h) is |sigma_1 + sigma_2| / 2
    pool = constant_pool(2)
    values = {}
    for s1, s2 in itertools.product([-1.0, 1.0], repeat=2):
        values[(s1, s2)] = pool_sup(pool, np.array([s1, s2]))
    assert values[(1.0, 1.0)] == 1.0
    assert values[(-1.0, -1.0)] == 1.0
    assert values[(1.0, -1.0)] == 0.0
    assert values[(-1.0, 1.0)] == 0.0
    # expectation over the 4 equally likely draws is 1/2
    assert sum(values.values()) / 4 == 0.5


def test_rademacher_mc_matches_enumeration_in_expectation():
    pool = constant_pool(2)
    est = rademacher_mc(pool, n_draws=400, seed=1)
    assert abs(est.mean - 0.5) < 3 * est.stderr + 1e-12
    assert est.draws == 400


def test_stderr_shrinks_with_draws(noisy_setup):
    ds, pool = noisy_setup
    small = rademacher_mc(pool, n_draws=250, seed=5)
    big = rademacher_mc(pool, n_draws=1000, seed=5)
    # 4x the draws should roughly halve the standard error
    assert big.stderr < small.stderr * 0.75
    assert big.stderr > small.stderr * 0.25


def test_rademacher_decreases_with_sample_size():
    small_ds = noisy_linear_rule(m=60, d=4, seed=2)
    big_ds = noisy_linear_rule(m=500, d=4, seed=2)
    small = rademacher_mc(generate_pool(small_ds, per_attribute=5), n_draws=300, seed=0)
    big = rademacher_mc(generate_pool(big_ds, per_attribute=5), n_draws=300, seed=0)
    assert 0.0 < big.mean <= 1.0
    assert 0.0 < small.mean <= 1.0
    assert big.mean < small.mean + 3 * (big.stderr + small.stderr)


def test_dual_exponent():
    assert dual_exponent(1) == math.inf
    assert dual_exponent(2) == 2.0
    assert dual_exponent(1.5) == pytest.approx(3.0)
    assert dual_exponent(math.inf) == 1.0
    with pytest.raises(ValueError):
        dual_exponent(0.5)


def test_scaling_identity_values(noisy_setup):
    _, pool = noisy_setup
    sigma = draw_sigma(0, 0, pool.m)
    s = pool_sup(pool, sigma)
    lhs, rhs = scaling_identity_check(pool, 1.0, 7, sigma)
    assert lhs == rhs == s  # p=1: no growth with n
    lhs, rhs = scaling_identity_check(pool, 2.0, 4, sigma)
    assert rhs == pytest.approx(2.0 * s, abs=1e-15)
    assert abs(lhs - rhs) < 1e-12


def test_scaling_identity_grid_results(noisy_setup):
    _, pool = noisy_setup
    results = scaling_identity_grid(pool, [1, 1.5, 2, 4], [1, 2, 5, 16], n_draws=10, seed=0)
    assert len(results) == 10 * 4 * 4
    assert max(abs(r["diff"]) for r in results) <= 1e-12


def test_holder_oracle_lower_bound():
    v = np.array([0.3, 0.3, 0.3, 0.3])
    exact = math.sqrt(np.sum(v ** 2))  # dual of L2 is L2
    got = holder_oracle(v, 2.0, n_draws=20_000, seed=0)
    assert got <= exact + 1e-12
    assert got >= 0.95 * exact


def test_holder_oracle_p1_uses_max():
    v = np.array([0.1, 0.5, 0.2])
    got = holder_oracle(v, 1.0, n_draws=20_000, seed=1)
    assert got <= 0.5 + 1e-12
    assert got >= 0.45


def test_bound_hand_evaluation():
    inputs = BoundInputs(p=1.0, delta=0.05, m=100, rademacher=0.1,
                         dim_alpha=1, norm_alpha=1.0,
                         empirical_surrogate_risk=0.3)
    total, terms = bound_value(inputs)
    assert terms["empirical_risk"] == 0.3
    assert terms["complexity"] == pytest.approx(0.8, abs=1e-15)  # 4*2*1*0.1
    expected_dim = math.sqrt(math.log(math.pi ** 2 * 4 / 0.3) / 200.0)
    assert terms["dim_union"] == pytest.approx(expected_dim, abs=1e-15)
    assert terms["norm_union"] == 0.0  # log log2(2) = 0
    assert total == pytest.approx(0.3 + 0.8 + expected_dim, abs=1e-14)


def test_bound_empirical_variant_adjustments():
    inputs = BoundInputs(p=2.0, delta=0.1, m=400, rademacher=0.05,
                         dim_alpha=9, norm_alpha=2.0,
                         empirical_surrogate_risk=0.2)
    total, terms = bound_value(inputs)
    total_emp, terms_emp = bound_value(inputs, empirical=True)
    assert terms_emp["norm_union"] == pytest.approx(3 * terms["norm_union"])
    expected = math.sqrt(math.log(math.pi ** 2 * 100 / (6 * 0.05)) / 800.0)
    assert terms_emp["dim_union"] == pytest.approx(expected, abs=1e-15)
    assert terms_emp["complexity"] == terms["complexity"]
    assert total_emp > total


def test_bound_norm_domain():
    def inputs(norm):
        return BoundInputs(p=1.0, delta=0.05, m=100, rademacher=0.1,
                           dim_alpha=2, norm_alpha=norm,
                           empirical_surrogate_risk=0.1)

    with pytest.raises(ValueError, match="norm_alpha"):
        bound_value(inputs(0.5))
    # between 1/2 and 1 the log-log is negative; term floors at zero
    _, terms = bound_value(inputs(0.8))
    assert terms["norm_union"] == 0.0


def test_bound_total_dominates_risk():
    inputs = BoundInputs(p=2.0, delta=0.05, m=50, rademacher=0.2,
                         dim_alpha=5, norm_alpha=1.5,
                         empirical_surrogate_risk=0.4)
    total, terms = bound_value(inputs)
    assert all(v >= 0.0 for v in terms.values())
    assert total >= 0.4


def test_complexity_term_dim_dependence():
    def term(p, dim):
        return complexity_term(BoundInputs(
            p=p, delta=0.05, m=100, rademacher=0.1, dim_alpha=dim,
            norm_alpha=2.0, empirical_surrogate_risk=0.1))

    p1 = [term(1.0, d) for d in range(1, 30)]
    assert max(p1) == min(p1)
    for p in (2.0, math.inf):
        series = [term(p, d) for d in range(1, 30)]
        assert all(b > a for a, b in zip(series, series[1:]))
    # p=inf scales exactly linearly
    assert term(math.inf, 10) == pytest.approx(10 * term(math.inf, 1))


def test_theoretical_lambda_values():
    assert theoretical_lambda("l1", 0.05, 3) == pytest.approx(0.2)
    assert theoretical_lambda("l2", 0.05, 16) == pytest.approx(1.6)
    assert theoretical_lambda("linf", 0.05, 10) == pytest.approx(4.0)
    with pytest.raises(ValueError):
        theoretical_lambda("vanilla", 0.05, 3)


def test_bound_inputs_validation_and_json():
    with pytest.raises(ValueError):
        BoundInputs(p=0.5, delta=0.05, m=10, rademacher=0.1, dim_alpha=1,
                    norm_alpha=1.0, empirical_surrogate_risk=0.1)
    with pytest.raises(ValueError):
        BoundInputs(p=1.0, delta=0.0, m=10, rademacher=0.1, dim_alpha=1,
                    norm_alpha=1.0, empirical_surrogate_risk=0.1)
    with pytest.raises(ValueError):
        BoundInputs(p=1.0, delta=0.05, m=0, rademacher=0.1, dim_alpha=1,
                    norm_alpha=1.0, empirical_surrogate_risk=0.1)
    obj = BoundInputs(p=math.inf, delta=0.05, m=10, rademacher=0.1, dim_alpha=1,
                      norm_alpha=1.0, empirical_surrogate_risk=0.1).to_json()
    assert obj["p"] == "inf"
