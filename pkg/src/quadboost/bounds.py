"""Rademacher complexity estimation and the majority-vote risk bound.

Three jobs:

1. Monte-Carlo estimate of the empirical Rademacher complexity of a voter
   pool: E_sigma max_h (1/m) sum_k sigma_k h(x_k). For a symmetric pool
   (every voter paired with its complement) the signed max equals the max
   of |(1/m) sigma . h| over the pool, one abs-argmax scan per draw.

2. A per-draw identity check for the scaling law R_S(C_p^n) = n^(1-1/p) R_S(H),
   where C_p^n is the class of n-voter combinations with unit L_p weight norm.
   The sup over unit-norm weights of sum_i a_i v_i is the dual-norm value
   (sum_i |v_i|^q)^(1/q) with q = p/(p-1); with every v_i equal to the
   per-draw pool sup s, that collapses to n^(1-1/p) s.

3. The risk bound itself, split into its four summands:

       risk + 4 l dim^(1-1/p) ||a||_p R
            + sqrt(log(pi^2 (dim+1)^2 / (6 delta)) / (2m))
            + sqrt(log(log2(2 ||a||_p)) / m)

   With the empirical (sample-estimated) complexity, delta becomes delta/2
   and the last term is tripled.
"""

import math
from dataclasses import dataclass

import numpy as np


@dataclass
class RademacherEstimate:
    mean: float
    stderr: float
    draws: int
    seed: int

    def to_json(self):
        return {"mean": self.mean, "stderr": self.stderr,
                "draws": self.draws, "seed": self.seed}


def draw_sigma(seed, draw_index, m):
    """Sign vector for one draw; the stream depends only on (seed, index)."""
    rng = np.random.default_rng([seed, draw_index])
    return rng.integers(0, 2, size=m).astype(np.float64) * 2.0 - 1.0


def pool_sup(pool, sigma):
    """max_h (1/m) sigma . h over a symmetric pool = max_j |(1/m) sigma . h_j|."""
    out = np.empty(pool.n, dtype=np.float64)
    v = pool.kernels.prepare_vector(sigma)
    j = pool.kernels.edge_scan(pool.scan_votes, v, out)
    return abs(float(out[j]))


def rademacher_mc(pool, n_draws=1000, seed=0):
    """Monte-Carlo mean of the per-draw pool sup, with its standard error."""
    if n_draws < 1:
        raise ValueError("n_draws must be at least 1")
    values = np.empty(n_draws, dtype=np.float64)
    for i in range(n_draws):
        values[i] = pool_sup(pool, draw_sigma(seed, i, pool.m))
    mean = float(values.mean())
    stderr = 0.0 if n_draws == 1 else float(values.std(ddof=1) / math.sqrt(n_draws))
    return RademacherEstimate(mean=mean, stderr=stderr, draws=n_draws, seed=seed)


def dual_exponent(p):
    """q with 1/p + 1/q = 1; p=1 gives inf, p=inf gives 1."""
    if p < 1:
        raise ValueError("p must be at least 1")
    if p == 1:
        return math.inf
    if p == math.inf:
        return 1.0
    return p / (p - 1.0)


def scaling_identity_check(pool, p, n, sigma):
    """One draw of the scaling-law identity. Returns (lhs, rhs).

    lhs is the sup over n-voter unit-L_p combinations, evaluated through the
    dual-norm attainment with all n coordinates at the pool sup; rhs is
    n^(1-1/p) times the pool sup directly. The two must agree to float
    precision; they are computed along different arithmetic routes on
    purpose.
    """
    if p < 1:
        raise ValueError("p must be at least 1")
    if n < 1:
        raise ValueError("n must be at least 1")
    s = pool_sup(pool, sigma)
    q = dual_exponent(p)
    v = np.full(n, s, dtype=np.float64)
    if q == math.inf:
        lhs = float(np.max(v))
    else:
        lhs = float(np.sum(v ** q) ** (1.0 / q))
    exponent = 0.0 if p == math.inf else 1.0 - 1.0 / p
    rhs = float(n ** exponent * s)
    return lhs, rhs


def scaling_identity_grid(pool, p_values, n_values, n_draws=100, seed=0):
    """Run scaling_identity_check over a grid of (p, n) and sign draws.

    Returns a list of dicts {p, n, draw, lhs, rhs, diff}; max |diff| over
    the list is the headline number.
    """
    results = []
    for i in range(n_draws):
        sigma = draw_sigma(seed, i, pool.m)
        for p in p_values:
            for n in n_values:
                lhs, rhs = scaling_identity_check(pool, p, n, sigma)
                results.append(
                    {"p": p, "n": n, "draw": i, "lhs": lhs, "rhs": rhs,
                     "diff": lhs - rhs}
                )
    return results


def holder_oracle(v, p, n_draws=10**6, seed=0):
    """Randomized lower bound on sup_{||a||_p = 1} a . v.

    Draws gaussian vectors, scales each to unit L_p norm, keeps the best
    a . v seen. Never exceeds the dual-norm value and approaches it as
    draws grow. Used to cross-check the scaling identity from below.
    """
    if p < 1:
        raise ValueError("p must be at least 1")
    v = np.asarray(v, dtype=np.float64)
    rng = np.random.default_rng(seed)
    best = -math.inf
    chunk = 100_000
    remaining = n_draws
    while remaining > 0:
        k = min(chunk, remaining)
        x = rng.standard_normal((k, v.shape[0]))
        if p == math.inf:
            norms = np.max(np.abs(x), axis=1)
        else:
            norms = np.sum(np.abs(x) ** p, axis=1) ** (1.0 / p)
        best = max(best, float(np.max(x @ v / norms)))
        remaining -= k
    return best


@dataclass
class BoundInputs:
    p: float
    delta: float
    m: int
    rademacher: float
    dim_alpha: int
    norm_alpha: float
    empirical_surrogate_risk: float
    lipschitz: float = 2.0

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("p must be at least 1")
        if not 0 < self.delta <= 1:
            raise ValueError("delta must be in (0, 1]")
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if self.dim_alpha < 0:
            raise ValueError("dim_alpha must be non-negative")

    def to_json(self):
        return {
            "p": "inf" if self.p == math.inf else self.p,
            "delta": self.delta,
            "m": self.m,
            "rademacher": self.rademacher,
            "dim_alpha": self.dim_alpha,
            "norm_alpha": self.norm_alpha,
            "empirical_surrogate_risk": self.empirical_surrogate_risk,
            "lipschitz": self.lipschitz,
        }


def complexity_term(inputs):
    """4 l dim^(1-1/p) ||a||_p R; the dim exponent is 0 at p=1, 1 at p=inf."""
    exponent = 1.0 if inputs.p == math.inf else 1.0 - 1.0 / inputs.p
    return (4.0 * inputs.lipschitz * inputs.dim_alpha ** exponent
            * inputs.norm_alpha * inputs.rademacher)


def bound_value(inputs, empirical=False):
    """Risk bound total and its four summands, as (total, dict of terms).

    empirical=True applies the sample-complexity correction: delta halved
    in the dim-union term, norm-union term tripled. norm_alpha must exceed
    1/2 for log2(2 norm) to be positive; between 1/2 and 1 the inner
    log log is negative and the term is floored at zero.
    """
    if inputs.norm_alpha <= 0.5:
        raise ValueError(
            "norm_alpha must exceed 1/2: the bound's log(log2(2*norm)) term "
            f"is undefined at norm_alpha = {inputs.norm_alpha}"
        )
    delta = inputs.delta / 2.0 if empirical else inputs.delta
    risk = inputs.empirical_surrogate_risk
    complexity = complexity_term(inputs)
    dim_union = math.sqrt(
        math.log(math.pi ** 2 * (inputs.dim_alpha + 1) ** 2 / (6.0 * delta))
        / (2.0 * inputs.m)
    )
    loglog = math.log(math.log2(2.0 * inputs.norm_alpha))
    norm_union = math.sqrt(max(loglog, 0.0) / inputs.m)
    if empirical:
        norm_union *= 3.0
    terms = {
        "empirical_risk": risk,
        "complexity": complexity,
        "dim_union": dim_union,
        "norm_union": norm_union,
    }
    return risk + complexity + dim_union + norm_union, terms


def theoretical_lambda(variant, rademacher, dim_alpha):
    """The regularization strength the bound analysis prescribes per variant.

    Reported for reference next to CV-chosen values; the prescription is
    known to be conservative in practice.
    """
    if variant == "l1":
        return 4.0 * rademacher
    if variant == "l2":
        return 8.0 * math.sqrt(dim_alpha) * rademacher
    if variant == "linf":
        return 8.0 * dim_alpha * rademacher
    raise ValueError(f"no theoretical lambda for variant {variant!r}")
