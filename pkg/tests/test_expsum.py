import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from envsieve import expsum
from envsieve.errors import ResourceBudgetError, UsageError
from envsieve.expsum import (
    CoefficientSeq,
    PrimeWindow,
    WellSpacedSet,
    arc_max,
    eval_many,
    eval_on_grid,
    eval_shifted_grid,
    eval_sum,
    farey,
    farey_arc_maxima,
    level_set,
    moment_estimate,
    t_term,
    well_spaced_delta,
)

import oracles


def brute_s(primes, u, alpha):
    return sum(c * cmath.exp(2j * math.pi * p * alpha) for p, c in zip(primes, u))


def test_window_primes():
    w = PrimeWindow.of(10)
    assert w.primes.tolist() == [2, 3, 5, 7]
    w = PrimeWindow.of(10, M=10)
    assert w.primes.tolist() == [11, 13, 17, 19]
    assert w.R == 4 and w.top == 20


def test_small_sums():
    c = CoefficientSeq.ones(PrimeWindow.of(10))
    assert eval_sum(c, 0) == pytest.approx(4)
    assert eval_sum(c, 0.5) == pytest.approx(-2)
    assert np.allclose(eval_on_grid(c, 2), [4, -2])


def test_exact_rational_phase():
    c = CoefficientSeq.ones(PrimeWindow.of(10))
    assert eval_sum(c, Fraction(1, 3)) == pytest.approx(brute_s([2, 3, 5, 7], [1] * 4, 1 / 3))


def test_large_prime_phase_accuracy():
    # p alpha is large; the split keeps the fractional part accurate
    w = PrimeWindow.of(10**8 + 100, M=10**8)
    c = CoefficientSeq.ones(w)
    alpha = 0.123456789
    ref = sum(cmath.exp(2j * math.pi * float((Fraction(int(p)) * Fraction(alpha)) % 1)) for p in w.primes)
    assert abs(eval_sum(c, alpha) - ref) < 1e-9


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 400), st.integers(0, 300), st.integers(1, 64), st.integers(0, 2**32))
def test_grid_matches_pointwise(N, M, K, seed):
    w = PrimeWindow.of(N, M)
    rng = np.random.default_rng(seed)
    u = rng.normal(size=w.R) + 1j * rng.normal(size=w.R)
    c = CoefficientSeq(w, u)
    grid = eval_on_grid(c, K)
    pts = [brute_s(w.primes, u, k / K) for k in range(K)]
    assert np.allclose(grid, pts, atol=1e-9 * (1 + np.abs(u).sum()))
    beta = rng.random() / K
    assert np.allclose(eval_shifted_grid(c, beta, K), eval_many(c, beta + np.arange(K) / K),
                       atol=1e-9 * (1 + np.abs(u).sum()))


def test_norm_is_validated():
    w = PrimeWindow.of(10)
    with pytest.raises(UsageError):
        CoefficientSeq(w, np.ones(4), norm2_sq=5.0)
    with pytest.raises(UsageError):
        CoefficientSeq(w, np.ones(3))


def test_grid_budget():
    c = CoefficientSeq.ones(PrimeWindow.of(10))
    with pytest.raises(ResourceBudgetError):
        eval_on_grid(c, expsum.MAX_GRID + 1)


@pytest.mark.parametrize("N", [1000, 10_000, 100_000])
def test_parseval(N):
    rng = np.random.default_rng(N)
    w = PrimeWindow.of(N)
    c = CoefficientSeq(w, rng.normal(size=w.R) + 1j * rng.normal(size=w.R))
    est = moment_estimate(c, 2)
    assert est.exact
    assert abs(est.value - c.norm2_sq) <= 1e-9 * c.norm2_sq


@pytest.mark.parametrize("N", [10, 23, 50])
def test_fourth_moment_counts_pair_sums(N):
    w = PrimeWindow.of(N)
    c = CoefficientSeq.ones(w)
    est = moment_estimate(c, 4)
    primes = set(int(p) for p in w.primes)
    assert est.exact
    assert est.value == pytest.approx(oracles.pair_sum_energy(primes), abs=1e-9)


def test_fractional_moment_reports_refinement():
    c = CoefficientSeq.ones(PrimeWindow.of(2000))
    est = moment_estimate(c, 2.5)
    assert not est.exact
    assert est.refinement_delta < 1e-6 * est.value
    with pytest.raises(UsageError):
        moment_estimate(c, 1.5)


def test_well_spaced_examples():
    assert well_spaced_delta([0.1, 0.4, 0.9]) == pytest.approx(0.2)
    assert well_spaced_delta([0.25]) == 1.0
    assert well_spaced_delta([0.0, 0.5]) == 0.5
    with pytest.raises(UsageError):
        well_spaced_delta([])
    X = WellSpacedSet.of([1.3, 0.2])
    assert X.points == pytest.approx((0.2, 0.3))
    with pytest.raises(UsageError):
        WellSpacedSet((0.1, 0.2), 0.5)


def test_farey_small():
    assert farey(3).values() == [Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1)]
    assert len(farey(5)) == 10
    with pytest.raises(UsageError):
        farey(1)


def farey_brute(Q0):
    return sorted({Fraction(a, q) for q in range(1, Q0 + 1) for a in range(1, q + 1)})


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 300))
def test_farey_invariants(Q0):
    system = farey(Q0)
    fr = system.fractions
    if Q0 <= 60:
        assert [Fraction(a, q) for a, q in fr] == farey_brute(Q0)
    assert len(fr) == sum(oracles.phi(q) for q in range(1, Q0 + 1))
    for (a, q), (b, r) in zip(fr, fr[1:]):
        assert b * q - a * r == 1
        assert q + r > Q0
        assert math.gcd(a, q) == 1
    # consecutive members of each half are at least 1/Q0^2 apart after dropping neighbours
    for half in (system.split_even, system.split_odd):
        vals = [Fraction(*fr[i]) for i in half]
        assert all(y - x >= Fraction(1, Q0 * Q0) for x, y in zip(vals, vals[1:]))
    assert sorted(system.split_even + system.split_odd) == list(range(len(fr)))


def test_arc_max_properties():
    c = CoefficientSeq.ones(PrimeWindow.of(3000))
    x, v = arc_max(c, 1, 1, 10)
    assert v == pytest.approx(c.window.R)  # alpha = 1 sits at the centre
    assert abs(x - 1) <= 1 / 10 + 1e-15
    assert v >= abs(eval_sum(c, 1))
    with pytest.raises(UsageError):
        arc_max(c, 2, 4, 10)


def test_farey_arc_maxima_agree_with_direct():
    rng = np.random.default_rng(1)
    w = PrimeWindow.of(2000)
    c = CoefficientSeq(w, np.exp(2j * np.pi * rng.random(w.R)))
    system = farey(8)
    xt, best = farey_arc_maxima(c, system, 64)
    for (a, q), x, b in zip(system.fractions, xt, best):
        assert abs(x - a / q) <= 1 / (q * 8) + 1e-12
        assert b == pytest.approx(abs(eval_sum(c, x)), rel=1e-9, abs=1e-9)
        # direct sampling at a step of 1/(8 N)
        _, direct = arc_max(c, a, q, 8, math.ceil(2 * 8 * 2000 / (q * 8)))
        assert 0.97 * direct <= b <= 1.03 * direct


def test_level_set():
    c = CoefficientSeq.ones(PrimeWindow.of(100))
    X = WellSpacedSet.of([0.0, 0.5, 0.25])
    vals = np.abs(eval_many(c, X.points))
    keep, gamma = level_set(X, c, 1.0, float(vals.max()) / 2)
    assert 0.0 in keep
    assert gamma == pytest.approx(sum(v for v in vals if v >= vals.max() / 2))
    assert gamma >= 1.0 * vals.max() / 2 * len(keep)
    with pytest.raises(UsageError):
        level_set(X, c, 0, 1)


def test_t_term_examples():
    assert t_term(1, 0.3) == 0
    assert abs(t_term(3, 0)) == pytest.approx(3)
    assert abs(t_term(6, 0.1)) <= 6


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 500), st.floats(0, 1))
def test_t_term_bound(q, beta):
    assert abs(t_term(q, beta)) <= q * (1 + 1e-12)
