from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from envsieve import envelope
from envsieve.envelope import SieveParams, beta_by_definition, beta_by_fourier, build, weight_oracle
from envsieve.errors import ResourceBudgetError, UsageError

import oracles

F = Fraction


@pytest.fixture(scope="module")
def small():
    return build(SieveParams(2, 3))


def test_lambdas_two_three(small):
    assert small.lambdas == {1: F(1), 2: F(-4, 5), 3: F(-3, 5)}
    assert small.g_total == F(5, 2)


def test_weights_two_three(small):
    assert small.weights == {1: F(2, 5), 2: F(-8, 25), 3: F(-3, 25), 6: F(4, 25)}


def test_weight_oracle_two_three(small):
    p = small.params
    assert weight_oracle(p, 1) == F(2, 5) == 1 / small.g_total
    assert weight_oracle(p, 6) == F(4, 25)
    for q in (4, 5, 8, 9, 12, 7):
        assert weight_oracle(p, q) == 0


def test_degenerate_two_two():
    s = build(SieveParams(2, 2))
    assert s.lambdas == {1: F(1), 2: F(-1)}
    assert set(s.weights) == {1, 2}
    for n in range(1, 40, 2):
        assert beta_by_definition(s, n) == 1


@pytest.mark.parametrize("n,expected", [(5, F(1)), (2, F(1, 25)), (6, F(4, 25)), (1, F(1))])
def test_beta_two_three(small, n, expected):
    assert beta_by_definition(small, n) == expected
    assert beta_by_fourier(small, n) == expected


def test_beta_three_twelve_examples():
    s = build(SieveParams(3, 12))
    assert beta_by_definition(s, 13) == 1
    assert beta_by_definition(s, 11) >= 0


def brute_beta(params, n):
    """(sum of lambda_d over d | n) squared, lambdas recomputed from brute-force G."""
    z, z0 = params.z, params.z0
    gz = oracles.big_g(z, z0)
    total = F(0)
    for d in range(1, int(z) + 1):
        if n % d or oracles.mu(d) == 0:
            continue
        if any(p < z0 for p in oracles.trial_factor(d)):
            continue
        total += F(oracles.mu(d) * d, oracles.phi(d)) * oracles.big_g(z / d, z0, d) / gz
    return total * total


@settings(max_examples=30, deadline=None)
@given(
    st.sampled_from([(2, 3), (2, 10), (3, 12), (F(5, 2), F(21, 2)), (7, 7), (4, 20)]),
    st.integers(1, 3000),
)
def test_beta_against_brute_force(zz, n):
    s = build(SieveParams(*zz))
    b = brute_beta(s.params, n)
    assert beta_by_definition(s, n) == b == beta_by_fourier(s, n)


@pytest.mark.parametrize("zz", [(2, 3), (2, 10), (3, 12), (4, 20), (F(7, 2), F(29, 2))])
def test_closed_form_weights_equal_oracle(zz):
    s = build(SieveParams(*zz))
    assert envelope.check_weights(s).passed


@pytest.mark.parametrize("zz", [(2, 3), (2, 10), (3, 12), (4, 20), (5, 30), (11, 13)])
def test_check_envelope_passes(zz):
    r = envelope.check_envelope(build(SieveParams(*zz)), 600)
    assert r.passed, r.parameters.get("witness")
    assert r.ratio <= 1


def test_check_envelope_two_three_hundred(small):
    assert envelope.check_envelope(small, 100).passed


def test_weights_vanish_below_z0():
    s = build(SieveParams(5, 30))
    assert all(min(s.factors[q], default=99) >= 5 for q in s.weights)
    assert weight_oracle(s.params, 2, s.lambdas) == 0
    assert weight_oracle(s.params, 3, s.lambdas) == 0


def test_support_within_square():
    s = build(SieveParams(3, F(31, 2)))
    assert max(s.weights) <= F(31, 2) ** 2
    assert max(s.lambdas) <= F(31, 2)


def test_beta_is_one_on_large_primes():
    s = build(SieveParams(3, 20))
    for p in range(21, 2000):
        if oracles.is_prime(p):
            assert beta_by_definition(s, p) == 1


def test_prime_z_included_in_support():
    # closed interval: z = 13 prime sieves by 13 itself
    s = build(SieveParams(3, 13))
    assert 13 in s.lambdas
    assert beta_by_definition(s, 13) != 1
    assert envelope.check_envelope(s, 400).passed


def test_detects_corrupted_weight():
    s = build(SieveParams(2, 10))
    weights = dict(s.weights)
    weights[6] += F(1, 10**9)
    bad = envelope.EnvelopingSieve(s.params, s.lambdas, weights, s.g_total, s.factors)
    r = envelope.check_envelope(bad, 50)
    assert not r.passed and r.parameters["witness"]["check"] == "fourier_identity"
    assert not envelope.check_weights(bad).passed


def test_budget_error_names_budget():
    with pytest.raises(ResourceBudgetError, match="support node budget"):
        build(SieveParams(2, 100), budget=50)


def test_params_validation():
    with pytest.raises(UsageError):
        SieveParams(5, 3)
    with pytest.raises(UsageError):
        SieveParams(1, 3)


def test_empirical_weight_tracks_w_q():
    s = build(SieveParams(2, 3))
    est = envelope.empirical_weight(s, 2, 1, 3000)
    assert abs(est - float(s.weights[2])) < 1e-2
