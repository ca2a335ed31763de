import math

import numpy as np
import pytest

from envsieve import verify as V
from envsieve.errors import HypothesisViolation, UsageError
from envsieve.expsum import CoefficientSeq, PrimeWindow, WellSpacedSet, eval_many, farey


@pytest.fixture(scope="module")
def window():
    return PrimeWindow.of(3000)


@pytest.mark.parametrize("kind", V.KINDS)
def test_gen_coeffs_deterministic(window, kind):
    m = V.CoeffModel(kind, seed=7, x0=0.3)
    a, b = V.gen_coeffs(m, window), V.gen_coeffs(m, window)
    assert np.array_equal(a.u, b.u)
    assert a.u.shape == (window.R,)


def test_normalize_caps_norm(window):
    c = V.gen_coeffs(V.CoeffModel("random_complex", seed=1, normalize=True), window)
    assert c.norm2_sq <= window.R
    c = V.gen_coeffs(V.CoeffModel("sparse", seed=1, normalize=True), window)
    assert c.norm2_sq <= window.R


def test_concentrated_peaks_at_x0(window):
    c = V.gen_coeffs(V.CoeffModel("concentrated", x0=0.37), window)
    assert abs(eval_many(c, [0.37])[0]) == pytest.approx(window.R)


def test_unknown_model():
    with pytest.raises(UsageError):
        V.CoeffModel("gaussian")


def test_random_well_spaced_spacing():
    rng = np.random.default_rng(0)
    for size in (1, 2, 10, 500):
        X = V.random_well_spaced(rng, size)
        assert len(X) == size
        assert X.delta >= 0.2 / size - 1e-12


def test_well_spaced_l2_small_n_rejected():
    c = CoefficientSeq.ones(PrimeWindow.of(999))
    with pytest.raises(HypothesisViolation):
        V.verify_well_spaced_l2(WellSpacedSet.of([0.1]), c)


def test_well_spaced_l2_grid(window):
    c = CoefficientSeq.ones(window)
    X = WellSpacedSet.of([k / 3000 for k in range(3000)])
    r = V.verify_well_spaced_l2(X, c)
    assert r.passed and r.theorem_id == "Extensionprecise"
    # a full grid of step 1/N gives N * sum |u|^2 on the left
    assert r.lhs == pytest.approx(3000 * c.norm2_sq, rel=1e-9)


def test_dual_l2_matches_brute(window):
    rng = np.random.default_rng(3)
    B = V.random_well_spaced(rng, 20)
    f = rng.normal(size=20) + 1j * rng.normal(size=20)
    g = V.dual_sums(B, f, window.primes)
    p = int(window.primes[5])
    ref = sum(fb * np.exp(2j * np.pi * b * p) for b, fb in zip(B.points, f))
    assert g[5] == pytest.approx(ref)
    assert V.verify_dual_l2(B, f, window).passed


def test_dual_l2_zero_function(window):
    B = WellSpacedSet.of([0.1, 0.6])
    r = V.verify_dual_l2(B, np.zeros(2), window)
    assert r.passed and r.lhs == 0 and r.rhs == 0


def test_dual_l2_shape_checked(window):
    with pytest.raises(UsageError):
        V.verify_dual_l2(WellSpacedSet.of([0.1, 0.6]), np.ones(3), window)


@pytest.mark.parametrize("h", [0.1, 1.0, 3.0])
def test_moment_bound_level_sets(window, h):
    c = CoefficientSeq.ones(window)
    X = WellSpacedSet.of([k / 3000 for k in range(3000)])
    r = V.verify_moment_bound(X, c, h)
    assert r.passed
    assert r.parameters["level_set_failures"] == []
    with pytest.raises(UsageError):
        V.verify_moment_bound(X, c, 0)


def test_integral_moment_plus_variant():
    c = CoefficientSeq.ones(PrimeWindow.of(2000, M=2000))
    r = V.verify_integral_moment(c, 0.5)
    assert r.theorem_id == "mainCorplus" and r.passed


def test_integral_moment_distinguished_h():
    N = 20_000
    c = CoefficientSeq.ones(PrimeWindow.of(N))
    r = V.verify_integral_moment(c, 1 / math.log(N))
    assert r.passed


def test_majorant_hypotheses():
    with pytest.raises(HypothesisViolation):
        V.verify_majorant(CoefficientSeq.ones(PrimeWindow.of(10**5)), 4)
    big = CoefficientSeq(PrimeWindow.of(10**6), np.full(78498, 2.0))
    with pytest.raises(HypothesisViolation):
        V.verify_majorant(big, 4)
    with pytest.raises(HypothesisViolation):
        V.verify_majorant(CoefficientSeq.ones(PrimeWindow.of(10**6, M=100)), 4)


def test_farey_maxarc_range(window):
    c = CoefficientSeq.ones(window)
    with pytest.raises(UsageError):
        V.verify_farey_maxarc(c, 1)
    with pytest.raises(UsageError):
        V.verify_farey_maxarc(c, 55)
    r = V.verify_farey_maxarc(c, 54)
    assert r.passed and r.parameters["fractions"] == len(farey(54))


def test_misc_lemmas_small():
    reports = V.check_misc_lemmas(x_max=20_000)
    assert [r.theorem_id for r in reports] == ["RS.upper", "RS.upper54", "RS.lower", "easy"]
    assert all(r.passed for r in reports)


def test_vectorized_fold_detects_violation():
    from envsieve.report import WorstCase

    wc = WorstCase("toy")
    V._add_vectorized(wc, np.array([1.0, 3.0, 2.0]), np.array([2.0, 2.0, 2.0]), np.arange(3.0), "toy")
    r = wc.report()
    assert not r.passed
    assert r.parameters["violations"] == 1 and r.parameters["instances"] == 3
    assert r.parameters["witness"]["x"] == 1.0


def test_t_terms_and_lower_bound():
    assert V.check_t_terms(q_max=60, samples=10).passed
    assert V.check_s_lower_bound((1000,), points=10).passed


def test_sweep_is_reproducible():
    a = V.run_sweep("extensionprecise", 6, seed=5)
    b = V.run_sweep("Extensionpreciseplus", 6, seed=5)
    assert [r.ratio for r in a.reports] == [r.ratio for r in b.reports]
    assert a.passed


@pytest.mark.parametrize("theorem", ["bel", "extension", "maincor", "extensionprecisebis"])
def test_sweeps_pass(theorem):
    sweep = V.run_sweep(theorem, 10, seed=1)
    assert sweep.passed
    assert sum(s["trials"] for s in sweep.summary().values()) == 10


def test_unknown_theorem():
    with pytest.raises(UsageError):
        V.run_sweep("nope", 1)


# documented harness examples


def test_example_single_point_unit():
    c = CoefficientSeq.ones(PrimeWindow.of(1000))
    r = V.verify_well_spaced_l2(WellSpacedSet.of([0.0]), c)
    assert r.lhs == pytest.approx(168**2)
    assert r.rhs == pytest.approx(280 * 1001 / math.log(1000) * math.log(2) * 168)
    assert r.passed


def test_example_dual_single_point():
    r = V.verify_dual_l2(WellSpacedSet.of([0.0]), [1.0], PrimeWindow.of(1000))
    assert r.lhs == pytest.approx(168)
    assert r.rhs == pytest.approx(280 * 1001 * math.log(2) / math.log(1000))
    assert r.passed


def test_example_moment_single_point_h3():
    r = V.verify_moment_bound(WellSpacedSet.of([0.0]), CoefficientSeq.ones(PrimeWindow.of(1000)), 3)
    assert r.lhs == pytest.approx(168**5)
    assert r.passed


def test_example_integral_and_farey():
    assert V.verify_integral_moment(CoefficientSeq.ones(PrimeWindow.of(1000)), 1).passed
    assert V.verify_farey_maxarc(CoefficientSeq.ones(PrimeWindow.of(10_000)), 10).passed
    r = V.verify_farey_maxarc(CoefficientSeq.ones(PrimeWindow.of(10_000)), 2)
    assert r.passed and r.parameters["fractions"] == 2


def test_zero_coefficients_pass(window):
    c = CoefficientSeq(window, np.zeros(window.R))
    X = V.random_well_spaced(np.random.default_rng(0), 30)
    for r in (V.verify_well_spaced_l2(X, c), V.verify_moment_bound(X, c, 0.5),
              V.verify_integral_moment(c, 1), V.verify_farey_maxarc(c, 20)):
        assert r.passed and r.lhs == 0


def test_concentrated_at_zero_is_unit(window):
    c = V.gen_coeffs(V.CoeffModel("concentrated", x0=0.0), window)
    assert np.allclose(c.u, 1)


@pytest.mark.slow
def test_majorant_examples():
    w = PrimeWindow.of(10**6)
    r = V.verify_majorant(CoefficientSeq.ones(w), 4)
    assert r.passed and r.parameters["implied_constant"] == pytest.approx(1)
    # a linear phase leaves |S| translated, so L = U
    c = V.gen_coeffs(V.CoeffModel("concentrated", x0=0.3, normalize=True), w)
    r = V.verify_majorant(c, 4)
    assert r.passed and r.parameters["implied_constant"] == pytest.approx(1, rel=1e-6)


def test_majorant_interval_is_report_only():
    N = 10**6
    c = CoefficientSeq.ones(PrimeWindow.of(N, M=1000))
    r = V.verify_majorant(c, 4, grid_factor=2)
    assert r.theorem_id == "mainBourgainplus" and r.passed
    assert r.threshold == math.inf
