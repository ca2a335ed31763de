"""Enveloping sieve for the primes, built in exact rationals.

The sieve squares a Selberg linear form over squarefree ``d <= z`` whose prime
factors lie in the closed interval ``[z0, z]``. Its Fourier coefficients
``w_q`` come from a closed form in terms of ``G(z; z0)`` and ``G_[q](z; z0)``;
``weight_oracle`` recomputes them from the raw double sum over ``(d1, d2)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import arith
from .errors import ResourceBudgetError, UsageError
from .gfunc import G, exact, g_bracket
from .report import VerificationReport, WorstCase

NODE_BUDGET = 10**7


@dataclass(frozen=True)
class SieveParams:
    z0: Fraction
    z: Fraction

    def __post_init__(self):
        z0, z = exact(self.z0), exact(self.z)
        if not 2 <= z0 <= z:
            raise UsageError(f"need 2 <= z0 <= z, got z0={z0}, z={z}")
        object.__setattr__(self, "z0", z0)
        object.__setattr__(self, "z", z)

    @property
    def sieving_primes(self) -> list[int]:
        """Primes in the closed interval [z0, z]."""
        return [int(p) for p in arith.primes_upto(math.floor(self.z)) if int(p) >= self.z0]

    def sifted(self, n: int) -> bool:
        """True when ``n`` has a prime factor in [z0, z]."""
        return any(n % p == 0 for p in self.sieving_primes)


@dataclass(frozen=True)
class EnvelopingSieve:
    params: SieveParams
    lambdas: dict[int, Fraction]
    weights: dict[int, Fraction]
    g_total: Fraction
    factors: dict[int, tuple[int, ...]] = field(repr=False, default_factory=dict)

    def beta(self, n: int) -> Fraction:
        return beta_by_definition(self, n)


def squarefree_products(primes, bound, budget=NODE_BUDGET) -> dict[int, tuple[int, ...]]:
    """Every squarefree product of ``primes`` that is ``<= bound``, with its factors.

    Depth-first over increasing primes; a branch stops as soon as the product
    passes ``bound``.
    """
    primes = sorted(primes)
    out: dict[int, tuple[int, ...]] = {1: ()}
    stack = [(1, (), 0)]
    nodes = 0
    while stack:
        value, facs, start = stack.pop()
        for i in range(start, len(primes)):
            nxt = value * primes[i]
            if nxt > bound:
                break
            nodes += 1
            if nodes > budget:
                raise ResourceBudgetError("support node budget", budget)
            f = facs + (primes[i],)
            out[nxt] = f
            stack.append((nxt, f, i + 1))
    return dict(sorted(out.items()))


def _mu_phi(facs) -> tuple[int, int]:
    return (-1) ** len(facs), math.prod(p - 1 for p in facs)


def compute_lambdas(params: SieveParams, budget=NODE_BUDGET) -> dict[int, Fraction]:
    """lambda_d = mu(d) d G_d(z/d; z0) / (phi(d) G(z; z0)) on the support d <= z."""
    z, z0 = params.z, params.z0
    g_total = G(z, z0)
    out = {}
    for d, facs in squarefree_products(params.sieving_primes, z, budget).items():
        mu, phi = _mu_phi(facs)
        out[d] = mu * d * G(z / d, z0, d) / (phi * g_total)
    return out


def build(params: SieveParams, budget=NODE_BUDGET) -> EnvelopingSieve:
    """Selberg coefficients and the closed-form Fourier weights ``w_q``."""
    z, z0 = params.z, params.z0
    g_total = G(z, z0)
    lambdas = compute_lambdas(params, budget)
    support = squarefree_products(params.sieving_primes, z * z, budget)
    weights = {}
    for q, facs in support.items():
        mu, phi = _mu_phi(facs)
        weights[q] = mu * g_bracket(q, z, z0) / (phi * g_total * g_total)
    return EnvelopingSieve(params, lambdas, weights, g_total, support)


def weight_oracle(params: SieveParams, q: int, lambdas=None, budget=NODE_BUDGET) -> Fraction:
    """w_q as the double sum of lambda_d1 lambda_d2 / [d1, d2] over q | [d1, d2]."""
    if lambdas is None:
        lambdas = compute_lambdas(params, budget)
    total = Fraction(0)
    items = list(lambdas.items())
    for d1, l1 in items:
        for d2, l2 in items:
            m = math.lcm(d1, d2)
            if m % q == 0:
                total += l1 * l2 / m
    return total


def beta_by_definition(sieve: EnvelopingSieve, n: int) -> Fraction:
    if n < 1:
        raise UsageError(f"n must be >= 1, got {n}")
    s = sum((lam for d, lam in sieve.lambdas.items() if n % d == 0), Fraction(0))
    return s * s


def beta_by_fourier(sieve: EnvelopingSieve, n: int) -> Fraction:
    if n < 1:
        raise UsageError(f"n must be >= 1, got {n}")
    return sum(
        (w * arith.ramanujan_von_sterneck(q, n) for q, w in sieve.weights.items()),
        Fraction(0),
    )


def _common(table: dict[int, Fraction]) -> tuple[int, dict[int, int]]:
    den = math.lcm(*(v.denominator for v in table.values()))
    return den, {k: v.numerator * (den // v.denominator) for k, v in table.items()}


def beta_tables(sieve: EnvelopingSieve, n_max: int) -> tuple[list[Fraction], list[Fraction]]:
    """beta(1..n_max) by definition and by Fourier expansion, index 0 unused.

    Both sides run in integers over one common denominator each, then meet
    as ``Fraction``.
    """
    lden, lnum = _common(sieve.lambdas)
    lin = [0] * (n_max + 1)
    for d, v in lnum.items():
        for m in range(d, n_max + 1, d):
            lin[m] += v
    wden, wnum = _common(sieve.weights)
    four = [0] * (n_max + 1)
    for q, v in wnum.items():
        if v == 0:
            continue
        # c_q(n) depends on n mod q only
        period = [arith.ramanujan_von_sterneck(q, r) for r in range(q)]
        for n in range(1, n_max + 1):
            four[n] += v * period[n % q]
    by_def = [Fraction(0)] + [Fraction(s * s, lden * lden) for s in lin[1:]]
    by_four = [Fraction(0)] + [Fraction(f, wden) for f in four[1:]]
    return by_def, by_four


def check_weights(sieve: EnvelopingSieve) -> VerificationReport:
    """Closed-form weights against the double-sum oracle for every support q."""
    wc = WorstCase("Fourierbetan.weights", _param_dict(sieve))
    for q, w in sieve.weights.items():
        oracle = weight_oracle(sieve.params, q, sieve.lambdas)
        wc.check(w == oracle, q=q, closed_form=w, oracle=oracle)
    for q in _off_support_samples(sieve):
        oracle = weight_oracle(sieve.params, q, sieve.lambdas)
        wc.check(oracle == 0, q=q, oracle=oracle)
    return wc.report()


def _off_support_samples(sieve: EnvelopingSieve, count: int = 40) -> list[int]:
    """A few q outside the support: non-squarefree or with a prime below z0."""
    out = []
    q = 2
    while len(out) < count and q < 10 * count + 10:
        if q not in sieve.weights:
            out.append(q)
        q += 1
    return out


def _param_dict(sieve: EnvelopingSieve) -> dict:
    return {"z0": sieve.params.z0, "z": sieve.params.z}


def check_envelope(sieve: EnvelopingSieve, n_max: int) -> VerificationReport:
    """Exact Fourier identity, positivity, the envelope property and weight bounds.

    Bound checks are folded into the worst-slack ratio; identity and
    envelope failures carry the offending ``n`` as witness.
    """
    if n_max < 1:
        raise UsageError(f"n_max must be >= 1, got {n_max}")
    p = sieve.params
    wc = WorstCase("Fourierbetan", dict(_param_dict(sieve), n_max=n_max))
    by_def, by_four = beta_tables(sieve, n_max)
    for n in range(1, n_max + 1):
        b = by_def[n]
        wc.check(b == by_four[n], n=n, check="fourier_identity", definition=b, fourier=by_four[n])
        wc.check(by_four[n] >= 0, n=n, check="nonnegative", value=by_four[n])
        if not p.sifted(n):
            wc.check(b == 1, n=n, check="envelope", value=b)

    g = sieve.g_total
    wc.check(sieve.lambdas.get(1) == 1, check="lambda_1")
    wc.check(sieve.weights.get(1) == 1 / g, check="w_1")
    for d, lam in sieve.lambdas.items():
        if d == 1:
            continue
        wc.add(abs(lam), Fraction(1), check="|lambda_d|<=1", d=d)
    zz = p.z * p.z
    log_ratio = math.log(p.z0) / math.log(p.z) if p.z > 1 else math.inf
    for q, w in sieve.weights.items():
        wc.check(q <= zz, check="support q<=z^2", q=q)
        facs = sieve.factors[q]
        bound = Fraction(3 ** len(facs), math.prod(x - 1 for x in facs))
        wc.add(abs(g * w), bound, check="|G w_q|<=3^omega/phi", q=q)
        if p.z0 >= 4:
            wc.add(float(abs(w)), 6 * log_ratio / math.sqrt(q), check="Courageous", q=q)
    return wc.report()


def empirical_weight(sieve: EnvelopingSieve, q: int, a: int, n_max: int) -> complex:
    """(1/N) sum_{n<=N} beta(n) e(na/q); report-only comparison against w_q."""
    by_def, _ = beta_tables(sieve, n_max)
    total = sum(float(by_def[n]) * cmath.exp(2j * math.pi * ((n * a) % q) / q) for n in range(1, n_max + 1))
    return total / n_max
