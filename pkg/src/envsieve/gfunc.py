"""The G-function family, the xi_q factor and the G_[q] sums, all exact.

Real cutoffs are carried as ``Fraction`` so that every size condition is an
exact comparison; a float argument is converted to its exact binary value.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import arith
from .errors import UsageError
from .report import VerificationReport, WorstCase

BigRational = Fraction

EULER_GAMMA = 0.5772156649015329


def exact(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


@dataclass(frozen=True)
class GQuery:
    """Arguments of ``G_d(y; z0)``; only ``floor(y)``, ``d`` and the primes below z0 matter."""

    y: Fraction
    z0: Fraction = Fraction(2)
    d: int = 1

    def __post_init__(self):
        object.__setattr__(self, "y", exact(self.y))
        object.__setattr__(self, "z0", exact(self.z0))


def _admissible(limit: int, z0: Fraction, d: int) -> np.ndarray:
    """Squarefree l <= limit with no prime factor below z0 and none dividing d."""
    t = arith.tables(max(limit, 2))
    mask = t.mobius[: limit + 1] != 0
    mask[0] = False
    for p in arith.primes_upto(limit):
        p = int(p)
        if p < z0 or d % p == 0:
            mask[p::p] = False
    return mask


def _recip_sum(values) -> Fraction:
    """Exact sum of 1/v over positive integers v via one common denominator."""
    counts = Counter(int(v) for v in values)
    if not counts:
        return Fraction(0)
    den = math.lcm(*counts)
    num = sum(c * (den // v) for v, c in counts.items())
    return Fraction(num, den)


def g_value(query: GQuery) -> Fraction:
    """Sum of 1/phi(l) over squarefree l <= y with (l, d P(z0)) = 1."""
    if query.z0 < 2:
        raise UsageError(f"z0 must be >= 2, got {query.z0}")
    if query.d < 1 or not arith.is_squarefree(query.d):
        raise UsageError(f"d must be squarefree and positive, got {query.d}")
    limit = math.floor(query.y)
    if limit < 1:
        return Fraction(0)
    mask = _admissible(limit, query.z0, query.d)
    phi = arith.tables(max(limit, 2)).phi[: limit + 1]
    return _recip_sum(phi[mask])


def G(y, z0=2, d: int = 1) -> Fraction:
    return g_value(GQuery(exact(y), exact(z0), d))


def phi2(m: int) -> int:
    """Product of (p - 2) over the primes p dividing m."""
    return math.prod(p - 2 for p in arith.factorize(m))


def _triples(primes):
    """All ordered (q1, q2, q3) with q1 q2 q3 equal to the product of ``primes``."""
    for slots in itertools.product(range(3), repeat=len(primes)):
        parts = [1, 1, 1]
        for p, s in zip(primes, slots):
            parts[s] *= p
        yield tuple(parts)


def xi(q: int, y) -> Fraction:
    """Sum over q1 q2 q3 = q with q1 q3 <= y, q2 q3 <= y of mu(q3) phi2(q3) / phi(q3)."""
    if q < 1 or not arith.is_squarefree(q):
        raise UsageError(f"xi_q needs squarefree q >= 1, got {q}")
    y = exact(y)
    primes = sorted(arith.factorize(q))
    total = Fraction(0)
    for q1, q2, q3 in _triples(primes):
        if q1 * q3 <= y and q2 * q3 <= y:
            num = phi2(q3)
            if num:
                total += Fraction(arith.mobius(q3) * num, arith.euler_phi(q3))
    return total


def isqrt_ratio(z: Fraction, q: int) -> int:
    """Largest integer l >= 0 with l^2 q <= z^2."""
    a, b = z.numerator, z.denominator
    if a <= 0:
        return 0
    return math.isqrt(a * a // (q * b * b))


def g_bracket(q: int, z, z0) -> Fraction:
    """Sum over squarefree l <= z / sqrt(q), (l, q P(z0)) = 1 of xi_q(z/l) / phi(l)."""
    z, z0 = exact(z), exact(z0)
    if not 2 <= z0 <= z:
        raise UsageError(f"need 2 <= z0 <= z, got z0={z0}, z={z}")
    if q < 1 or not arith.is_squarefree(q):
        raise UsageError(f"q must be squarefree, got {q}")
    top = isqrt_ratio(z, q)
    if top < 1:
        return Fraction(0)
    mask = _admissible(top, z0, q)
    phi = arith.tables(max(top, 2)).phi
    total = Fraction(0)
    for ell in np.nonzero(mask)[0]:
        ell = int(ell)
        total += xi(q, z / ell) / int(phi[ell])
    return total


# --- lemma checks -----------------------------------------------------------


@lru_cache(maxsize=4)
def _common_den(limit: int) -> int:
    phi = arith.tables(max(limit, 2)).phi[1 : limit + 1]
    return math.lcm(*{int(v) for v in phi})


def _prefix_numerators(limit: int, z0: Fraction, d: int, den: int | None = None) -> list[int]:
    """``out[k] == G_d(k; z0) * den`` for ``0 <= k <= limit``; ``den`` defaults to ``_common_den(limit)``."""
    if den is None:
        den = _common_den(limit)
    mask = _admissible(limit, z0, d)
    phi = arith.tables(max(limit, 2)).phi
    steps = [den // int(phi[k]) if mask[k] else 0 for k in range(limit + 1)]
    return list(itertools.accumulate(steps))


def _y_grid(y_max: int) -> list[Fraction]:
    return [Fraction(k, 2) for k in range(2, 2 * y_max + 1)] + [
        Fraction(k, 3) for k in range(4, 3 * y_max, 3)
    ]


def check_eval_g1(y_max=200, d_max=30, z0_set=(2, 3, 5, 7)) -> VerificationReport:
    """G(yd; z0) >= d/phi(d) G_d(y; z0) >= G(y; z0), exact."""
    wc = WorstCase("evalG1", {"y_max": y_max, "d_max": d_max, "z0": list(z0_set)})
    limit = y_max * d_max
    den = _common_den(limit)
    for z0 in map(exact, z0_set):
        full = _prefix_numerators(limit, z0, 1)
        for d in range(1, d_max + 1):
            if not arith.is_squarefree(d) or any(p < z0 for p in arith.factorize(d)):
                continue
            part = _prefix_numerators(y_max, z0, d, den)
            phid = arith.euler_phi(d)
            for y in _y_grid(y_max):
                a = full[math.floor(y * d)]
                b = d * part[math.floor(y)]  # times phi(d) relative to a and c
                c = full[math.floor(y)]
                wc.add(b / (phid * den), a / den, violated=b > a * phid, z0=z0, d=d, y=y, side="left")
                wc.add(c / den, b / (phid * den), violated=c * phid > b, z0=z0, d=d, y=y, side="right")
    return wc.report()


def check_eval_g2(z_max=200, z0_set=(2, 3, 5, 7)) -> VerificationReport:
    """prod_{p<z0} p/(p-1) * G(z; z0) >= G(z), exact."""
    wc = WorstCase("evalG2", {"z_max": z_max, "z0": list(z0_set)})
    den = _common_den(z_max)
    base = _prefix_numerators(z_max, Fraction(2), 1)
    for z0 in map(exact, z0_set):
        sifted = _prefix_numerators(z_max, z0, 1)
        ps = [int(p) for p in arith.primes_upto(math.ceil(z0)) if p < z0]
        factor = Fraction(math.prod(ps), math.prod(p - 1 for p in ps))
        for k in range(1, z_max + 1):
            lhs = factor * sifted[k]
            wc.add(base[k] / den, float(lhs / den), violated=base[k] > lhs, z0=z0, z=k)
    return wc.report()


def check_est_g_down(z_max=200, z0_set=(2, 3, 5, 7)) -> VerificationReport:
    """G(z; z0) >= e^-gamma log z / log(2 z0), tested at the top of each step of G."""
    wc = WorstCase("EstGdown", {"z_max": z_max, "z0": list(z0_set)})
    den = _common_den(z_max)
    for z0 in map(exact, z0_set):
        sifted = _prefix_numerators(z_max, z0, 1)
        for k in range(1, z_max + 1):
            g = sifted[k] / den
            rhs = math.exp(-EULER_GAMMA) * math.log(k + 1) / math.log(2 * z0)
            wc.add(rhs, g, z0=z0, z_sup=k + 1)
    return wc.report()


def _phi_power_prefix(limit: int, h: float) -> np.ndarray:
    t = arith.tables(max(limit, 2))
    phi = t.phi[1 : limit + 1].astype(np.float64)
    sq = (t.mobius[1 : limit + 1] != 0).astype(np.float64)
    return np.cumsum(sq / phi ** (1.0 + h))


def check_auxvarphi(D_max=10_000, h_grid=(0.01, 0.1, 0.5, 1.0, 2.0)) -> VerificationReport:
    """sum_{l<=y} mu^2(l)/phi(l)^(1+h) >= sum_{q<=y} q^-(1+h); h = 0 included."""
    wc = WorstCase("auxvarphi", {"D_max": D_max, "h": [0.0, *h_grid]})
    q = np.arange(1, D_max + 1, dtype=np.float64)
    for h in (0.0, *h_grid):
        lhs = _phi_power_prefix(D_max, h)
        rhs = np.cumsum(q ** -(1.0 + h))
        for j, (a, b) in enumerate(zip(rhs.tolist(), lhs.tolist()), start=1):
            wc.add(a, b, h=h, y=j)
    return wc.report()


def check_app_gh(D_max=10_000, h_grid=(0.01, 0.1, 0.5, 1.0, 2.0)) -> VerificationReport:
    """sum_{d<=D} mu^2(d)/phi(d)^(1+h) >= (1 - D^-h)/h, with D over each whole step."""
    wc = WorstCase("appGh", {"D_max": D_max, "h": list(h_grid)})
    for h in h_grid:
        if h <= 0:
            raise UsageError("appGh needs h > 0")
        lhs = _phi_power_prefix(D_max, h)
        d_sup = np.arange(2, D_max + 2, dtype=np.float64)
        rhs = (1.0 - d_sup**-h) / h
        for j, (a, b) in enumerate(zip(rhs.tolist(), lhs.tolist()), start=1):
            wc.add(a, b, h=h, D_sup=j + 1)
    return wc.report()


def check_eval_g3(z_max=10_000) -> VerificationReport:
    """G(z) >= log z for 1 <= z < z_max + 1 (each step tested at its supremum)."""
    wc = WorstCase("evalG3", {"z_max": z_max})
    den = _common_den(z_max)
    pref = _prefix_numerators(z_max, Fraction(2), 1)
    for k in range(1, z_max + 1):
        wc.add(math.log(k + 1), pref[k] / den, z_sup=k + 1)
    return wc.report()


def check_get_vz0(z0_max=100_000) -> VerificationReport:
    """prod_{p<z0} (p-1)/p >= e^-gamma / log(2 z0) for 2 <= z0 <= z0_max.

    The product only drops just after a prime, where the right side is largest,
    so testing z0 = 2 and z0 = p+ for each prime p covers the whole range.
    """
    wc = WorstCase("getVz0", {"z0_max": z0_max})
    c = math.exp(-EULER_GAMMA)
    wc.add(c / math.log(4.0), 1.0, z0=2)
    prod = 1.0
    for p in arith.primes_upto(z0_max - 1):
        p = int(p)
        prod *= (p - 1) / p
        wc.add(c / math.log(2 * p), prod, z0_after=p)
    return wc.report()


def check_g_lemmas(
    z0_max=100_000,
    y_max=200,
    h_grid=(0.01, 0.1, 0.5, 1.0, 2.0),
    *,
    d_max=30,
    z0_set=(2, 3, 5, 7),
    D_max=10_000,
) -> list[VerificationReport]:
    """Run every G-function lemma check over its grid."""
    return [
        check_eval_g1(y_max, d_max, z0_set),
        check_eval_g2(y_max, z0_set),
        check_auxvarphi(D_max, h_grid),
        check_app_gh(D_max, h_grid),
        check_eval_g3(D_max),
        check_get_vz0(int(z0_max)),
        check_est_g_down(y_max, z0_set),
    ]
