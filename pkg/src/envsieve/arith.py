"""Multiplicative arithmetic: prime tables, mu, phi, omega and Ramanujan sums.

Tables come from a smallest-prime-factor sieve. Prime windows far beyond the
table range use a segmented sieve of Eratosthenes so memory stays bounded by
the segment size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import NumericalInconsistencyError, UsageError

SEGMENT = 1 << 18
RESIDUAL_TOL = 1e-6


@dataclass(frozen=True)
class ArithTables:
    """Arithmetic functions on ``0..limit``, indexed by ``n`` directly.

    Index 0 carries placeholder zeros. ``smallest_prime_factor[1]`` is 1.
    """

    limit: int
    smallest_prime_factor: np.ndarray
    mobius: np.ndarray
    phi: np.ndarray
    omega: np.ndarray

    @property
    def primes(self) -> np.ndarray:
        n = np.arange(self.limit + 1)
        return n[(self.smallest_prime_factor == n) & (n >= 2)]

    def squarefree(self) -> np.ndarray:
        return self.mobius != 0


def _spf_sieve(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.int64)
    spf[1] = 1
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    rest = spf == 0
    rest[0] = False
    spf[rest] = np.nonzero(rest)[0]
    return spf


def build_tables(limit: int) -> ArithTables:
    """Sieve mu, phi and omega up to ``limit``.

    Each ``n`` is peeled as ``n = p * m`` with ``p = spf(n)``; every ``m`` in
    the dyadic block ``[2^k, 2^(k+1))`` lies below ``2^k`` so a block can be
    filled in one vectorized step from the blocks before it.
    """
    if limit < 2:
        raise UsageError(f"limit must be >= 2, got {limit}")
    spf = _spf_sieve(limit)
    mob = np.zeros(limit + 1, dtype=np.int8)
    phi = np.zeros(limit + 1, dtype=np.int64)
    omega = np.zeros(limit + 1, dtype=np.int16)
    mob[1], phi[1] = 1, 1
    lo = 2
    while lo <= limit:
        hi = min(2 * lo, limit + 1)
        n = np.arange(lo, hi)
        p = spf[lo:hi]
        m = n // p
        repeat = spf[m] == p
        mob[lo:hi] = np.where(repeat, 0, -mob[m])
        phi[lo:hi] = phi[m] * np.where(repeat, p, p - 1)
        omega[lo:hi] = omega[m] + (~repeat)
        lo = hi
    return ArithTables(limit, spf, mob, phi, omega)


@lru_cache(maxsize=8)
def _cached_tables(size: int) -> ArithTables:
    return build_tables(size)


def tables(limit: int) -> ArithTables:
    """Shared read-only tables covering at least ``limit``."""
    size = 1024
    while size < limit:
        size *= 2
    return _cached_tables(size)


def primes_upto(n: int) -> np.ndarray:
    """All primes ``<= n`` as an int64 array."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(n) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    return np.nonzero(flags)[0].astype(np.int64)


def primes_in(lo: int, hi: int) -> np.ndarray:
    """Primes ``p`` with ``lo < p <= hi``, ascending (segmented sieve)."""
    if hi < lo:
        raise UsageError(f"empty window requires hi >= lo, got ({lo}, {hi})")
    lo = max(lo, 0)
    if hi < 2:
        return np.zeros(0, dtype=np.int64)
    base = primes_upto(math.isqrt(hi))
    out = []
    start = lo + 1
    while start <= hi:
        stop = min(start + SEGMENT, hi + 1)
        flags = np.ones(stop - start, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= stop:
                break
            first = max(p * p, -(-start // p) * p)
            flags[first - start :: p] = False
        idx = np.nonzero(flags)[0] + start
        out.append(idx[idx >= 2])
        start = stop
    if not out:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate(out).astype(np.int64)


def prime_pi(x: float) -> int:
    return int(primes_upto(int(math.floor(x))).size)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; fine for the moduli used here."""
    n = abs(int(n))
    if n == 0:
        raise UsageError("cannot factor 0")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def mobius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def euler_phi(n: int) -> int:
    out = n
    for p in factorize(n):
        out = out // p * (p - 1)
    return out


def omega(n: int) -> int:
    return len(factorize(n))


def squarefree_kernel(n: int) -> int:
    return math.prod(factorize(n))


def is_squarefree(n: int) -> bool:
    return n >= 1 and all(e == 1 for e in factorize(n).values())


def ramanujan_von_sterneck(q: int, n: int) -> int:
    """c_q(n) = mu(q/g) phi(q) / phi(q/g) with g = gcd(q, n)."""
    if q < 1:
        raise UsageError(f"q must be >= 1, got {q}")
    g = math.gcd(q, n % q)  # gcd(q, 0) == q
    r = q // g
    mu_r = mobius(r)
    if mu_r == 0:
        return 0
    return mu_r * (euler_phi(q) // euler_phi(r))


def ramanujan_direct(q: int, n: int) -> tuple[int, float]:
    """c_q(n) summed over reduced residues in floating point.

    Returns the nearest integer and the residual from it.
    """
    if q < 1:
        raise UsageError(f"q must be >= 1, got {q}")
    a = np.arange(1, q + 1)
    a = a[np.gcd(a, q) == 1]
    phase = ((n % q) * a % q) / q
    val = np.exp(2j * np.pi * phase).sum()
    nearest = int(round(val.real))
    residual = float(abs(val - nearest))
    if residual > RESIDUAL_TOL:
        raise NumericalInconsistencyError(
            f"c_{q}({n}) direct sum {val} is {residual:.3g} from an integer"
        )
    return nearest, residual


def primorial_interval(z0, z) -> int:
    """Product of the primes in the closed interval ``[z0, z]``."""
    z0, z = Fraction(z0), Fraction(z)
    if z0 < 2 or z0 > z:
        raise UsageError(f"need 2 <= z0 <= z, got z0={z0}, z={z}")
    ps = (int(p) for p in primes_upto(math.floor(z)))
    return math.prod(p for p in ps if p >= z0)
