"""Weighted prime exponential sums S(alpha) = sum_p u_p e(p alpha).

Point evaluation reduces ``p * alpha`` modulo 1 without losing the fractional
part (alpha is split so the high product is exact) and sums with
``math.fsum``. Grid evaluation places ``u_p`` at ``p mod K`` and applies one
inverse FFT, which gives ``S(k/K)`` for every ``k`` at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from . import arith
from .errors import InternalConsistencyError, ResourceBudgetError, UsageError

MAX_GRID = 1 << 27
OVERSAMPLE = 4
_SPLIT = 2.0**-26


@dataclass(frozen=True)
class PrimeWindow:
    """Primes in ``(M, M + N]``."""

    M: int
    N: int
    primes: np.ndarray = field(repr=False)

    @classmethod
    def of(cls, N: int, M: int = 0) -> "PrimeWindow":
        if N < 1 or M < 0:
            raise UsageError(f"need N >= 1 and M >= 0, got N={N}, M={M}")
        return cls(int(M), int(N), arith.primes_in(M, M + N))

    @property
    def R(self) -> int:
        return int(self.primes.size)

    @property
    def top(self) -> int:
        return self.M + self.N


@dataclass(frozen=True)
class CoefficientSeq:
    window: PrimeWindow
    u: np.ndarray = field(repr=False)
    norm2_sq: float = math.nan

    def __post_init__(self):
        u = np.asarray(self.u, dtype=np.complex128)
        if u.shape != (self.window.R,):
            raise UsageError(f"need one coefficient per prime ({self.window.R}), got {u.shape}")
        object.__setattr__(self, "u", u)
        fresh = math.fsum((u.real**2 + u.imag**2).tolist())
        if math.isnan(self.norm2_sq):
            object.__setattr__(self, "norm2_sq", fresh)
        elif abs(self.norm2_sq - fresh) > 1e-12 * max(fresh, 1e-300):
            raise UsageError(f"norm2_sq {self.norm2_sq} disagrees with recomputed {fresh}")

    @classmethod
    def ones(cls, window: PrimeWindow) -> "CoefficientSeq":
        return cls(window, np.ones(window.R))

    @property
    def primes(self) -> np.ndarray:
        return self.window.primes

    @property
    def norm1(self) -> float:
        return math.fsum(np.abs(self.u).tolist())


def _phases(primes: np.ndarray, alpha) -> np.ndarray:
    """Fractional parts of ``p * alpha`` in [0, 1)."""
    if isinstance(alpha, Fraction):
        a, b = alpha.numerator % alpha.denominator, alpha.denominator
        if b < 2**31:
            return (primes % b * a % b) / b
        return np.array([(int(p) * a % b) / b for p in primes])
    alpha = float(alpha) % 1.0
    hi = math.floor(alpha / _SPLIT) * _SPLIT  # 26 significant bits; p * hi is exact
    lo = alpha - hi
    pf = primes.astype(np.float64)
    return np.mod(np.mod(pf * hi, 1.0) + pf * lo, 1.0)


def eval_sum(coeffs: CoefficientSeq, alpha) -> complex:
    """S(alpha) with compensated (``fsum``) accumulation."""
    if coeffs.window.R == 0:
        return 0j
    ph = 2 * np.pi * _phases(coeffs.primes, alpha)
    u = coeffs.u
    c, s = np.cos(ph), np.sin(ph)
    re = math.fsum((u.real * c - u.imag * s).tolist())
    im = math.fsum((u.real * s + u.imag * c).tolist())
    return complex(re, im)


def phase_matrix(xs: np.ndarray, primes: np.ndarray) -> np.ndarray:
    """e(x p) for every x in ``xs`` (rows) and p in ``primes`` (columns)."""
    x = np.mod(np.asarray(xs, dtype=np.float64), 1.0)
    hi = np.floor(x / _SPLIT) * _SPLIT
    lo = x - hi
    pf = primes.astype(np.float64)
    ph = np.mod(np.mod(np.outer(hi, pf), 1.0) + np.outer(lo, pf), 1.0)
    return np.exp(2j * np.pi * ph)


def eval_many(coeffs: CoefficientSeq, xs, chunk: int = 1 << 22) -> np.ndarray:
    """S at every point of ``xs`` (pairwise numpy summation, chunked by rows)."""
    xs = np.asarray([float(x) for x in xs], dtype=np.float64)
    out = np.zeros(xs.size, dtype=np.complex128)
    R = coeffs.window.R
    if R == 0 or xs.size == 0:
        return out
    rows = max(1, chunk // R)
    for i in range(0, xs.size, rows):
        out[i : i + rows] = phase_matrix(xs[i : i + rows], coeffs.primes) @ coeffs.u
    return out


def eval_shifted_grid(coeffs: CoefficientSeq, beta, K: int) -> np.ndarray:
    """[S(beta + k/K) for k in range(K)]: the grid transform of u_p e(p beta)."""
    tilt = np.exp(2j * np.pi * _phases(coeffs.primes, beta))
    return eval_on_grid(replace(coeffs, u=coeffs.u * tilt, norm2_sq=math.nan), K)


def eval_on_grid(coeffs: CoefficientSeq, K: int) -> np.ndarray:
    """[S(k/K) for k in range(K)] via one length-K inverse FFT."""
    if K < 1:
        raise UsageError(f"K must be >= 1, got {K}")
    if K > MAX_GRID:
        raise ResourceBudgetError("FFT grid size", MAX_GRID, K)
    idx = coeffs.primes % K
    a = np.bincount(idx, weights=coeffs.u.real, minlength=K) + 1j * np.bincount(
        idx, weights=coeffs.u.imag, minlength=K
    )
    return np.fft.ifft(a) * K


def grid_size(grid_factor: int, span: int) -> int:
    target = max(1, grid_factor * span)
    return 1 << (target - 1).bit_length()


@dataclass(frozen=True)
class MomentEstimate:
    value: float
    K: int
    refinement_delta: float
    exact: bool


def _mean_power(S: np.ndarray, ell: float) -> float:
    a = np.abs(S)
    if ell == 2:
        np.square(a, out=a)
    else:
        np.power(a, ell, out=a)
    return float(a.mean())


def moment_estimate(coeffs: CoefficientSeq, ell: float, grid_factor: int = 16) -> MomentEstimate:
    """K-point average of |S|^ell with K = 2^ceil(log2(grid_factor (M+N))).

    The rule integrates a trigonometric polynomial of degree below K
    exactly, which covers even integer ``ell`` once K > ell (M+N) / 2. Any
    other ``ell`` is re-run on 2K and the change is reported.
    """
    if ell < 2:
        raise UsageError(f"ell must be >= 2, got {ell}")
    if grid_factor < 1:
        raise UsageError(f"grid_factor must be >= 1, got {grid_factor}")
    K = grid_size(grid_factor, coeffs.window.top)
    value = _mean_power(eval_on_grid(coeffs, K), ell)
    even = float(ell).is_integer() and int(ell) % 2 == 0
    if even and 2 * K > ell * coeffs.window.top:
        return MomentEstimate(value, K, 0.0, True)
    finer = _mean_power(eval_on_grid(coeffs, 2 * K), ell)
    return MomentEstimate(value, K, abs(value - finer), False)


def moment(coeffs: CoefficientSeq, ell: float, grid_factor: int = 16) -> float:
    """Approximation of the integral of |S(alpha)|^ell over [0, 1]."""
    return moment_estimate(coeffs, ell, grid_factor).value


# --- well-spaced sets and Farey systems ------------------------------------


def well_spaced_delta(points) -> float:
    """Least circular distance |x - x'| mod 1 over distinct pairs.

    A single point is 1-spaced by convention; duplicates give 0.
    """
    pts = sorted(x % 1 for x in points)
    if not pts:
        raise UsageError("need at least one point")
    if len(pts) == 1:
        return 1.0
    gaps = [b - a for a, b in zip(pts, pts[1:])]
    gaps.append(1 - pts[-1] + pts[0])
    return float(min(gaps))


@dataclass(frozen=True)
class WellSpacedSet:
    """Points of R/Z, stored reduced to [0, 1) and sorted, pairwise at least ``delta`` apart."""

    points: tuple
    delta: float

    def __post_init__(self):
        pts = tuple(sorted(x % 1 for x in self.points))
        object.__setattr__(self, "points", pts)
        if not pts:
            raise UsageError("a well-spaced set needs at least one point")
        if well_spaced_delta(pts) < self.delta:
            raise UsageError(f"points are not {self.delta}-spaced")

    @classmethod
    def of(cls, points) -> "WellSpacedSet":
        return cls(tuple(points), well_spaced_delta(points))

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class FareySystem:
    """F(Q0) = {a/q : 1 <= a <= q <= Q0, (a, q) = 1} ascending, ending at 1/1.

    ``split_even`` holds the 0-based positions of x_2, x_4, ... and
    ``split_odd`` those of x_1, x_3, ... in the 1-based numbering
    0 < x_1 < ... < x_K = 1.
    """

    Q0: int
    fractions: list[tuple[int, int]] = field(repr=False)
    split_even: list[int] = field(repr=False)
    split_odd: list[int] = field(repr=False)

    def __len__(self):
        return len(self.fractions)

    def values(self, indices=None) -> list[Fraction]:
        idx = range(len(self.fractions)) if indices is None else indices
        return [Fraction(*self.fractions[i]) for i in idx]


def farey(Q0: int) -> FareySystem:
    """Farey fractions in (0, 1] by the neighbour recurrence, integers only."""
    if Q0 < 2:
        raise UsageError(f"Q0 must be >= 2, got {Q0}")
    a, b, c, d = 0, 1, 1, Q0
    out = [(c, d)]
    while (c, d) != (1, 1):
        k = (Q0 + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
        out.append((c, d))
    return FareySystem(Q0, out, list(range(1, len(out), 2)), list(range(0, len(out), 2)))


def arc_max(coeffs: CoefficientSeq, a: int, q: int, Q0: int, samples_per_arc: int = 128):
    """Sampled max of |S| over |x - a/q| <= 1/(q Q0); returns (x_tilde, value).

    Dense sampling with ``samples_per_arc`` steps, so the value never
    exceeds the true maximum.
    """
    if math.gcd(a, q) != 1 or not 1 <= q <= Q0:
        raise UsageError(f"need (a, q) = 1 and 1 <= q <= Q0, got a={a}, q={q}, Q0={Q0}")
    centre, r = a / q, 1.0 / (q * Q0)
    xs = centre + np.linspace(-r, r, samples_per_arc + 1)
    vals = np.abs(eval_many(coeffs, xs))
    i = int(np.argmax(vals))
    return float(xs[i]), float(vals[i])


def farey_arc_maxima(coeffs: CoefficientSeq, system: FareySystem, samples_per_arc: int = 128):
    """Sampled arc maxima for every fraction of ``system`` from one FFT grid.

    The grid step 1/K is at most the shortest arc length over
    ``samples_per_arc`` and at most a quarter of 1/(M+N), the scale on
    which S oscillates. Returns arrays ``(x_tilde, value)`` aligned with
    ``system.fractions``.
    """
    Q0 = system.Q0
    K = grid_size(1, max(samples_per_arc * Q0 * Q0 // 2, OVERSAMPLE * coeffs.window.top, 1))
    absS = np.abs(eval_on_grid(coeffs, K))
    a = np.array([f[0] for f in system.fractions], dtype=np.int64)
    q = np.array([f[1] for f in system.fractions], dtype=np.int64)
    den = q * Q0
    # grid indices k with |k/K - a/q| <= 1/(q Q0), i.e. (a Q0 - 1) K <= k q Q0 <= (a Q0 + 1) K
    lo = -((-(a * Q0 - 1) * K) // den)
    hi = ((a * Q0 + 1) * K) // den
    counts = hi - lo + 1
    starts = np.concatenate([[0], np.cumsum(counts)[:-1]])
    offs = np.arange(counts.sum()) - np.repeat(starts, counts)
    idx = np.repeat(lo, counts) + offs
    vals = absS[idx % K]
    best = np.maximum.reduceat(vals, starts)
    # position of the max inside each arc
    hit = vals == np.repeat(best, counts)
    first = np.full(len(counts), -1, dtype=np.int64)
    where = np.nonzero(hit)[0]
    owner = np.searchsorted(starts, where, side="right") - 1
    first[owner[::-1]] = where[::-1]
    x_tilde = idx[first] / K
    return x_tilde, best


def level_set(X: WellSpacedSet, coeffs: CoefficientSeq, xi: float, B: float, values=None):
    """Points of X with |S(x)| >= xi B and Gamma = sum of |S| over them."""
    if xi <= 0 or B <= 0:
        raise UsageError("xi and B must be positive")
    if values is None:
        values = np.abs(eval_many(coeffs, X.points))
    values = np.asarray(values, dtype=np.float64)
    mask = values >= xi * B
    keep = [X.points[i] for i in np.nonzero(mask)[0]]
    return keep, math.fsum(values[mask].tolist())


def t_term(q: int, beta) -> complex:
    """T(q, beta) = sum over primes p | q of e(p beta) (c_q(p) - mu(q)), checked against |T| <= q."""
    if q < 1:
        raise UsageError(f"q must be >= 1, got {q}")
    mu_q = arith.mobius(q)
    total = 0j
    for p in arith.factorize(q):
        ph = float(_phases(np.array([p]), beta)[0])
        total += complex(math.cos(2 * math.pi * ph), math.sin(2 * math.pi * ph)) * (
            arith.ramanujan_von_sterneck(q, p) - mu_q
        )
    if abs(total) > q * (1 + 1e-12):
        raise InternalConsistencyError(f"|T({q}, {beta})| = {abs(total)} exceeds {q}")
    return total
