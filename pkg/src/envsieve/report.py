"""Verification reports and the worst-instance tracker used by every check."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

FIELDS = ("theorem", "params", "lhs", "rhs", "ratio", "pass", "seed", "elapsed_ms")


def ratio_of(small, big) -> float:
    """``small / big`` as a float, with 0/0 read as 0."""
    if big == 0:
        return 0.0 if small == 0 else math.inf
    if isinstance(small, Fraction) or isinstance(big, Fraction):
        return float(Fraction(small) / Fraction(big))
    return float(small) / float(big)


def _plain(v):
    if isinstance(v, Fraction):
        return str(v)  # "num/den", or "num" when integral
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if hasattr(v, "item"):  # numpy scalar
        return v.item()
    return v


@dataclass
class VerificationReport:
    """One check: pass iff ``ratio <= threshold`` (threshold 1 unless recorded)."""

    theorem_id: str
    parameters: dict[str, Any]
    lhs: float
    rhs: float
    ratio: float
    passed: bool
    seed: int = 0
    elapsed_ms: int = 0

    @property
    def threshold(self) -> float:
        return float(self.parameters.get("threshold", 1.0))

    def to_dict(self) -> dict[str, Any]:
        return {
            "theorem": self.theorem_id,
            "params": _plain(self.parameters),
            "lhs": _finite(self.lhs),
            "rhs": _finite(self.rhs),
            "ratio": _finite(self.ratio),
            "pass": bool(self.passed),
            "seed": int(self.seed),
            "elapsed_ms": int(self.elapsed_ms),
        }

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.theorem_id}: ratio={self.ratio:.6g} lhs={self.lhs:.6g} rhs={self.rhs:.6g}"


def _finite(x):
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


@dataclass
class WorstCase:
    """Accumulates instances of ``lhs <= rhs`` and keeps the tightest one.

    ``violated`` must come from an exact comparison whenever one is
    available; the float ratio is telemetry only.
    """

    theorem_id: str
    base_params: dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    instances: int = 0
    violations: int = 0
    worst_ratio: float = -math.inf
    worst: dict[str, Any] = field(default_factory=dict)
    first_violation: dict[str, Any] | None = None
    _t0: float = field(default_factory=time.perf_counter)

    def add(self, lhs, rhs, violated: bool | None = None, **params) -> None:
        r = ratio_of(lhs, rhs)
        if violated is None:
            violated = lhs > rhs
        self.instances += 1
        if violated:
            self.violations += 1
            if self.first_violation is None:
                self.first_violation = dict(params, lhs=float(lhs), rhs=float(rhs))
        if r > self.worst_ratio or not self.worst:
            self.worst_ratio = r
            self.worst = dict(params, lhs=float(lhs), rhs=float(rhs))

    def check(self, ok: bool, **params) -> None:
        """Record a yes/no assertion; a failure makes the ratio infinite."""
        self.instances += 1
        if not ok:
            self.violations += 1
            self.worst_ratio = math.inf
            self.worst = dict(params, lhs=math.nan, rhs=math.nan)
            if self.first_violation is None:
                self.first_violation = dict(params)

    def report(self) -> VerificationReport:
        params = dict(self.base_params)
        params["instances"] = self.instances
        params["violations"] = self.violations
        params["worst"] = {k: v for k, v in self.worst.items() if k not in ("lhs", "rhs")}
        if self.first_violation is not None:
            params["witness"] = self.first_violation
        passed = self.violations == 0 and self.instances > 0
        ratio = self.worst_ratio if self.instances else math.nan
        lhs, rhs = self.worst.get("lhs", math.nan), self.worst.get("rhs", math.nan)
        if ratio == -math.inf:
            # only yes/no assertions were recorded and all held
            ratio, lhs, rhs = 0.0, 0.0, 0.0
        if passed and ratio > 1.0:
            # exact comparison says equality holds; float rounding overshot
            ratio = 1.0
        return VerificationReport(
            self.theorem_id,
            params,
            lhs,
            rhs,
            ratio,
            passed,
            self.seed,
            int((time.perf_counter() - self._t0) * 1000),
        )
