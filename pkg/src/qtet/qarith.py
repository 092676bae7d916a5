"""Quantum integers and factorials at q = exp(4*pi*i/r) for odd r.

At this root of unity the quantum integer [n] is the real number
sin(2*pi*n/r)/sin(2*pi/r), so products of quantum factorials are carried in a
signed log representation that never overflows.  A Level owns the O(r) prefix
tables (log |sin| and sign counts) that make every downstream factorial lookup
O(1); the tables are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import dd

TWO_PI = 2.0 * math.pi


class DomainError(ValueError):
    """Raised when an argument leaves the range an operation is defined on."""


@dataclass(frozen=True, order=True)
class Spin:
    """Non-negative half integer stored as its doubled value."""

    twice: int

    def __post_init__(self):
        if self.twice < 0:
            raise DomainError(f"spin must be non-negative, got {self.twice}/2")

    @property
    def value(self) -> float:
        return self.twice / 2.0

    @classmethod
    def of(cls, x) -> "Spin":
        """Accept a Spin, an int/float half-integer, or strings like '3/2'."""
        if isinstance(x, Spin):
            return x
        if isinstance(x, str):
            x = float(Fraction(x))
        twice = round(2 * x)
        if abs(2 * x - twice) > 1e-9:
            raise DomainError(f"{x} is not a half integer")
        return cls(int(twice))

    def __repr__(self):
        return f"Spin({self.twice}/2)"


class Level:
    """The odd integer r >= 3 together with the per-r factorial tables."""

    def __init__(self, r: int):
        if r < 3 or r % 2 == 0:
            raise DomainError(f"level requires an odd integer r >= 3, got {r}")
        self.r = int(r)

    def __repr__(self):
        return f"Level(r={self.r})"

    def __eq__(self, other):
        return isinstance(other, Level) and other.r == self.r

    def __hash__(self):
        return hash(("Level", self.r))

    @cached_property
    def log_sin_unit(self) -> float:
        """log sin(2*pi/r), the log of the quantum-integer denominator."""
        return math.log(math.sin(TWO_PI / self.r))

    @cached_property
    def _tables(self):
        """Prefix tables over j = 0..2r for log|[j]!| assembly.

        sin(2*pi*j/r) vanishes exactly at j = 0 mod r, so any factorial with
        n >= r is exactly zero; prefix sums are compensated (hi, lo) pairs.
        """
        r = self.r
        j = np.arange(0, 2 * r + 1)
        s = np.sin(TWO_PI * j / r)
        # exact zeros at j = 0, r, 2r
        s[0] = s[r] = s[2 * r] = 0.0
        with np.errstate(divide="ignore"):
            logabs = np.log(np.abs(s))
        neg = (s < 0).astype(np.int64)
        neg_prefix = np.cumsum(neg)
        # prefix of log|sin| over 1..n, poisoned to -inf from n = r on
        body = logabs.copy()
        body[0] = 0.0
        hi, lo = dd.comp_cumsum(np.where(np.isfinite(body), body, 0.0)[1:])
        hi = np.concatenate([[0.0], hi])
        lo = np.concatenate([[0.0], lo])
        zero_from = r  # [n]! == 0 exactly for n >= r
        return hi, lo, neg_prefix, zero_from

    def qint(self, n: int) -> float:
        """Quantum integer [n] = sin(2*pi*n/r)/sin(2*pi/r)."""
        n = int(n)
        if n % self.r == 0:
            return 0.0
        return math.sin(TWO_PI * n / self.r) / math.sin(TWO_PI / self.r)

    def qfact(self, n: int, precision: str = "double") -> "LogSigned":
        """Quantum factorial [n]! as a LogSigned, n in [0, 2r]."""
        n = int(n)
        if n < 0:
            raise DomainError(f"negative factorial argument {n}")
        if n > 2 * self.r:
            raise DomainError(f"factorial argument {n} exceeds table range 2r={2*self.r}")
        hi, lo, neg_prefix, zero_from = self._tables
        if n >= zero_from:
            return LogSigned.zero()
        sign = -1 if (neg_prefix[n] % 2) else 1
        logmag = hi[n] - n * self.log_sin_unit
        if precision == "dd":
            logmag += lo[n]
        return LogSigned(sign, float(logmag))

    def qfact_log_arrays(self):
        """(hi, lo, neg_prefix, zero_from) raw tables for vectorized callers."""
        return self._tables


@dataclass(frozen=True)
class LogSigned:
    """sign in {-1, 0, +1} and natural log of the absolute value."""

    sign: int
    logmag: float

    @classmethod
    def zero(cls) -> "LogSigned":
        return cls(0, -math.inf)

    @classmethod
    def one(cls) -> "LogSigned":
        return cls(1, 0.0)

    @classmethod
    def from_value(cls, x: float) -> "LogSigned":
        if x == 0:
            return cls.zero()
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.logmag)

    def __mul__(self, other: "LogSigned") -> "LogSigned":
        if self.sign == 0 or other.sign == 0:
            return LogSigned.zero()
        return LogSigned(self.sign * other.sign, self.logmag + other.logmag)

    def __truediv__(self, other: "LogSigned") -> "LogSigned":
        if other.sign == 0:
            raise ZeroDivisionError("division by LogSigned zero")
        if self.sign == 0:
            return LogSigned.zero()
        return LogSigned(self.sign * other.sign, self.logmag - other.logmag)

    def __neg__(self) -> "LogSigned":
        return LogSigned(-self.sign, self.logmag)

    def __repr__(self):
        return f"LogSigned({self.sign:+d}, exp({self.logmag}))"


def signed_logsumexp(signs: np.ndarray, logmags: np.ndarray, precision: str = "double") -> LogSigned:
    """Sum of sign*exp(logmag) terms without leaving log space.

    Positive and negative terms are accumulated separately (each anchored at
    its maximum) and recombined at the end, so the result only suffers
    cancellation where the underlying sum genuinely cancels.
    """
    signs = np.asarray(signs)
    logmags = np.asarray(logmags, dtype=float)

    def one_side(mask) -> tuple[float, float, float]:
        logs = logmags[mask]
        logs = logs[np.isfinite(logs)]
        if logs.size == 0:
            return -math.inf, 0.0, 0.0
        anchor = float(np.max(logs))
        s, c = dd.comp_exp_sum(logs, anchor)
        return anchor, s, c

    a_pos, s_pos, c_pos = one_side(signs > 0)
    a_neg, s_neg, c_neg = one_side(signs < 0)

    if s_pos == 0.0 and s_neg == 0.0:
        return LogSigned.zero()
    if s_neg == 0.0:
        return LogSigned(1, a_pos + math.log(s_pos) + math.log1p(c_pos / s_pos))
    if s_pos == 0.0:
        return LogSigned(-1, a_neg + math.log(s_neg) + math.log1p(c_neg / s_neg))

    # both sides present: subtract on the common anchor
    anchor = max(a_pos, a_neg)
    if precision == "dd":
        pos = (s_pos + c_pos) * math.exp(a_pos - anchor)
        neg = (s_neg + c_neg) * math.exp(a_neg - anchor)
    else:
        pos = s_pos * math.exp(a_pos - anchor)
        neg = s_neg * math.exp(a_neg - anchor)
    diff = pos - neg
    if diff == 0.0:
        return LogSigned.zero()
    return LogSigned(1 if diff > 0 else -1, anchor + math.log(abs(diff)))


def is_r_admissible(level: Level, a, b, c) -> bool:
    """Clebsch-Gordan triple with spins <= (r-2)/2 and a+b+c <= r-2."""
    ta, tb, tc = (Spin.of(x).twice for x in (a, b, c))
    r = level.r
    if max(ta, tb, tc) > r - 2:
        return False
    if (ta + tb + tc) % 2 != 0:
        return False
    if not (abs(ta - tb) <= tc <= ta + tb):
        return False
    return ta + tb + tc <= 2 * (r - 2)
