"""Compensated (double-double style) accumulation built on error-free transforms.

Prefix tables and the big alternating sums in this package live in log space
where absolute errors of a few ulp times the running magnitude are already
visible after Richardson extrapolation.  The helpers here keep a second float
carrying the exact rounding error of every addition (Knuth two-sum), which is
enough to make sums of ~1e4 terms effectively exact in double precision.
"""

from __future__ import annotations

import numpy as np


def two_sum(a: float, b: float) -> tuple[float, float]:
    """Error-free transform: a + b = s + e exactly."""
    s = a + b
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return s, e


def comp_sum(values) -> tuple[float, float]:
    """Neumaier-compensated sum; returns (sum, error) with sum+error exact-ish."""
    s = 0.0
    c = 0.0
    for v in np.asarray(values, dtype=float).ravel():
        t, e = two_sum(s, float(v))
        s = t
        c += e
    return s, c


def comp_cumsum(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Compensated cumulative sum: hi[i] + lo[i] == sum(values[:i+1]) exactly-ish."""
    values = np.asarray(values, dtype=float)
    hi = np.empty_like(values)
    lo = np.empty_like(values)
    s = 0.0
    c = 0.0
    for i, v in enumerate(values):
        t, e = two_sum(s, float(v))
        s = t
        c += e
        hi[i] = s
        lo[i] = c
    return hi, lo


def comp_exp_sum(logs: np.ndarray, anchor: float) -> tuple[float, float]:
    """Compensated sum of exp(logs - anchor); logs may contain -inf."""
    d = np.asarray(logs, dtype=float) - anchor
    terms = np.exp(d[np.isfinite(d)])
    # descending order: large terms first keeps per-step errors small
    terms = np.sort(terms)[::-1]
    return comp_sum(terms)


def log_comp_exp_sum(logs: np.ndarray, anchor: float) -> float:
    """log(sum(exp(logs))) with compensated accumulation, anchored at `anchor`."""
    s, c = comp_exp_sum(logs, anchor)
    if s <= 0.0:
        return -np.inf
    return anchor + np.log(s) + np.log1p(c / s)
