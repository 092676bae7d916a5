"""Racah-Wigner quantum 6j symbols at q = exp(4*pi*i/r).

The symbol is assembled from the symmetric closed formula: four triangle
coefficients (square roots of real products of quantum factorials, so each
contributes either a real or a purely imaginary factor) times an alternating
sum over an integer window [m, M].  Everything is carried in signed log space;
the overall phase is an exact quarter turn tracked as an integer power of i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .qarith import DomainError, Level, LogSigned, Spin, is_r_admissible, signed_logsumexp


@dataclass(frozen=True)
class SpinSextuple:
    """Entries of the symbol {a b e; d c f} with the four vertex triples."""

    a: Spin
    b: Spin
    c: Spin
    d: Spin
    e: Spin
    f: Spin

    @classmethod
    def of(cls, a, b, c, d, e, f) -> "SpinSextuple":
        return cls(*(Spin.of(x) for x in (a, b, c, d, e, f)))

    @property
    def spins(self) -> tuple[Spin, ...]:
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    @property
    def twice(self) -> tuple[int, ...]:
        return tuple(s.twice for s in self.spins)

    @cached_property
    def triples(self) -> tuple[tuple[Spin, Spin, Spin], ...]:
        return (
            (self.a, self.b, self.e),
            (self.a, self.c, self.f),
            (self.b, self.d, self.f),
            (self.c, self.d, self.e),
        )

    @cached_property
    def s_values(self) -> tuple[int, ...]:
        """S_1..S_4, integer sums of the vertex triples."""
        out = []
        for (u, v, w) in self.triples:
            t = u.twice + v.twice + w.twice
            if t % 2:
                raise DomainError(f"triple sum {t}/2 is not an integer")
            out.append(t // 2)
        return tuple(out)

    @cached_property
    def t_values(self) -> tuple[int, ...]:
        ta, tb, tc, td, te, tf = self.twice
        pairs = (ta + tb + tc + td, ta + td + te + tf, tb + tc + te + tf)
        return tuple(p // 2 for p in pairs)

    @property
    def z_min(self) -> int:
        return max(self.s_values)

    @property
    def z_max(self) -> int:
        return min(self.t_values)

    def is_admissible(self, level: Level) -> bool:
        return all(is_r_admissible(level, *t) for t in self.triples)

    def require_admissible(self, level: Level) -> None:
        if not self.is_admissible(level):
            raise DomainError(f"sextuple {self.twice} is not r-admissible at r={level.r}")


@dataclass(frozen=True)
class DeltaCoeff:
    """Triangle coefficient as sqrt of a signed real radicand.

    logmag is the log of |radicand|^(1/2); radicand_sign records whether the
    radicand was negative (the square root then carries a factor i).
    """

    radicand_sign: int
    logmag: float

    @property
    def complex_value(self) -> complex:
        m = math.exp(self.logmag)
        return 1j * m if self.radicand_sign < 0 else complex(m)


def delta_coeff(level: Level, u, v, w, precision: str = "double") -> DeltaCoeff:
    """Delta(u, v, w) = ([u+v-w]! [v+w-u]! [w+u-v]! / [u+v+w+1]!)^(1/2)."""
    u, v, w = Spin.of(u), Spin.of(v), Spin.of(w)
    if not is_r_admissible(level, u, v, w):
        raise DomainError(f"triple ({u}, {v}, {w}) not r-admissible at r={level.r}")
    tu, tv, tw = u.twice, v.twice, w.twice
    num = (
        level.qfact((tu + tv - tw) // 2, precision)
        * level.qfact((tv + tw - tu) // 2, precision)
        * level.qfact((tw + tu - tv) // 2, precision)
    )
    den = level.qfact((tu + tv + tw) // 2 + 1, precision)
    rad = num / den
    return DeltaCoeff(rad.sign, rad.logmag / 2.0)


def _alpha_sign_log(level: Level, s: SpinSextuple, z: np.ndarray, precision: str):
    """Vectorized sign/logmag of the Racah terms over integer z values."""
    hi, lo, neg_prefix, zero_from = level.qfact_log_arrays()
    log_unit = level.log_sin_unit
    S = np.asarray(s.s_values)
    T = np.asarray(s.t_values)
    z = np.asarray(z, dtype=np.int64)

    def fact(n):
        n = np.asarray(n)
        logmag = hi[n] - n * log_unit
        if precision == "dd":
            logmag = logmag + lo[n]
        sign = np.where(neg_prefix[n] % 2, -1, 1)
        zero = n >= zero_from
        return sign, logmag, zero

    sgn_num, log_num, zero_num = fact(z + 1)
    sign = sgn_num * np.where(z % 2, -1, 1)
    logmag = log_num.astype(float)
    zero = zero_num.copy()
    for Sj in S:
        sg, lg, zr = fact(z - Sj)
        if np.any(zr):
            raise DomainError("denominator factorial hit a zero of [n]!")
        sign = sign * sg
        logmag = logmag - lg
    for Tk in T:
        sg, lg, zr = fact(Tk - z)
        if np.any(zr):
            raise DomainError("denominator factorial hit a zero of [n]!")
        sign = sign * sg
        logmag = logmag - lg
    sign = np.where(zero, 0, sign)
    logmag = np.where(zero, -np.inf, logmag)
    return sign, logmag


def alpha_term(level: Level, s: SpinSextuple, z: int, precision: str = "double") -> LogSigned:
    """One Racah summand (-1)^z [z+1]! / (prod [z-S_j]! prod [T_k-z]!)."""
    z = int(z)
    if not (s.z_min <= z <= s.z_max):
        raise DomainError(f"z={z} outside [{s.z_min}, {s.z_max}]")
    sign, logmag = _alpha_sign_log(level, s, np.array([z]), precision)
    return LogSigned(int(sign[0]), float(logmag[0]))


@dataclass(frozen=True)
class SixJResult:
    """Value of a 6j symbol with exact phase and log magnitude.

    The complex value is i**phase_quarter * sum_sign * exp(logmag); `value`
    is None when the magnitude overflows binary64.
    """

    logmag: float
    phase_quarter: int
    sum_sign: int
    same_sign: bool
    z0: int
    log_alpha_max: float
    log_alpha_sum: float
    n_terms: int

    @property
    def magnitude(self) -> LogSigned:
        if self.sum_sign == 0:
            return LogSigned.zero()
        return LogSigned(1, self.logmag)

    @property
    def value(self) -> complex | None:
        if self.sum_sign == 0:
            return 0j
        if self.logmag > 700.0:
            return None
        return (1j ** self.phase_quarter) * self.sum_sign * math.exp(self.logmag)

    @property
    def phase_angle(self) -> float:
        """arg of the symbol in radians (multiple of pi/2), NaN for zero."""
        if self.sum_sign == 0:
            return math.nan
        ang = (math.pi / 2.0) * (self.phase_quarter % 4)
        if self.sum_sign < 0:
            ang += math.pi
        return math.remainder(ang, 2.0 * math.pi)


def sixj_rw(level: Level, s: SpinSextuple, precision: str = "double") -> SixJResult:
    """Evaluate {a b e; d c f}^RW at q = xi_r^2 from the symmetric formula."""
    s.require_admissible(level)
    m, M = s.z_min, s.z_max
    if m > M:
        raise DomainError(f"empty summation window [{m}, {M}]")

    deltas = [delta_coeff(level, *t, precision=precision) for t in s.triples]
    delta_logmag = sum(d.logmag for d in deltas)
    phase_quarter = sum(1 for d in deltas if d.radicand_sign < 0) % 4

    z = np.arange(m, M + 1)
    sign, logmag = _alpha_sign_log(level, s, z, precision)

    nonzero = sign != 0
    same_sign = bool(nonzero.any()) and (len(set(sign[nonzero].tolist())) == 1)
    if nonzero.any():
        i0 = int(np.argmax(np.where(nonzero, logmag, -np.inf)))
        z0 = int(z[i0])
        log_alpha_max = float(logmag[i0])
    else:
        z0 = m
        log_alpha_max = -math.inf

    total = signed_logsumexp(sign, logmag, precision)
    return SixJResult(
        logmag=delta_logmag + total.logmag,
        phase_quarter=phase_quarter,
        sum_sign=total.sign,
        same_sign=same_sign,
        z0=z0,
        log_alpha_max=log_alpha_max,
        log_alpha_sum=total.logmag,
        n_terms=int(M - m + 1),
    )


def classical_symmetries(s: SpinSextuple):
    """The 24 relabelings that preserve the multisets {S_j}, {T_k}.

    Columns of {a b e; d c f} are the opposite-edge pairs (a,d), (b,c), (e,f);
    the group is column permutations combined with flipping two columns.
    """
    cols = ((s.a, s.d), (s.b, s.c), (s.e, s.f))
    perms = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))
    flipsets = ((), (0, 1), (0, 2), (1, 2))
    out = []
    for p in perms:
        for flips in flipsets:
            cc = [list(cols[i]) for i in p]
            for fidx in flips:
                cc[fidx].reverse()
            (a, d), (b, c), (e, f) = cc
            out.append(SpinSextuple(a, b, c, d, e, f))
    return out
