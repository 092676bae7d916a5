"""Hyperbolic tetrahedron data: Gram matrix, stationary point, volume.

Angles are the six inner dihedral angles in the edge order (a, b, c, d, e, f);
the four vertices carry the edge triples (a,b,e), (a,c,f), (b,d,f), (c,d,e)
and the opposite-edge pairs are {a,d}, {b,c}, {e,f}.  The volume comes from
the critical value of a dilogarithm potential at the unit-circle root of an
explicit quadratic; the tests pin it to known Lobachevsky-function values.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .qarith import DomainError, LogSigned
from .qdilog import li2_circle

TWO_PI = 2.0 * math.pi

VERTEX_TRIPLES = ((0, 1, 4), (0, 2, 5), (1, 3, 5), (2, 3, 4))
TAU_QUADS = ((0, 1, 2, 3), (0, 3, 4, 5), (1, 2, 4, 5))
OPPOSITE_PAIRS = ((0, 3), (1, 2), (4, 5))


class NotHyperbolic(DomainError):
    """The angle set has no interior unit-circle stationary point."""


@dataclass(frozen=True)
class AngleSet:
    """Six dihedral angles (radians), each in (-pi, pi)."""

    theta: tuple[float, float, float, float, float, float]

    @classmethod
    def of(cls, *theta) -> "AngleSet":
        if len(theta) == 1:
            theta = tuple(theta[0])
        if len(theta) != 6:
            raise DomainError(f"need six angles, got {len(theta)}")
        th = tuple(float(t) for t in theta)
        if any(abs(t) >= math.pi for t in th):
            raise DomainError("angles must lie in (-pi, pi)")
        return cls(th)

    @classmethod
    def regular(cls, theta: float) -> "AngleSet":
        return cls.of(*(theta,) * 6)

    @cached_property
    def eta(self) -> np.ndarray:
        """eta_x = (pi - theta_x) / (2 pi), in (0, 1)."""
        return (math.pi - np.asarray(self.theta)) / TWO_PI

    @cached_property
    def sigma(self) -> np.ndarray:
        """Vertex sums sigma_j = eta_x + eta_y + eta_z over the四 triples."""
        return np.array([self.eta[list(t)].sum() for t in VERTEX_TRIPLES])

    @cached_property
    def tau(self) -> np.ndarray:
        return np.array([self.eta[list(q)].sum() for q in TAU_QUADS])

    def flip(self, edge: int) -> "AngleSet":
        """Angle set with theta_edge negated."""
        th = list(self.theta)
        th[edge] = -th[edge]
        return AngleSet.of(*th)

    def relabel(self, perm: tuple[int, ...]) -> "AngleSet":
        return AngleSet.of(*(self.theta[p] for p in perm))


def gram_matrix(angles: AngleSet) -> np.ndarray:
    """4x4 Gram matrix: unit diagonal, -cos(theta) pairing opposite edges."""
    ta, tb, tc, td, te, tf = angles.theta
    ca, cb, cc, cd, ce, cf = (math.cos(t) for t in (ta, tb, tc, td, te, tf))
    return np.array(
        [
            [1.0, -ca, -cb, -cf],
            [-ca, 1.0, -ce, -cc],
            [-cb, -ce, 1.0, -cd],
            [-cf, -cc, -cd, 1.0],
        ]
    )


def gram_det(angles: AngleSet) -> tuple[float, np.ndarray]:
    """(det G, G)."""
    g = gram_matrix(angles)
    return float(np.linalg.det(g)), g


def classify_vertex(angles: AngleSet, vertex: int, tol: float = 1e-9) -> str:
    """'Normal', 'Ideal' or 'UltraIdeal' by the inner angle sum at the vertex."""
    s = sum(angles.theta[i] for i in VERTEX_TRIPLES[vertex])
    if s > math.pi + tol:
        return "Normal"
    if s < math.pi - tol:
        return "UltraIdeal"
    return "Ideal"


@dataclass(frozen=True)
class StationaryData:
    zeta0: float
    u0: complex
    a2: complex
    a1: complex
    a0: complex
    fpp: complex
    window: tuple[float, float]


def _quadratic(angles: AngleSet) -> tuple[complex, complex, complex]:
    """Coefficients a2, a1, a0 of (prod(A_j - u) - (1-u) prod(B_k - u)) / u.

    The raw coefficients carry a unimodular gauge: their discriminant equals
    16 det G times exp(-2i sum(theta)).  We normalize by exp(i sum(theta)),
    which leaves the roots untouched and makes a1^2 - 4 a0 a2 = 16 det G hold
    as a real identity.
    """
    A = np.exp(2j * math.pi * angles.sigma)
    B = np.exp(2j * math.pi * angles.tau)
    pa = np.poly(A)  # prod (u - A_j), monic degree 4
    pb = np.poly(B)
    p = np.polyadd(pa, np.polymul(np.array([-1.0, 1.0]), pb))  # + (1-u) prod(u-B_k)
    # degree-4 coefficients cancel; constant term vanishes because
    # sum sigma == sum tau
    if abs(p[0]) > 1e-9 * max(1.0, np.abs(p).max()):
        raise DomainError("quartic coefficient failed to cancel")
    if abs(p[-1]) > 1e-9 * max(1.0, np.abs(p).max()):
        raise DomainError("p(0) != 0: sigma/tau sums inconsistent")
    gauge = cmath.exp(1j * sum(angles.theta))
    a2, a1, a0 = (gauge * complex(c) for c in p[1:4])
    return a2, a1, a0


def _zeta_window(angles: AngleSet) -> tuple[float, float]:
    """Interval the stationary point must lie in.

    min(tau) bounds from above; the additional caps reflect quantum
    factorials that vanish identically beyond them ([n]! = 0 for n >= r),
    which truncate the summand for angle sets with eta > 1/2.
    """
    lo = float(np.max(angles.sigma))
    lo = max(lo, float(np.max(angles.tau)) - 2.0)
    hi = min(float(np.min(angles.tau)), float(np.min(angles.sigma)) + 2.0, 2.0)
    return lo, hi


def stationary_point(angles: AngleSet, *, require_hyperbolic: bool = True) -> StationaryData:
    """Unit-modulus root of the quadratic lifted into the zeta window."""
    det_g, _ = gram_det(angles)
    if require_hyperbolic and det_g >= 1e-12:
        raise NotHyperbolic(f"det G = {det_g:.3g} >= 0")
    a2, a1, a0 = _quadratic(angles)
    disc = a1 * a1 - 4.0 * a0 * a2
    sq = cmath.sqrt(disc)
    roots = [(-a1 + sq) / (2.0 * a2), (-a1 - sq) / (2.0 * a2)]

    lo, hi = _zeta_window(angles)
    if hi - lo <= 1e-12:
        raise NotHyperbolic(f"empty stationary window ({lo}, {hi})")
    candidates = []
    for u in roots:
        if abs(abs(u) - 1.0) > 1e-8:
            continue
        frac = cmath.phase(u) / TWO_PI  # in (-1/2, 1/2]
        k_lo = math.floor(lo - frac)
        for k in (k_lo, k_lo + 1, k_lo + 2):
            zeta = frac + k
            if lo + 1e-11 < zeta < hi - 1e-11:
                candidates.append((zeta, u))
    if not candidates:
        raise NotHyperbolic(f"no unit-circle root lifts into the window ({lo:.6f}, {hi:.6f})")
    if len(candidates) > 1:
        scored = sorted(candidates, key=lambda zu: -potential_F(angles, zu[0])[0].real)
        f0 = potential_F(angles, scored[0][0])[0].real
        f1 = potential_F(angles, scored[1][0])[0].real
        if abs(f0 - f1) < 1e-12:
            raise NotHyperbolic("ambiguous stationary point: two equal-Re-F candidates")
        candidates = scored[:1]
    zeta0, u0 = candidates[0]

    A = np.exp(2j * math.pi * angles.sigma)
    B = np.exp(2j * math.pi * angles.tau)
    fpp = 1j * math.pi * (
        -u0 / (1.0 - u0) + np.sum(u0 / (A - u0)) - np.sum(u0 / (B - u0))
    )
    return StationaryData(zeta0=float(zeta0), u0=u0, a2=a2, a1=a1, a0=a0,
                          fpp=complex(fpp), window=(lo, hi))


def potential_F(angles: AngleSet, zeta: float) -> tuple[complex, complex, complex]:
    """(F, F', F'') of the stationary-phase potential at real zeta."""
    sig = angles.sigma
    tau = angles.tau
    eta_sum = float(np.sum(angles.eta))
    branch_dists = [abs(zeta - s) for s in sig] + [abs(t - zeta) for t in tau]
    branch_dists.append(abs(zeta - round(zeta)))
    if min(branch_dists) < 1e-12:
        raise DomainError(f"zeta = {zeta} sits on a branch point")
    li = li2_circle
    F = (
        -2.0 * math.pi ** 2 * zeta
        - li(zeta)
        + np.sum(li(zeta - sig))
        + np.sum(li(tau - zeta))
        - 6.0 * math.pi ** 2 * zeta ** 2
        + 8.0 * math.pi ** 2 * eta_sum * zeta
    ) / (4j * math.pi)

    def logc(t):
        return np.log(1.0 - np.exp(2j * math.pi * (np.asarray(t) % 1.0)))

    F1 = (
        -2.0 * math.pi ** 2
        + 2j * math.pi * logc(zeta)
        - 2j * math.pi * np.sum(logc(zeta - sig))
        + 2j * math.pi * np.sum(logc(tau - zeta))
        - 12.0 * math.pi ** 2 * zeta
        + 8.0 * math.pi ** 2 * eta_sum
    ) / (4j * math.pi)

    u = cmath.exp(2j * math.pi * zeta)
    A = np.exp(2j * math.pi * sig)
    B = np.exp(2j * math.pi * tau)
    F2 = 1j * math.pi * (-u / (1.0 - u) + np.sum(u / (A - u)) - np.sum(u / (B - u)))
    return complex(F), complex(F1), complex(F2)


def delta_eta(eta1: float, eta2: float, eta3: float) -> complex:
    """Triangle dilogarithm term delta(eta1, eta2, eta3).

    Defined for eta sums in (0, 2]; the dilogarithms are periodic on the unit
    circle, so values below 1 (normal vertices) are the same closed formula.
    """
    s = eta1 + eta2 + eta3
    if not (0.0 <= min(eta1, eta2, eta3) and max(eta1, eta2, eta3) <= 1.0):
        raise DomainError("eta components must lie in [0, 1]")
    if not (0.0 < s <= 2.0 + 1e-12):
        raise DomainError(f"eta sum {s} outside (0, 2]")
    li = li2_circle
    val = (
        li(s) - li(eta1 + eta2 - eta3) - li(eta2 + eta3 - eta1) - li(eta3 + eta1 - eta2)
    ) / (8j * math.pi)
    return complex(val)


def delta_terms(angles: AngleSet) -> list[complex]:
    """The four vertex delta terms in triple order."""
    e = angles.eta
    return [delta_eta(*(float(e[i]) for i in triple)) for triple in VERTEX_TRIPLES]


@dataclass(frozen=True)
class VolumeResult:
    vol: float
    critical_re: float
    critical_im: float
    zeta0: float
    det_g: float
    stationary: StationaryData

    @property
    def exponent_rate(self) -> float:
        """Vol / (2 pi): growth rate of |6j| per unit r."""
        return self.vol / TWO_PI


def volume(angles: AngleSet) -> VolumeResult:
    """Hyperbolic volume via the critical value of the potential."""
    det_g, _ = gram_det(angles)
    st = stationary_point(angles)
    F0, _, _ = potential_F(angles, st.zeta0)
    crit = F0 + sum(delta_terms(angles))
    vol = TWO_PI * abs(crit.real)
    return VolumeResult(
        vol=float(vol),
        critical_re=float(crit.real),
        critical_im=float(crit.imag),
        zeta0=st.zeta0,
        det_g=det_g,
        stationary=st,
    )


def predictor_logmag(angles: AngleSet, r: int, vol: VolumeResult | None = None) -> float:
    """log of sqrt(2) pi r^(-3/2) (-det G)^(-1/4) exp(r Vol / 2 pi)."""
    v = vol if vol is not None else volume(angles)
    if v.det_g >= 0:
        raise NotHyperbolic(f"predictor needs det G < 0, got {v.det_g}")
    return (
        math.log(math.sqrt(2.0) * math.pi)
        - 1.5 * math.log(r)
        - 0.25 * math.log(-v.det_g)
        + r * v.vol / TWO_PI
    )


def predictor(angles: AngleSet, r: int, vol: VolumeResult | None = None) -> LogSigned:
    """Theorem-style leading asymptotics of |6j| as a LogSigned."""
    return LogSigned(1, predictor_logmag(angles, r, vol))
