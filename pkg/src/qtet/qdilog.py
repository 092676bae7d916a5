"""Faddeev's quantum dilogarithm at level r, and its classical limits.

phi(t) = PV integral of exp((2t-1)x) / (4 x sinh(x) sinh(2x/r)) over the real
line with the x = 0 pole bypassed above.  Folding the line onto (0, inf) gives
sinh((2t-1)x)/(2 x sinh x sinh(2x/r)), whose r(2t-1)/(4x^2) singular part is
integrated in closed form together with the semicircle contribution; the pole
residue supplies the exact quadratic imaginary part.  The module also hosts
the unit-circle dilogarithm, the Clausen function, and the continuous
interpolations of the Racah summand and triangle coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .qarith import DomainError, Level, Spin
from .sixj import SpinSextuple

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# Clausen function and the dilogarithm on the unit circle
# ---------------------------------------------------------------------------

def _clausen_coeffs(n_terms: int = 34) -> np.ndarray:
    """c_k = zeta(2k) / (k (2k+1) (2pi)^(2k)) = |B_2k| / (2 k (2k+1) (2k)!), exact."""
    from fractions import Fraction
    from math import comb

    bern = [Fraction(1)]
    for m in range(1, 2 * n_terms + 1):
        s = sum(comb(m + 1, j) * bern[j] for j in range(m))
        bern.append(-s / (m + 1))
    out = []
    for k in range(1, n_terms + 1):
        c = abs(bern[2 * k]) / (2 * k * (2 * k + 1) * math.factorial(2 * k))
        out.append(float(c))
    return np.array(out)


_CLAUSEN_C = _clausen_coeffs()


def clausen(theta) -> float | np.ndarray:
    """Cl_2(theta) = sum sin(k theta)/k^2, absolute accuracy ~1e-14.

    Reduced to |theta| <= pi where the log-kernel series
    Cl_2(t) = t(1 - log|t|) + sum_k c_k t^(2k+1)
    converges geometrically (ratio <= 1/4 at t = pi).
    """
    th = np.asarray(theta, dtype=float)
    t = np.remainder(th + math.pi, TWO_PI) - math.pi  # reduce to (-pi, pi]
    t = np.where(np.isclose(t, -math.pi), math.pi, t)
    at = np.abs(t)
    out = np.zeros_like(at)
    nz = at > 0
    x = at[nz]
    acc = np.zeros_like(x)
    x2 = x * x
    pow_x = x2.copy()
    for ck in _CLAUSEN_C:
        term = ck * pow_x
        acc += term
        pow_x = pow_x * x2
        if np.all(term < 1e-18):
            break
    out[nz] = x * (1.0 - np.log(x)) + x * acc
    out = np.where(t < 0, -out, out)
    if np.isscalar(theta):
        return float(out)
    return out


def li2_circle(t) -> complex | np.ndarray:
    """Li_2(e^(2 pi i t)) for real t: pi^2/6 - pi^2 u(1-u) + i Cl_2(2 pi u), u = frac(t)."""
    tt = np.asarray(t, dtype=float)
    u = np.remainder(tt, 1.0)
    re = math.pi ** 2 / 6.0 - math.pi ** 2 * u * (1.0 - u)
    im = clausen(TWO_PI * u)
    out = re + 1j * np.asarray(im)
    if np.isscalar(t):
        return complex(out)
    return out


# ---------------------------------------------------------------------------
# phi quadrature machinery
# ---------------------------------------------------------------------------

_SERIES_K = 8
_X_SWITCH = 0.25


def _recip_series(a: np.ndarray) -> np.ndarray:
    """Coefficients of 1/A for a power series A with a[0] = 1."""
    b = np.zeros_like(a)
    b[0] = 1.0
    for n in range(1, len(a)):
        b[n] = -np.dot(a[1 : n + 1], b[n - 1 :: -1][: n])
    return b


_SINHC = np.array([1.0 / math.factorial(2 * k + 1) for k in range(_SERIES_K + 1)])
_INV_SINHC = _recip_series(_SINHC)  # z/sinh(z) coefficients in z^2


def _log_sinh(y: np.ndarray) -> np.ndarray:
    """log sinh(y) for y > 0, stable for huge and tiny y."""
    with np.errstate(divide="ignore"):
        return y + np.log(-np.expm1(-2.0 * y)) - math.log(2.0)


def _gauss_nodes(a: float, b: float, n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return mid + half * x, half * w


@lru_cache(maxsize=64)
def _phi_grid(r: int, log_xmax_octaves: int):
    """Shared quadrature grid: [switch, 1] plus geometric panels up to 2^octaves."""
    xs, ws = [], []
    for a, b, n in ((_X_SWITCH, 0.6, 24), (0.6, 1.0, 24)):
        x, w = _gauss_nodes(a, b, n)
        xs.append(x)
        ws.append(w)
    lo = 1.0
    for _ in range(log_xmax_octaves):
        x, w = _gauss_nodes(lo, 2 * lo, 20)
        xs.append(x)
        ws.append(w)
        lo *= 2
    return np.concatenate(xs), np.concatenate(ws)


def phi_im(r: int, t) -> float | np.ndarray:
    """Closed-form Im phi(t) = -pi (6 r^2 t^2 - 6 r^2 t + r^2 - 2) / (24 r)."""
    t = np.asarray(t, dtype=float)
    out = -math.pi * (6 * r * r * t * t - 6 * r * r * t + r * r - 2) / (24.0 * r)
    return float(out) if out.ndim == 0 else out


def phi_re_batch(r: int, t: np.ndarray) -> np.ndarray:
    """Re phi(t) for an array of t in (-1/r, 1 + 1/r)."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    u = 2.0 * t - 1.0
    eps = 1.0 + 2.0 / r - np.abs(u)
    if np.any(eps <= 0):
        bad = t[eps <= 0]
        raise DomainError(f"phi arguments outside convergence strip: {bad[:4]}")

    eps_min = max(float(np.min(eps)), 1e-12)
    octaves = max(6, int(math.ceil(math.log2(max(45.0 / eps_min, 2.0)))))
    x, w = _phi_grid(r, octaves)

    au = np.abs(u)[:, None]
    su = np.sign(u)[:, None]
    xr = x[None, :]
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        ln_g = _log_sinh(au * xr) - np.log(2.0 * xr) - _log_sinh(xr) - _log_sinh(2.0 * xr / r)
        g = np.where(au > 0, su * np.exp(ln_g), 0.0)
    # subtract the r*u/(4x^2) pole part on [switch, 1]
    first = (x >= _X_SWITCH) & (x <= 1.0)
    pole = (r * u[:, None] / 4.0) / (x[None, :] ** 2)
    integrand = np.where(first[None, :], g - pole, g)
    tail = integrand @ w

    # series for the regular part on [0, switch]:
    # g - ru/4x^2 = (ru/4) * (h(x)-1)/x^2 with h = prod of three sinhc ratios
    K = _SERIES_K
    k = np.arange(K + 1)
    A = (u[:, None] ** (2 * k[None, :])) * _SINHC[None, :]          # sinh(ux)/(ux)
    B = _INV_SINHC                                                   # x/sinh(x)
    C = _INV_SINHC * (2.0 / r) ** (2 * k)                            # (2x/r)/sinh(2x/r)
    BC = np.convolve(B, C)[: K + 1]
    h = np.empty_like(A)
    for i in range(A.shape[0]):
        h[i] = np.convolve(A[i], BC)[: K + 1]
    # integral of (ru/4) * sum_{k>=1} h_k x^(2k-2) over [0, switch]
    kk = np.arange(1, K + 1)
    xs_pow = _X_SWITCH ** (2 * kk - 1) / (2 * kk - 1)
    head = (r * u / 4.0) * (h[:, 1:] @ xs_pow)

    return head + tail - r * u / 4.0


@dataclass(frozen=True)
class PhiValue:
    """phi(t) split into quadrature real part and closed-form imaginary part."""

    re: float
    im: float

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)


@lru_cache(maxsize=200_000)
def _phi_cached(r: int, t: float) -> PhiValue:
    re = float(phi_re_batch(r, np.array([t]))[0])
    return PhiValue(re, float(phi_im(r, t)))


def phi_r(level: Level | int, t: float) -> PhiValue:
    """phi at level r, t in (-1/r, 1 + 1/r); memoized per (r, t)."""
    r = level.r if isinstance(level, Level) else int(level)
    return _phi_cached(r, float(t))


def phi_batch(level: Level | int, t: np.ndarray) -> np.ndarray:
    """Vectorized complex phi over an array of t."""
    r = level.r if isinstance(level, Level) else int(level)
    t = np.asarray(t, dtype=float)
    return phi_re_batch(r, t.ravel()).reshape(t.shape) + 1j * phi_im(r, t)


def qpoch(level: Level, n: int) -> complex:
    """q-Pochhammer (q)_n = prod_{k=1..n} (1 - q^k) at q = xi_r^2, by direct product."""
    r = level.r
    if not 0 <= n < r:
        raise DomainError(f"qpoch defined for 0 <= n < r, got {n}")
    ks = np.arange(1, n + 1)
    return complex(np.prod(1.0 - np.exp(4j * math.pi * ks / r))) if n else 1.0 + 0j


# ---------------------------------------------------------------------------
# smooth cutoff
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BumpSpec:
    """Quintic smoothstep ramps of width `ramp` (z units) outside the plateau."""

    ramp: float = 0.25

    def psi(self, z, lo: float, hi: float):
        """1 on [lo, hi], 0 outside [lo-ramp, hi+ramp], smooth in between."""
        z = np.asarray(z, dtype=float)
        s_lo = np.clip((z - (lo - self.ramp)) / self.ramp, 0.0, 1.0)
        s_hi = np.clip(((hi + self.ramp) - z) / self.ramp, 0.0, 1.0)

        def smooth(s):
            return s * s * s * (10.0 + s * (-15.0 + 6.0 * s))

        out = smooth(s_lo) * smooth(s_hi)
        return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# continuous interpolation of the Racah summand
# ---------------------------------------------------------------------------

class SummandParams:
    """Level + sextuple data entering the continuous summand.

    sigma_j = (2 S_j + 3)/r and tau_k = (2 T_k + 4)/r are exact rationals of
    the spin data; they coincide with the eta sums of the effective angles.
    """

    def __init__(self, level: Level, spins: SpinSextuple):
        spins.require_admissible(level)
        self.level = level
        self.spins = spins
        r = level.r
        self.sigma = tuple((2 * S + 3) / r for S in spins.s_values)
        self.tau = tuple((2 * T + 4) / r for T in spins.t_values)
        self.spin_sum = sum(spins.twice) / 2.0
        tw = spins.twice
        self.d2 = 0.5 * (sum(tw) / 2.0) ** 2 + 0.5 * sum((x / 2.0) ** 2 for x in tw) - 0.5

    @property
    def z_window(self) -> tuple[int, int]:
        return self.spins.z_min, self.spins.z_max

    def _phi_args(self, z: np.ndarray) -> np.ndarray:
        r = self.level.r
        S = np.asarray(self.spins.s_values)
        T = np.asarray(self.spins.t_values)
        cols = [
            (2.0 * z + 3.0) / r - 1.0,
        ]
        cols += [(2.0 * z - 2.0 * Sj + 1.0) / r for Sj in S]
        cols += [(2.0 * Tk - 2.0 * z + 1.0) / r for Tk in T]
        return np.stack(cols, axis=-1)  # (..., 8)

    def check_domain(self, z: np.ndarray) -> None:
        args = self._phi_args(np.asarray(z, dtype=float))
        main, rest = args[..., 0], args[..., 1:]
        r = self.level.r
        if np.any(main <= -1.0 / r) or np.any(main >= 1.0 + 1.0 / r):
            raise DomainError("interpolated [z+1]! argument leaves (0, 1): outside the qn2 branch")
        if np.any(rest <= -1.0 / r) or np.any(rest >= 1.0):
            raise DomainError("interpolated factorial argument leaves (0, 1): outside the qn1 branch")

    def alpha_tilde_log(self, z) -> float | np.ndarray:
        """log of the positive real continuous summand at real z."""
        z_arr = np.atleast_1d(np.asarray(z, dtype=float))
        m, M = self.z_window
        if np.any(z_arr < m - 0.26) or np.any(z_arr > M + 0.26):
            raise DomainError(f"z outside ({m}, {M}) support")
        self.check_domain(z_arr)
        r = self.level.r
        args = self._phi_args(z_arr)
        re = phi_re_batch(r, args.ravel()).reshape(args.shape)
        re0 = phi_r(r, 1.0 / r).re
        out = -6.0 * re0 - re[..., 0] + math.log(2.0) + re[..., 1:5].sum(axis=-1) + re[..., 5:].sum(axis=-1)
        return float(out[0]) if np.isscalar(z) else out

    def alpha_tilde_exponent(self, z: float) -> complex:
        """Full complex log of alpha~ including the i^r xi^(2 d2) prefactor."""
        r = self.level.r
        args = self._phi_args(np.asarray([z], dtype=float))[0]
        phis = phi_batch(r, args)
        phi0 = phi_r(r, 1.0 / r).value
        expo = (
            1j * math.pi * z
            - 6.0 * phi0
            - phis[0]
            + math.log(2.0)
            + phis[1:5].sum()
            + phis[5:].sum()
            + (2j * math.pi / r) * (3.0 * z * z - z - 4.0 * self.spin_sum * z)
        )
        # i^r xi^(2 d2) as printed leaves Im == pi (mod 2pi); the extra i pi
        # restores the positive-real normalization the bridging identity uses
        expo += 1j * (math.pi * r / 2.0 + 4.0 * math.pi * self.d2 / r + math.pi)
        return complex(expo)

    def beta(self, z) -> float | np.ndarray:
        """beta(z) = (1/r) log alpha~(z), the exponential rate of the summand."""
        return self.alpha_tilde_log(z) / self.level.r


def alpha_tilde(params: SummandParams, z) -> float | np.ndarray:
    """log alpha~(z); positive-real continuous interpolation of the Racah term."""
    return params.alpha_tilde_log(z)


def delta_tilde(level: Level, u, v, w) -> complex:
    """Complex log of the continuous triangle coefficient Delta~."""
    u, v, w = Spin.of(u), Spin.of(v), Spin.of(w)
    r = level.r
    tu, tv, tw_ = u.twice, v.twice, w.twice
    S2 = tu + tv + tw_
    if S2 % 2:
        raise DomainError("triple sum must be an integer")
    if S2 + 1 < r:
        raise DomainError("Delta~ needs S >= (r-1)/2 (vertex not ideal/ultra-ideal enough)")
    main = (S2 + 3.0) / r - 1.0
    others = [(tu + tv - tw_ + 1.0) / r, (tv + tw_ - tu + 1.0) / r, (tw_ + tu - tv + 1.0) / r]
    if main <= 0 or main >= 1 + 1.0 / r or any(o <= 0 or o >= 1 for o in others):
        raise DomainError("Delta~ interpolation argument out of range")
    p_main = phi_r(r, main).value
    p_oth = [phi_r(r, o).value for o in others]
    p0 = phi_r(r, 1.0 / r).value
    return 0.5 * (2.0 * p0 + p_main - math.log(2.0) - sum(p_oth))


def gbar_log_batch(
    level: Level | int,
    eta: np.ndarray,
    zeta: np.ndarray,
    *,
    sigma: np.ndarray | None = None,
    tau: np.ndarray | None = None,
    bump: BumpSpec = BumpSpec(),
) -> tuple[np.ndarray, np.ndarray]:
    """(log|psi*exp(E)|, arg E) of the rescaled summand over an array of zeta.

    eta are the six edge parameters (pi - theta)/(2 pi); sigma/tau default to
    the vertex and pair sums of eta.  Entries with psi = 0 get log = -inf.
    """
    r = level.r if isinstance(level, Level) else int(level)
    eta = np.asarray(eta, dtype=float)
    if sigma is None:
        sigma = np.array([eta[0] + eta[1] + eta[4], eta[0] + eta[2] + eta[5],
                          eta[1] + eta[3] + eta[5], eta[2] + eta[3] + eta[4]])
    if tau is None:
        tau = np.array([eta[0] + eta[1] + eta[2] + eta[3],
                        eta[0] + eta[3] + eta[4] + eta[5],
                        eta[1] + eta[2] + eta[4] + eta[5]])
    zeta = np.atleast_1d(np.asarray(zeta, dtype=float))
    z = (r * zeta - 3.0) / 2.0
    lo = (r * float(np.max(sigma)) - 3.0) / 2.0
    hi = (r * min(float(np.min(tau)) - 1.0 / r, 2.0 - 1.0 / r) - 3.0) / 2.0
    psi = bump.psi(z, lo, hi)

    active = psi > 0.0
    log_out = np.full(zeta.shape, -np.inf)
    arg_out = np.zeros(zeta.shape)
    if np.any(active):
        zz = zeta[active]
        args = np.concatenate(
            [ (zz - 1.0)[:, None],
              zz[:, None] - sigma[None, :] + 1.0 / r,
              tau[None, :] - zz[:, None] ],
            axis=1,
        )
        phis = phi_batch(r, args)
        phi0 = phi_r(r, 1.0 / r).value
        E = (
            1j * math.pi * r * zz / 2.0
            - 6.0 * phi0
            - phis[:, 0]
            + math.log(2.0)
            + phis[:, 1:5].sum(axis=1)
            + phis[:, 5:].sum(axis=1)
            + 2j * math.pi * r * (0.75 * zz * zz - float(np.sum(eta)) * zz + zz / r)
        )
        log_out[active] = E.real + np.log(psi[active])
        arg_out[active] = E.imag
    return log_out, arg_out


def gbar(level: Level | int, eta, zeta: float, *, sigma=None, tau=None, bump: BumpSpec = BumpSpec()) -> complex:
    """Value of the cut-off rescaled summand at a single zeta."""
    lg, ar = gbar_log_batch(level, np.asarray(eta, float), np.array([zeta]),
                            sigma=None if sigma is None else np.asarray(sigma, float),
                            tau=None if tau is None else np.asarray(tau, float), bump=bump)
    if not np.isfinite(lg[0]):
        return 0j
    return complex(np.exp(lg[0]) * np.exp(1j * ar[0]))
