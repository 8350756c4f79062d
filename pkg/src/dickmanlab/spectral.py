"""Characteristic functions and bound envelopes.

Covers the characteristic functions of Z_k, T_m^n and the Dickman law,
the error kernel gamma_{m,n}, the f/g/chi bound envelopes with their
calibration constant, and the L2 quantities tied to the Parseval
identity for integer-supported laws.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .cumulants import alpha_j
from .dickman import RhoTable, rho_sq_integral
from .exact_dist import KappaSeq, Pmf, power_sum


def phi_Z(k: int, t: float) -> complex:
    """Characteristic function of Z_k: 1 + (e^{it} - 1)/k."""
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    return 1.0 + (cmath.exp(1j * t) - 1.0) / k


def phi_T(m: int, n: int, t) -> complex | np.ndarray:
    """Characteristic function of T_m^n: product of phi_Z(k, t*k).

    Accepts a scalar t or an array of t values.
    """
    if not (0 <= m < n):
        raise ValueError(f"need 0 <= m < n, got m={m}, n={n}")
    t_arr = np.asarray(t, dtype=float)
    ks = np.arange(m + 1, n + 1)
    # factors[j, i] = phi_Z(ks[j], t_i * ks[j])
    tk = np.multiply.outer(ks.astype(float), t_arr)
    factors = 1.0 + (np.exp(1j * tk) - 1.0) / ks.reshape((-1,) + (1,) * t_arr.ndim)
    out = np.prod(factors, axis=0)
    if np.isscalar(t) or t_arr.ndim == 0:
        return complex(out)
    return out


def phi_dickman(t: float) -> complex:
    """Dickman characteristic function exp{ integral_0^1 (e^{itu}-1)/u du }.

    The integrand extends continuously to u = 0 with value it; real and
    imaginary parts are integrated separately by adaptive quadrature.
    """
    if not math.isfinite(t):
        raise ValueError(f"t must be finite, got {t!r}")
    if t == 0.0:
        return 1.0 + 0.0j

    def re_part(u):
        return (math.cos(t * u) - 1.0) / u if u > 0.0 else 0.0

    def im_part(u):
        return math.sin(t * u) / u if u > 0.0 else t

    re, _ = quad(re_part, 0.0, 1.0, epsabs=1e-12, epsrel=1e-12, limit=200)
    im, _ = quad(im_part, 0.0, 1.0, epsabs=1e-12, epsrel=1e-12, limit=200)
    return cmath.exp(complex(re, im))


def phi_dickman_abs2(t: float) -> float:
    """|phi(t)|^2 = exp{ -2 integral_0^1 (1 - cos tu)/u du }."""
    if t == 0.0:
        return 1.0

    def integrand(u):
        return (1.0 - math.cos(t * u)) / u if u > 0.0 else 0.0

    val, _ = quad(integrand, 0.0, 1.0, epsabs=1e-12, epsrel=1e-12, limit=200)
    return math.exp(-2.0 * val)


def gamma_mn(m: int, n: int, u: float) -> complex:
    """Error kernel (1/(n-m)) sum_{k=m+1}^n e^{iuk}(1-e^{iuk})/(k-1+e^{iuk})."""
    if not (2 <= m < n):
        raise ValueError(f"need 2 <= m < n, got m={m}, n={n}")
    ks = np.arange(m + 1, n + 1, dtype=float)
    e = np.exp(1j * u * ks)
    terms = e * (1.0 - e) / (ks - 1.0 + e)
    return complex(terms.sum() / (n - m))


def gamma_series(m: int, n: int, t: float, J: int) -> complex:
    """J-term cumulant series sum_{j=1}^J (it)^{j-1}/(j-1)! * alpha_j.

    Raises if the partial sum leaves the finite range, which is how
    divergence of the series outside its radius shows up.
    """
    if J < 1:
        raise ValueError(f"need J >= 1, got {J}")
    total = 0.0 + 0.0j
    term = 1.0 + 0.0j  # (it)^{j-1}/(j-1)! at j=1
    it = 1j * t
    for j in range(1, J + 1):
        total += term * alpha_j(m, n, j)
        term *= it / j
        if not (math.isfinite(total.real) and math.isfinite(total.imag)):
            raise OverflowError(f"series diverged at j={j} for t={t}")
    return total


@dataclass(frozen=True)
class Envelope:
    """Bound-envelope parameters: the block (m, n) and a calibration constant."""

    m: int
    n: int
    c_const: float = 1.0

    def __post_init__(self):
        if not (2 <= self.m < self.n):
            raise ValueError(f"need 2 <= m < n, got m={self.m}, n={self.n}")
        if not (math.isfinite(self.c_const) and self.c_const > 0):
            raise ValueError(f"c_const must be finite positive, got {self.c_const!r}")

    @property
    def _bracket(self) -> float:
        m, n = self.m, self.n
        return math.log(n / m) / (n - m) ** 2 + (m + 2) / (n - m)


def f_envelope(env: Envelope, t: float) -> float:
    """exp{C t^2 (log(n/m)/(n-m)^2 + (m+2)/(n-m))} - 1."""
    return math.expm1(env.c_const * t * t * env._bracket)


def g_envelope(env: Envelope) -> float:
    """exp(C {bracket} log^2(n/m)) - 1 + 1/log(n/m)."""
    L = math.log(env.n / env.m)
    return math.expm1(env.c_const * env._bracket * L * L) + 1.0 / L


def chi(env: Envelope, kappa: KappaSeq, x: float) -> float:
    """The chi_{m,n} aggregate controlling the far-regime covariance."""
    m, n = env.m, env.n
    dk = kappa(n) - kappa(m)
    if dk <= 0:
        raise ValueError(f"kappa_n - kappa_m = {dk} must be positive")
    r = (n - m) / dk
    L = math.log(n / m)
    return (
        r * L / math.sqrt(n - m)
        + r * g_envelope(env)
        + x * abs(r - 1.0 / x)
        + (m + 1) / dk
    )


def l2_cf_integral(dist: Pmf) -> float:
    """integral_{-pi n}^{pi n} |phi_{T_n/n}(u)|^2 du = 2 pi n sum_v P(T_n=v)^2.

    Exact by the Parseval identity for integer-supported laws, with the
    change of variables u = n t folding in the scaling by n.
    """
    if dist.m != 0:
        raise ValueError(f"expected a pmf of T_n = T_0^n, got m={dist.m}")
    return 2.0 * math.pi * dist.n * float(power_sum(dist))


def l2_cf_limit(table: RhoTable) -> float:
    """Limit target 2 pi e^{-2 gamma} integral rho^2 (Parseval for the density)."""
    return (
        2.0
        * math.pi
        * math.exp(-2.0 * table.gamma_const)
        * rho_sq_integral(table, table.x_max)
    )


def l2_cf_integral_quad(n: int, nodes_per_period: int = 64) -> float:
    """Direct Simpson quadrature of integral_{-pi n}^{pi n} |phi_{T_n/n}(u)|^2 du.

    Brute-force cross-check of the Parseval route, only sensible at small
    n: the integrand oscillates on the scale 2 pi / S with S ~ n^2/2, so
    the node count grows fast.
    """
    if not (1 <= n <= 16):
        raise ValueError(f"direct quadrature kept for n <= 16, got {n}")
    S = n * (n + 1) // 2
    half = math.pi * n
    # resolve the fastest oscillation e^{iuS/n} with nodes_per_period nodes
    n_steps = int(math.ceil(2 * half * (S / n) / (2 * math.pi) * nodes_per_period))
    n_steps += n_steps % 2  # Simpson needs an even count
    u = np.linspace(-half, half, n_steps + 1)
    vals = np.abs(phi_T(0, n, u / n)) ** 2
    h = (2 * half) / n_steps
    return float(h / 3.0 * (vals[0] + vals[-1] + 4 * vals[1:-1:2].sum() + 2 * vals[2:-1:2].sum()))


def invert_cf(dist: Pmf, v: int, n_steps: int = 4096) -> float:
    """(1/2pi) integral_{-pi}^{pi} e^{-itv} phi_{T_m^n}(t) dt by Simpson.

    Recovers the point probability P(T_m^n = v) from the characteristic
    function; a consistency check against the DP, not a production path.
    """
    n_steps += n_steps % 2
    t = np.linspace(-math.pi, math.pi, n_steps + 1)
    vals = np.exp(-1j * t * v) * phi_T(dist.m, dist.n, t)
    h = 2 * math.pi / n_steps
    integral = h / 3.0 * (vals[0] + vals[-1] + 4 * vals[1:-1:2].sum() + 2 * vals[2:-1:2].sum())
    return float(integral.real) / (2 * math.pi)
