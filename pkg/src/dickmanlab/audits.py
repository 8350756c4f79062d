"""Numerical audits of the limit theorems and quantitative bounds.

Every left-hand side here comes from the exact DP distributions, never
from simulation.  Each audit reports AuditRow records (identifiers, lhs,
envelope, ratio); the calibration entry points compute the smallest
multiplicative constant making each bound hold on the versioned grids in
config, for storage in the golden file.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import config
from .dickman import RhoTable, dickman_density
from .exact_dist import (
    KappaSeq,
    Pmf,
    cov_Y,
    kolmogorov_distance,
    pmf,
    point_prob_scan,
    power_sum_scan,
    prob_at,
)
from .spectral import Envelope, chi, g_envelope, gamma_mn, l2_cf_limit, phi_T, phi_dickman


@dataclass(frozen=True)
class AuditRow:
    """One audited grid cell: identifiers, measured lhs, envelope, ratio."""

    label: str
    m: int
    n: int
    x: float
    kappa_m: int
    kappa_n: int
    lhs: float
    envelope: float
    ratio: float = field(default=float("nan"))

    def __post_init__(self):
        if math.isnan(self.ratio):
            r = self.lhs / self.envelope if self.envelope > 0 else float("inf")
            object.__setattr__(self, "ratio", r)

    FIELDS = ("label", "m", "n", "x", "kappa_m", "kappa_n", "lhs", "envelope", "ratio")

    def astuple(self):
        return (self.label, self.m, self.n, self.x, self.kappa_m, self.kappa_n,
                self.lhs, self.envelope, self.ratio)


@lru_cache(maxsize=64)
def _pmf_cached(m: int, n: int) -> Pmf:
    return pmf(m, n)


def llt_table(kappa: KappaSeq, n_list, table: RhoTable) -> list[AuditRow]:
    """Point-probability convergence: lhs = n P(T_n = kappa_n), target e^-g rho(x).

    One truncated DP sweep covers every requested n.
    """
    n_list = sorted(set(int(n) for n in n_list))
    probs = point_prob_scan(kappa, n_list[-1])
    x = kappa.x_float
    target = dickman_density(table, x)
    rows = []
    for n in n_list:
        lhs = n * probs[n - 1]
        rows.append(AuditRow("llt", 0, n, x, 0, kappa(n), lhs, target))
    return rows


def stimabase_check(m: int, n: int, kappa: KappaSeq) -> AuditRow:
    """Point probability against a window mass, envelope (1+log(n/m))/sqrt(n-m).

    lhs = | d P(T_m^n = d) - P(d - n < T_m^n <= d - (m+1)) |  with
    d = kappa_n - kappa_m.
    """
    if not (2 <= m < n):
        raise ValueError(f"need 2 <= m < n, got m={m}, n={n}")
    km, kn = kappa(m), kappa(n)
    d = kn - km
    if d <= 0:
        raise ValueError(f"degenerate target: kappa_n - kappa_m = {d}")
    dist = _pmf_cached(m, n)
    probs = np.asarray(dist.probs, dtype=float)
    lo = max(d - n + 1, 0)  # first value strictly above d - n
    hi = min(d - (m + 1), len(probs) - 1)
    window = float(probs[lo : hi + 1].sum()) if hi >= lo else 0.0
    lhs = abs(d * prob_at(dist, d) - window)
    env = (1.0 + math.log(n / m)) / math.sqrt(n - m)
    return AuditRow("stimabase", m, n, kappa.x_float, km, kn, lhs, env)


def w1_rows(m: int, n: int, c_const: float = 1.0) -> list[AuditRow]:
    """Characteristic-function distance |phi_{T/(n-m)}(t) - phi(t)| vs f envelope."""
    env = Envelope(m, n, c_const)
    ts = np.linspace(-config.W1_T_SPAN, config.W1_T_SPAN, config.W1_T_POINTS)
    vals = phi_T(m, n, ts / (n - m))
    rows = []
    for t, v in zip(ts, vals):
        lhs = abs(v - phi_dickman(float(t)))
        f_env = math.expm1(c_const * t * t * env._bracket)
        rows.append(AuditRow("w1", m, n, float(t), 0, 0, lhs, f_env))
    return rows


def w2_check(m: int, n: int, table: RhoTable, c_const: float = 1.0) -> AuditRow:
    """Kolmogorov distance of T_m^n/(n-m) to the Dickman CDF vs g envelope."""
    env = Envelope(m, n, c_const)
    lhs = kolmogorov_distance(_pmf_cached(m, n), table)
    return AuditRow("w2", m, n, float("nan"), 0, 0, lhs, g_envelope(env))


def zs_check(n: int, table: RhoTable, power: float | None = None) -> AuditRow:
    """L2 characteristic-function integral 2 pi n sum P^2 against its limit."""
    if power is None:
        power = power_sum_scan([n])[n]
    lhs = 2.0 * math.pi * n * power
    return AuditRow("zs", 0, n, float("nan"), 0, 0, lhs, l2_cf_limit(table))


def sigma_band(x: float, eps: float) -> float:
    """Band edge sigma = (1 + x(1-eps)) / (x(1+eps))."""
    if not (0 < eps < 1.0 / (2.0 * x)):
        raise ValueError(f"need 0 < eps < 1/(2x), got eps={eps}, x={x}")
    return (1.0 + x * (1.0 - eps)) / (x * (1.0 + eps))


def lemmino_check(x: float, eps: float, m: int, n: int, kappa: KappaSeq | None = None) -> bool:
    """True iff P(T_m^n = kappa_n - kappa_m) is exactly zero.

    Inside the band m < n < sigma*m the increment target lands in the
    support gap [1, m], so the probability vanishes identically.
    """
    if kappa is None:
        kappa = KappaSeq(x)
    sigma = sigma_band(x, eps)
    if not (m < n < sigma * m):
        raise ValueError(f"(m={m}, n={n}) outside the band m < n < {sigma * m:.6g}")
    for j in (m, n):
        if abs(kappa(j) / j - x) >= eps * x:
            raise ValueError(f"kappa_{j}/{j} strays from x={x} by >= eps*x")
    d = kappa(n) - kappa(m)
    if d < 0:
        raise ValueError(f"kappa_n - kappa_m = {d} < 0")
    return prob_at(_pmf_cached(m, n), d) == 0.0


def cov_near_pairs(x: float, eps: float) -> list[tuple[int, int]]:
    """Near-diagonal (m, n) pairs with m < n <= sigma*m on the configured m grid."""
    sigma = sigma_band(x, eps)
    pairs = []
    for m in config.COV_M:
        n = math.floor(sigma * m)
        if n > m:
            pairs.append((m, n))
    return pairs


def covariance_audit(kappa: KappaSeq, pairs, c_const: float = 1.0,
                     regime: str = "far") -> list[AuditRow]:
    """Exact |Cov(Y_m, Y_n)| against the regime-appropriate bound.

    Regimes: "diag" (envelope C*m), "near" (envelope C), "far" (envelope
    C times the chi-assembled aggregate, with the inner g evaluated at
    constant 1).
    """
    if regime not in ("diag", "near", "far"):
        raise ValueError(f"unknown regime {regime!r}")
    x = kappa.x_float
    rows = []
    for m, n in pairs:
        c = abs(cov_Y(kappa, m, n))
        if regime == "diag":
            env = c_const * m
        elif regime == "near":
            env = c_const
        else:
            agg = (
                n / (n - m) * chi(Envelope(m, n, 1.0), kappa, x)
                + m / (n - m)
                + chi(Envelope(2, n, 1.0), kappa, x)
                + 1.0 / n
            )
            env = c_const * agg
        rows.append(AuditRow(f"cov-{regime}", m, n, x, kappa(m), kappa(n), c, env))
    return rows


def gamma_kernel_sup(m: int, n: int, u_points: int = 10001) -> float:
    """sup over a u grid of |gamma_{m,n}(u)| (n-m)/(1 + log(n/m))."""
    us = np.linspace(0.0, math.pi, u_points)  # |gamma(-u)| = |gamma(u)|
    ks = np.arange(m + 1, n + 1, dtype=float)
    e = np.exp(1j * np.outer(us, ks))
    terms = e * (1.0 - e) / (ks - 1.0 + e)
    sup = float(np.abs(terms.sum(axis=1)).max() / (n - m))
    return sup * (n - m) / (1.0 + math.log(n / m))


def run_calibration(table: RhoTable) -> dict[str, float]:
    """Smallest constants making every audited bound hold on the grids.

    Envelope constants sit inside an exp, so they are solved pointwise
    (the envelopes are increasing in C); purely multiplicative constants
    are plain ratio maxima.
    """
    out: dict[str, float] = {}

    kappa1 = KappaSeq(1, mode="exact-multiple")

    # point-estimate shape constant: max of lhs / envelope
    out["stimabase"] = max(
        stimabase_check(m, n, kappa1).ratio for m, n in config.stimabase_pairs()
    )

    # cf-distance envelope: need expm1(C t^2 B) >= lhs, so C >= log1p(lhs)/(t^2 B)
    need = 0.0
    for m, n in config.W1_PAIRS:
        for row in w1_rows(m, n):
            t, lhs = row.x, row.lhs
            if t != 0.0:
                need = max(need, math.log1p(lhs) / (t * t * Envelope(m, n)._bracket))
    out["w1"] = need

    # Kolmogorov envelope: g = expm1(C B L^2) + 1/L, only binds past 1/L
    need = 0.0
    for m, n in config.W2_PAIRS:
        lhs = w2_check(m, n, table).lhs
        L = math.log(n / m)
        excess = lhs - 1.0 / L
        if excess > 0.0:
            need = max(need, math.log1p(excess) / (Envelope(m, n)._bracket * L * L))
    out["w2"] = need

    # error-kernel shape constant
    out["gamma_kernel"] = max(
        gamma_kernel_sup(m, n) for m, n in config.stimabase_pairs()
    )

    # covariance regimes across the configured slopes
    diag = near = far = 0.0
    for x in config.COV_X:
        kx = KappaSeq(x, mode="exact-multiple" if float(x).is_integer() else "floor")
        diag = max(diag, *(r.ratio for r in covariance_audit(
            kx, config.cov_diag_pairs(), regime="diag")))
        np_pairs = cov_near_pairs(x, config.COV_EPS)
        if np_pairs:
            near = max(near, *(r.ratio for r in covariance_audit(
                kx, np_pairs, regime="near")))
        far = max(far, *(r.ratio for r in covariance_audit(
            kx, config.cov_far_pairs(), regime="far")))
    out["cov_diag"], out["cov_near"], out["cov_far"] = diag, near, far
    return out


def check_golden(computed: dict[str, float], golden: dict, rel_tol: float = 1e-9) -> list[str]:
    """Regressions of computed constants against the golden record.

    Returns human-readable problem strings; empty means clean.
    """
    problems = []
    want_hash = config.grid_hash()
    for name, value in sorted(computed.items()):
        entry = golden.get(name)
        if entry is None:
            problems.append(f"{name}: missing from golden file")
            continue
        if entry.get("grid_hash") != want_hash:
            problems.append(f"{name}: grid hash mismatch (grids changed?)")
            continue
        stored = entry["constant"]
        if value > stored * (1.0 + rel_tol) + 1e-15:
            problems.append(f"{name}: constant grew {stored:.6g} -> {value:.6g}")
    return problems
