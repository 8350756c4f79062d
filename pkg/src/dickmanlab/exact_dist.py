"""Exact law of the weighted Bernoulli sum T = sum_{k=m+1}^n k * Z_k.

Z_k are independent indicators with P(Z_k = 1) = 1/k.  The distribution
is built by dynamic-programming convolution over the full integer support
0..S, S = sum of the weights, so downstream power sums and Kolmogorov
distances are exact relative to the DP.  Default arithmetic is double
precision; an exact-rational mode (capped at n <= 64) exists purely as an
oracle.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .dickman import RhoTable, dickman_cdf

EXACT_MODE_CAP = 64


@dataclass(frozen=True)
class KappaSeq:
    """Integer target sequence kappa_n tracking a slope x: kappa_n / n -> x.

    The slope is pinned to a rational at construction so kappa_n is pure
    integer arithmetic, with no floating drift along a run.
    """

    x: Fraction
    mode: str = "floor"  # floor | round | exact-multiple

    def __init__(self, x, mode: str = "floor"):
        if isinstance(x, float):
            x = Fraction(str(x))
        else:
            x = Fraction(x)
        if x <= 0:
            raise ValueError(f"target slope must be positive, got {x}")
        if mode not in ("floor", "round", "exact-multiple"):
            raise ValueError(f"unknown kappa mode {mode!r}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "mode", mode)

    def __call__(self, n: int) -> int:
        p, q = self.x.numerator, self.x.denominator
        if self.mode == "floor":
            return (p * n) // q
        if self.mode == "round":
            return (2 * p * n + q) // (2 * q)
        if (p * n) % q != 0:
            raise ValueError(f"x*n is not an integer at n={n} for exact-multiple mode")
        return (p * n) // q

    def values(self, ns: Iterable[int]) -> np.ndarray:
        """Vectorized kappa over many indices (integer arithmetic throughout)."""
        ns = np.asarray(ns if isinstance(ns, np.ndarray) else list(ns), dtype=np.int64)
        p, q = self.x.numerator, self.x.denominator
        if self.mode == "floor":
            return (p * ns) // q
        if self.mode == "round":
            return (2 * p * ns + q) // (2 * q)
        if np.any((p * ns) % q != 0):
            raise ValueError("x*n is not an integer somewhere in exact-multiple mode")
        return (p * ns) // q

    @property
    def x_float(self) -> float:
        return float(self.x)


@dataclass(frozen=True)
class Pmf:
    """Probability mass function of T_m^n on its full support 0..S."""

    m: int
    n: int
    probs: np.ndarray | tuple
    mode: str  # "float" | "exact"

    @property
    def support_size(self) -> int:
        return len(self.probs)

    @property
    def span(self) -> int:
        return self.n - self.m

    def to_csv(self, fileobj) -> None:
        """Write (value, probability) rows for the nonzero atoms."""
        w = csv.writer(fileobj)
        w.writerow(["value", "probability"])
        for v, p in enumerate(self.probs):
            if p != 0:
                w.writerow([v, format(float(p), ".17g")])


def pmf(m: int, n: int, mode: str = "float") -> Pmf:
    """Exact law of T_m^n by DP convolution over k = m+1 .. n.

    Update per weight k:  new[v] = old[v]*(1 - 1/k) + old[v-k]*(1/k).
    """
    if not (0 <= m < n):
        raise ValueError(f"need 0 <= m < n, got m={m}, n={n}")
    if mode == "float":
        probs = np.array([1.0])
        for k in range(m + 1, n + 1):
            p = 1.0 / k
            new = np.empty(len(probs) + k)
            np.multiply(probs, 1.0 - p, out=new[: len(probs)])
            new[len(probs):] = 0.0
            new[k:] += probs * p
            probs = new
        return Pmf(m=m, n=n, probs=probs, mode="float")
    if mode == "exact":
        if n > EXACT_MODE_CAP:
            raise ValueError(f"exact mode capped at n <= {EXACT_MODE_CAP}, got n={n}")
        probs = [Fraction(1)]
        for k in range(m + 1, n + 1):
            p = Fraction(1, k)
            q = 1 - p
            new = [x * q for x in probs] + [Fraction(0)] * k
            for v, x in enumerate(probs):
                new[v + k] += x * p
            probs = new
        return Pmf(m=m, n=n, probs=tuple(probs), mode="exact")
    raise ValueError(f"unknown mode {mode!r}")


def prob_at(dist: Pmf, v: int) -> float:
    """P(T_m^n = v); zero off-support."""
    if 0 <= v < len(dist.probs):
        return float(dist.probs[v])
    return 0.0


def scaled_cdf(dist: Pmf, x: float) -> float:
    """P(T_m^n / (n - m) <= x)."""
    thr = x * dist.span
    idx = int(math.floor(thr + 1e-9))
    if idx < 0:
        return 0.0
    idx = min(idx, len(dist.probs) - 1)
    return float(np.sum(np.asarray(dist.probs, dtype=float)[: idx + 1]))


def kolmogorov_distance(dist: Pmf, table: RhoTable) -> float:
    """sup_x | P(T_m^n/(n-m) <= x) - D(x) |, taken over the atom jump points.

    The reference CDF is evaluated on both sides of each atom.  Scaled
    support points beyond the table endpoint are compared against D = 1,
    valid because the Dickman tail beyond x_max >= 15 is far below the
    distances measured here.
    """
    probs = np.asarray(dist.probs, dtype=float)
    atoms = np.nonzero(probs)[0]
    if table.x_max < min(15.0, atoms[-1] / dist.span):
        raise ValueError(
            f"table x_max={table.x_max} too short for scaled support "
            f"up to {atoms[-1] / dist.span:.3g}"
        )
    cdf_at = np.cumsum(probs)
    best = 0.0
    for v in atoms:
        s = v / dist.span
        d = dickman_cdf(table, s) if s <= table.x_max else 1.0
        right = abs(cdf_at[v] - d)
        left = abs((cdf_at[v] - probs[v]) - d)
        best = max(best, right, left)
    return best


def power_sum(dist: Pmf):
    """sum_v P(T_m^n = v)^2 (exact in rational mode)."""
    if dist.mode == "exact":
        return sum(p * p for p in dist.probs)
    probs = np.asarray(dist.probs, dtype=float)
    return float(np.dot(probs, probs))


def mean(dist: Pmf) -> float:
    probs = np.asarray(dist.probs, dtype=float)
    return float(np.dot(probs, np.arange(len(probs))))


def convolve(a: Pmf, b: Pmf) -> Pmf:
    """Law of the sum of the two independent blocks (a.n must equal b.m)."""
    if a.n != b.m:
        raise ValueError(f"blocks do not abut: a.n={a.n}, b.m={b.m}")
    probs = np.convolve(np.asarray(a.probs, float), np.asarray(b.probs, float))
    return Pmf(m=a.m, n=b.n, probs=probs, mode="float")


def point_prob_scan(kappa: KappaSeq, n_max: int) -> np.ndarray:
    """P(T_n = kappa_n) for n = 1..n_max in a single truncated DP sweep.

    DP entries at index v depend only on indices <= v, so capping the
    support at max(kappa_n) keeps every recorded probability exact while
    the sweep stays O(n_max * cap) instead of O(n_max^3).
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    targets = kappa.values(range(1, n_max + 1))
    cap = int(targets.max())
    probs = np.zeros(cap + 1)
    probs[0] = 1.0
    out = np.empty(n_max)
    for k in range(1, n_max + 1):
        p = 1.0 / k
        new = probs * (1.0 - p)
        if k <= cap:
            new[k:] += probs[: cap + 1 - k] * p
        probs = new
        t = targets[k - 1]
        out[k - 1] = probs[t] if t <= cap else 0.0
    return out


def power_sum_scan(n_list: Sequence[int]) -> dict[int, float]:
    """Power sums of pmf(0, n) at several n from one incremental DP."""
    n_list = sorted(set(int(n) for n in n_list))
    if n_list[0] < 1:
        raise ValueError("all n must be >= 1")
    probs = np.array([1.0])
    out: dict[int, float] = {}
    want = set(n_list)
    for k in range(1, n_list[-1] + 1):
        p = 1.0 / k
        new = np.empty(len(probs) + k)
        np.multiply(probs, 1.0 - p, out=new[: len(probs)])
        new[len(probs):] = 0.0
        new[k:] += probs * p
        probs = new
        if k in want:
            out[k] = float(np.dot(probs, probs))
    return out


def cov_Y(x_seq: KappaSeq, m: int, n: int) -> float:
    """Exact covariance of Y_m = m*1{T_m = kappa_m} and Y_n = n*1{T_n = kappa_n}.

    For m < n the independence of the blocks T_m and T_m^n gives the split

        Cov = { m P(T_m = kappa_m) } * { n P(T_m^n = kappa_n - kappa_m)
                                         - n P(T_n = kappa_n) }.
    """
    if not (2 <= m <= n):
        raise ValueError(f"need 2 <= m <= n, got m={m}, n={n}")
    km = x_seq(m)
    if m == n:
        p = prob_at(pmf(0, m), km)
        return m * m * (p - p * p)
    kn = x_seq(n)
    if kn - km < 0:
        raise ValueError(f"kappa_n - kappa_m = {kn - km} < 0 at m={m}, n={n}")
    pm = prob_at(pmf(0, m), km)
    p_inc = prob_at(pmf(m, n), kn - km)
    p_n = prob_at(pmf(0, n), kn)
    return (m * pm) * (n * p_inc - n * p_n)
