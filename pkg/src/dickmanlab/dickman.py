"""Dickman function, density and distribution on a dense uniform grid.

The Dickman function rho is the continuous solution of the delay
differential equation

    x * rho'(x) + rho(x - 1) = 0,   x > 1,       rho = 1 on [0, 1].

A table of rho values is built once, interval by interval, and all
evaluations (rho itself, the probability density exp(-gamma)*rho, the
distribution function D, and the integrals of rho and rho^2) interpolate
that table.  Built tables are immutable and safe to share across threads.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# Euler-Mascheroni constant, 30 significant digits (double rounds it).
EULER_GAMMA = 0.577215664901532860606512090082


class DickmanRangeError(ValueError):
    """Raised for queries outside the tabulated range.

    Out-of-table queries are errors, never extrapolations: a silently
    extrapolated rho would corrupt every bound audit downstream.
    """


def _cubic_weights(s: np.ndarray):
    """Lagrange cubic weights at fractional offset s from a 4-node stencil."""
    w0 = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0
    w1 = s * (s - 2.0) * (s - 3.0) / 2.0
    w2 = -s * (s - 1.0) * (s - 3.0) / 2.0
    w3 = s * (s - 1.0) * (s - 2.0) / 6.0
    return w0, w1, w2, w3


def _interp(vals: np.ndarray, nodes_per_unit: int, pos: np.ndarray) -> np.ndarray:
    """Cubic interpolation of node values at fractional node positions.

    Stencils are clipped so they never straddle an integer abscissa:
    rho loses smoothness there and a straddling stencil would cost
    several digits near the kinks at 1 and 2.
    """
    pos = np.asarray(pos, dtype=float)
    last = len(vals) - 1
    unit = np.floor(pos / nodes_per_unit).astype(np.int64)
    lo = np.floor(pos).astype(np.int64) - 1
    lo = np.maximum(lo, unit * nodes_per_unit)
    hi = np.minimum((unit + 1) * nodes_per_unit, last) - 3
    lo = np.minimum(lo, hi)
    lo = np.clip(lo, 0, last - 3)
    w0, w1, w2, w3 = _cubic_weights(pos - lo)
    return w0 * vals[lo] + w1 * vals[lo + 1] + w2 * vals[lo + 2] + w3 * vals[lo + 3]


@dataclass
class RhoTable:
    """Dense grid of Dickman rho values with cached cumulative integrals."""

    x_max: float
    step: float
    values: np.ndarray
    gamma_const: float = EULER_GAMMA
    _nodes_per_unit: int = field(default=0, repr=False)
    _cum_rho: np.ndarray | None = field(default=None, repr=False)
    _cum_rho_sq: np.ndarray | None = field(default=None, repr=False)

    def _check_range(self, x: float, what: str = "x") -> None:
        if not np.isfinite(x) or x < 0.0 or x > self.x_max * (1.0 + 1e-12):
            raise DickmanRangeError(
                f"{what}={x!r} outside tabulated range [0, {self.x_max}]"
            )

    def _midpoint_values(self) -> np.ndarray:
        """rho at step midpoints (j - 1/2)*step for j = 1..M."""
        M = len(self.values) - 1
        pos = np.arange(1, M + 1, dtype=float) - 0.5
        return _interp(self.values, self._nodes_per_unit, pos)

    def _cumulative(self, squared: bool) -> np.ndarray:
        cached = self._cum_rho_sq if squared else self._cum_rho
        if cached is not None:
            return cached
        h = self.step
        M = len(self.values) - 1
        g = self.values**2 if squared else self.values
        g_mid = self._midpoint_values()
        if squared:
            g_mid = g_mid**2
        incr = (h / 6.0) * (g[:-1] + 4.0 * g_mid + g[1:])
        cum = np.empty(M + 1)
        cum[0] = 0.0
        np.cumsum(incr, out=cum[1:])
        if squared:
            self._cum_rho_sq = cum
        else:
            self._cum_rho = cum
        return cum


def build_rho_table(x_max: float = 30.0, step: float = 1e-3) -> RhoTable:
    """Tabulate rho on [0, x_max] by marching the delay equation.

    On each unit interval (k, k+1] the defining relation

        rho(x) = rho(k) - integral_k^x rho(t-1)/t dt

    is advanced node by node with per-step Simpson; the integrand at step
    midpoints reads rho one unit back through cubic interpolation of
    already-built nodes.  Closed forms seed [0, 2]: rho = 1 on [0, 1] and
    rho = 1 - log(x) on (1, 2].
    """
    if not np.isfinite(step) or step <= 0.0:
        raise ValueError(f"step must be finite and positive, got {step!r}")
    if step > 1e-2:
        raise ValueError(f"step must be <= 1e-2, got {step!r}")
    if not np.isfinite(x_max) or x_max < 2.0:
        raise ValueError(f"x_max must be >= 2, got {x_max!r}")
    K = round(1.0 / step)
    if abs(K * step - 1.0) > 1e-9:
        raise ValueError(f"step must divide 1 (got {step!r})")
    h = 1.0 / K
    M = int(math.floor(x_max / h + 1e-9))
    x_max = M * h

    vals = np.empty(M + 1)
    top = min(K, M)
    vals[: top + 1] = 1.0
    if M > K:
        j = np.arange(K + 1, min(2 * K, M) + 1)
        vals[j] = 1.0 - np.log(j * h)

    # March in blocks short enough that every lagged value is final.
    j0 = 2 * K + 1
    block = K - 1
    while j0 <= M:
        j = np.arange(j0, min(j0 + block, M + 1))
        xj = j * h
        f_prev = vals[j - 1 - K] / (xj - h)
        f_cur = vals[j - K] / xj
        rho_mid = _interp(vals, K, j - K - 0.5)
        f_mid = rho_mid / (xj - 0.5 * h)
        incr = (h / 6.0) * (f_prev + 4.0 * f_mid + f_cur)
        vals[j] = vals[j0 - 1] - np.cumsum(incr)
        j0 = j[-1] + 1

    table = RhoTable(x_max=x_max, step=h, values=vals)
    table._nodes_per_unit = K
    return table


def rho(table: RhoTable, x: float) -> float:
    """Dickman rho(x), interpolated from the table; exactly 1 for x <= 1."""
    table._check_range(x)
    if x <= 1.0:
        return 1.0
    if x <= 2.0:
        return 1.0 - math.log(x)
    K = table._nodes_per_unit
    pos = x / table.step
    j = round(pos)
    if abs(pos - j) < 1e-9 * max(1.0, pos):
        return float(table.values[min(j, len(table.values) - 1)])
    return float(_interp(table.values, K, np.array([pos]))[0])


def dickman_density(table: RhoTable, x: float) -> float:
    """Dickman probability density exp(-gamma) * rho(x)."""
    return math.exp(-table.gamma_const) * rho(table, x)


def dickman_cdf(table: RhoTable, x: float) -> float:
    """Dickman distribution function D(x) = exp(-gamma) * integral_0^x rho."""
    table._check_range(x)
    return math.exp(-table.gamma_const) * rho_integral(table, x) if x > 0.0 else 0.0


def rho_integral(table: RhoTable, upto: float) -> float:
    """integral_0^upto rho(t) dt by cumulative Simpson on the table."""
    table._check_range(upto, "upto")
    if upto <= 0.0:
        raise DickmanRangeError(f"upto must be positive, got {upto!r}")
    return _eval_cumulative(table, upto, squared=False)


def rho_sq_integral(table: RhoTable, upto: float) -> float:
    """integral_0^upto rho(t)^2 dt by cumulative Simpson on the table."""
    table._check_range(upto, "upto")
    if upto <= 0.0:
        raise DickmanRangeError(f"upto must be positive, got {upto!r}")
    return _eval_cumulative(table, upto, squared=True)


def _eval_cumulative(table: RhoTable, x: float, squared: bool) -> float:
    cum = table._cumulative(squared)
    pos = x / table.step
    j = round(pos)
    if abs(pos - j) < 1e-9 * max(1.0, pos):
        return float(cum[min(j, len(cum) - 1)])
    return float(_interp(cum, table._nodes_per_unit, np.array([pos]))[0])
