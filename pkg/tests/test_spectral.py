import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dickmanlab import config
from dickmanlab.exact_dist import pmf, prob_at
from dickmanlab.spectral import (
    Envelope,
    chi,
    f_envelope,
    g_envelope,
    gamma_mn,
    gamma_series,
    invert_cf,
    l2_cf_integral,
    l2_cf_integral_quad,
    l2_cf_limit,
    phi_T,
    phi_Z,
    phi_dickman,
    phi_dickman_abs2,
)
from dickmanlab.exact_dist import KappaSeq


def test_phi_Z_basics():
    assert phi_Z(5, 0.0) == 1.0
    assert phi_Z(1, 0.7) == pytest.approx(cmath.exp(0.7j), abs=1e-15)
    with pytest.raises(ValueError):
        phi_Z(0, 1.0)


@given(k=st.integers(min_value=1, max_value=1000),
       t=st.floats(min_value=-50, max_value=50, allow_nan=False))
@settings(max_examples=80, deadline=None)
def test_phi_Z_modulus_bound(k, t):
    assert abs(phi_Z(k, t)) <= 1.0 + 1e-12


def test_phi_T_at_pi():
    # sum over pmf(0,2): (e^{i pi} + e^{3 i pi}) / 2 = -1
    val = phi_T(0, 2, math.pi)
    assert val.real == pytest.approx(-1.0, abs=1e-12)
    assert val.imag == pytest.approx(0.0, abs=1e-12)


def test_phi_T_matches_pmf_sum():
    d = pmf(0, 6)
    for t in (0.3, 1.7, -2.2):
        direct = sum(p * cmath.exp(1j * t * v) for v, p in enumerate(d.probs))
        assert abs(phi_T(0, 6, t) - direct) < 1e-12


def test_phi_dickman_values():
    assert phi_dickman(0.0) == 1.0 + 0.0j
    v = phi_dickman(1.0)
    assert abs(v) ** 2 == pytest.approx(phi_dickman_abs2(1.0), abs=1e-10)
    # high-node fixed Simpson oracle for the exponent at t=1
    u = np.linspace(0.0, 1.0, 1_000_001)
    re = np.where(u > 0, (np.cos(u) - 1.0) / np.where(u > 0, u, 1.0), 0.0)
    im = np.where(u > 0, np.sin(u) / np.where(u > 0, u, 1.0), 1.0)
    h = 1e-6
    def simpson(f):
        return h / 3 * (f[0] + f[-1] + 4 * f[1:-1:2].sum() + 2 * f[2:-1:2].sum())
    oracle = cmath.exp(complex(simpson(re), simpson(im)))
    assert abs(v - oracle) < 1e-10


def test_gamma_mn_zero_and_resummation():
    assert gamma_mn(2, 10, 0.0) == 0.0
    for u in (1.0, -0.4, 3.0):
        oracle = sum(
            cmath.exp(1j * u * k) * (1 - cmath.exp(1j * u * k)) / (k - 1 + cmath.exp(1j * u * k))
            for k in range(3, 11)
        ) / 8
        assert abs(gamma_mn(2, 10, u) - oracle) < 1e-14
    with pytest.raises(ValueError):
        gamma_mn(1, 10, 0.5)


def test_gamma_series_against_closed_form():
    assert gamma_series(2, 6, 0.0, 5) == 0.0
    assert abs(gamma_series(2, 6, 0.05, 12) - gamma_mn(2, 6, 0.05)) < 1e-8


def test_envelopes():
    env = Envelope(2, 10, 1.0)
    assert f_envelope(env, 0.0) == 0.0
    assert f_envelope(env, 1.0) > 0.0
    assert g_envelope(env) > 0.0
    tight = Envelope(9, 10, 1.0)
    assert g_envelope(tight) > 1.0 / math.log(10 / 9)  # 1/log term dominates
    with pytest.raises(ValueError):
        Envelope(1, 5)
    with pytest.raises(ValueError):
        Envelope(3, 3)
    with pytest.raises(ValueError):
        Envelope(2, 5, c_const=0.0)


def test_chi_exact_multiple_drops_middle_term():
    env = Envelope(5, 20, 1.0)
    k = KappaSeq(1, mode="exact-multiple")
    # with kappa_n = n the term x |(n-m)/(kappa_n-kappa_m) - 1/x| vanishes
    val = chi(env, k, 1.0)
    expect = math.log(4.0) / math.sqrt(15) + g_envelope(env) + 6 / 15
    assert val == pytest.approx(expect, abs=1e-12)
    with pytest.raises(ValueError):
        chi(env, KappaSeq(0.01), 0.01)


def test_l2_parseval_small_n():
    assert l2_cf_integral(pmf(0, 1)) == pytest.approx(2 * math.pi, abs=1e-12)
    assert l2_cf_integral(pmf(0, 2)) == pytest.approx(2 * math.pi, abs=1e-12)
    for n in (1, 2, 4, 6, 8):
        par = l2_cf_integral(pmf(0, n))
        quad = l2_cf_integral_quad(n)
        assert abs(par - quad) < 1e-6
    with pytest.raises(ValueError):
        l2_cf_integral(pmf(2, 5))
    with pytest.raises(ValueError):
        l2_cf_integral_quad(64)


def test_l2_limit_value(table):
    # 2 pi e^{-2 gamma} int rho^2; int rho^2 ~ 1.462858 puts this near 2.858
    assert l2_cf_limit(table) == pytest.approx(2.858, abs=2e-3)


def test_inversion_consistency():
    for n in (3, 6, 12):
        d = pmf(0, n)
        for v in (0, 1, n, len(d.probs) - 1):
            assert abs(invert_cf(d, v) - prob_at(d, v)) < 1e-8


def test_w1_envelope_audit_with_golden_constant():
    from dickmanlab.audits import w1_rows

    c = config.load_golden()["w1"]["constant"]
    for m, n in config.W1_PAIRS:
        for row in w1_rows(m, n, c_const=c * (1 + 1e-9)):
            if row.x != 0.0:
                assert row.lhs <= row.envelope + 1e-12
