import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from mhbesov import coeffs
from mhbesov.coeffs import (DIVERGENT, CoeffRequest, c_0q_closed, c_pq, c_pq_double_integral, c_pq_k,
                            c_pq_k_table, c_pq_quadrature, c_pq_series_noninteger, c_pq_table, c_pq_value,
                            diverges, normalized_c, series_extrapolated)

mpmath.mp.dps = 30


def mp_c_pq(n, p, q, s):
    """(s+1)_n / Gamma(n) * int t^{p+q+n-1} (1-t)^s S_pq(t)^2 dt with mpmath."""
    c = p + q + n
    norm = mpmath.rf(n, p) * mpmath.rf(n, q) / mpmath.rf(n, p + q)
    f = lambda t: t ** (c - 1) * (1 - t) ** s * (norm * mpmath.hyp2f1(p, q, c, t)) ** 2
    return float(mpmath.rf(s + 1, n) / mpmath.gamma(n) * mpmath.quad(f, [0, 0.5, 0.9, 0.99, 1]))


# -- closed form -----------------------------------------------------------------

def test_closed_form_values():
    assert c_0q_closed(2, 0, 0.3).value == pytest.approx(1.0, rel=1e-15)
    assert c_0q_closed(2, 1, 0).value == pytest.approx(2 / 3, rel=1e-15)
    expected = math.gamma(5) * math.gamma(1.5) / (math.gamma(4.5) * math.gamma(2))
    assert c_0q_closed(2, 3, -1.5).value == pytest.approx(expected, rel=1e-14)
    with pytest.raises(ValueError):
        c_0q_closed(2, 1, -3.0)


@given(st.integers(0, 200), st.floats(-0.99, 5))
def test_quadrature_matches_closed_form_for_pq0(q, s):
    assert c_pq_quadrature(2, 0, q, s).value == pytest.approx(c_0q_closed(2, q, s).value, rel=1e-10)


def test_quadrature_trivial_values():
    for s in (-0.5, 0.0, 3.0):
        assert c_pq_quadrature(3, 0, 0, s).value == pytest.approx(1.0, rel=1e-13)
    assert c_pq_quadrature(2, 0, 1, 0).value == pytest.approx(2 / 3, rel=1e-13)


# -- the two integral routes -----------------------------------------------------

@pytest.mark.parametrize("n,p,q,s", [(2, 1, 1, 0.0), (3, 2, 5, 0.5), (2, 7, 3, -0.5), (3, 1, 1, 2.5)])
def test_routes_agree(n, p, q, s):
    a = c_pq_quadrature(n, p, q, s).value
    b = c_pq_double_integral(n, p, q, s).value
    assert abs(a - b) <= 1e-8 * a


@pytest.mark.parametrize("n,p,q,s", [(2, 1, 1, 0.0), (2, 3, 2, -0.5), (3, 2, 2, 1.0)])
def test_quadrature_matches_mpmath(n, p, q, s):
    assert c_pq_quadrature(n, p, q, s).value == pytest.approx(mp_c_pq(n, p, q, s), rel=1e-10)


def test_continuation_regime_positive_and_matches_extrapolation():
    v = c_pq_double_integral(2, 1, 1, -1.5).value
    assert math.isfinite(v) and v > 0
    ext, err = series_extrapolated(2, 1, 1, -1.5)
    assert ext == pytest.approx(v, rel=1e-8)
    assert err < 1e-8


def test_continuation_n2_s_minus2_value():
    # at s = -2, n = 2 the double-integral route gives c_11 = 5
    assert c_pq_double_integral(2, 1, 1, -2.0).value == pytest.approx(5.0, rel=1e-10)


def test_series_noninteger_against_other_routes():
    assert math.isfinite(c_pq_series_noninteger(2.5, 1, 1, 0.0))
    ext, _ = series_extrapolated(2, 1, 1, 0.0)
    assert ext == pytest.approx(c_pq_quadrature(2, 1, 1, 0.0).value, rel=1e-6)
    # real n: the double-integral and quadrature routes remain valid
    v = c_pq_series_noninteger(1.5, 1, 1, 0.5)
    assert v == pytest.approx(c_pq_double_integral(1.5, 1, 1, 0.5).value, rel=1e-8)
    assert v == pytest.approx(c_pq_quadrature(1.5, 1, 1, 0.5).value, rel=1e-8)


def test_series_noninteger_rejects_integer_n():
    with pytest.raises(ValueError):
        c_pq_series_noninteger(2.0, 1, 1, 0.0)


# -- dispatcher --------------------------------------------------------------------

def test_dispatcher_routes():
    assert c_pq(CoeffRequest(2, 0, 5, -2.0)).route_used == "closed_p0"
    assert c_pq(CoeffRequest(2, 0, 5, -2.0)).value == pytest.approx(c_0q_closed(2, 5, -2.0).value)
    assert c_pq(CoeffRequest(2, 3, 4, 1.0)).route_used == "quadrature"
    assert c_pq(CoeffRequest(2, 3, 4, -2.0)).route_used == "double_integral"


def test_request_validation():
    with pytest.raises(ValueError):
        CoeffRequest(2, -1, 0, 0.0)
    with pytest.raises(ValueError):
        CoeffRequest(2, 1, 1, -3.0)
    with pytest.raises(ValueError):
        c_pq(CoeffRequest(2, 1, 1, -1.5, route="quadrature"))


@given(st.integers(0, 20), st.integers(0, 20), st.sampled_from([-1.5, -0.5, 0.0, 2.0]))
def test_symmetry(p, q, s):
    a = c_pq(CoeffRequest(2, p, q, s)).value
    b = c_pq(CoeffRequest(2, q, p, s)).value
    assert a == pytest.approx(b, rel=1e-12)


def test_normalized_c():
    assert normalized_c(3, 0, 0, 0.4) == pytest.approx(1.0, rel=1e-13)
    for q in range(0, 40, 7):
        v = normalized_c(2, 0, q, 0.0)
        assert v == pytest.approx(2 * (q + 1) / (q + 2), rel=1e-12)
        assert 1 <= v <= 2


# -- tables ---------------------------------------------------------------------------

def test_table_routes_agree_cellwise():
    qt = c_pq_table(2, [0.0, 1.0], 6, 5, route="quadrature")
    vt = c_pq_table(2, [0.0, 1.0], 6, 5, route="double_integral")
    assert set(qt) == set(vt)
    for key in qt:
        assert abs(qt[key].value - vt[key].value) <= 1e-8 * qt[key].value


def test_table_auto_matches_scalar_and_routes():
    t = c_pq_table(2, [-1.5, 0.5], 4, 4)
    for (p, q, s), res in t.items():
        if p * q == 0:
            assert res.route_used == "closed_p0"
        else:
            assert res.route_used == ("double_integral" if s < -1 else "quadrature")
        assert res.value == pytest.approx(c_pq(CoeffRequest(2, p, q, s)).value, rel=1e-9)
    assert t[(0, 0, 0.5)].value == pytest.approx(1.0)


def test_table_rejects_series_route():
    with pytest.raises(ValueError):
        c_pq_table(2, [0.0], 2, 2, route="series_noninteger")


def test_value_cache_is_symmetric():
    assert c_pq_value(3, 4, 2, 0.25) == c_pq_value(3, 2, 4, 0.25)


# -- c_pq,k -------------------------------------------------------------------------------

def test_c_pq_k_closed_cases():
    for k in range(1, 4):
        assert c_pq_k(2, 0, 0, k, 0.5) == 0.0
    n, p, k, s = 3, 4, 2, 0.5
    expected = p ** (2 * k) * math.gamma(n + p) / float(mpmath.rf(s + 1, n + p))
    assert c_pq_k(n, p, 0, k, s) == pytest.approx(expected, rel=1e-13)
    assert c_pq_k(n, 0, p, k, s) == pytest.approx(expected, rel=1e-13)


def test_c_pq_k_divergence_flag():
    assert c_pq_k(2, 1, 1, 3, 0.0) == DIVERGENT
    assert math.isfinite(c_pq_k(2, 1, 1, 2, 0.0))
    assert math.isfinite(c_pq_k(2, 2, 0, 3, 0.0))


def test_c_pq_k_matches_mpmath():
    """Oracle: with t = e^x, 2t d/dt = 2 d/dx, differentiated numerically by mpmath."""
    n, p, q, k, s = 2, 2, 1, 2, 0.0
    m = p + q
    norm = mpmath.rf(n, p) * mpmath.rf(n, q) / mpmath.rf(n, m)
    g = lambda x: norm * mpmath.exp(m * x / 2) * mpmath.hyp2f1(p, q, m + n, mpmath.exp(x))
    d = lambda t: 2 ** k * mpmath.diff(g, mpmath.log(t), k)
    expected = float(mpmath.quad(lambda t: t ** (n - 1) * (1 - t) ** s * d(t) ** 2, [0, 0.5, 1]))
    assert c_pq_k(n, p, q, k, s) == pytest.approx(expected, rel=1e-8)


@pytest.mark.parametrize("s", [-0.5, 0.0, 1.0])
def test_order_zero_is_bergman(s):
    n = 2
    const = float(mpmath.rf(s + 1, n)) / math.gamma(n)
    for p, q in [(0, 0), (1, 1), (3, 5), (8, 2)]:
        assert const * c_pq_k(n, p, q, 0, s) == pytest.approx(c_pq_value(n, p, q, s), rel=1e-9)


def test_k_table_matches_direct():
    tab = c_pq_k_table(2, 2, 0.0, 5, 5)
    for (p, q, k), v in tab.items():
        if (p, q) in [(1, 1), (5, 2), (4, 4)]:
            assert v == pytest.approx(coeffs._c_pq_k_direct(2, p, q, k, 0.0), rel=1e-9)
    with pytest.raises(ValueError):
        c_pq_k_table(2, 3, 0.0, 2, 2)


def test_diverges_helper():
    assert diverges(np.ones(10))
    assert not diverges(0.5 ** np.arange(10))
