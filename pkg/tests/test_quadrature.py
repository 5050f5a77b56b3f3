import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.special import beta as beta_fn

from mhbesov.quadrature import (build_rule, composite_legendre, default_levels, integrate, integrate_2d,
                                integrate_graded)


def test_midpoint_rule():
    r = build_rule(1, 0.0, 0.0)
    assert r.nodes[0] == pytest.approx(0.5, abs=1e-15)
    assert r.weights[0] == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("alpha,beta", [(0, 0), (-0.5, 1), (2.5, 0), (-0.9, -0.7), (3, 64)])
def test_mass_is_beta_function(alpha, beta):
    r = build_rule(32, alpha, beta)
    assert r.weights.sum() == pytest.approx(beta_fn(beta + 1, alpha + 1), rel=1e-13)
    assert np.all(r.weights > 0)
    assert np.all((r.nodes > 0) & (r.nodes < 1))
    assert np.allclose(r.gaps, 1 - r.nodes, rtol=0, atol=1e-15)


def test_integrate_constants():
    assert integrate(lambda t: np.ones_like(t), 0, 0)[0] == pytest.approx(1.0, rel=1e-15)
    n, s = 3, 0.7
    assert integrate(lambda t: np.ones_like(t), s, n - 1)[0] == pytest.approx(beta_fn(n, s + 1), rel=1e-14)


@given(st.floats(-0.95, 4.0), st.floats(-0.95, 4.0), st.integers(0, 31),
       st.lists(st.floats(-3, 3), min_size=1, max_size=5))
def test_exact_on_polynomials(alpha, beta, degree, coeffs):
    """An order-16 rule integrates t^d * poly exactly for d + deg <= 31."""
    deg = min(degree, 31 - (len(coeffs) - 1))
    r = build_rule(16, alpha, beta)
    # exact moments int t^{beta+j} (1-t)^alpha = B(beta+j+1, alpha+1)
    exact = sum(c * beta_fn(beta + deg + j + 1, alpha + 1) for j, c in enumerate(coeffs))
    got = r.apply(r.nodes ** deg * np.polyval(coeffs[::-1], r.nodes))
    scale = sum(abs(c) * beta_fn(beta + deg + j + 1, alpha + 1) for j, c in enumerate(coeffs))
    assert abs(got - exact) <= 1e-12 * scale


def test_2d_constants_and_beta_products():
    assert integrate_2d(lambda x, y: np.ones(np.broadcast(x, y).shape), (0, 0), (0, 0))[0] == pytest.approx(1.0)
    n, s, p, q = 2, 0.0, 3, 5
    got = integrate_2d(lambda x, y: np.ones(np.broadcast(x, y).shape), (n + s, p - 1), (n + s, q - 1))[0]
    assert got == pytest.approx(beta_fn(p, n + s + 1) * beta_fn(q, n + s + 1), rel=1e-13)


def test_2d_equals_iterated_on_separable():
    fx = lambda x: np.exp(-x) * np.cos(3 * x)
    fy = lambda y: 1.0 / (1.0 + y * y)
    both = integrate_2d(lambda x, y: fx(x) * fy(y), (0.5, 1.0), (-0.3, 2.0))[0]
    prod = integrate(fx, 0.5, 1.0)[0] * integrate(fy, -0.3, 2.0)[0]
    assert both == pytest.approx(prod, rel=1e-12)


def test_err_est_shrinks_with_tolerance():
    f = lambda t: np.exp(np.sin(7 * t))
    _, e1 = integrate(f, 0.2, 0.1, rel_tol=1e-6)
    _, e2 = integrate(f, 0.2, 0.1, rel_tol=5e-7)
    assert e2 <= 2 * e1


def test_graded_rule_handles_log_singularity():
    # int_0^1 t^2 log(1-t) dt = -11/18 ; smooth weight, log singular integrand
    val, _ = integrate_graded(lambda t, u: np.log(u), 0.0, 2.0, rel_tol=1e-12)
    assert val == pytest.approx(-11.0 / 18.0, rel=1e-11)


def test_graded_rule_with_singular_weight():
    # int t (1-t)^{-1/2} (1-t) log(1-t) dt against weight (1-t)^{-1/2}
    import mpmath
    expected = float(mpmath.quad(lambda t: t * (1 - t) ** 0.5 * mpmath.log(1 - t), [0, 1]))
    val, _ = integrate_graded(lambda t, u: u * np.log(u), -0.5, 1.0, rel_tol=1e-12)
    assert val == pytest.approx(expected, rel=1e-10)


def test_composite_legendre_integrates_polynomials():
    t, u, w = composite_legendre(16, default_levels(0.0))
    assert w.sum() == pytest.approx(1.0, rel=1e-14)
    assert float(np.dot(w, t ** 5)) == pytest.approx(1 / 6, rel=1e-14)
    assert not w.flags.writeable


def test_bad_exponents_rejected():
    with pytest.raises(ValueError):
        build_rule(8, -1.0, 0.0)
