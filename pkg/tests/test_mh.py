import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mhbesov import harmonic as ha
from mhbesov import mh
from mhbesov.coeffs import DIVERGENT, c_0q_closed, c_pq_k, c_pq_value
from mhbesov.harmonic import BigradedPolynomial as BP
from mhbesov.mh import MhComponent, MhFunction
from mhbesov.radial import RadialProfile, s_pq

Z1ZB2 = BP.monomial(2, (1, 0), (0, 1))


def single(p, q, h, n=2):
    return MhFunction(n, (MhComponent(p, q, h),))


def const(c, n=2):
    return single(0, 0, BP.constant(n, c), n)


F11 = single(1, 1, Z1ZB2)


# -- construction --------------------------------------------------------------------

def test_validation():
    with pytest.raises(ValueError, match="not harmonic"):
        single(1, 1, BP.monomial(2, (1, 0), (1, 0)))
    with pytest.raises(ValueError, match="bidegree"):
        single(2, 1, Z1ZB2)
    with pytest.raises(ValueError, match="duplicate"):
        MhFunction(2, (MhComponent(1, 1, Z1ZB2), MhComponent(1, 1, Z1ZB2)))


def test_float_coefficients_accepted_when_harmonic():
    h = Z1ZB2.to_float() * 0.1
    assert single(1, 1, h).components[0].h == h


# -- evaluation and truncation ---------------------------------------------------------

def test_evaluate_examples():
    z = np.array([0.5, 0.3])
    assert mh.evaluate(const(3), z) == 3
    assert mh.evaluate(single(3, 0, BP.monomial(2, (3, 0), (0, 0))), z) == pytest.approx(0.125)
    expected = s_pq(RadialProfile(2, 1, 1), 0.34) * 0.5 * 0.3
    assert mh.evaluate(F11, z) == pytest.approx(expected, rel=1e-14)


def test_truncation_examples():
    assert mh.truncate_to_polynomial(F11, 0) == Z1ZB2.to_float() * (2 / 3)
    h = BP.monomial(2, (2, 0), (0, 0))
    assert mh.truncate_to_polynomial(single(2, 0, h), 25) == h.to_float()


def test_truncation_tail_bound_is_an_upper_bound():
    f = mh.random_mh_function(2, 3, 3, seed=4)
    pts = mh.sphere_points(2, 50, 0.6, seed=2)
    for K in (2, 6, 12):
        diff = np.abs(mh.evaluate(f, pts) - mh.truncate_to_polynomial(f, K)(pts)).max()
        assert diff <= mh.truncation_tail_bound(f, K, 0.6) * (1 + 1e-12) + 1e-15


def test_mharmonicity_residual():
    pts = mh.sphere_points(2, 32, 0.7, seed=0)
    assert mh.mharmonicity_residual(single(2, 0, BP.monomial(2, (2, 0), (0, 0))), 1, pts) == 0.0
    assert mh.mharmonicity_residual(F11, 30, pts) <= 1e-6
    assert mh.mharmonicity_residual(F11, 10, pts) > mh.mharmonicity_residual(F11, 20, pts)


# -- smoothing ------------------------------------------------------------------------------

def test_box_power():
    assert mh.apply_box_power(F11, 0) == F11
    g = mh.apply_box_power(F11, 1)
    assert g.eigen_scale(1, 1) == 9
    assert mh.apply_box_power(mh.apply_box_power(F11, 0.5), 0.5).tau == g.tau


@given(st.floats(-2, 2), st.floats(-2, 2))
def test_box_power_semigroup(t1, t2):
    f = mh.random_mh_function(2, 3, 3, seed=1)
    a = mh.apply_box_power(mh.apply_box_power(f, t1), t2)
    b = mh.apply_box_power(f, t1 + t2)
    for c in f.components:
        assert a.eigen_scale(c.p, c.q) == pytest.approx(b.eigen_scale(c.p, c.q), rel=1e-12)


# -- norms ---------------------------------------------------------------------------------

@pytest.mark.parametrize("s", [-1.5, 0.0, 2.0])
def test_constant_function_norms(s):
    f = const(3)
    assert mh.norm_bergman(f, s) == pytest.approx(9)
    assert mh.norm_box_smoothed(f, s, 2.0) == pytest.approx(9)
    assert mh.norm_hardy_smoothed(f, s) == pytest.approx(9)
    assert mh.norm_tangential(f, s, 1) == pytest.approx(9)


def test_single_component_norms():
    assert mh.norm_bergman(F11, 0) == pytest.approx(c_pq_value(2, 1, 1, 0) / 6, rel=1e-13)
    assert mh.norm_box_smoothed(F11, 0, 2) == pytest.approx(81 * c_pq_value(2, 1, 1, 2) / 6, rel=1e-13)
    assert mh.norm_box_smoothed(F11, 0.3, 0) == pytest.approx(mh.norm_bergman(F11, 0.3))
    assert mh.norm_hardy_smoothed(F11, 0.5) == pytest.approx(9.0 ** -1.5 / 6, rel=1e-14)


def test_tangential_m0_is_bergman_plus_origin():
    f = mh.random_mh_function(2, 3, 4, seed=3)
    comps_nonconst = [c for c in f.components if c.p + c.q > 0]
    rest = MhFunction(2, tuple(comps_nonconst))
    expected = abs(f.value_at_origin()) ** 2 + mh.norm_bergman(rest, 0.0)
    assert mh.norm_tangential(f, 0.0, 0) == pytest.approx(expected, rel=1e-13)


def test_tangential_weight_path_sum():
    for n, p, q in [(2, 1, 1), (3, 2, 0), (2, 3, 2)]:
        assert mh.tangential_weight(n, p, q, 1) == ha.box_eigenvalue(n, p, q)
    assert mh.tangential_weight(2, 1, 1, 2) == 32
    assert ha.box_eigenvalue(2, 1, 1) ** 2 == 64


def test_tangential_weight_matches_field_products():
    # exact second-order sum over all field pairs on the sphere
    for n, h in [(2, Z1ZB2), (2, BP.monomial(2, (2, 0), (0, 1))), (3, BP.monomial(3, (1, 1, 0), (0, 0, 1)))]:
        p, q = h.bidegree
        fields = [f for f in ha.tangential_fields(n) if not f.is_zero]
        total = sum(ha.sphere_inner_product(g(f(h)), g(f(h))) for f in fields for g in fields)
        assert total == mh.tangential_weight(n, p, q, 2) * ha.sphere_inner_product(h, h)


def test_tangential_symbolic_single_component():
    # truncation converges algebraically in K; the 3K/4 change bounds the error
    spec = mh.norm_tangential(F11, 1.0, 1)
    errors = []
    for K in (20, 40):
        val, est = mh.tangential_symbolic(F11, 1.0, 1, K=K)
        assert abs(val - spec) <= est
        errors.append(abs(val - spec) / spec)
    assert errors[1] < 1e-5
    assert errors[1] < errors[0] / 8


def test_hardy_dilates_increase_to_closed_form():
    f = mh.random_mh_function(2, 3, 4, seed=7)
    radii = 1 - 0.5 ** np.arange(1, 21)
    vals = mh.hardy_dilate_norms(f, 0.0, radii)
    assert np.all(np.diff(vals) >= 0)
    closed = mh.norm_hardy_smoothed(f, 0.0)
    assert vals[-1] <= closed * (1 + 1e-13)
    assert vals[-1] == pytest.approx(closed, rel=1e-4)


def test_sobolev_norm():
    s = 0.5
    # order 0 is the Bergman quantity up to the normalising constant
    const_ = math.gamma(s + 1 + 2) / (math.gamma(s + 1) * math.gamma(2))
    assert mh.norm_sobolev(F11, s, 0) * const_ == pytest.approx(mh.norm_bergman(F11, s), rel=1e-9)
    # pluriharmonic: c_{p0,k} closed form with eigenvalue weights
    h = BP.monomial(2, (2, 0), (0, 0))
    f = single(2, 0, h)
    lam = ha.sphere_laplace_eigenvalue(2, 2, 0)
    expected = sum(lam ** (l - k) * c_pq_k(2, 2, 0, k, s) for l in range(3) for k in range(l + 1))
    assert mh.norm_sobolev(f, s, 2) == pytest.approx(expected * ha.sphere_norm_squared(h), rel=1e-12)
    assert math.isfinite(mh.norm_sobolev(f, s, 3, force=True))
    assert mh.norm_sobolev(F11, 0.0, 3, force=True) == DIVERGENT
    with pytest.raises(ValueError):
        mh.norm_sobolev(F11, 0.0, 3)


def test_norm_report():
    rep = mh.norm_report(const(2), 0.0)
    assert all(v == pytest.approx(1.0) for v in rep.ratios.values())
    rep = mh.norm_report(F11, 0.0, m=1, t=1.0)
    w = 1 / 6
    assert rep.bergman_s == pytest.approx(c_pq_value(2, 1, 1, 0) * w)
    assert rep.tangential_m == pytest.approx(8 * c_pq_value(2, 1, 1, 1) * w)
    assert rep.box_smoothed_t == pytest.approx(9 * c_pq_value(2, 1, 1, 1) * w)
    assert rep.hardy_smoothed == pytest.approx(w / 9)
    assert rep.ratios["tangential_m/box_smoothed_t"] == pytest.approx(8 / 9)
    assert set(rep.as_dict()) >= {"bergman_s", "ratios", "sobolev_m"}


# -- Moebius maps and mean value ---------------------------------------------------------

@given(st.lists(st.floats(-0.5, 0.5), min_size=4, max_size=4), st.lists(st.floats(-0.6, 0.6), min_size=4, max_size=4))
def test_moebius_properties(zc, wc):
    z = np.array([zc[0] + 1j * zc[1], zc[2] + 1j * zc[3]])
    w = np.array([wc[0] + 1j * wc[1], wc[2] + 1j * wc[3]])
    if np.linalg.norm(w) >= 0.99:
        w = w * 0.5
    assert np.allclose(mh.moebius(z, np.zeros(2)), z, atol=1e-15)
    assert np.allclose(mh.moebius(z, z), 0, atol=1e-13)
    assert np.allclose(mh.moebius(z, mh.moebius(z, w)), w, atol=1e-12)
    assert np.linalg.norm(mh.moebius(z, w)) < 1 + 1e-12


def test_moebius_origin():
    w = np.array([0.2, -0.1j])
    assert np.allclose(mh.moebius(np.zeros(2), w), -w)


def test_mean_value_examples():
    res, se = mh.mean_value_residual(const(2.5), np.array([0.3, 0.2]), 0.5, 1000, seed=0)
    assert res == pytest.approx(0.0, abs=1e-12) and se == pytest.approx(0.0, abs=1e-12)
    res, se = mh.mean_value_residual(F11, np.array([0.4, 0.1]), 0.5, 10 ** 6, seed=0)
    assert res <= 4 * se


def test_mean_value_at_origin_reads_constant():
    f = MhFunction(2, (MhComponent(0, 0, BP.constant(2, 2)), MhComponent(1, 1, Z1ZB2)))
    res, se = mh.mean_value_residual(f, np.zeros(2), 0.6, 10 ** 5, seed=1)
    assert res <= 4 * se
    assert mh.evaluate(f, np.zeros(2)) == 2


# -- blow-up --------------------------------------------------------------------------------

def test_blowup_constants():
    assert mh.blowup_constant(2, 1, 1) == pytest.approx(24)
    assert mh.blowup_constant(2, 1, 2) == pytest.approx(96)


def test_blowup_profile_approaches_constant():
    r = 1 - np.logspace(-1, -4, 7)
    prof = mh.blowup_profile(2, 1, 1, r)
    scaled = [v * (1 - rr) for rr, v in prof]
    assert abs(scaled[-1] / 24 - 1) < 0.05
    gaps = [abs(x / 24 - 1) for x in scaled]
    assert all(a > b for a, b in zip(gaps[2:], gaps[3:]))
    with pytest.raises(ValueError):
        mh.blowup_profile(2, 1, 1, [1 - 1e-8])


def test_random_mh_function_deterministic():
    a = mh.random_mh_function(3, 5, 4, seed=11)
    b = mh.random_mh_function(3, 5, 4, seed=11)
    assert a == b
    assert len(a.components) == 4
