"""Radial hypergeometric profiles of solid M-harmonic functions.

S_pq(t) = (n)_p (n)_q / (n)_{p+q} * 2F1(p, q; p+q+n; t), normalised so that
S_pq(1) = 1.  The functions here also cover the radial factor r^{p+q} S_pq(r^2),
its (2t d/dt)^k derivatives and the auxiliary integrals I_pqs(n, k).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import comb, gammaln, poch

from . import quadrature
from .specfun import ConvergenceError, HypParams, gauss_2f1_complement


@dataclass(frozen=True)
class RadialProfile:
    n: float
    p: int
    q: int

    def __post_init__(self):
        if self.n <= 0:
            raise ValueError(f"n must be positive, got {self.n}")
        if self.p < 0 or self.q < 0:
            raise ValueError("p and q must be non-negative")

    @property
    def m(self) -> int:
        return self.p + self.q

    @property
    def log_prefactor(self) -> float:
        """log of (n)_p (n)_q / (n)_{p+q} = 1 / 2F1(p, q; p+q+n; 1)."""
        n, p, q = self.n, self.p, self.q
        return float(gammaln(n + p) + gammaln(n + q) - gammaln(n) - gammaln(n + p + q))

    @property
    def prefactor(self) -> float:
        return math.exp(self.log_prefactor)

    def hyp(self, shift: int = 0) -> HypParams:
        """Parameters of 2F1(p+shift, q+shift; p+q+n+shift; .)."""
        return HypParams(self.p + shift, self.q + shift, self.p + self.q + self.n + shift)


def _as_tu(t, u):
    t = np.atleast_1d(np.asarray(t, dtype=float))
    u = 1.0 - t if u is None else np.atleast_1d(np.asarray(u, dtype=float))
    return t, u


def _hyp_derivative(profile: RadialProfile, order: int, u):
    """d^l/dt^l 2F1(p, q; p+q+n; t) at t = 1 - u (u > 0)."""
    p, q = profile.p, profile.q
    if order == 0:
        return gauss_2f1_complement(profile.hyp(), u)
    if p == 0 or q == 0:
        return np.zeros_like(u)
    c = p + q + profile.n
    coef = poch(p, order) * poch(q, order) / poch(c, order)
    return coef * gauss_2f1_complement(profile.hyp(order), u)


def _s_pq(profile: RadialProfile, t, u):
    out = np.ones_like(t)
    if profile.p == 0 or profile.q == 0:
        return out
    inside = u > 0
    if inside.any():
        out[inside] = profile.prefactor * _hyp_derivative(profile, 0, u[inside])
    return out


def _scalar_or_array(x, out):
    return float(out[0]) if np.ndim(x) == 0 else out


def s_pq(profile: RadialProfile, t):
    """S_pq(t) for t in [0, 1]; vectorised."""
    tt, uu = _as_tu(t, None)
    if np.any((tt < 0) | (tt > 1)):
        raise ValueError("s_pq needs t in [0, 1]")
    return _scalar_or_array(t, _s_pq(profile, tt, uu))


def s_pq_complement(profile: RadialProfile, u):
    """S_pq(1 - u), with the distance to 1 passed exactly."""
    tt, uu = _as_tu(1.0 - np.asarray(u, dtype=float), u)
    return _scalar_or_array(u, _s_pq(profile, tt, uu))


def radial_factor(profile: RadialProfile, r):
    """r^{p+q} S_pq(r^2), nondecreasing on [0, 1] with value 1 at r = 1."""
    rr = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any((rr < 0) | (rr > 1)):
        raise ValueError("radial_factor needs r in [0, 1]")
    t = rr * rr
    u = (1.0 - rr) * (1.0 + rr)
    out = rr ** profile.m * _s_pq(profile, t, u)
    return _scalar_or_array(r, out)


# ---------------------------------------------------------------------------
# (2t d/dt)^k derivatives


@lru_cache(maxsize=None)
def _stirling2(i: int, l: int) -> int:
    if i == l:
        return 1
    if l == 0 or l > i:
        return 0
    return l * _stirling2(i - 1, l) + _stirling2(i - 1, l - 1)


def _series_all_k(profile: RadialProfile, kmax: int, t, tol=1e-16, max_terms=200_000):
    """Rows k = 0..kmax of pref * sum_j (p)_j (q)_j / (j! (n+p+q)_j) (p+q+2j)^k t^j."""
    p, q, n, m = profile.p, profile.q, profile.n, profile.m
    ks = np.arange(kmax + 1)[:, None]
    term = np.ones_like(t)
    total = np.repeat((float(m) ** ks), t.size, axis=1).astype(float)
    active = np.ones(t.shape, dtype=bool)
    for j in range(max_terms):
        if p == 0 or q == 0:
            break
        term = term * ((p + j) * (q + j) / ((j + 1.0) * (n + m + j))) * t
        w = (m + 2.0 * (j + 1)) ** ks
        total = total + np.where(active, term * w, 0.0)
        # ratio of successive weighted terms is at most t * (1 + O(1/j)); bound
        # the tail of the highest-k row geometrically once that ratio is below one
        ratio = (p + j + 1) * (q + j + 1) / ((j + 2.0) * (n + m + j + 1)) * t \
            * ((m + 2.0 * j + 4) / (m + 2.0 * j + 2)) ** kmax
        small = ratio < 1.0
        tail = np.where(small, term * w[-1] * ratio / np.where(small, 1.0 - ratio, 1.0), np.inf)
        active &= ~(tail <= tol * total[-1])
        if not active.any():
            break
    else:
        raise ConvergenceError("weighted series for the radial derivative did not converge")
    return profile.prefactor * total


def _expansion_all_k(profile: RadialProfile, kmax: int, t, u):
    """Rows k = 0..kmax of the finite expansion (m + 2 theta)^k F, theta = t d/dt.

    theta^i = sum_l S(i, l) t^l D^l (Stirling numbers of the second kind), and
    D^l 2F1(p, q; c; t) = (p)_l (q)_l / (c)_l 2F1(p+l, q+l; c+l; t); every
    term is positive.
    """
    m = profile.m
    derivs = [_hyp_derivative(profile, l, u) for l in range(kmax + 1)]
    # theta^i F for i = 0..kmax
    theta = []
    for i in range(kmax + 1):
        inner = np.zeros_like(t)
        for l in range(i + 1):
            s2 = _stirling2(i, l)
            if s2:
                inner = inner + s2 * t ** l * derivs[l]
        theta.append(inner)
    rows = []
    for k in range(kmax + 1):
        total = np.zeros_like(t)
        for i in range(k + 1):
            ci = comb(k, i, exact=True) * float(m) ** (k - i) * 2.0 ** i
            if ci:
                total = total + ci * theta[i]
        rows.append(total)
    return profile.prefactor * np.array(rows)


def _all_k_derivatives(profile: RadialProfile, kmax: int, t, u, method="auto"):
    if profile.m == 0:
        out = np.zeros((kmax + 1, t.size))
        out[0] = 1.0
        return out
    if method == "series":
        core = _series_all_k(profile, kmax, t)
    elif method == "expansion":
        core = _expansion_all_k(profile, kmax, t, u)
    elif method == "auto":
        core = np.empty((kmax + 1, t.size))
        low = t <= 0.5
        if low.any():
            core[:, low] = _series_all_k(profile, kmax, t[low])
        if (~low).any():
            core[:, ~low] = _expansion_all_k(profile, kmax, t[~low], u[~low])
    else:
        raise ValueError(f"unknown method {method!r}")
    with np.errstate(divide="ignore"):
        power = np.exp(0.5 * profile.m * np.log(t))
    return power * core


def _k_derivative(profile: RadialProfile, k: int, t, u, method="auto"):
    return _all_k_derivatives(profile, k, t, u, method)[k]


def radial_k_derivatives_complement(profile: RadialProfile, kmax: int, u, method: str = "auto"):
    """Rows k = 0..kmax of the (2t d/dt)^k derivatives at t = 1 - u, u passed exactly."""
    uu = np.atleast_1d(np.asarray(u, dtype=float))
    if np.any((uu <= 0) | (uu >= 1)):
        raise ValueError("radial_k_derivative needs t in (0, 1)")
    return _all_k_derivatives(profile, kmax, 1.0 - uu, uu, method)


def radial_k_derivative(profile: RadialProfile, k: int, t, method: str = "auto"):
    """(2t d/dt)^k applied to t^{(p+q)/2} S_pq(t), for t in (0, 1).

    ``method`` picks the weighted power series ("series"), the finite
    expansion in shifted hypergeometric functions ("expansion"), or the
    series below t = 1/2 and the expansion above ("auto").
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    tt, uu = _as_tu(t, None)
    if np.any((tt <= 0) | (tt >= 1)):
        raise ValueError("radial_k_derivative needs t in (0, 1)")
    return _scalar_or_array(t, _k_derivative(profile, k, tt, uu, method))


def radial_k_derivative_complement(profile: RadialProfile, k: int, u, method: str = "auto"):
    """Same as :func:`radial_k_derivative` at t = 1 - u, u passed exactly."""
    uu = np.atleast_1d(np.asarray(u, dtype=float))
    if np.any((uu <= 0) | (uu >= 1)):
        raise ValueError("radial_k_derivative needs t in (0, 1)")
    return _scalar_or_array(u, _k_derivative(profile, k, 1.0 - uu, uu, method))


def sandwich(profile: RadialProfile, k: int, t):
    """Lower and upper bounds for radial_k_derivative from shifted 2F1 values.

    With m = p+q and F = 2F1(p, q; m+n-k; t), both bounds are
    prefactor * t^{m/2} * F times (m+n-k)_k / (n-k+1)_k and 2^k (m+n-k)_k.
    Valid for p, q >= 1 and 0 <= k <= n.
    """
    n, p, q, m = profile.n, profile.p, profile.q, profile.m
    if not (p >= 1 and q >= 1 and 0 <= k <= n):
        raise ValueError("sandwich needs p, q >= 1 and 0 <= k <= n")
    tt, uu = _as_tu(t, None)
    f = gauss_2f1_complement(HypParams(p, q, m + n - k), uu)
    base = profile.prefactor * tt ** (0.5 * m) * poch(m + n - k, k) * f
    lower = base / poch(n - k + 1, k)
    upper = base * 2.0 ** k
    return _scalar_or_array(t, lower), _scalar_or_array(t, upper)


# ---------------------------------------------------------------------------
# radial ODE


def ode_terms(profile: RadialProfile, r):
    """The four terms of the radial equation for u(r) = r^m S_pq(r^2).

    (1-r^2) u'' + ((2n-1)/r - r) u' + (-m(m+2n-2)/r^2 + (p-q)^2) u = 0 is
    split as (second-order, first-order, angular, complex-normal) terms.
    """
    n, p, q, m = profile.n, profile.p, profile.q, profile.m
    rr = np.atleast_1d(np.asarray(r, dtype=float))
    t = rr * rr
    w = (1.0 - rr) * (1.0 + rr)
    pref = profile.prefactor if (p and q) else 1.0
    s0 = pref * _hyp_derivative(profile, 0, w) if (p and q) else np.ones_like(rr)
    s1 = pref * _hyp_derivative(profile, 1, w)
    s2 = pref * _hyp_derivative(profile, 2, w)
    u0 = rr ** m * s0
    u1 = m * rr ** (m - 1) * s0 + 2.0 * rr ** (m + 1) * s1 if m else 2.0 * rr * s1
    u2 = (m * (m - 1) * rr ** (m - 2) * s0 if m >= 2 else 0.0) + (4 * m + 2) * rr ** m * s1 + 4.0 * rr ** (m + 2) * s2
    terms = np.stack([
        w * u2,
        ((2 * n - 1) / rr - rr) * u1,
        -m * (m + 2 * n - 2) / t * u0,
        (p - q) ** 2 * u0,
    ])
    return terms


def ode_residual(profile: RadialProfile, r):
    """|sum of ODE terms| / max |term| at r in (0, 1); vectorised."""
    terms = ode_terms(profile, r)
    scale = np.abs(terms).max(axis=0)
    res = np.abs(terms.sum(axis=0)) / np.where(scale > 0, scale, 1.0)
    return _scalar_or_array(r, res)


# ---------------------------------------------------------------------------
# I_pqs(n, k)


def i_pqs(n_eff: float, k: int, p: int, q: int, s: float, rel_tol: float = 1e-11):
    """int_0^1 t^{p+q+n-1+k} (1-t)^s 2F1(p, q; p+q+n; t)^2 dt.

    The hypergeometric factor carries (1-t)^n log(1-t) terms at t = 1 (a bare
    logarithm when n = 0), so the dyadic composite rule is used.
    """
    if p + q + n_eff <= 0:
        raise ValueError("i_pqs needs p + q + n > 0")
    if s <= -1:
        raise ValueError("i_pqs needs s > -1")
    beta = p + q + n_eff - 1 + k
    if p == 0 or q == 0:
        return math.exp(gammaln(beta + 1) + gammaln(s + 1) - gammaln(beta + s + 2))
    params = HypParams(p, q, p + q + n_eff)
    val, _ = quadrature.integrate_graded(lambda t, u: gauss_2f1_complement(params, u) ** 2, s, beta, rel_tol)
    return val
