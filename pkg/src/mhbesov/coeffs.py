"""Bergman coefficients c_pq(s) and the Sobolev-weight coefficients c_{pq,k}(s).

Three independent routes compute c_pq(s):

* ``quadrature``: (s+1)_n / Gamma(n) * int_0^1 t^{p+q+n-1} (1-t)^s S_pq(t)^2 dt,
  only for s > -1;
* ``double_integral``: the double integral of 2F1(s+1, n+s+1; 2n+2s+2; 1-xy)
  against x^{p-1} y^{q-1} (1-x)^{n+s} (1-y)^{n+s}, valid for s > -n-1;
* ``series_noninteger``: the two-lattice Gamma series for non-integer n,
  extrapolated to integer n (a cross-check only).

For pq = 0 the coefficient has the closed form
Gamma(q+n) Gamma(n+s+1) / (Gamma(n+s+q+1) Gamma(n)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln, gammasgn

from . import quadrature
from .radial import (RadialProfile, radial_k_derivative_complement, radial_k_derivatives_complement,
                     s_pq_complement)
from .specfun import ConvergenceError, HypParams, gauss_2f1_complement, gamma_ratio

ROUTES = ("quadrature", "double_integral", "closed_p0", "series_noninteger", "auto")
DEFAULT_REL_TOL = 1e-10


@dataclass(frozen=True)
class CoeffRequest:
    n: int
    p: int
    q: int
    s: float
    route: str = "auto"
    rel_tol: float = DEFAULT_REL_TOL

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.p < 0 or self.q < 0:
            raise ValueError("p, q must be >= 0")
        if not self.s > -self.n - 1:
            raise ValueError(f"s must exceed -n-1 = {-self.n - 1}, got {self.s}")
        if self.route not in ROUTES:
            raise ValueError(f"unknown route {self.route!r}")
        if self.route == "quadrature" and not self.s > -1:
            raise ValueError("the quadrature route needs s > -1")
        if self.route == "double_integral" and (self.p < 1 or self.q < 1):
            raise ValueError("the double-integral route needs p, q >= 1")
        if self.route == "closed_p0" and self.p * self.q != 0:
            raise ValueError("the closed form needs p = 0 or q = 0")
        if self.route == "series_noninteger" and (self.p < 1 or self.q < 1):
            raise ValueError("the series route needs p, q >= 1")


@dataclass(frozen=True)
class CoeffResult:
    value: float
    err_est: float
    route_used: str


def _norm_const(n, s):
    """(s+1)_n / Gamma(n)."""
    return math.exp(gammaln(s + 1 + n) - gammaln(s + 1) - gammaln(n))


# ---------------------------------------------------------------------------
# closed form


def c_0q_closed(n, q, s) -> CoeffResult:
    """c_{0q}(s) = Gamma(q+n) Gamma(n+s+1) / (Gamma(n+s+q+1) Gamma(n)); also c_{q0}."""
    if not s > -n - 1:
        raise ValueError("closed form needs s > -n-1")
    val = gamma_ratio([q + n, n + s + 1], [n + s + q + 1, n])
    return CoeffResult(val, 0.0, "closed_p0")


# ---------------------------------------------------------------------------
# quadrature route


def c_pq_quadrature(n, p, q, s, rel_tol=DEFAULT_REL_TOL) -> CoeffResult:
    """(s+1)_n/Gamma(n) * int t^{p+q+n-1} (1-t)^s S_pq(t)^2 dt, weight in the rule."""
    if not s > -1:
        raise ValueError("the quadrature route needs s > -1")
    prof = RadialProfile(n, p, q)
    const = _norm_const(n, s)
    val, err = quadrature.integrate_graded(
        lambda t, u: s_pq_complement(prof, u) ** 2, s, p + q + n - 1, rel_tol)
    return CoeffResult(const * val, const * err, "quadrature")


class QuadratureSweep:
    """Quadrature route for a (p, q) grid and several s at fixed n.

    S_pq is evaluated once per (p, q) and order on the weight-free dyadic
    composite rule; each s then only re-weights the same samples by
    t^{p+q+n-1} (1-t)^s.  Orders double until every s agrees to rel_tol.
    """

    orders = (32, 64, 128)

    def __init__(self, n, s_values, rel_tol=DEFAULT_REL_TOL):
        self.n = n
        self.s_values = [float(s) for s in s_values]
        if min(self.s_values) <= -1:
            raise ValueError("the quadrature route needs s > -1")
        self.rel_tol = rel_tol
        self.levels = quadrature.default_levels(min(self.s_values))

    def cell(self, p, q):
        """{s: CoeffResult} for one (p, q)."""
        n = self.n
        if p == 0 or q == 0:
            return {s: c_pq_quadrature(n, p, q, s) for s in self.s_values}
        prof = RadialProfile(n, p, q)
        beta = p + q + n - 1
        prev = None
        for order in self.orders:
            t, u, w = quadrature.composite_legendre(order, self.levels)
            base = w * np.exp(beta * np.log(t)) * s_pq_complement(prof, u) ** 2
            logu = np.log(u)
            cur = np.array([float(np.dot(base, np.exp(s * logu))) for s in self.s_values])
            if prev is not None:
                diff = np.abs(cur - prev)
                if np.all(diff <= self.rel_tol * np.abs(cur)):
                    break
            prev = cur
        else:
            raise ConvergenceError(f"quadrature sweep did not converge at (p, q) = ({p}, {q})")
        out = {}
        for s, v, d in zip(self.s_values, cur, diff):
            const = _norm_const(n, s)
            out[s] = CoeffResult(const * v, const * d, "quadrature")
        return out


# ---------------------------------------------------------------------------
# double-integral route


def _vb_log_prefactor(n, p, q, s):
    return (gammaln(s + n + 1) + gammaln(s + 1 + 2 * n) - 3 * gammaln(n) - gammaln(2 * s + 2 * n + 2)
            + gammaln(p + n) - gammaln(p) + gammaln(q + n) - gammaln(q))


def _vb_params(n, s):
    return HypParams(s + 1.0, n + s + 1.0, 2.0 * n + 2.0 * s + 2.0)


def c_pq_double_integral(n, p, q, s, rel_tol=DEFAULT_REL_TOL) -> CoeffResult:
    """Double-integral route, valid for p, q >= 1 and s > -n-1.

    The hypergeometric factor is evaluated at 1 - xy through its distance xy
    to 1; for s < -1 the evaluator routes through the Euler transform.
    """
    if p < 1 or q < 1:
        raise ValueError("the double-integral route needs p, q >= 1")
    if not s > -n - 1:
        raise ValueError("the double-integral route needs s > -n-1")
    params = _vb_params(n, s)
    pref = math.exp(_vb_log_prefactor(n, p, q, s))
    val, err = quadrature.integrate_2d(
        lambda x, y: gauss_2f1_complement(params, (x * y).ravel()).reshape(np.broadcast(x, y).shape),
        (n + s, p - 1), (n + s, q - 1), rel_tol)
    return CoeffResult(pref * val, pref * err, "double_integral")


class DoubleIntegralSweep:
    """Double-integral route for a whole (p, q) grid at fixed (n, s).

    One tensor rule with weight (1-x)^{n+s} in each variable is shared by
    every cell, so the hypergeometric matrix F[i, j] = 2F1(...; 1 - x_i x_j)
    is computed once per order and each cell is the bilinear form
    (x^{p-1} w)^T F (x^{q-1} w).  Orders double until every requested cell
    agrees with the previous order to rel_tol.
    """

    orders = (64, 128, 256, 512, 1024)

    def __init__(self, n, s, rel_tol=DEFAULT_REL_TOL):
        if not s > -n - 1:
            raise ValueError("the double-integral route needs s > -n-1")
        self.n, self.s, self.rel_tol = n, s, rel_tol
        self._mats = {}

    def _matrix(self, order):
        if order not in self._mats:
            rule = quadrature.build_rule(order, self.n + self.s, 0.0)
            x = rule.nodes
            u = np.outer(x, x).ravel()
            fmat = gauss_2f1_complement(_vb_params(self.n, self.s), u).reshape(order, order)
            self._mats[order] = (x, rule.weights, fmat)
        return self._mats[order]

    def _raw(self, order, ps, qs):
        x, w, fmat = self._matrix(order)
        # vectors x^{p-1} w, built in log space to stay finite for large p
        logx = np.log(x)
        vp = np.exp(np.outer(np.asarray(ps) - 1, logx)) * w
        vq = np.exp(np.outer(np.asarray(qs) - 1, logx)) * w
        return vp @ fmat @ vq.T

    def compute(self, ps, qs):
        """Matrix of CoeffResult for p in ps (rows) and q in qs (columns), p, q >= 1."""
        ps, qs = list(ps), list(qs)
        if min(ps + qs) < 1:
            raise ValueError("the double-integral route needs p, q >= 1")
        prev = None
        for order in self.orders:
            cur = self._raw(order, ps, qs)
            if prev is not None:
                diff = np.abs(cur - prev)
                if np.all(diff <= self.rel_tol * np.abs(cur)):
                    break
            prev = cur
        else:
            raise ConvergenceError("double-integral sweep did not converge")
        out = []
        for i, p in enumerate(ps):
            row = []
            for j, q in enumerate(qs):
                pref = math.exp(_vb_log_prefactor(self.n, p, q, self.s))
                row.append(CoeffResult(pref * cur[i, j], pref * diff[i, j], "double_integral"))
            out.append(row)
        return out


# ---------------------------------------------------------------------------
# series route for non-integer n


def _lattice_terms(n, p, q, s, k):
    """Signed Gamma-ratio terms of the two-lattice series at (real) points k."""
    num = [p + k, q + k, s + k + 1, n + s + k + 1]
    den = [1 - n + k, 1 + k, p + n + s + 1 + k, q + n + s + 1 + k]
    logv = np.zeros_like(k)
    sign = np.ones_like(k)
    for a in num:
        logv += gammaln(a)
        sign *= gammasgn(a)
    for a in den:
        logv -= gammaln(a)
        sign *= gammasgn(a)
    const = gammaln(p + n) + gammaln(q + n) + gammaln(1 - n) - gammaln(n) - gammaln(p) - gammaln(q)
    csign = gammasgn(1 - n)
    return csign * sign * np.exp(logv + const)


def c_pq_series_noninteger(n_eff, p, q, s, kmax: int = 100_000) -> float:
    """Two-lattice series for c_pq(s) at non-integer n_eff.

    The terms decay like k^-2 on both lattices, so they are summed in pairs
    f(j) - f(n+j) for j < kmax (each pair is O(j^-3)); the remaining tail is
    approximated by n f(kmax + (n-1)/2), the midpoint rule for the integral
    that the paired tail sum approximates.
    """
    if float(n_eff).is_integer():
        raise ValueError(f"n_eff must be non-integer, got {n_eff}")
    if n_eff <= 0:
        raise ValueError("n_eff must be positive")
    if p < 1 or q < 1:
        raise ValueError("the series route needs p, q >= 1")
    for lattice0 in (0.0, n_eff):
        x = s + 1 + lattice0
        if x <= 0 and float(x).is_integer():
            raise ValueError(f"Gamma pole in the series at s = {s}")
    j = np.arange(kmax, dtype=float)
    paired = _lattice_terms(n_eff, p, q, s, j) - _lattice_terms(n_eff, p, q, s, n_eff + j)
    # sum smallest terms first
    total = math.fsum(paired[::-1])
    mid = np.array([kmax + 0.5 * (n_eff - 1.0)])
    total += n_eff * float(_lattice_terms(n_eff, p, q, s, mid)[0])
    # (s+1)_n / Gamma(n) with signs, since s + 1 may be negative
    return gamma_ratio([s + 1 + n_eff], [s + 1, n_eff]) * total


def series_extrapolated(n, p, q, s, eps=(1e-2, 5e-3, 2.5e-3), kmax: int = 100_000):
    """Richardson extrapolation of the series route to integer n.

    Symmetric averages A(e) = [c(n+e) + c(n-e)]/2 have an even error
    expansion a e^2 + b e^4 + ..., removed by Richardson steps with ratio
    (e_i / e_{i+1})^2.  Returns (value, err_est) with err_est the change made
    by the last Richardson level.
    """
    vals = [0.5 * (c_pq_series_noninteger(n + e, p, q, s, kmax) + c_pq_series_noninteger(n - e, p, q, s, kmax))
            for e in eps]
    table = [vals]
    order = 2
    while len(table[-1]) > 1:
        prev = table[-1]
        level = len(table)
        ratios = [(eps[i] / eps[i + level]) ** order for i in range(len(prev) - 1)]
        table.append([(r * prev[i + 1] - prev[i]) / (r - 1.0) for i, r in enumerate(ratios)])
        order += 2
    best = table[-1][0]
    err = abs(best - table[-2][-1])
    return best, err


# ---------------------------------------------------------------------------
# dispatcher


def c_pq(req: CoeffRequest) -> CoeffResult:
    """Route dispatcher: closed form if pq = 0, quadrature if s > -1, else double integral."""
    n, p, q, s = req.n, req.p, req.q, req.s
    route = req.route
    if route == "auto":
        if p * q == 0:
            route = "closed_p0"
        elif s > -1:
            route = "quadrature"
        else:
            route = "double_integral"
    if route == "closed_p0":
        return c_0q_closed(n, p + q, s)
    if route == "quadrature":
        return c_pq_quadrature(n, p, q, s, req.rel_tol)
    if route == "double_integral":
        return c_pq_double_integral(n, p, q, s, req.rel_tol)
    if route == "series_noninteger":
        val, err = series_extrapolated(n, p, q, s)
        return CoeffResult(val, err, "series_noninteger")
    raise ValueError(f"unknown route {route!r}")


_VALUE_CACHE: dict = {}


def _cache_key(n, p, q, s, rel_tol):
    return (n, min(p, q), max(p, q), float(s), rel_tol)


def c_pq_value(n, p, q, s, rel_tol=DEFAULT_REL_TOL) -> float:
    """Cached scalar value of the auto route, symmetric in p and q.

    :func:`c_pq_table` fills the same cache, so grids computed by a sweep
    are reused by later scalar lookups.
    """
    key = _cache_key(n, p, q, s, rel_tol)
    if key not in _VALUE_CACHE:
        _VALUE_CACHE[key] = c_pq(CoeffRequest(n, key[1], key[2], s, "auto", rel_tol)).value
    return _VALUE_CACHE[key]


def c_pq_table(n, s_values, pmax, qmax, route="auto", rel_tol=DEFAULT_REL_TOL):
    """{(p, q, s): CoeffResult} for 0 <= p <= pmax, 0 <= q <= qmax and every s.

    Cells with pq = 0 always use the closed form (the double-integral route
    does not cover them).  Otherwise ``auto`` picks quadrature for s > -1
    and the double integral below; an explicit route is used as given.
    Quadrature cells come from :class:`QuadratureSweep` and double-integral
    cells from :class:`DoubleIntegralSweep`; both are shared over the grid.
    """
    if route not in ("auto", "quadrature", "double_integral", "closed_p0"):
        raise ValueError(f"route {route!r} is not available for tables")
    s_values = [float(x) for x in s_values]
    out = {}
    for s in s_values:
        CoeffRequest(n, 0, 0, s)  # validates n and s
        for p in range(pmax + 1):
            for q in range(qmax + 1):
                if p * q == 0:
                    out[(p, q, s)] = c_0q_closed(n, p + q, s)
                elif route == "closed_p0":
                    raise ValueError("closed_p0 only covers pq = 0")
    quad_s = [s for s in s_values if (route == "quadrature" or (route == "auto" and s > -1))]
    vb_s = [s for s in s_values if s not in quad_s]
    if quad_s and min(pmax, qmax) >= 1:
        sweep = QuadratureSweep(n, quad_s, rel_tol)
        for p in range(1, pmax + 1):
            for q in range(1, qmax + 1):
                if (q, p, quad_s[0]) in out and q <= pmax and p <= qmax and q < p:
                    for s in quad_s:
                        out[(p, q, s)] = out[(q, p, s)]
                    continue
                cell = sweep.cell(min(p, q), max(p, q))
                for s in quad_s:
                    out[(p, q, s)] = cell[s]
    if vb_s and min(pmax, qmax) >= 1:
        for s in vb_s:
            mat = DoubleIntegralSweep(n, s, rel_tol).compute(range(1, pmax + 1), range(1, qmax + 1))
            for i in range(pmax):
                for j in range(qmax):
                    out[(i + 1, j + 1, s)] = mat[i][j]
    if route == "auto":
        for (p, q, s), res in out.items():
            _VALUE_CACHE.setdefault(_cache_key(n, p, q, s, rel_tol), res.value)
    return out


def normalized_c(n, p, q, s, rel_tol=DEFAULT_REL_TOL) -> float:
    """(p+1)^{s+1} (q+1)^{s+1} c_pq(s)."""
    return ((p + 1.0) * (q + 1.0)) ** (s + 1.0) * c_pq_value(n, p, q, s, rel_tol)


# ---------------------------------------------------------------------------
# c_{pq,k}(s)

DIVERGENT = math.inf


def _partial_increments(f, n, s, m_lo=4, m_hi=24, order=64):
    """Integrals of t^{n-1}(1-t)^s f over [1 - 2^-m, 1 - 2^-(m+1)], m = m_lo..m_hi-1."""
    incs = []
    rule = quadrature.build_rule(order, 0.0, 0.0)
    for m in range(m_lo, m_hi):
        hi, lo = 0.5 ** m, 0.5 ** (m + 1)
        u = lo + (hi - lo) * rule.gaps
        t = 1.0 - u
        vals = t ** (n - 1) * u ** s * f(u)
        incs.append((hi - lo) * float(np.dot(rule.weights, vals)))
    return np.array(incs)


def diverges(increments, threshold=0.9, tail=4) -> bool:
    """True when the last ``tail`` increment ratios are all >= threshold."""
    inc = np.abs(np.asarray(increments))
    if np.any(inc[-tail - 1:] == 0):
        return False
    ratios = inc[1:] / inc[:-1]
    return bool(np.all(ratios[-tail:] >= threshold))


_CK_CACHE: dict = {}


def c_pq_k(n, p, q, k, s, rel_tol=DEFAULT_REL_TOL) -> float:
    """int_0^1 t^{n-1} (1-t)^s [(2t d/dt)^k (t^{(p+q)/2} S_pq(t))]^2 dt, cached.

    Returns ``DIVERGENT`` (math.inf) when k = n+1, pq > 0 and the partial
    integrals towards t = 1 do not settle.
    """
    key = (n, min(p, q), max(p, q), k, float(s), rel_tol)
    if key not in _CK_CACHE:
        _CK_CACHE[key] = _c_pq_k_direct(n, key[1], key[2], k, s, rel_tol)
    return _CK_CACHE[key]


def _c_pq_k_closed(n, p, q, k, s):
    if p == 0 and q == 0:
        return 1.0 / _norm_const(n, s) if k == 0 else 0.0
    m = p + q
    return float(m) ** (2 * k) * math.exp(gammaln(n + m) + gammaln(s + 1) - gammaln(s + 1 + n + m))


def _c_pq_k_direct(n, p, q, k, s, rel_tol=DEFAULT_REL_TOL) -> float:
    """int_0^1 t^{n-1} (1-t)^s [(2t d/dt)^k (t^{(p+q)/2} S_pq(t))]^2 dt.

    Returns ``DIVERGENT`` (math.inf) when k = n+1, pq > 0 and the partial
    integrals towards t = 1 do not settle.
    """
    if not s > -1:
        raise ValueError("c_pq_k needs s > -1")
    if k < 0 or k > n + 1:
        raise ValueError("k must lie in 0..n+1")
    if p == 0 or q == 0:
        return _c_pq_k_closed(n, p, q, k, s)
    prof = RadialProfile(n, p, q)

    def g(t, u):
        return radial_k_derivative_complement(prof, k, u) ** 2

    if k == n + 1:
        incs = _partial_increments(lambda u: g(1.0 - u, u), n, s)
        if diverges(incs):
            return DIVERGENT
    val, _ = quadrature.integrate_graded(g, s, n - 1, rel_tol)
    return val


def c_pq_k_table(n, kmax, s, pmax, qmax, rel_tol=DEFAULT_REL_TOL):
    """{(p, q, k): c_pq,k(s)} for k = 0..kmax <= n on a (p, q) grid.

    All k share one evaluation of the derivatives per cell and order on the
    weight-free dyadic composite rule; orders double until every k agrees
    to rel_tol.  Results also fill the cache behind :func:`c_pq_k`.
    """
    if not s > -1:
        raise ValueError("c_pq_k needs s > -1")
    if not 0 <= kmax <= n:
        raise ValueError("the table covers k = 0..n; use c_pq_k for k = n+1")
    levels = quadrature.default_levels(s)
    out = {}
    for p in range(pmax + 1):
        for q in range(qmax + 1):
            a, b = min(p, q), max(p, q)
            if (a, b, 0) in out:
                vals = [out[(a, b, k)] for k in range(kmax + 1)]
            elif a == 0:
                vals = [_c_pq_k_closed(n, a, b, k, s) for k in range(kmax + 1)]
            else:
                vals = _ck_cell(n, a, b, kmax, s, levels, rel_tol)
            for k, v in enumerate(vals):
                out[(p, q, k)] = v
                _CK_CACHE.setdefault((n, a, b, k, float(s), rel_tol), v)
    return out


def _ck_cell(n, p, q, kmax, s, levels, rel_tol, orders=(32, 64, 128)):
    prof = RadialProfile(n, p, q)
    prev = None
    for order in orders:
        t, u, w = quadrature.composite_legendre(order, levels)
        rows = radial_k_derivatives_complement(prof, kmax, u)
        base = w * np.exp((n - 1) * np.log(t) + s * np.log(u))
        cur = (rows ** 2) @ base
        if prev is not None and np.all(np.abs(cur - prev) <= rel_tol * np.abs(cur)):
            return cur.tolist()
        prev = cur
    raise ConvergenceError(f"c_pq_k table did not converge at (p, q) = ({p}, {q})")
