"""Scalar special functions: log-gamma, Pochhammer symbols and Gauss 2F1 on [0, 1].

The hypergeometric evaluator only covers the parameter ranges that appear in
the radial profiles and Bergman coefficients (real parameters, real argument
in [0, 1)).  Every Gamma ratio is formed from log-gamma differences and
exponentiated last.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special

MAX_TERMS = 100_000
SERIES_CUT = 0.7
EPS = 1e-17


class ConvergenceError(RuntimeError):
    """A series or quadrature failed to meet its tolerance within the cap."""


@dataclass(frozen=True)
class HypParams:
    a: float
    b: float
    c: float

    def __post_init__(self):
        if _is_nonpos_int(self.c):
            raise ValueError(f"c={self.c} is a non-positive integer")


def _is_nonpos_int(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


def log_gamma(x: float) -> float:
    if x <= 0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    return float(special.gammaln(x))


def log_pochhammer(a: float, k: float) -> float:
    if a <= 0:
        raise ValueError(f"pochhammer requires a > 0, got {a}")
    if k < 0:
        raise ValueError(f"pochhammer requires k >= 0, got {k}")
    return float(special.gammaln(a + k) - special.gammaln(a))


def pochhammer(a: float, k: float) -> float:
    """Rising factorial (a)_k = Gamma(a+k)/Gamma(a), a > 0.

    Integer ``k`` uses the explicit product so small cases are exact.
    """
    if a <= 0:
        raise ValueError(f"pochhammer requires a > 0, got {a}")
    if k < 0:
        raise ValueError(f"pochhammer requires k >= 0, got {k}")
    if float(k).is_integer() and k <= 4096:
        out = 1.0
        for j in range(int(k)):
            out *= a + j
        return out
    return math.exp(log_pochhammer(a, k))


def gamma_ratio(num, den) -> float:
    """prod Gamma(num) / prod Gamma(den), signs tracked, poles in ``den`` give 0."""
    logv = 0.0
    sign = 1.0
    for x in den:
        if _is_nonpos_int(x):
            return 0.0
        logv -= special.gammaln(x)
        sign *= special.gammasgn(x)
    for x in num:
        if _is_nonpos_int(x):
            raise ValueError(f"Gamma pole at {x} in numerator")
        logv += special.gammaln(x)
        sign *= special.gammasgn(x)
    return float(sign * math.exp(logv))


def log_gamma_ratio(num, den) -> float:
    """log of a Gamma ratio whose arguments are all positive."""
    return float(sum(special.gammaln(x) for x in num) - sum(special.gammaln(x) for x in den))


# ---------------------------------------------------------------------------
# 2F1


_BLOCK = 32


def _series(a, b, c, t):
    """Plain power series, vectorised over ``t``; returns an ndarray.

    Terms are generated in blocks of ``_BLOCK`` by a cumulative product of
    the term ratios.  After each block, points whose geometric tail bound
    meets the tolerance drop out.
    """
    t = np.asarray(t, dtype=float)
    flat = t.ravel()
    total = np.ones_like(flat)
    idx = np.arange(flat.size)
    tt = flat
    term = np.ones_like(flat)
    acc = np.ones_like(flat)
    min_k = -min(a, b, 0.0)
    for k0 in range(0, MAX_TERMS, _BLOCK):
        k = np.arange(k0, k0 + _BLOCK, dtype=float)
        rho = (a + k) * (b + k) / ((c + k) * (k + 1.0))
        terms = term * np.cumprod(rho[:, None] * tt[None, :], axis=0)
        acc = acc + terms.sum(axis=0)
        term = terms[-1]
        if np.any(rho == 0.0):
            total[idx] = acc
            return total.reshape(t.shape)
        if k0 + _BLOCK <= min_k:
            continue
        # ratio bound for all later terms (|rho_k| decreases to 1 once k is past the turning point)
        nxt = abs((a + k0 + _BLOCK) * (b + k0 + _BLOCK) / ((c + k0 + _BLOCK) * (k0 + _BLOCK + 1.0)))
        bound = np.maximum(nxt * tt, tt)
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            tail = np.where(bound < 1.0, np.abs(term) * bound / np.maximum(1.0 - bound, 1e-300), np.inf)
        done = tail <= EPS * np.abs(acc)
        if done.any():
            total[idx[done]] = acc[done]
            keep = ~done
            idx, tt, term, acc = idx[keep], tt[keep], term[keep], acc[keep]
            if idx.size == 0:
                return total.reshape(t.shape)
    raise ConvergenceError(f"2F1({a},{b};{c};t) series did not converge in {MAX_TERMS} terms")


class _Continuation:
    """Analytic continuation of 2F1(a,b;c;.) from SERIES_CUT towards 1.

    Taylor expansions of the hypergeometric ODE solution are stacked at
    tau_{k+1} = tau_k + (1 - tau_k)/2; each is only evaluated within half its
    radius of convergence.  The distance u_k = 1 - tau_k is tracked instead of
    tau_k (halving is exact in floating point), otherwise the rounding of
    tau_k is amplified by 1/u_k.  Values are carried in log scale so large
    parameters do not overflow.
    """

    def __init__(self, a, b, c):
        self.a, self.b, self.c = a, b, c
        u = _start_distance(c)
        tau = np.array([1.0 - u])
        f0 = float(_series(a, b, c, tau)[0])
        f1 = a * b / c * float(_series(a + 1, b + 1, c + 1, tau)[0])
        self.us = [u]
        self.log_scales = [math.log(f0)]
        self.coeffs = [self._taylor(u, f1 / f0)]

    def _taylor(self, u, d1):
        # coefficients are stored pre-scaled by h**k, h = u/2, so the
        # expansion variable is y = (t - tau)/h in [0, 1]
        a, b, c = self.a, self.b, self.c
        tau = 1.0 - u
        a0 = tau * u
        a1 = 2.0 * u - 1.0
        b0 = c - (a + b + 1.0) * tau
        h = 0.5 * u
        g = [1.0, d1 * h]
        small = 0
        k = 0
        while True:
            nxt = ((k + a) * (k + b) * h * h * g[k] - (k + 1) * (a1 * k + b0) * h * g[k + 1]) / (a0 * (k + 1) * (k + 2))
            g.append(nxt)
            k += 1
            if abs(nxt) < 1e-18:
                small += 1
                if small >= 3:
                    break
            else:
                small = 0
            if k > 5000:
                raise ConvergenceError("Taylor continuation of 2F1 failed to converge")
        return np.array(g)

    def _extend(self):
        u, coef = self.us[-1], self.coeffs[-1]
        h = 0.5 * u
        val = float(coef.sum())
        der = float(np.dot(coef[1:], np.arange(1, len(coef)))) / h
        if not val > 0:
            raise ConvergenceError(f"2F1({self.a},{self.b};{self.c}) continuation lost positivity")
        self.us.append(h)
        self.log_scales.append(self.log_scales[-1] + math.log(val))
        self.coeffs.append(self._taylor(h, der / val))

    def log_value(self, v):
        """log 2F1 at t = 1 - v, for 0 < v <= the starting distance."""
        v = np.asarray(v, dtype=float)
        out = np.empty_like(v)
        if v.size == 0:
            return out
        vmin = float(v.min())
        if vmin <= 0.0:
            raise ValueError("continuation needs t < 1")
        while 0.5 * self.us[-1] >= vmin:
            self._extend()
        # level k covers v in (u_k/2, u_k]
        lvl = np.clip(np.floor(np.log2(self.us[0] / v)).astype(int), 0, len(self.us) - 1)
        us = np.array(self.us)
        lvl = np.where((lvl + 1 < len(us)) & (v <= us[np.minimum(lvl + 1, len(us) - 1)]), lvl + 1, lvl)
        lvl = np.where(v > us[lvl], np.maximum(lvl - 1, 0), lvl)
        for k in np.unique(lvl):
            sel = lvl == k
            y = (us[k] - v[sel]) / (0.5 * us[k])
            out[sel] = self.log_scales[k] + np.log(np.polyval(self.coeffs[k][::-1], y))
        return out


def _start_distance(c):
    # The recurrence for the Taylor coefficients also carries the solution
    # t**(1-c), which amplifies rounding by roughly exp(c*u/2); starting
    # closer to 1 keeps that factor below ~e**2.
    return min(1.0 - SERIES_CUT, 4.0 / max(c, 1.0))


@lru_cache(maxsize=8192)
def _continuation(a, b, c):
    return _Continuation(a, b, c)


def _log_2f1_positive(a, b, c, t, u):
    """log 2F1 for a, b, c > 0 at t in [0, 1) with u = 1 - t, vectorised."""
    out = np.empty_like(t)
    low = u >= _start_distance(c)
    if low.any():
        out[low] = np.log(_series(a, b, c, t[low]))
    if (~low).any():
        out[~low] = _continuation(float(a), float(b), float(c)).log_value(u[~low])
    return out


def _terminating(a, b, c, t):
    return _series(a, b, c, t)


def _hyp2f1(a, b, c, t, u):
    if np.any((t < 0) | (u <= 0)):
        raise ValueError("gauss_2f1 needs t in [0, 1)")
    if a == 0 or b == 0:
        return np.ones_like(t)
    if a > 0 and b > 0 and c > 0:
        return np.exp(_log_2f1_positive(a, b, c, t, u))
    if c > 0 and c - a > 0 and c - b > 0:
        # Euler: 2F1(a,b;c;t) = (1-t)^(c-a-b) 2F1(c-a,c-b;c;t), both factors positive
        return u ** (c - a - b) * np.exp(_log_2f1_positive(c - a, c - b, c, t, u))
    if _is_nonpos_int(a) or _is_nonpos_int(b):
        return _terminating(a, b, c, t)
    if np.all(t <= SERIES_CUT):
        return _series(a, b, c, t)
    raise ValueError(f"2F1({a},{b};{c};t) near t=1 is outside the supported parameter range")


def gauss_2f1(params: HypParams, t):
    """2F1(a, b; c; t) for t in [0, 1); scalar in, scalar out; arrays are vectorised."""
    scalar = np.ndim(t) == 0
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = _hyp2f1(params.a, params.b, params.c, t, 1.0 - t)
    return float(out[0]) if scalar else out


def gauss_2f1_complement(params: HypParams, u):
    """2F1(a, b; c; 1 - u) for u in (0, 1], taking the distance to 1 exactly.

    Near t = 1 the argument 1 - u cannot carry the relative precision of a
    small u; passing u keeps it.
    """
    scalar = np.ndim(u) == 0
    u = np.atleast_1d(np.asarray(u, dtype=float))
    out = _hyp2f1(params.a, params.b, params.c, 1.0 - u, u)
    return float(out[0]) if scalar else out


def log_gauss_2f1(params: HypParams, t):
    """log 2F1 for positive parameters (used where the value itself may overflow)."""
    a, b, c = params.a, params.b, params.c
    if not (a > 0 and b > 0 and c > 0):
        return np.log(gauss_2f1(params, t))
    scalar = np.ndim(t) == 0
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = _log_2f1_positive(a, b, c, t, 1.0 - t)
    return float(out[0]) if scalar else out


def gauss_2f1_at_1(params: HypParams) -> float:
    """Gauss summation Gamma(c)Gamma(c-a-b)/(Gamma(c-a)Gamma(c-b)), requires c-a-b > 0."""
    a, b, c = params.a, params.b, params.c
    if c - a - b <= 0:
        raise ValueError(f"2F1 at 1 diverges: c-a-b = {c - a - b} <= 0")
    return gamma_ratio([c, c - a - b], [c - a, c - b])


def ratio_series_around_1(p: int, q: int, n: float, u: float, rel_tol: float = 1e-12) -> float:
    """2F1(p,q;p+q+n;1-u) / 2F1(p,q;p+q+n;1) as the difference of the two lattice
    series in powers of u (n must not be an integer)."""
    if float(n).is_integer():
        raise ValueError(f"n must be non-integer, got {n}")
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    if not 0.0 <= u < 1.0:
        raise ValueError(f"u must lie in [0, 1), got {u}")
    if u == 0.0:
        return 1.0
    tol = min(rel_tol, 1e-15)

    def _sum(term, ratio):
        total = term
        for j in range(MAX_TERMS):
            term *= ratio(j)
            total += term
            if abs(term) <= tol * abs(total) and j > n + max(p, q):
                return total
        raise ConvergenceError("ratio_series_around_1 did not converge")

    first = _sum(1.0, lambda k: (p + k) * (q + k) / ((1.0 - n + k) * (k + 1.0)) * u)
    lead = gamma_ratio([p + n, q + n, 1.0 - n], [p, q, 1.0 + n]) * u**n
    second = _sum(lead, lambda j: (p + n + j) * (q + n + j) / ((j + 1.0) * (1.0 + n + j)) * u)
    return first - second
