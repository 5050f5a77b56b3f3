"""Gauss-Jacobi rules for Beta-weighted integrals on [0, 1].

The weight is t**beta_exp * (1 - t)**alpha_exp.  Endpoint singularities of
the integrand are meant to live in the weight; what is left should be smooth
on [0, 1] so that doubling the order converges geometrically.

Nodes come from the symmetric tridiagonal Jacobi matrix (Golub-Welsch),
polished by Newton steps on the orthonormal three-term recurrence; weights
use the Christoffel function, which avoids forming eigenvectors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal
from scipy.special import betaln

from .specfun import ConvergenceError

ORDERS = (16, 32, 64, 128, 256, 512, 1024, 2048, 4096)
DEFAULT_REL_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    order: int
    alpha_exp: float
    beta_exp: float
    nodes: np.ndarray
    weights: np.ndarray
    gaps: np.ndarray  # 1 - nodes, to full relative precision near t = 1

    def apply(self, values) -> float:
        return float(np.dot(self.weights, values))

    @property
    def mass(self) -> float:
        return math.exp(betaln(self.beta_exp + 1.0, self.alpha_exp + 1.0))


def _check_exps(alpha_exp, beta_exp):
    if alpha_exp <= -1 or beta_exp <= -1:
        raise ValueError(f"weight exponents must exceed -1, got ({alpha_exp}, {beta_exp})")


def _recurrence(order, alpha, beta):
    """Diagonal and off-diagonal of the Jacobi matrix for t^beta (1-t)^alpha on [0,1]."""
    k = np.arange(order, dtype=float)
    s = alpha + beta
    two = 2.0 * k + s
    diag = np.empty(order)
    # 1 + a_k of the [-1,1] recurrence, written without cancellation
    with np.errstate(divide="ignore", invalid="ignore"):
        diag[:] = 0.5 * (two * (two + 2.0) + (beta - alpha) * (beta + alpha)) / (two * (two + 2.0))
    diag[0] = (beta + 1.0) / (s + 2.0)
    off2 = np.empty(max(order - 1, 0))
    if order > 1:
        j = np.arange(1, order, dtype=float)
        tj = 2.0 * j + s
        with np.errstate(divide="ignore", invalid="ignore"):
            off2[:] = j * (j + alpha) * (j + beta) * (j + s) / (tj * tj * (tj + 1.0) * (tj - 1.0))
        off2[0] = (1.0 + alpha) * (1.0 + beta) / ((s + 2.0) ** 2 * (s + 3.0))
    return diag, np.sqrt(off2)


def _orthonormal_sweep(t, diag, off, mu0):
    """Return (p_N(t), p_N'(t), sum_{k<N} p_k(t)^2) with a common per-node scale.

    All three share the scale factor so ratios (Newton step, Christoffel
    weight times p_0^2) are scale free; the sum is returned together with the
    log of the scale that was divided out.
    """
    order = len(diag)
    p_prev = np.zeros_like(t)
    p = np.full_like(t, 1.0 / math.sqrt(mu0))
    d_prev = np.zeros_like(t)
    d = np.zeros_like(t)
    total = p * p
    log_scale = np.zeros_like(t)
    for k in range(order):
        b_next = off[k] if k < order - 1 else _last_off(diag, off, k)
        b_cur = off[k - 1] if k > 0 else 0.0
        p_new = ((t - diag[k]) * p - b_cur * p_prev) / b_next
        d_new = (p + (t - diag[k]) * d - b_cur * d_prev) / b_next
        p_prev, p, d_prev, d = p, p_new, d, d_new
        if k < order - 1:
            total = total + p * p
        big = np.abs(p) > 1e150
        if big.any():
            f = np.where(big, 1e-150, 1.0)
            p, p_prev, d, d_prev = p * f, p_prev * f, d * f, d_prev * f
            total = total * f * f
            log_scale = log_scale - np.log(f)
    return p, d, total, log_scale


def _last_off(diag, off, k):
    # the value of sqrt(b_N) only rescales p_N; any positive number works for Newton
    return off[k - 1] if k > 0 else 1.0


def _half_rule(order, alpha_exp, beta_exp):
    """Nodes and weights of the rule, accurate for the nodes below 1/2."""
    diag, off = _recurrence(order, alpha_exp, beta_exp)
    if order == 1:
        nodes = diag.copy()
    else:
        nodes = eigvalsh_tridiagonal(diag, off)
    mu0 = math.exp(betaln(beta_exp + 1.0, alpha_exp + 1.0))
    for _ in range(2):
        p, d, _, _ = _orthonormal_sweep(nodes, diag, off, mu0)
        step = p / d
        ok = np.abs(step) < 1e-3 * np.minimum(nodes, 1.0 - nodes) + 1e-300
        nodes = nodes - np.where(ok, step, 0.0)
    _, _, total, log_scale = _orthonormal_sweep(nodes, diag, off, mu0)
    with np.errstate(under="ignore"):
        weights = np.exp(-np.log(total) - 2.0 * log_scale)
    return nodes, weights


@lru_cache(maxsize=256)
def _rule_arrays(order, alpha_exp, beta_exp):
    # nodes near t = 1 are computed in the reflected variable 1 - t, where
    # the rule for (beta, alpha) resolves them to full relative precision
    lo_nodes, lo_weights = _half_rule(order, alpha_exp, beta_exp)
    m = int(np.count_nonzero(lo_nodes < 0.5))
    if m < order:
        hi_gaps, hi_weights = _half_rule(order, beta_exp, alpha_exp)
        hi_gaps = hi_gaps[: order - m][::-1]
        hi_weights = hi_weights[: order - m][::-1]
    else:
        hi_gaps = hi_weights = np.empty(0)
    nodes = np.concatenate([lo_nodes[:m], 1.0 - hi_gaps])
    gaps = np.concatenate([1.0 - lo_nodes[:m], hi_gaps])
    weights = np.concatenate([lo_weights[:m], hi_weights])
    for arr in (nodes, gaps, weights):
        arr.setflags(write=False)
    return nodes, gaps, weights


def build_rule(order: int, alpha_exp: float, beta_exp: float) -> QuadratureRule:
    """Gauss rule exact for polynomials of degree <= 2*order-1 against t^beta (1-t)^alpha."""
    if order < 1:
        raise ValueError("order must be positive")
    _check_exps(alpha_exp, beta_exp)
    nodes, gaps, weights = _rule_arrays(int(order), float(alpha_exp), float(beta_exp))
    return QuadratureRule(int(order), float(alpha_exp), float(beta_exp), nodes, weights, gaps)


def _call(f, x):
    try:
        out = np.asarray(f(x), dtype=float)
        if out.shape == x.shape:
            return out
    except (TypeError, ValueError):
        pass
    return np.array([float(f(v)) for v in x])


def _converged(new, old, rel_tol):
    return abs(new - old) <= rel_tol * abs(new) or new == old


def integrate(f, alpha_exp: float, beta_exp: float, rel_tol: float = DEFAULT_REL_TOL,
              orders=ORDERS, with_gaps: bool = False):
    """Adaptive Gauss-Jacobi integration of f against t^beta (1-t)^alpha on [0,1].

    The order doubles until two successive values agree to ``rel_tol``.
    Returns (value, err_est) where err_est is the last inter-refinement
    difference.  ``f`` may be vectorised; scalar callables also work.
    With ``with_gaps`` the vectorised call is ``f(t, 1 - t)``, the second
    argument accurate near t = 1.
    """
    _check_exps(alpha_exp, beta_exp)
    prev = None
    for order in orders:
        rule = build_rule(order, alpha_exp, beta_exp)
        if with_gaps:
            vals = np.asarray(f(rule.nodes, rule.gaps), dtype=float)
        else:
            vals = _call(f, np.array(rule.nodes))
        val = rule.apply(vals)
        if prev is not None and _converged(val, prev, rel_tol):
            return val, abs(val - prev)
        prev = val
    raise ConvergenceError(f"integrate: no convergence to {rel_tol} by order {orders[-1]}")


def integrate_2d(f, x_exps, y_exps, rel_tol: float = DEFAULT_REL_TOL, orders=ORDERS[:6]):
    """Tensor-product analogue of :func:`integrate`.

    ``x_exps`` and ``y_exps`` are (alpha_exp, beta_exp) pairs, i.e. the
    exponents of (1 - x) and x.  ``f(x, y)`` receives broadcastable arrays.
    """
    prev = None
    for order in orders:
        rx = build_rule(order, *x_exps)
        ry = build_rule(order, *y_exps)
        vals = np.asarray(f(rx.nodes[:, None], ry.nodes[None, :]), dtype=float)
        vals = np.broadcast_to(vals, (order, order))
        val = float(rx.weights @ vals @ ry.weights)
        if prev is not None and _converged(val, prev, rel_tol):
            return val, abs(val - prev)
        prev = val
    raise ConvergenceError(f"integrate_2d: no convergence to {rel_tol} by order {orders[-1]}")


@lru_cache(maxsize=512)
def _graded_arrays(order, alpha_exp, beta_exp, levels):
    """Nodes (t, 1-t) and effective weights of the dyadic composite rule."""
    ts, us, ws = [], [], []
    # [0, 1/2]: t = y/2 with t^beta carried by the rule
    r0 = build_rule(order, 0.0, beta_exp)
    t0 = 0.5 * r0.nodes
    ts.append(t0)
    us.append(1.0 - t0)
    ws.append(r0.weights * 0.5 ** (beta_exp + 1.0) * (1.0 - t0) ** alpha_exp)
    # dyadic pieces u in [2^-(m+1), 2^-m]; Gauss-Legendre on the full integrand
    leg = build_rule(order, 0.0, 0.0)
    m = np.arange(1, levels)[:, None]
    hi, lo = 0.5 ** m, 0.5 ** (m + 1)
    u = (lo + (hi - lo) * leg.gaps[None, :]).ravel()
    t = 1.0 - u
    ts.append(t)
    us.append(u)
    ws.append(((hi - lo) * leg.weights[None, :]).ravel() * t ** beta_exp * u ** alpha_exp)
    # last piece u in [0, 2^-levels]; (1 - y)^alpha carried by the rule
    rl = build_rule(order, alpha_exp, 0.0)
    top = 0.5 ** levels
    u = top * rl.gaps
    t = 1.0 - u
    ts.append(t)
    us.append(u)
    ws.append(rl.weights * top ** (alpha_exp + 1.0) * t ** beta_exp)
    out = tuple(np.concatenate(a) for a in (ts, us, ws))
    for arr in out:
        arr.setflags(write=False)
    return out


def default_levels(alpha_exp: float) -> int:
    # the last piece then holds a share of roughly 2^-60 of the integral
    return int(min(1000, math.ceil(60.0 / (alpha_exp + 1.0))))


def integrate_graded(f, alpha_exp: float, beta_exp: float, rel_tol: float = DEFAULT_REL_TOL,
                     levels: int | None = None, orders=(16, 32, 64, 128)):
    """Composite rule for integrands that are not smooth at t = 1.

    Terms like (1 - t)^a log(1 - t), or sharp boundary layers of width
    1/(pq) near t = 1, make a single Gauss-Jacobi rule converge only
    algebraically.  Here a Gauss-Jacobi rule on [0, 1/2] carries t^beta,
    Gauss-Legendre rules cover the dyadic intervals 1 - t in
    [2^-(m+1), 2^-m], and a Gauss-Jacobi rule carrying (1-t)^alpha covers
    the last interval [1 - 2^-levels, 1].  On every dyadic piece such terms
    are analytic, so raising the common order converges geometrically.

    ``f(t, u)`` is called once per order with all nodes; u = 1 - t is exact
    even where t rounds to 1, so f must rely on u near t = 1.
    """
    _check_exps(alpha_exp, beta_exp)
    if levels is None:
        levels = default_levels(alpha_exp)
    prev = None
    for order in orders:
        t, u, w = _graded_arrays(int(order), float(alpha_exp), float(beta_exp), int(levels))
        val = float(np.dot(w, np.asarray(f(t, u), dtype=float)))
        if prev is not None and _converged(val, prev, rel_tol):
            return val, abs(val - prev)
        prev = val
    raise ConvergenceError(f"integrate_graded: no convergence to {rel_tol} by order {orders[-1]}")


@lru_cache(maxsize=64)
def composite_legendre(order: int, levels: int):
    """Weight-free version of the dyadic composite rule: (t, 1 - t, w).

    Gauss-Legendre on [0, 1/2], on every dyadic interval of 1 - t down to
    2^-levels, and on [1 - 2^-levels, 1].  Endpoint weights must be put in
    the integrand; the last interval is meant to carry a negligible share.
    Used by sweeps that share one node set across several weights.
    """
    leg = build_rule(order, 0.0, 0.0)
    m = np.arange(0, levels + 1)[:, None]
    hi = 0.5 ** m
    lo = np.where(m < levels, 0.5 ** (m + 1), 0.0)
    u = (lo + (hi - lo) * leg.gaps[None, :]).ravel()
    w = ((hi - lo) * leg.weights[None, :]).ravel()
    t = 1.0 - u
    out = (t, u, w)
    for arr in out:
        arr.setflags(write=False)
    return out
