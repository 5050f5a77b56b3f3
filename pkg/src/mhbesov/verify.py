"""Verification checks and the suites behind ``mhbesov verify``.

Every check returns a list of :class:`VerificationReport` records.  A record
states what was compared (``lhs`` against ``rhs``), the scalar ``metric``
that decides the outcome, the ``tolerance`` it is held to, and ``passed``.
Suites bundle checks under a short descriptive header; the acceptance tests
call the same check functions with their own parameters.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import coeffs
from . import harmonic as ha
from . import mh
from .harmonic import BigradedPolynomial
from .radial import RadialProfile, i_pqs, ode_residual, radial_k_derivative, sandwich
from .specfun import pochhammer


@dataclass
class VerificationReport:
    """Outcome of one check: passed iff ``metric`` is within ``tolerance``."""

    check: str
    params: Dict[str, object]
    lhs: object
    rhs: object
    metric: float
    tolerance: float
    passed: bool
    note: str = ""
    runtime: float = 0.0

    def as_dict(self, include_runtime: bool = False) -> dict:
        out = {"check": self.check, "params": dict(self.params), "lhs": self.lhs, "rhs": self.rhs,
               "metric": self.metric, "tolerance": self.tolerance, "passed": self.passed,
               "note": self.note}
        if include_runtime:
            out["runtime"] = self.runtime
        return out


def _timed(fn: Callable[..., List[VerificationReport]]):
    """Attach the wall time of a check to each report it returns (shared evenly)."""

    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        reports = fn(*args, **kwargs)
        elapsed = time.perf_counter() - t0
        for r in reports:
            r.runtime = elapsed / max(len(reports), 1)
        return reports

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _report(check, params, lhs, rhs, metric, tolerance, passed=None, note=""):
    metric = float(metric)
    if passed is None:
        passed = bool(metric <= tolerance)
    return VerificationReport(check, params, lhs, rhs, metric, tolerance, bool(passed), note)


def window_spread(values: Dict[Tuple[int, int], float], lo: int, hi: int) -> float:
    """max/min of ``values`` over the square window lo <= p, q <= hi."""
    w = [v for (p, q), v in values.items() if lo <= p <= hi and lo <= q <= hi]
    return max(w) / min(w)


def window_change(values: Dict[Tuple[int, int], float], windows=((16, 32), (32, 64))) -> float:
    """Relative change of the max/min spread when moving between the two windows."""
    a = window_spread(values, *windows[0])
    b = window_spread(values, *windows[1])
    return abs(b / a - 1.0)


# ---------------------------------------------------------------------------
# coefficient identities


@_timed
def check_route_agreement(n_values=(2, 3), s_values=(-0.5, 0.0, 1.0, 2.5), pmax=24,
                          tol=1e-8) -> List[VerificationReport]:
    """Quadrature and double-integral routes agree on 1 <= p, q <= pmax (worst cell per (n, s))."""
    reports = []
    for n in n_values:
        sweep = coeffs.QuadratureSweep(n, s_values)
        quad = {}
        for p in range(1, pmax + 1):
            for q in range(p, pmax + 1):
                quad[(p, q)] = sweep.cell(p, q)
        for s in s_values:
            mat = coeffs.DoubleIntegralSweep(n, s).compute(range(1, pmax + 1), range(1, pmax + 1))
            worst, cell, pair = -1.0, None, None
            for p in range(1, pmax + 1):
                for q in range(1, pmax + 1):
                    a = quad[(min(p, q), max(p, q))][float(s)].value
                    b = mat[p - 1][q - 1].value
                    rel = abs(a - b) / abs(b)
                    if rel > worst:
                        worst, cell, pair = rel, (p, q), (a, b)
            reports.append(_report("route_agreement", {"n": n, "s": s, "pmax": pmax, "worst_cell": list(cell)},
                                   pair[0], pair[1], worst, tol))
    return reports


@_timed
def check_closed_form(n_values=(2, 3), s_values=(-0.5, 0.0, 2.0), qmax=64,
                      tol=1e-10) -> List[VerificationReport]:
    """c_0q by numerical quadrature equals the Gamma-ratio closed form for q <= qmax."""
    reports = []
    for n in n_values:
        for s in s_values:
            worst, at = -1.0, None
            for q in range(qmax + 1):
                a = coeffs.c_pq_quadrature(n, 0, q, s).value
                b = coeffs.c_0q_closed(n, q, s).value
                rel = abs(a - b) / b
                if rel > worst:
                    worst, at = rel, (q, a, b)
            reports.append(_report("closed_form_c0q", {"n": n, "s": s, "qmax": qmax, "worst_q": at[0]},
                                   at[1], at[2], worst, tol))
    return reports


@_timed
def check_closed_form_continuation(n=2, s_values=(-1.5, -2.0), qmax=64) -> List[VerificationReport]:
    """Below s = -1 the Gamma-ratio closed form stays finite and positive."""
    reports = []
    for s in s_values:
        vals = [coeffs.c_0q_closed(n, q, s).value for q in range(qmax + 1)]
        bad = [q for q, v in enumerate(vals) if not (math.isfinite(v) and v > 0)]
        reports.append(_report("closed_form_continuation", {"n": n, "s": s, "qmax": qmax},
                               min(vals), 0.0, float(len(bad)), 0.0,
                               note="lhs is the smallest value; metric counts non-finite or non-positive cells"))
    return reports


@_timed
def check_coefficient_asymptotics(n=2, s_values=(-2.0, -0.5, 0.0, 1.0), pmax=64,
                                  threshold=0.25) -> List[VerificationReport]:
    """(p+1)^{s+1}(q+1)^{s+1} c_pq(s): the max/min spread settles between the grid windows."""
    table = coeffs.c_pq_table(n, s_values, pmax, pmax)
    reports = []
    for s in s_values:
        norm = {(p, q): ((p + 1.0) * (q + 1.0)) ** (s + 1.0) * table[(p, q, float(s))].value
                for p in range(pmax + 1) for q in range(pmax + 1)}
        a, b = window_spread(norm, 16, 32), window_spread(norm, 32, 64)
        full = max(norm.values()) / min(norm.values())
        reports.append(_report("coefficient_asymptotics", {"n": n, "s": s, "pmax": pmax},
                               a, b, abs(b / a - 1.0), threshold,
                               note=f"lhs/rhs are the spreads on [16,32]^2 and [32,64]^2; full-grid spread {full:.6g}"))
    return reports


# ---------------------------------------------------------------------------
# eigenvalues of the invariant operators


def _eigen_failures(h: BigradedPolynomial, n: int, p: int, q: int) -> List[str]:
    failures = []
    if ha.apply_box(h) != h * ha.box_eigenvalue(n, p, q):
        failures.append("box")
    if ha.apply_R(h) != h * (p - q):
        failures.append("R")
    if ha.tangential_sum_of_squares(h) != h * ha.sphere_laplace_eigenvalue(n, p, q):
        failures.append("sum_of_squares")
    return failures


@_timed
def check_eigenvalues(n_values=(2, 3, 4), degmax=6, seed=0) -> List[VerificationReport]:
    """Box, R and the full sum of squares act by their eigenvalues, in exact arithmetic.

    Test elements per (p, q): the basis elements z_i^p zbar_j^q (i != j), and
    one random harmonic component from an exact harmonic projection.
    """
    rng = np.random.default_rng(seed)
    reports = []
    for n in n_values:
        tested, failed = 0, []
        for p in range(degmax + 1):
            for q in range(degmax + 1):
                elems = []
                for i, j in itertools.permutations(range(n), 2):
                    alpha = tuple(p if k == i else 0 for k in range(n))
                    beta = tuple(q if k == j else 0 for k in range(n))
                    elems.append(BigradedPolynomial.monomial(n, alpha, beta))
                elems.append(mh.random_harmonic(n, p, q, rng))
                for h in elems:
                    if not h.exact:
                        raise AssertionError("eigenvalue checks need exact coefficients")
                    tested += 1
                    for what in _eigen_failures(h, n, p, q):
                        failed.append(f"({p},{q}) {what}")
        reports.append(_report("eigenvalues_exact", {"n": n, "degmax": degmax, "elements": tested},
                               tested - len(failed), tested, float(len(failed)), 0.0,
                               note="; ".join(failed[:5])))
    return reports


# ---------------------------------------------------------------------------
# radial ODE and M-harmonicity


@_timed
def check_radial_ode(n_values=(2, 3), degmax=10, points=20, tol=1e-8) -> List[VerificationReport]:
    """Residual of the radial equation for r^{p+q} S_pq(r^2) at interior points."""
    r = (np.arange(points) + 0.5) / points
    reports = []
    for n in n_values:
        worst, at = -1.0, None
        for p in range(degmax + 1):
            for q in range(degmax + 1):
                res = float(np.max(ode_residual(RadialProfile(n, p, q), r)))
                if res > worst:
                    worst, at = res, (p, q)
        reports.append(_report("radial_ode_residual", {"n": n, "degmax": degmax, "points": points,
                                                       "worst_cell": list(at)},
                               worst, 0.0, worst, tol))
    return reports


def _model_component(n: int, p: int, q: int) -> BigradedPolynomial:
    """z_1^p zbar_2^q, harmonic for n >= 2."""
    alpha = (p,) + (0,) * (n - 1)
    beta = (0, q) + (0,) * (n - 2)
    return BigradedPolynomial.monomial(n, alpha, beta)


@_timed
def check_mharmonicity(n=2, cells=((1, 1), (2, 1)), r0=0.7, k_values=tuple(range(10, 31, 2)),
                       max_rate=0.55, target=1e-6, samples=64, seed=0) -> List[VerificationReport]:
    """Invariant Laplacian of the K-truncated component decays geometrically in K.

    The rate is exp of the least-squares slope of log(residual) against K;
    the residual is the maximum over sample points on the sphere of radius r0.
    """
    pts = mh.sphere_points(n, samples, r0, seed)
    reports = []
    for p, q in cells:
        f = mh.MhFunction(n, (mh.MhComponent(p, q, _model_component(n, p, q)),))
        res = np.array([mh.mharmonicity_residual(f, K, pts) for K in k_values])
        slope = np.polyfit(np.asarray(k_values, dtype=float), np.log(res), 1)[0]
        rate = math.exp(slope)
        params = {"n": n, "p": p, "q": q, "r0": r0, "K": [k_values[0], k_values[-1]]}
        reports.append(_report("mharmonicity_rate", params, rate, max_rate, rate, max_rate))
        reports.append(_report("mharmonicity_final", params, float(res[-1]), target, float(res[-1]), target))
    return reports


# ---------------------------------------------------------------------------
# norm equivalence


def combined_test_function(n=2, degmax=2, seed=0) -> mh.MhFunction:
    """Random harmonic components in every bidegree p, q <= degmax."""
    rng = np.random.default_rng(seed)
    comps = [mh.MhComponent(p, q, mh.random_harmonic(n, p, q, rng))
             for p in range(degmax + 1) for q in range(degmax + 1)]
    return mh.MhFunction(n, tuple(comps))


@_timed
def check_tangential_modes(n=2, s=0.0, m_values=(1, 2), K=40, tol=1e-5, degmax=2,
                           seed=0) -> List[VerificationReport]:
    """Spectral and symbolic tangential norms agree on a function with all components p, q <= degmax."""
    f = combined_test_function(n, degmax, seed)
    reports = []
    for m in m_values:
        spec = mh.norm_tangential(f, s, m, "spectral")
        sym = mh.norm_tangential(f, s, m, "symbolic", K)
        reports.append(_report("tangential_spectral_vs_symbolic",
                               {"n": n, "s": s, "m": m, "K": K, "degmax": degmax, "seed": seed},
                               sym, spec, abs(sym - spec) / spec, tol))
    return reports


def _quantities(f: mh.MhFunction, s: float, m: int, t: float) -> Dict[str, float]:
    return {"bergman_s": mh.norm_bergman(f, s), "tangential_m": mh.norm_tangential(f, s, m),
            "box_smoothed_t": mh.norm_box_smoothed(f, s, t), "hardy_smoothed": mh.norm_hardy_smoothed(f, s)}


@_timed
def check_norm_envelope(n_values=(2, 3), s_values=(-0.5, 0.0, 1.0), count=100, degmax=8, m=1, t=1.0,
                        slack=1.01, components=4, seed=0) -> List[VerificationReport]:
    """Pairwise ratios of the four norms on random sums stay in the single-component envelope.

    Function i uses n = n_values[i mod len] and s = s_values[i mod len]; the
    envelope for each (n, s) and pair is [min, max] of the ratio over single
    components p, q <= degmax, widened by ``slack`` on both ends.
    """
    rng = np.random.default_rng(seed)
    pairs = list(itertools.combinations(mh.NormReport.QUANTITIES, 2))
    envelopes = {}
    for n in n_values:
        coeffs.c_pq_table(n, sorted({float(s) for s in s_values} | {float(s) + m for s in s_values}
                                    | {float(s) + t for s in s_values}), degmax, degmax)
        for s in s_values:
            ratios = {pair: [] for pair in pairs}
            for p in range(degmax + 1):
                for q in range(degmax + 1):
                    f = mh.MhFunction(n, (mh.MhComponent(p, q, _model_component(n, p, q)),))
                    vals = _quantities(f, s, m, t)
                    for a, b in pairs:
                        ratios[(a, b)].append(vals[a] / vals[b])
            envelopes[(n, s)] = {pair: (min(v), max(v)) for pair, v in ratios.items()}
    worst = {(n, s): 0.0 for n in n_values for s in s_values}
    for i in range(count):
        n = n_values[i % len(n_values)]
        s = s_values[i % len(s_values)]
        f = mh.random_mh_function(n, degmax, components, int(rng.integers(2 ** 31)))
        vals = _quantities(f, s, m, t)
        for a, b in pairs:
            lo, hi = envelopes[(n, s)][(a, b)]
            r = vals[a] / vals[b]
            # excess > 1 means outside the widened envelope
            excess = max(lo / r, r / hi)
            worst[(n, s)] = max(worst[(n, s)], excess)
    reports = []
    for (n, s), w in worst.items():
        reports.append(_report("norm_ratio_envelope", {"n": n, "s": s, "m": m, "t": t, "degmax": degmax,
                                                       "functions": sum(1 for i in range(count)
                                                                        if n_values[i % len(n_values)] == n
                                                                        and s_values[i % len(s_values)] == s)},
                               w, slack, w, slack,
                               note="metric is the largest factor by which a ratio leaves the single-component envelope"))
    return reports


@_timed
def check_hardy_limit(n=2, s=0.0, degmax=3, levels=20, tol=1e-4, seed=0) -> List[VerificationReport]:
    """Sphere norms of smoothed dilates increase in r and approach the closed form from below."""
    f = combined_test_function(n, degmax, seed)
    radii = 1.0 - 0.5 ** np.arange(1, levels + 1)
    vals = mh.hardy_dilate_norms(f, s, radii)
    closed = mh.norm_hardy_smoothed(f, s)
    drops = int(np.sum(np.diff(vals) < -1e-15 * closed))
    params = {"n": n, "s": s, "degmax": degmax, "levels": levels}
    gap = (closed - vals[-1]) / closed
    return [
        _report("hardy_monotone", params, float(vals[0]), float(vals[-1]), float(drops), 0.0,
                note="metric counts decreases along the r grid"),
        _report("hardy_limit", params, float(vals[-1]), closed, abs(gap), tol,
                passed=(abs(gap) <= tol and gap >= -1e-13)),
    ]


# ---------------------------------------------------------------------------
# mean-value property


def mean_value_triples(count=20, seed=0):
    """Seeded (f, z, r) triples with n in {2, 3} and |z| <= 0.6."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        n = 2 + i % 2
        f = mh.random_mh_function(n, 3, 3, int(rng.integers(2 ** 31)))
        g = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        z = g / np.linalg.norm(g) * rng.uniform(0.0, 0.6)
        r = float(rng.uniform(0.2, 0.8))
        out.append((f, z, r))
    return out


@_timed
def check_mean_value(count=20, samples=10 ** 6, nsigma=4.0, seed=0) -> List[VerificationReport]:
    """|f(z) - mean f(phi_z(r zeta))| within nsigma Monte Carlo standard errors."""
    reports = []
    for i, (f, z, r) in enumerate(mean_value_triples(count, seed)):
        res, se = mh.mean_value_residual(f, z, r, samples, seed + i)
        reports.append(_report("mean_value", {"index": i, "n": f.n, "r": r, "abs_z": float(np.linalg.norm(z)),
                                              "samples": samples},
                               res, nsigma * se, res / se if se > 0 else (0.0 if res == 0 else math.inf), nsigma,
                               note="metric is the residual in standard errors"))
    return reports


# ---------------------------------------------------------------------------
# Sobolev coefficients c_pq,k


@_timed
def check_sobolev_asymptotics(n=2, s=0.0, kmax=None, pmax=64, threshold=0.25) -> List[VerificationReport]:
    """c_pq,k(s) / [(p+1)(q+1)]^{2k-s-1}: the spread settles between grid windows, k = 0..kmax.

    Also checks the same for the Sobolev surrogate of order t = 0..kmax on
    single components against sum [(p+1)(q+1)]^{2t-s-1}.
    """
    kmax = n if kmax is None else kmax
    table = coeffs.c_pq_k_table(n, kmax, s, pmax, pmax)
    cells = [(p, q) for p in range(pmax + 1) for q in range(pmax + 1)]
    reports = []
    for k in range(kmax + 1):
        vals = {(p, q): table[(p, q, k)] / ((p + 1.0) * (q + 1.0)) ** (2 * k - s - 1)
                for p, q in cells if p * q > 0 or k == 0}
        a, b = window_spread(vals, 16, 32), window_spread(vals, 32, 64)
        reports.append(_report("sobolev_coefficient_asymptotics", {"n": n, "s": s, "k": k, "pmax": pmax},
                               a, b, abs(b / a - 1.0), threshold,
                               note="lhs/rhs are the spreads on [16,32]^2 and [32,64]^2"))
    for order in range(kmax + 1):
        vals = {}
        for p, q in cells:
            lam = float(ha.sphere_laplace_eigenvalue(n, p, q))
            sob = sum(lam ** (l - k) * table[(p, q, k)] for l in range(order + 1) for k in range(l + 1))
            vals[(p, q)] = sob / ((p + 1.0) * (q + 1.0)) ** (2 * order - s - 1)
        a, b = window_spread(vals, 16, 32), window_spread(vals, 32, 64)
        reports.append(_report("sobolev_besov_equivalence", {"n": n, "s": s, "order": order, "pmax": pmax},
                               a, b, abs(b / a - 1.0), threshold,
                               note="Sobolev surrogate against the Besov weight [(p+1)(q+1)]^{2t-s-1}"))
    return reports


def _sampled_cells(limit=64, count=12, seed=0):
    rng = np.random.default_rng(seed)
    cells = {(1, 1), (1, limit - 1), (limit // 2, limit // 2)}
    while len(cells) < count:
        p = int(rng.integers(1, limit))
        q = int(rng.integers(1, limit - p + 1))
        cells.add((p, q))
    return sorted(cells)


@_timed
def check_sandwich(n=2, s_values=(0.0, 0.5), cells=None, slack=1e-6, points=40) -> List[VerificationReport]:
    """Pointwise and integrated sandwich bounds for the radial derivatives, k = 0..n.

    Pointwise: lower <= (2t d/dt)^k (t^{m/2} S_pq) <= upper at interior t.
    Integrated: c_pq,k(s) / [P^2 ((m+n-k)_k)^2 I_pqs(n-k, k)] lies in
    [1/((n-k+1)_k)^2, 4^k], with P the normalising prefactor of S_pq.
    """
    cells = _sampled_cells() if cells is None else cells
    t = (np.arange(points) + 0.5) / points
    reports = []
    for k in range(n + 1):
        worst_pt = 0.0
        for p, q in cells:
            prof = RadialProfile(n, p, q)
            d = np.asarray(radial_k_derivative(prof, k, t))
            lo, hi = sandwich(prof, k, t)
            viol = np.maximum(np.asarray(lo) / d - 1.0, d / np.asarray(hi) - 1.0)
            worst_pt = max(worst_pt, float(np.max(viol)))
        reports.append(_report("sandwich_pointwise", {"n": n, "k": k, "cells": len(cells), "points": points},
                               worst_pt, 0.0, max(worst_pt, 0.0), slack,
                               note="metric is the largest relative excursion outside the bounds"))
        for s in s_values:
            worst = 0.0
            lo_c, hi_c = 1.0 / pochhammer(n - k + 1, k) ** 2, 4.0 ** k
            for p, q in cells:
                m = p + q
                prof = RadialProfile(n, p, q)
                ck = coeffs.c_pq_k(n, p, q, k, s)
                denom = prof.prefactor ** 2 * pochhammer(m + n - k, k) ** 2 * i_pqs(n - k, k, p, q, s)
                ratio = ck / denom
                worst = max(worst, lo_c / ratio - 1.0, ratio / hi_c - 1.0)
            reports.append(_report("sandwich_integrated", {"n": n, "k": k, "s": s, "cells": len(cells)},
                                   lo_c, hi_c, max(worst, 0.0), slack,
                                   note="lhs/rhs are the bound constants; metric is the relative excursion"))
    return reports


@_timed
def check_i_ratio(n=2, s_values=(-0.5, 0.0, 1.0), kmax=4, cells=None, slack=1e-6) -> List[VerificationReport]:
    """I_pqs(n, k) / I_pqs(n, 0) lies in [k!/(s+2)_k, 1] for k <= kmax."""
    cells = _sampled_cells() if cells is None else cells
    reports = []
    for s in s_values:
        base = {c: i_pqs(n, 0, *c, s) for c in cells}
        for k in range(1, kmax + 1):
            lo = math.factorial(k) / pochhammer(s + 2, k)
            worst, rmin, rmax = 0.0, math.inf, 0.0
            for c in cells:
                r = i_pqs(n, k, *c, s) / base[c]
                rmin, rmax = min(rmin, r), max(rmax, r)
                worst = max(worst, lo / r - 1.0, r - 1.0)
            reports.append(_report("i_ratio_bounds", {"n": n, "s": s, "k": k, "cells": len(cells)},
                                   rmin, rmax, max(worst, 0.0), slack,
                                   note=f"lhs/rhs are the observed min/max; bounds [{lo:.6g}, 1]"))
    return reports


@_timed
def check_bergman_link(n=2, s_values=(-0.5, 0.0, 1.0), degmax=8, tol=1e-9) -> List[VerificationReport]:
    """(s+1)_n / Gamma(n) * c_pq,0(s) equals the Bergman coefficient c_pq(s)."""
    reports = []
    for s in s_values:
        const = pochhammer(s + 1, n) / math.gamma(n)
        worst = 0.0
        for p in range(degmax + 1):
            for q in range(degmax + 1):
                a = const * coeffs.c_pq_k(n, p, q, 0, s)
                b = coeffs.c_pq_value(n, p, q, s)
                worst = max(worst, abs(a - b) / b)
        reports.append(_report("sobolev_order0_is_bergman", {"n": n, "s": s, "degmax": degmax},
                               None, None, worst, tol))
    return reports


# ---------------------------------------------------------------------------
# blow-up at order n+1


@_timed
def check_blowup(n=2, cells=((1, 1), (1, 2), (2, 2)), r=1 - 1e-4, tol=0.05) -> List[VerificationReport]:
    """(1-r) N^{n+1}[r^{p+q} 2F1] against 2^n Gamma(p+q+n) / (Gamma(p) Gamma(q))."""
    reports = []
    for p, q in cells:
        value = mh.blowup_profile(n, p, q, [r])[0][1] * (1.0 - r)
        const = mh.blowup_constant(n, p, q)
        reports.append(_report("blowup_constant", {"n": n, "p": p, "q": q, "r": r},
                               value, const, abs(value / const - 1.0), tol))
    return reports


@_timed
def check_divergence(n=2, cells=((1, 1), (1, 2), (2, 2)), s=0.0) -> List[VerificationReport]:
    """c_pq,n+1(s) is flagged divergent for pq > 0, and stays finite for pluriharmonic (p, 0)."""
    reports = []
    for p, q in cells:
        v = coeffs.c_pq_k(n, p, q, n + 1, s)
        f = mh.MhFunction(n, (mh.MhComponent(p, q, _model_component(n, p, q)),))
        sob = mh.norm_sobolev(f, s, n + 1, force=True)
        flagged = v == coeffs.DIVERGENT and sob == coeffs.DIVERGENT
        reports.append(_report("divergence_flag", {"n": n, "p": p, "q": q, "k": n + 1, "s": s},
                               v, sob, 0.0 if flagged else 1.0, 0.0,
                               note="lhs is c_pq,k, rhs the forced Sobolev surrogate; both must be inf"))
    for p in (1, 3):
        v = coeffs.c_pq_k(n, p, 0, n + 1, s)
        reports.append(_report("pluriharmonic_finite", {"n": n, "p": p, "q": 0, "k": n + 1, "s": s},
                               v, None, 0.0 if math.isfinite(v) else 1.0, 0.0))
    return reports


# ---------------------------------------------------------------------------
# suites


@dataclass
class VerifyConfig:
    """Options shared by all suites; ``n`` restricts the dimensions where a suite sweeps several."""

    seed: int = 0
    n: Optional[int] = None

    def __post_init__(self):
        if self.n is not None and self.n < 2:
            raise ValueError("n must be at least 2")

    def dims(self, default: Sequence[int]) -> Tuple[int, ...]:
        return tuple(default) if self.n is None else (self.n,)

    def dim(self, default: int) -> int:
        return default if self.n is None else self.n


@dataclass(frozen=True)
class Suite:
    name: str
    header: str
    run: Callable[[VerifyConfig], List[VerificationReport]]


def _identity_pe(cfg):
    return (check_route_agreement(n_values=cfg.dims((2, 3)))
            + check_closed_form(n_values=cfg.dims((2, 3)))
            + check_closed_form_continuation(n=cfg.dim(2)))


def _asymptotics(cfg):
    return check_coefficient_asymptotics(n=cfg.dim(2))


def _eigenvalues(cfg):
    return check_eigenvalues(n_values=cfg.dims((2, 3, 4)), seed=cfg.seed)


def _radial_ode(cfg):
    return check_radial_ode(n_values=cfg.dims((2, 3))) + check_mharmonicity(n=cfg.dim(2), seed=cfg.seed)


def _norm_equivalence(cfg):
    return (check_tangential_modes(n=cfg.dim(2), seed=cfg.seed)
            + check_norm_envelope(n_values=cfg.dims((2, 3)), seed=cfg.seed)
            + check_hardy_limit(n=cfg.dim(2), seed=cfg.seed))


def _mean_value(cfg):
    return check_mean_value(seed=cfg.seed)


def _sobolev(cfg):
    n = cfg.dim(2)
    return (check_sobolev_asymptotics(n=n) + check_sandwich(n=n) + check_i_ratio(n=n)
            + check_bergman_link(n=n))


def _blowup(cfg):
    n = cfg.dim(2)
    return check_blowup(n=n) + check_divergence(n=n)


SUITES: Dict[str, Suite] = {s.name: s for s in [
    Suite("identity-pe", "route agreement of the two integral representations of c_pq(s); "
                         "closed form for c_0q(s) and its continuation", _identity_pe),
    Suite("asymptotics", "two-sided growth c_pq(s) ~ [(p+1)(q+1)]^{-s-1} via grid-window stabilisation",
          _asymptotics),
    Suite("eigenvalues", "exact eigenvalues of Box, R and the tangential sum of squares on H^{pq}",
          _eigenvalues),
    Suite("radial-ode", "radial equation for r^{p+q} S_pq(r^2); decay of the invariant Laplacian of "
                        "truncations", _radial_ode),
    Suite("norm-equivalence", "equivalence of the Bergman, tangential, Box-smoothed and Hardy-smoothed "
                              "norms on finite sums", _norm_equivalence),
    Suite("mean-value", "invariant mean-value property over Moebius-transformed spheres", _mean_value),
    Suite("sobolev", "growth of c_pq,k(s), sandwich bounds, I-ratio bounds, Sobolev/Besov equivalence "
                     "at integer order", _sobolev),
    Suite("blowup", "blow-up of N^{n+1} on S_pq near the boundary and the divergence of c_pq,n+1",
          _blowup),
]}


def run_suite(name: str, config: Optional[VerifyConfig] = None) -> List[VerificationReport]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name].run(config or VerifyConfig())
