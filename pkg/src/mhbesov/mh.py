"""Finite Peter-Weyl sums of solid M-harmonic functions and their norms.

An :class:`MhFunction` is f = (I + Box)^tau sum_{p,q} S_pq(|z|^2) h_pq(z, zbar)
with finitely many harmonic components h_pq of bidegree (p, q).  The
smoothing exponent tau (default 0) is kept symbolically so that repeated
fractional powers compose exactly.

Norms come in two flavours: spectral forms that combine the coefficients
c_pq(s), c_pq,k(s) with sphere norms of the components, and a symbolic form
of the tangential norm that applies the vector fields to a truncated Taylor
polynomial and integrates with exact ball moments.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import gammaln

from . import harmonic as ha
from .coeffs import DIVERGENT, c_pq_k, c_pq_value
from .harmonic import BigradedPolynomial
from .radial import RadialProfile, radial_factor, radial_k_derivative, s_pq


@dataclass(frozen=True)
class MhComponent:
    p: int
    q: int
    h: BigradedPolynomial


@dataclass(frozen=True)
class MhFunction:
    """(I + Box)^tau applied to sum_{p,q} S_pq(|z|^2) h_pq."""

    n: int
    components: Tuple[MhComponent, ...]
    tau: float = 0.0

    def __post_init__(self):
        comps = tuple(c if isinstance(c, MhComponent) else MhComponent(*c) for c in self.components)
        seen = set()
        for c in comps:
            if c.h.n != self.n:
                raise ValueError(f"component ({c.p},{c.q}) has dimension {c.h.n}, expected {self.n}")
            if (c.p, c.q) in seen:
                raise ValueError(f"duplicate component ({c.p},{c.q})")
            seen.add((c.p, c.q))
            if c.h.is_zero:
                continue
            if c.h.bidegree != (c.p, c.q):
                raise ValueError(f"component labelled ({c.p},{c.q}) has bidegree {c.h.bidegree}")
            if not _harmonic(c.h):
                raise ValueError(f"component ({c.p},{c.q}) is not harmonic")
        comps = tuple(sorted((c for c in comps if not c.h.is_zero), key=lambda c: (c.p, c.q)))
        object.__setattr__(self, "components", comps)

    @classmethod
    def from_polynomials(cls, n: int, polys: Iterable[BigradedPolynomial], tau: float = 0.0):
        comps = [MhComponent(*h.bidegree, h) for h in polys if not h.is_zero]
        return cls(n, tuple(comps), tau)

    def eigen_scale(self, p: int, q: int) -> float:
        """(lambda_pq + 1)^tau with lambda_pq the Box eigenvalue."""
        if self.tau == 0:
            return 1.0
        return float(ha.box_eigenvalue(self.n, p, q) + 1) ** self.tau

    def sphere_weights(self) -> List[Tuple[int, int, float]]:
        """(p, q, ||component||^2 on the sphere), smoothing included."""
        return [(c.p, c.q, self.eigen_scale(c.p, c.q) ** 2 * ha.sphere_norm_squared(c.h))
                for c in self.components]

    def value_at_origin(self) -> complex:
        for c in self.components:
            if c.p == 0 and c.q == 0:
                return complex(next(iter(c.h.terms.values())))
        return 0j


def _harmonic(h: BigradedPolynomial) -> bool:
    lap = ha.laplacian(h)
    if h.exact:
        return lap.is_zero
    # float coefficients: allow rounding-level cancellation only
    scale = h.max_abs_coefficient() * 4 * (sum(h.bidegree) + 1) ** 2
    return lap.max_abs_coefficient() <= 1e-13 * scale


# ---------------------------------------------------------------------------
# evaluation and truncation


def _check_points(z, n):
    z = np.asarray(z, dtype=complex)
    if z.shape[-1] != n:
        raise ValueError("points must have last axis of length n")
    r2 = np.sum(np.abs(z) ** 2, axis=-1)
    if np.any(r2 >= 1):
        raise ValueError("points must lie in the open unit ball")
    return z, r2


def evaluate(f: MhFunction, z):
    """f at one point (shape (n,)) or at many (shape (..., n)), |z| < 1."""
    z, r2 = _check_points(z, f.n)
    out = np.zeros(r2.shape, dtype=complex)
    for c in f.components:
        prof = RadialProfile(f.n, c.p, c.q)
        out = out + f.eigen_scale(c.p, c.q) * np.asarray(s_pq(prof, r2)) * c.h(z)
    return complex(out) if out.ndim == 0 else out


def taylor_coefficients(n, p: int, q: int, K: int) -> np.ndarray:
    """a_0..a_K with S_pq(t) = sum_j a_j t^j."""
    prof = RadialProfile(n, p, q)
    j = np.arange(K + 1)
    if p == 0 or q == 0:
        return (j == 0).astype(float)
    logs = (gammaln(p + j) - gammaln(p) + gammaln(q + j) - gammaln(q) - gammaln(j + 1)
            - gammaln(p + q + n + j) + gammaln(p + q + n))
    return prof.prefactor * np.exp(logs)


def truncate_to_polynomial(f: MhFunction, K: int) -> BigradedPolynomial:
    """sum_pq scale * sum_{j <= K} a_j |z|^{2j} h_pq, in floating coefficients."""
    if K < 0:
        raise ValueError("K must be non-negative")
    n = f.n
    r2 = BigradedPolynomial.norm_squared(n).to_float()
    acc = BigradedPolynomial.zero(n, exact=False)
    for c in f.components:
        a = taylor_coefficients(n, c.p, c.q, K) * f.eigen_scale(c.p, c.q)
        term = c.h.to_float()
        for j in range(K + 1):
            if a[j] != 0:
                acc = acc + term * a[j]
            if j < K and np.any(a[j + 1:] != 0):
                term = term * r2
    return acc


def truncation_tail_bound(f: MhFunction, K: int, r0: float) -> float:
    """Upper bound for sup_{|z| <= r0} |f - truncate_to_polynomial(f, K)|.

    Uses |h(z)| <= (sum of |coefficients|) r0^{p+q} and the exact tail
    S_pq(r0^2) - sum_{j <= K} a_j r0^{2j} of the positive Taylor series.
    """
    total = 0.0
    t = r0 * r0
    for c in f.components:
        a = taylor_coefficients(f.n, c.p, c.q, K)
        tail = max(s_pq(RadialProfile(f.n, c.p, c.q), t) - float(np.polyval(a[::-1], t)), 0.0)
        l1 = sum(abs(complex(v)) for v in c.h.terms.values())
        total += f.eigen_scale(c.p, c.q) * l1 * r0 ** (c.p + c.q) * tail
    return total


def mharmonicity_residual(f: MhFunction, K: int, sample_points) -> float:
    """max |invariant Laplacian of the K-truncation| over the sample points."""
    z, _ = _check_points(sample_points, f.n)
    res = ha.invariant_laplacian(truncate_to_polynomial(f, K))
    if res.is_zero:
        return 0.0
    return float(np.max(np.abs(res(z))))


def sphere_points(n: int, count: int, radius: float, seed: int) -> np.ndarray:
    """Uniform points on the sphere of the given radius (normalised complex Gaussians)."""
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
    return radius * g / np.linalg.norm(g, axis=1, keepdims=True)


def apply_box_power(f: MhFunction, t: float) -> MhFunction:
    """(I + Box)^t f; the exponents add, so powers compose exactly."""
    return replace(f, tau=f.tau + t)


# ---------------------------------------------------------------------------
# norms


def norm_bergman(f: MhFunction, s: float) -> float:
    """sum_pq c_pq(s) ||h_pq||^2, for s > -n-1."""
    return sum(c_pq_value(f.n, p, q, s) * w for p, q, w in f.sphere_weights())


def norm_besov_sharp(f: MhFunction, s: float) -> float:
    """sum_pq ||h_pq||^2 / ((p+1)(q+1))^{s+1}, the model norm all others are compared with."""
    return sum(w / ((p + 1.0) * (q + 1.0)) ** (s + 1.0) for p, q, w in f.sphere_weights())


@lru_cache(maxsize=None)
def tangential_weight(n: int, p: int, q: int, m: int) -> int:
    """sum over m-fold field products of ||X...X h||^2 / ||h||^2 on the sphere, h in H^{pq}.

    One family step splits exactly as sum ||L_jk h||^2 = 2p(q+n-1)||h||^2
    (landing in bidegree (p-1, q+1)) and sum ||Lbar_jk h||^2 = 2q(p+n-1)||h||^2
    (landing in (p+1, q-1)); the weight is the sum over all such paths.  For
    m <= 1 it equals (4pq + (2n-2)(p+q))^m; for m >= 2 it is only comparable
    to that power, because Box does not commute with the single fields.
    """
    if m == 0:
        return 1
    out = 0
    if p > 0:
        out += 2 * p * (q + n - 1) * tangential_weight(n, p - 1, q + 1, m - 1)
    if q > 0:
        out += 2 * q * (p + n - 1) * tangential_weight(n, p + 1, q - 1, m - 1)
    return out


def _tangential_spectral(f: MhFunction, s: float, m: int) -> float:
    total = abs(f.value_at_origin()) ** 2
    for p, q, w in f.sphere_weights():
        if p + q > 0:
            total += float(tangential_weight(f.n, p, q, m)) * c_pq_value(f.n, p, q, s + m) * w
    return total


def tangential_symbolic(f: MhFunction, s: float, m: int, K: int = 40,
                        estimate: bool = True) -> Tuple[float, float]:
    """Symbolic tangential norm and a truncation-change estimate.

    Applies every m-fold product of the 2n^2 fields to the K-truncated
    polynomial, integrates exactly against the weight of exponent s + m,
    and adds |f(0)|^2.  The estimate is the change from truncation 3K/4
    (NaN when ``estimate`` is false, which skips the second truncation).
    """
    if not s + m > -1:
        raise ValueError("the symbolic tangential norm needs s + m > -1")

    def at(k):
        poly = truncate_to_polynomial(f, k)
        fields = [fl for fl in ha.tangential_fields(f.n) if not fl.is_zero]
        layer = [poly]
        for _ in range(m):
            layer = [fl(g) for g in layer for fl in fields]
            layer = [g for g in layer if not g.is_zero]
        return abs(f.value_at_origin()) ** 2 + sum(ha.ball_norm_squared(g, s + m) for g in layer)

    value = at(K)
    if not estimate:
        return value, math.nan
    return value, abs(value - at((3 * K) // 4))


def norm_tangential(f: MhFunction, s: float, m: int, mode: str = "spectral", K: int = 40) -> float:
    """Sum over m-fold products of tangential fields of ||X...X f||^2_{s+m}, plus |f(0)|^2."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if mode == "spectral":
        return _tangential_spectral(f, s, m)
    if mode == "symbolic":
        return tangential_symbolic(f, s, m, K, estimate=False)[0]
    raise ValueError(f"unknown mode {mode!r}")


def norm_box_smoothed(f: MhFunction, s: float, t: float) -> float:
    """||(I + Box)^{t/2} f||^2_{s+t} = sum (lambda+1)^t c_pq(s+t) ||h||^2."""
    return sum(float(ha.box_eigenvalue(f.n, p, q) + 1) ** t * c_pq_value(f.n, p, q, s + t) * w
               for p, q, w in f.sphere_weights())


def norm_hardy_smoothed(f: MhFunction, s: float) -> float:
    """sup_r ||((I + Box)^{-(s+1)/2} f)_r||^2 on the sphere, in closed form."""
    return sum(float(ha.box_eigenvalue(f.n, p, q) + 1) ** (-s - 1) * w for p, q, w in f.sphere_weights())


def hardy_dilate_norms(f: MhFunction, s: float, radii: Sequence[float]) -> np.ndarray:
    """Sphere norms of the smoothed dilates g_r(zeta) = g(r zeta), g = (I+Box)^{-(s+1)/2} f.

    Each g_r restricted to the sphere is the polynomial sum_pq rho_pq(r) h_pq,
    whose norm is computed with the exact sphere moments (cross terms included).
    """
    g = apply_box_power(f, -(s + 1) / 2.0)
    out = []
    for r in radii:
        poly = BigradedPolynomial.zero(f.n, exact=False)
        for c in g.components:
            rho = radial_factor(RadialProfile(f.n, c.p, c.q), r) * g.eigen_scale(c.p, c.q)
            poly = poly + c.h.to_float() * rho
        out.append(ha.sphere_norm_squared(poly))
    return np.array(out)


def norm_sobolev(f: MhFunction, s: float, m: int, force: bool = False) -> float:
    """sum_{l<=m} sum_{k<=l} sum_pq [(p+q)(p+q+2n-2)]^{l-k} c_pq,k(s) ||h||^2.

    A spectral surrogate equivalent to the weighted Sobolev norm of order m.
    Orders above n are refused unless ``force`` is set; m = n+1 then returns
    ``DIVERGENT`` as soon as a component with pq > 0 is present.
    """
    if not s > -1:
        raise ValueError("the Sobolev norm needs s > -1")
    limit = f.n + 1 if force else f.n
    if not 0 <= m <= limit:
        raise ValueError(f"m must lie in 0..{limit}")
    total = 0.0
    for p, q, w in f.sphere_weights():
        lam = float(ha.sphere_laplace_eigenvalue(f.n, p, q))
        for k in range(m + 1):
            ck = c_pq_k(f.n, p, q, k, s)
            if ck == 0:
                continue
            if ck == DIVERGENT:
                return DIVERGENT
            total += ck * w * sum(lam ** (l - k) for l in range(k, m + 1))
    return total


@dataclass(frozen=True)
class NormReport:
    """The four equivalent quantities, the Sobolev surrogate, and their pairwise ratios."""

    s: float
    m: int
    t: float
    bergman_s: float
    tangential_m: float
    box_smoothed_t: float
    hardy_smoothed: float
    sobolev_m: Optional[float]
    ratios: Dict[str, float] = field(default_factory=dict)

    QUANTITIES = ("bergman_s", "tangential_m", "box_smoothed_t", "hardy_smoothed")

    def as_dict(self) -> dict:
        return {"s": self.s, "m": self.m, "t": self.t, "bergman_s": self.bergman_s,
                "tangential_m": self.tangential_m, "box_smoothed_t": self.box_smoothed_t,
                "hardy_smoothed": self.hardy_smoothed, "sobolev_m": self.sobolev_m,
                "ratios": dict(self.ratios)}


def default_orders(s: float) -> Tuple[int, float]:
    """Smallest admissible integer m > -s-1 and t = m."""
    m = max(0, math.floor(-s - 1) + 1)
    return m, float(m)


def norm_report(f: MhFunction, s: float, m: Optional[int] = None, t: Optional[float] = None,
                sobolev_order: Optional[int] = None) -> NormReport:
    dm, dt = default_orders(s)
    m = dm if m is None else m
    t = dt if t is None else t
    if not m > -s - 1 or not t > -s - 1:
        raise ValueError("need m > -s-1 and t > -s-1")
    vals = {
        "bergman_s": norm_bergman(f, s),
        "tangential_m": norm_tangential(f, s, m),
        "box_smoothed_t": norm_box_smoothed(f, s, t),
        "hardy_smoothed": norm_hardy_smoothed(f, s),
    }
    sob = None
    if s > -1:
        order = f.n if sobolev_order is None else sobolev_order
        sob = norm_sobolev(f, s, order)
    ratios = {}
    for a, b in itertools.combinations(NormReport.QUANTITIES, 2):
        ratios[f"{a}/{b}"] = vals[a] / vals[b] if vals[b] else math.nan
    return NormReport(s, m, t, sobolev_m=sob, ratios=ratios, **vals)


# ---------------------------------------------------------------------------
# Moebius maps and the mean-value property


def moebius(z, w):
    """phi_z(w) = (z - P_z w - sqrt(1-|z|^2)(w - P_z w)) / (1 - <w, z>); phi_0(w) = -w.

    ``w`` may hold many points along its leading axes.
    """
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    a2 = float(np.sum(np.abs(z) ** 2))
    if a2 >= 1:
        raise ValueError("need |z| < 1")
    if a2 == 0:
        return -w
    wz = np.sum(w * np.conj(z), axis=-1)
    den = 1.0 - wz
    if np.any(den == 0):
        raise ZeroDivisionError("<w, z> = 1")
    pw = (wz / a2)[..., None] * z
    return (z - pw - math.sqrt(1.0 - a2) * (w - pw)) / den[..., None]


def mean_value_residual(f: MhFunction, z, r: float, samples: int, seed: int) -> Tuple[float, float]:
    """|f(z) - mean_zeta f(phi_z(r zeta))| and the Monte Carlo standard error."""
    z = np.asarray(z, dtype=complex)
    zeta = sphere_points(f.n, samples, r, seed)
    vals = evaluate(f, moebius(z, zeta))
    mean = vals.mean()
    stderr = math.sqrt((vals.real.var(ddof=1) + vals.imag.var(ddof=1)) / samples)
    return abs(evaluate(f, z) - mean), stderr


# ---------------------------------------------------------------------------
# blow-up of N^{n+1}


def blowup_constant(n: int, p: int, q: int) -> float:
    """2^n Gamma(p+q+n) / (Gamma(p) Gamma(q))."""
    return math.exp(n * math.log(2.0) + gammaln(p + q + n) - gammaln(p) - gammaln(q))


def blowup_profile(n: int, p: int, q: int, r_grid) -> List[Tuple[float, float]]:
    """(r, N^{n+1}[r^{p+q} 2F1(p, q; p+q+n; r^2)]) along r_grid, r <= 1 - 1e-6."""
    if p < 1 or q < 1:
        raise ValueError("the blow-up profile needs p, q >= 1")
    r = np.asarray(r_grid, dtype=float)
    if np.any((r <= 0) | (r > 1 - 1e-6)):
        raise ValueError("r must lie in (0, 1 - 1e-6]")
    prof = RadialProfile(n, p, q)
    vals = np.atleast_1d(radial_k_derivative(prof, n + 1, r * r)) / prof.prefactor
    return list(zip(r.tolist(), vals.tolist()))


# ---------------------------------------------------------------------------
# random finite sums


def random_harmonic(n: int, p: int, q: int, rng: np.random.Generator, terms: int = 3,
                    max_coeff: int = 5) -> BigradedPolynomial:
    """Harmonic projection of a random integer (p, q)-bihomogeneous polynomial (nonzero)."""
    for _ in range(100):
        raw = {}
        for _ in range(terms):
            a = tuple(np.bincount(rng.integers(0, n, p), minlength=n).tolist()) if p else (0,) * n
            b = tuple(np.bincount(rng.integers(0, n, q), minlength=n).tolist()) if q else (0,) * n
            c = int(rng.integers(-max_coeff, max_coeff + 1))
            raw[(a, b)] = raw.get((a, b), 0) + c
        h = ha.harmonic_projection(BigradedPolynomial(n, raw))
        if not h.is_zero:
            return h
    raise RuntimeError("could not draw a nonzero harmonic polynomial")


def random_mh_function(n: int, max_degree: int, count: int, seed: int) -> MhFunction:
    """Random finite sum with ``count`` distinct bidegrees p, q <= max_degree."""
    rng = np.random.default_rng(seed)
    cells = [(p, q) for p in range(max_degree + 1) for q in range(max_degree + 1)]
    chosen = rng.choice(len(cells), size=min(count, len(cells)), replace=False)
    comps = [MhComponent(*cells[i], random_harmonic(n, *cells[i], rng)) for i in sorted(chosen)]
    return MhFunction(n, tuple(comps))
