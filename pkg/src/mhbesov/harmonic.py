"""Sparse polynomial algebra in (z, z-bar) on C^n.

A :class:`BigradedPolynomial` stores monomials z^alpha zbar^beta in a dict.
Coefficients are exact Gaussian rationals when every input coefficient is an
integer or a Fraction (or a :class:`GaussianRational`), and complex floats
otherwise.  All operators used for the eigenvalue identities have integer
coefficients, so exact inputs produce exact outputs and identities can be
tested with ``==``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, List, NamedTuple, Tuple

import numpy as np
from scipy.special import gammaln

# ---------------------------------------------------------------------------
# coefficients


class GaussianRational:
    """Exact complex number with Fraction real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        raise TypeError(f"cannot convert {x!r} exactly")

    def __add__(self, other):
        other = _exact_or_none(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _exact_or_none(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _exact_or_none(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _exact_or_none(other)
        if other is None:
            return NotImplemented
        den = other.re * other.re + other.im * other.im
        if den == 0:
            raise ZeroDivisionError("division by zero")
        num = self * other.conjugate()
        return GaussianRational(num.re / den, num.im / den)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, (GaussianRational, int, Fraction)):
            other = GaussianRational.coerce(other)
            return self.re == other.re and self.im == other.im
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __float__(self):
        if self.im:
            raise TypeError("non-real value")
        return float(self.re)

    def __repr__(self):
        if not self.im:
            return str(self.re)
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


def _exact_or_none(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return GaussianRational(x, 0)
    return None


def _is_exact_input(x) -> bool:
    return isinstance(x, (GaussianRational, Fraction)) or (isinstance(x, int) and not isinstance(x, bool))


# ---------------------------------------------------------------------------
# polynomials


class MultiIndexPair(NamedTuple):
    """Exponents of z (alpha) and of z-bar (beta)."""

    alpha: Tuple[int, ...]
    beta: Tuple[int, ...]


class BigradedPolynomial:
    """Immutable sparse polynomial sum_{alpha,beta} c z^alpha zbar^beta on C^n."""

    __slots__ = ("_n", "_terms", "_exact")

    def __init__(self, n: int, terms=None, exact: bool | None = None):
        if n < 1:
            raise ValueError("dimension must be >= 1")
        raw = dict(terms or {})
        if exact is None:
            exact = all(_is_exact_input(c) for c in raw.values())
        clean: Dict[MultiIndexPair, object] = {}
        for key, c in raw.items():
            alpha, beta = (tuple(int(a) for a in key[0]), tuple(int(b) for b in key[1]))
            if len(alpha) != n or len(beta) != n or min(alpha + beta) < 0:
                raise ValueError(f"bad multi-index {key!r} for n={n}")
            c = GaussianRational.coerce(c) if exact else complex(c)
            if c:
                mk = MultiIndexPair(alpha, beta)
                c = clean.get(mk, 0) + c if mk in clean else c
                if c:
                    clean[mk] = c
                else:
                    clean.pop(mk, None)
        self._n = n
        self._terms = clean
        self._exact = exact

    @classmethod
    def _raw(cls, n, terms, exact):
        # internal constructor for already-clean dicts
        obj = cls.__new__(cls)
        obj._n, obj._terms, obj._exact = n, terms, exact
        return obj

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, n: int, exact: bool = True):
        return cls._raw(n, {}, exact)

    @classmethod
    def constant(cls, n: int, c=1):
        return cls(n, {((0,) * n, (0,) * n): c})

    @classmethod
    def monomial(cls, n: int, alpha, beta, coeff=1):
        return cls(n, {(tuple(alpha), tuple(beta)): coeff})

    @classmethod
    def variable(cls, n: int, j: int, conjugate: bool = False):
        """z_j or (conjugate=True) zbar_j, with 1-based j."""
        _check_index(n, j)
        e = tuple(1 if i == j - 1 else 0 for i in range(n))
        zero = (0,) * n
        return cls.monomial(n, zero, e) if conjugate else cls.monomial(n, e, zero)

    @classmethod
    def norm_squared(cls, n: int):
        """|z|^2 = sum_j z_j zbar_j."""
        terms = {}
        for j in range(n):
            e = tuple(1 if i == j else 0 for i in range(n))
            terms[(e, e)] = 1
        return cls(n, terms)

    # -- properties --------------------------------------------------------
    @property
    def n(self) -> int:
        return self._n

    @property
    def exact(self) -> bool:
        return self._exact

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def bidegrees(self) -> set:
        return {(sum(k.alpha), sum(k.beta)) for k in self._terms}

    @property
    def is_bihomogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    @property
    def bidegree(self) -> Tuple[int, int]:
        degs = self.bidegrees()
        if len(degs) != 1:
            raise ValueError("polynomial is not bihomogeneous" if degs else "zero polynomial has no bidegree")
        return next(iter(degs))

    def coefficient(self, alpha, beta):
        zero = GaussianRational() if self._exact else 0j
        return self._terms.get(MultiIndexPair(tuple(alpha), tuple(beta)), zero)

    # -- conversions -------------------------------------------------------
    def to_float(self) -> "BigradedPolynomial":
        if not self._exact:
            return self
        return BigradedPolynomial._raw(self._n, {k: complex(c) for k, c in self._terms.items()}, False)

    def _align(self, other):
        if self._n != other._n:
            raise ValueError("dimension mismatch")
        if self._exact == other._exact:
            return self, other
        return self.to_float(), other.to_float()

    def arrays(self):
        """(alpha, beta, coeff) as numpy arrays of shapes (T, n), (T, n), (T,)."""
        T = len(self._terms)
        if T == 0:
            return np.zeros((0, self._n), int), np.zeros((0, self._n), int), np.zeros(0, complex)
        keys = list(self._terms)
        a = np.array([k.alpha for k in keys], dtype=np.int64)
        b = np.array([k.beta for k in keys], dtype=np.int64)
        c = np.array([complex(self._terms[k]) for k in keys], dtype=complex)
        return a, b, c

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, BigradedPolynomial):
            other = BigradedPolynomial.constant(self._n, other)
        x, y = self._align(other)
        out = dict(x._terms)
        for k, c in y._terms.items():
            v = out.get(k)
            v = c if v is None else v + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return BigradedPolynomial._raw(x._n, out, x._exact)

    __radd__ = __add__

    def __neg__(self):
        return BigradedPolynomial._raw(self._n, {k: -c for k, c in self._terms.items()}, self._exact)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "BigradedPolynomial":
        exact = self._exact and _is_exact_input(c)
        src = self if exact else self.to_float()
        c = GaussianRational.coerce(c) if exact else complex(c)
        if not c:
            return BigradedPolynomial.zero(self._n, exact)
        return BigradedPolynomial._raw(self._n, {k: v * c for k, v in src._terms.items()}, exact)

    def __mul__(self, other):
        if not isinstance(other, BigradedPolynomial):
            return self.scale(other)
        x, y = self._align(other)
        out: Dict[MultiIndexPair, object] = {}
        for k1, c1 in x._terms.items():
            for k2, c2 in y._terms.items():
                key = MultiIndexPair(tuple(a + b for a, b in zip(k1.alpha, k2.alpha)),
                                     tuple(a + b for a, b in zip(k1.beta, k2.beta)))
                v = out.get(key)
                out[key] = c1 * c2 if v is None else v + c1 * c2
        return BigradedPolynomial._raw(x._n, {k: v for k, v in out.items() if v}, x._exact)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        if self._exact and _is_exact_input(c):
            return self.scale(GaussianRational(1) / GaussianRational.coerce(c))
        return self.scale(1.0 / complex(c))

    def __eq__(self, other):
        if not isinstance(other, BigradedPolynomial):
            return NotImplemented
        return self._n == other._n and self._terms == other._terms

    def __hash__(self):
        return hash((self._n, frozenset(self._terms.items())))

    def conjugate(self) -> "BigradedPolynomial":
        """Complex conjugate: swaps z and zbar exponents and conjugates coefficients."""
        return BigradedPolynomial._raw(
            self._n, {MultiIndexPair(k.beta, k.alpha): c.conjugate() for k, c in self._terms.items()}, self._exact)

    def max_abs_coefficient(self) -> float:
        return max((abs(complex(c)) for c in self._terms.values()), default=0.0)

    # -- evaluation --------------------------------------------------------
    def __call__(self, z):
        """Evaluate at one point (shape (n,)) or many points (shape (..., n))."""
        z = np.asarray(z, dtype=complex)
        if z.shape[-1] != self._n:
            raise ValueError("last axis of z must have length n")
        a, b, c = self.arrays()
        flat = z.reshape(-1, self._n)
        out = np.zeros(flat.shape[0], dtype=complex)
        zc = np.conj(flat)
        for i in range(len(c)):
            term = np.full(flat.shape[0], c[i])
            for j in range(self._n):
                if a[i, j]:
                    term = term * flat[:, j] ** a[i, j]
                if b[i, j]:
                    term = term * zc[:, j] ** b[i, j]
            out += term
        out = out.reshape(z.shape[:-1])
        return complex(out) if out.ndim == 0 else out

    def __repr__(self):
        if not self._terms:
            return f"BigradedPolynomial(n={self._n}, 0)"
        parts = [f"{c}*z^{list(k.alpha)}*zbar^{list(k.beta)}" for k, c in sorted(self._terms.items())]
        return f"BigradedPolynomial(n={self._n}, " + " + ".join(parts) + ")"


def _check_index(n: int, j: int):
    if not 1 <= j <= n:
        raise IndexError(f"index {j} out of range 1..{n}")


def _bump(t: Tuple[int, ...], i: int, d: int) -> Tuple[int, ...]:
    return t[:i] + (t[i] + d,) + t[i + 1:]


# ---------------------------------------------------------------------------
# differential operators


def wirtinger(poly: BigradedPolynomial, j: int, conjugate: bool = False) -> BigradedPolynomial:
    """d/dz_j (or d/dzbar_j) applied term-wise; j is 1-based."""
    _check_index(poly.n, j)
    i = j - 1
    out = {}
    for k, c in poly.terms.items():
        e = k.beta[i] if conjugate else k.alpha[i]
        if e:
            key = MultiIndexPair(k.alpha, _bump(k.beta, i, -1)) if conjugate else \
                MultiIndexPair(_bump(k.alpha, i, -1), k.beta)
            out[key] = c * e
    return BigradedPolynomial._raw(poly.n, out, poly.exact)


def multiply_variable(poly: BigradedPolynomial, j: int, conjugate: bool = False) -> BigradedPolynomial:
    """z_j * poly (or zbar_j * poly)."""
    _check_index(poly.n, j)
    i = j - 1
    out = {}
    for k, c in poly.terms.items():
        key = MultiIndexPair(k.alpha, _bump(k.beta, i, 1)) if conjugate else \
            MultiIndexPair(_bump(k.alpha, i, 1), k.beta)
        out[key] = c
    return BigradedPolynomial._raw(poly.n, out, poly.exact)


def apply_L(poly: BigradedPolynomial, j: int, k: int, conjugate: bool = False) -> BigradedPolynomial:
    """L_jk = zbar_j d/dz_k - zbar_k d/dz_j, or its conjugate z_j d/dzbar_k - z_k d/dzbar_j."""
    _check_index(poly.n, j)
    _check_index(poly.n, k)
    if j == k:
        return BigradedPolynomial.zero(poly.n, poly.exact)
    first = multiply_variable(wirtinger(poly, k, conjugate), j, not conjugate)
    second = multiply_variable(wirtinger(poly, j, conjugate), k, not conjugate)
    return first - second


def _euler_scale(poly: BigradedPolynomial, weight) -> BigradedPolynomial:
    out = {}
    for key, c in poly.terms.items():
        w = weight(sum(key.alpha), sum(key.beta))
        if w:
            out[key] = c * w
    return BigradedPolynomial._raw(poly.n, out, poly.exact)


def apply_R(poly: BigradedPolynomial) -> BigradedPolynomial:
    """R = sum_j (z_j d/dz_j - zbar_j d/dzbar_j); by Euler's identity it scales z^a zbar^b by |a| - |b|."""
    return _euler_scale(poly, lambda p, q: p - q)


def apply_N(poly: BigradedPolynomial) -> BigradedPolynomial:
    """N = sum_j (z_j d/dz_j + zbar_j d/dzbar_j); scales z^a zbar^b by |a| + |b|."""
    return _euler_scale(poly, lambda p, q: p + q)


def apply_box(poly: BigradedPolynomial) -> BigradedPolynomial:
    """Box = -sum_{j,k} (L_jk Lbar_jk + Lbar_jk L_jk)."""
    n = poly.n
    acc = BigradedPolynomial.zero(n, poly.exact)
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            if j == k:
                continue
            acc = acc + apply_L(apply_L(poly, j, k, True), j, k, False)
            acc = acc + apply_L(apply_L(poly, j, k, False), j, k, True)
    return -acc


def laplacian(poly: BigradedPolynomial) -> BigradedPolynomial:
    """Euclidean Laplacian 4 sum_j d/dz_j d/dzbar_j."""
    acc = BigradedPolynomial.zero(poly.n, poly.exact)
    for j in range(1, poly.n + 1):
        acc = acc + wirtinger(wirtinger(poly, j, True), j, False)
    return acc * 4


def is_harmonic(poly: BigradedPolynomial) -> bool:
    return laplacian(poly).is_zero


def invariant_laplacian(poly: BigradedPolynomial) -> BigradedPolynomial:
    """4 (1 - |z|^2) sum_{j,k} (delta_jk - z_j zbar_k) d/dz_j d/dzbar_k."""
    n = poly.n
    inner = BigradedPolynomial.zero(n, poly.exact)
    for j in range(1, n + 1):
        dj = wirtinger(poly, j, False)
        for k in range(1, n + 1):
            djk = wirtinger(dj, k, True)
            if djk.is_zero:
                continue
            if j == k:
                inner = inner + djk
            inner = inner - multiply_variable(multiply_variable(djk, j, False), k, True)
    one_minus = BigradedPolynomial.constant(n, 1) - BigradedPolynomial.norm_squared(n)
    return (one_minus * inner) * 4


# ---------------------------------------------------------------------------
# tangential fields


@dataclass(frozen=True)
class TangentialField:
    """One of the fields L_jk (kind "L"), Lbar_jk (kind "Lbar"), or R (kind "R")."""

    kind: str
    j: int = 0
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("L", "Lbar", "R"):
            raise ValueError(f"unknown field kind {self.kind!r}")

    def __call__(self, poly: BigradedPolynomial) -> BigradedPolynomial:
        if self.kind == "R":
            return apply_R(poly)
        return apply_L(poly, self.j, self.k, self.kind == "Lbar")

    def adjoint(self, poly: BigradedPolynomial) -> BigradedPolynomial:
        """Adjoint on L^2 of the sphere: L* = -Lbar, Lbar* = -L, R* = R."""
        if self.kind == "R":
            return apply_R(poly)
        return -apply_L(poly, self.j, self.k, self.kind == "L")

    @property
    def is_zero(self) -> bool:
        return self.kind != "R" and self.j == self.k


def tangential_fields(n: int, include_R: bool = False) -> List[TangentialField]:
    """All 2n^2 fields L_jk, Lbar_jk over ordered pairs (j, k), optionally preceded by R.

    The family without R enters the tangential norms; the family with R is
    the one paired with the normal derivative N in the Sobolev norms.
    Pairs with j = k give the zero field and are kept so the count is 2n^2.
    """
    fields = [TangentialField("R")] if include_R else []
    for kind in ("L", "Lbar"):
        for j, k in itertools.product(range(1, n + 1), repeat=2):
            fields.append(TangentialField(kind, j, k))
    return fields


def tangential_sum_of_squares(poly: BigradedPolynomial, include_R: bool = True) -> BigradedPolynomial:
    """sum_X X* X over the tangential family; equals Box + R^2 when R is included."""
    acc = BigradedPolynomial.zero(poly.n, poly.exact)
    for field in tangential_fields(poly.n, include_R):
        if field.is_zero:
            continue
        acc = acc + field.adjoint(field(poly))
    return acc


def box_eigenvalue(n: int, p: int, q: int) -> int:
    return 4 * p * q + (2 * n - 2) * (p + q)


def sphere_laplace_eigenvalue(n: int, p: int, q: int) -> int:
    return (p + q) * (p + q + 2 * n - 2)


# ---------------------------------------------------------------------------
# harmonic decomposition


def _radial_power(n: int, k: int, exact: bool) -> BigradedPolynomial:
    out = BigradedPolynomial.constant(n, 1)
    r2 = BigradedPolynomial.norm_squared(n)
    for _ in range(k):
        out = out * r2
    return out if exact else out.to_float()


def harmonic_decompose(poly: BigradedPolynomial) -> List[Tuple[int, BigradedPolynomial]]:
    """Write a bihomogeneous P of bidegree (a, b) as sum_k |z|^{2k} h_k, h_k harmonic.

    h_k has bidegree (a - k, b - k).  The recursion decomposes Delta P, uses
    Delta(|z|^{2k} h) = 4k(k + n - 1 + deg h)|z|^{2k-2} h, and fixes h_0 by
    subtraction.  Only nonzero components are returned, sorted by k.
    """
    n = poly.n
    if poly.is_zero:
        return []
    a, b = poly.bidegree
    lap = laplacian(poly)
    if lap.is_zero:
        return [(0, poly)]
    higher = []
    for k1, g in harmonic_decompose(lap):
        k = k1 + 1
        d = a + b - 2 * k
        c = 4 * k * (k + n - 1 + d)
        higher.append((k, g / c))
    h0 = poly
    for k, h in higher:
        h0 = h0 - _radial_power(n, k, poly.exact) * h
    out = [(0, h0)] if not h0.is_zero else []
    return out + higher


def reconstruct(n: int, components: Iterable[Tuple[int, BigradedPolynomial]], exact: bool = True):
    acc = BigradedPolynomial.zero(n, exact)
    for k, h in components:
        acc = acc + _radial_power(n, k, h.exact) * h
    return acc


def harmonic_projection(poly: BigradedPolynomial) -> BigradedPolynomial:
    """The k = 0 component h_0 of the decomposition (zero if absent)."""
    for k, h in harmonic_decompose(poly):
        if k == 0:
            return h
    return BigradedPolynomial.zero(poly.n, poly.exact)


# ---------------------------------------------------------------------------
# inner products from monomial moments


def _groups(poly: BigradedPolynomial):
    out: Dict[Tuple[int, ...], list] = {}
    for key, c in poly.terms.items():
        out.setdefault(tuple(x - y for x, y in zip(key.alpha, key.beta)), []).append((key, c))
    return out


def _exact_moment(mu, n, kind, s):
    num = math.prod(math.factorial(m) for m in mu)
    tot = sum(mu)
    if kind == "sphere":
        return Fraction(math.factorial(n - 1) * num, math.factorial(n - 1 + tot))
    den = Fraction(1)
    for i in range(tot):
        den *= s + n + 1 + i
    return Fraction(num) / den


def _inner(P: BigradedPolynomial, Q: BigradedPolynomial, kind: str, s=None):
    if P.n != Q.n:
        raise ValueError("dimension mismatch")
    n = P.n
    gp, gq = _groups(P), _groups(Q)
    exact = P.exact and Q.exact and (kind == "sphere" or isinstance(s, (int, Fraction)))
    if exact:
        total = GaussianRational()
        for g, tp in gp.items():
            for kp, cp in tp:
                for kq, cq in gq.get(g, ()):
                    mu = tuple(x + y for x, y in zip(kp.alpha, kq.beta))
                    total = total + cp * cq.conjugate() * _exact_moment(mu, n, kind, s)
        return total
    total = 0j
    for g, tp in gp.items():
        tq = gq.get(g)
        if not tq:
            continue
        ap = np.array([k.alpha for k, _ in tp])
        cp = np.array([complex(c) for _, c in tp])
        bq = np.array([k.beta for k, _ in tq])
        cq = np.array([complex(c) for _, c in tq])
        mu = ap[:, None, :] + bq[None, :, :]
        tot = mu.sum(axis=-1)
        logm = gammaln(mu + 1.0).sum(axis=-1)
        if kind == "sphere":
            logm = logm + gammaln(n) - gammaln(n + tot)
        else:
            logm = logm - (gammaln(s + n + 1 + tot) - gammaln(s + n + 1))
        total += np.einsum("i,ij,j->", cp, np.exp(logm), np.conj(cq))
    return complex(total)


def sphere_inner_product(P: BigradedPolynomial, Q: BigradedPolynomial):
    """<P, Q> in L^2 of the normalized surface measure on the unit sphere."""
    return _inner(P, Q, "sphere")


def ball_inner_product(P: BigradedPolynomial, Q: BigradedPolynomial, s):
    """<P, Q> for the probability measure proportional to (1 - |z|^2)^s on the ball."""
    if not s > -1:
        raise ValueError("ball inner product needs s > -1")
    return _inner(P, Q, "ball", s)


def sphere_norm_squared(P: BigradedPolynomial) -> float:
    return complex(sphere_inner_product(P, P)).real


def ball_norm_squared(P: BigradedPolynomial, s) -> float:
    return complex(ball_inner_product(P, P, s)).real
