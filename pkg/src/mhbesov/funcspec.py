"""Function-spec files: JSON descriptions of finite M-harmonic sums.

Layout::

    {
      "n": 2,
      "components": [
        {"p": 1, "q": 1,
         "terms": [{"alpha": [1, 0], "beta": [0, 1], "re": 1.0, "im": 0.0}]}
      ]
    }

Validation is strict: unknown keys are rejected, every multi-index must have
length n, each component must be bihomogeneous of its stated bidegree, and
its Euclidean Laplacian must vanish exactly.  Numeric coefficients are read
as exact rationals (a float is converted to the exact binary fraction it
stores), so the harmonicity check involves no rounding.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from . import harmonic as ha
from .harmonic import BigradedPolynomial, GaussianRational
from .mh import MhComponent, MhFunction

_TOP_KEYS = {"n", "components"}
_COMPONENT_KEYS = {"p", "q", "terms"}
_TERM_KEYS = {"alpha", "beta", "re", "im"}


class FunctionSpecError(ValueError):
    """Raised for malformed or non-harmonic function specs."""


def _require_keys(obj: Any, allowed: set, required: set, where: str):
    if not isinstance(obj, dict):
        raise FunctionSpecError(f"{where}: expected an object")
    unknown = set(obj) - allowed
    if unknown:
        raise FunctionSpecError(f"{where}: unknown field(s) {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise FunctionSpecError(f"{where}: missing field(s) {sorted(missing)}")


def _int(x: Any, where: str, minimum: int = 0) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < minimum:
        raise FunctionSpecError(f"{where}: expected an integer >= {minimum}, got {x!r}")
    return x


def _number(x: Any, where: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise FunctionSpecError(f"{where}: expected a number, got {x!r}")
    try:
        return Fraction(x)
    except (OverflowError, ValueError) as exc:
        raise FunctionSpecError(f"{where}: {exc}") from None


def _multi_index(x: Any, n: int, where: str):
    if not isinstance(x, list) or len(x) != n:
        raise FunctionSpecError(f"{where}: expected a list of {n} integers")
    return tuple(_int(v, where) for v in x)


def parse_function_spec(data: Union[str, dict]) -> MhFunction:
    """Build an :class:`MhFunction` from a JSON string or an already-decoded object."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise FunctionSpecError(f"invalid JSON: {exc}") from None
    _require_keys(data, _TOP_KEYS, _TOP_KEYS, "spec")
    n = _int(data["n"], "n", minimum=1)
    if not isinstance(data["components"], list):
        raise FunctionSpecError("components: expected a list")
    comps = []
    seen = set()
    for i, comp in enumerate(data["components"]):
        where = f"components[{i}]"
        _require_keys(comp, _COMPONENT_KEYS, _COMPONENT_KEYS, where)
        p = _int(comp["p"], f"{where}.p")
        q = _int(comp["q"], f"{where}.q")
        label = f"component ({p},{q})"
        if (p, q) in seen:
            raise FunctionSpecError(f"{label}: listed twice")
        seen.add((p, q))
        if not isinstance(comp["terms"], list):
            raise FunctionSpecError(f"{where}.terms: expected a list")
        terms = {}
        for j, term in enumerate(comp["terms"]):
            twhere = f"{where}.terms[{j}]"
            _require_keys(term, _TERM_KEYS, {"alpha", "beta", "re"}, twhere)
            alpha = _multi_index(term["alpha"], n, f"{twhere}.alpha")
            beta = _multi_index(term["beta"], n, f"{twhere}.beta")
            if sum(alpha) != p or sum(beta) != q:
                raise FunctionSpecError(f"{label}: term {j} has bidegree ({sum(alpha)},{sum(beta)})")
            c = GaussianRational(_number(term["re"], f"{twhere}.re"), _number(term.get("im", 0), f"{twhere}.im"))
            key = (alpha, beta)
            terms[key] = terms[key] + c if key in terms else c
        h = BigradedPolynomial(n, terms, exact=True)
        if not ha.laplacian(h).is_zero:
            raise FunctionSpecError(f"{label}: polynomial is not harmonic")
        comps.append(MhComponent(p, q, h))
    return MhFunction(n, tuple(comps))


def load_function_spec(path: Union[str, Path]) -> MhFunction:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FunctionSpecError(f"cannot read {path}: {exc}") from None
    return parse_function_spec(text)


def function_to_spec(f: MhFunction) -> dict:
    """Inverse of :func:`parse_function_spec` (coefficients written as floats)."""
    comps = []
    for c in f.components:
        terms = []
        for key, v in sorted(c.h.terms.items()):
            z = complex(v)
            terms.append({"alpha": list(key.alpha), "beta": list(key.beta), "re": z.real, "im": z.imag})
        comps.append({"p": c.p, "q": c.q, "terms": terms})
    return {"n": f.n, "components": comps}
