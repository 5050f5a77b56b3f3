"""Command-line front end: ``mhbesov coeffs | verify | norms``.

Exit codes: 0 success (all checks pass), 1 a verification check failed,
2 computational or input error.  Output goes to ``--out`` or stdout, as CSV
(header row, fixed column order, numbers with 17 significant digits) or
JSON.  Runtimes are left out of report files unless ``--runtime`` is given,
so identical arguments give byte-identical files.

Function-spec files for ``norms`` are JSON::

    {"n": 2,
     "components": [{"p": 1, "q": 1,
                     "terms": [{"alpha": [1, 0], "beta": [0, 1], "re": 1, "im": 0}]}]}

Each component lists monomials z^alpha zbar^beta (multi-indices of length n)
with real and imaginary coefficient parts; unknown fields, wrong bidegrees and
non-harmonic components are rejected.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from . import coeffs, mh, verify
from .funcspec import FunctionSpecError, load_function_spec
from .specfun import ConvergenceError

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2
ROUTES = ("auto", "quadrature", "double_integral", "closed_p0")
FORMATS = ("csv", "json")


class CliError(Exception):
    """Input or computational error reported with exit code 2."""


def fmt(x) -> str:
    """Render a value for CSV: floats with 17 significant digits."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".17g")
    if isinstance(x, (dict, list)):
        return json.dumps(x, sort_keys=True)
    return str(x)


def _json_safe(x):
    if isinstance(x, float) and not math.isfinite(x):
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    if isinstance(x, dict):
        return {k: _json_safe(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_safe(v) for v in x]
    return x


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header: Sequence[str], rows, comments: Sequence[str] = ()) -> str:
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# coeffs


@dataclass
class SweepConfig:
    n: int
    s: List[float]
    p_max: int
    q_max: int
    route: str = "auto"
    rel_tol: float = coeffs.DEFAULT_REL_TOL
    out: Optional[str] = None
    format: str = "csv"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if not self.s:
            raise ValueError("at least one s is required")
        if self.p_max < 0 or self.q_max < 0:
            raise ValueError("pmax and qmax must be non-negative")
        if self.route not in ROUTES:
            raise ValueError(f"route must be one of {', '.join(ROUTES)}")
        if not 0 < self.rel_tol <= 1e-2:
            raise ValueError("tolerance must lie in (0, 1e-2]")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {', '.join(FORMATS)}")
        for s in self.s:
            if not s > -self.n - 1:
                raise ValueError(f"s = {s} is outside the range s > -n-1")
        self.s = sorted(set(float(x) for x in self.s))


COEFF_COLUMNS = ("p", "q", "s", "value", "err_est", "route", "normalized_value")


def coeff_rows(cfg: SweepConfig):
    """Rows of the coefficient table in (p, q, s) order."""
    table = {}
    for s in cfg.s:
        try:
            table.update(coeffs.c_pq_table(cfg.n, [s], cfg.p_max, cfg.q_max, cfg.route, cfg.rel_tol))
        except (ConvergenceError, ValueError, ArithmeticError) as exc:
            raise CliError(f"cell n={cfg.n}, s={s:g}, route {cfg.route}: {exc}") from None
    rows = []
    for p in range(cfg.p_max + 1):
        for q in range(cfg.q_max + 1):
            for s in cfg.s:
                res = table[(p, q, s)]
                if not (math.isfinite(res.value) and res.value > 0):
                    raise CliError(f"cell (p={p}, q={q}, s={s:g}) gave non-positive or non-finite value {res.value}")
                norm = ((p + 1.0) * (q + 1.0)) ** (s + 1.0) * res.value
                rows.append((p, q, s, float(res.value), float(res.err_est), res.route_used, float(norm)))
    return rows


def cmd_coeffs(cfg: SweepConfig) -> int:
    rows = coeff_rows(cfg)
    if cfg.format == "csv":
        text = _csv_text(COEFF_COLUMNS, rows)
    else:
        text = json.dumps({"n": cfg.n, "rel_tol": cfg.rel_tol, "rows": [_json_safe(dict(zip(COEFF_COLUMNS, r)))
                                                                        for r in rows]}, indent=1) + "\n"
    _emit(text, cfg.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


REPORT_COLUMNS = ("check", "params", "lhs", "rhs", "metric", "tolerance", "passed", "note")


def render_reports(suite: verify.Suite, reports, fmt_name: str, include_runtime: bool = False) -> str:
    passed = sum(r.passed for r in reports)
    summary = f"{passed}/{len(reports)} checks passed"
    if fmt_name == "json":
        doc = {"suite": suite.name, "description": suite.header, "summary": summary,
               "reports": [_json_safe(r.as_dict(include_runtime)) for r in reports]}
        return json.dumps(doc, indent=1, sort_keys=False) + "\n"
    cols = REPORT_COLUMNS + (("runtime",) if include_runtime else ())
    rows = []
    for r in reports:
        d = r.as_dict(include_runtime)
        rows.append([d[c] for c in cols])
    return _csv_text(cols, rows, comments=(f"suite: {suite.name}", f"checks: {suite.header}", summary))


def cmd_verify(suite_name: str, config: verify.VerifyConfig, out: Optional[str], fmt_name: str,
               include_runtime: bool = False) -> int:
    suite = verify.SUITES[suite_name]
    try:
        reports = suite.run(config)
    except (ConvergenceError, ValueError, ArithmeticError) as exc:
        raise CliError(f"suite {suite_name}: {exc}") from None
    _emit(render_reports(suite, reports, fmt_name, include_runtime), out)
    for r in reports:
        if not r.passed:
            print(f"FAIL {r.check} {json.dumps(r.params, sort_keys=True)}: metric {r.metric:.6g} "
                  f"> tolerance {r.tolerance:g}", file=sys.stderr)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# ---------------------------------------------------------------------------
# norms


def cmd_norms(spec_path: str, s: float, m: Optional[int], t: Optional[float], out: Optional[str],
              fmt_name: str) -> int:
    try:
        f = load_function_spec(spec_path)
    except FunctionSpecError as exc:
        raise CliError(f"{spec_path}: {exc}") from None
    try:
        dm, _ = mh.default_orders(s)
        order = dm if m is None else m
        report = mh.norm_report(f, s, m, t, sobolev_order=min(order, f.n))
    except (ConvergenceError, ValueError, ArithmeticError) as exc:
        raise CliError(f"norms: {exc}") from None
    d = report.as_dict()
    if fmt_name == "json":
        text = json.dumps(_json_safe(d), indent=1) + "\n"
    else:
        rows = [(k, d[k]) for k in ("s", "m", "t") + mh.NormReport.QUANTITIES + ("sobolev_m",)]
        rows += [(f"ratio {k}", v) for k, v in d["ratios"].items()]
        text = _csv_text(("quantity", "value"), [(k, float(v) if v is not None else None) for k, v in rows])
    _emit(text, out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mhbesov", description="M-harmonic Besov-Bergman coefficients, "
                                                             "norms and verification suites.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--format", choices=FORMATS, default="csv")

    pc = sub.add_parser("coeffs", help="table of c_pq(s)")
    pc.add_argument("--n", type=int, required=True)
    pc.add_argument("--s", type=float, action="append", required=True, help="repeatable")
    pc.add_argument("--pmax", type=int, required=True)
    pc.add_argument("--qmax", type=int, help="defaults to pmax")
    pc.add_argument("--route", choices=ROUTES, default="auto")
    pc.add_argument("--tol", type=float, default=coeffs.DEFAULT_REL_TOL)
    common(pc)

    pv = sub.add_parser("verify", help="run a verification suite")
    pv.add_argument("suite", choices=list(verify.SUITES))
    pv.add_argument("--n", type=int, help="restrict the suite to this dimension")
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--runtime", action="store_true", help="include per-check runtimes in the report")
    common(pv)

    pn = sub.add_parser("norms", help="norm report for a function-spec file")
    pn.add_argument("spec", help="JSON function-spec path")
    pn.add_argument("--s", type=float, required=True)
    pn.add_argument("--m", type=int, help="tangential order (default: smallest admissible)")
    pn.add_argument("--t", type=float, help="Box smoothing order (default: m)")
    common(pn)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "coeffs":
            try:
                cfg = SweepConfig(args.n, list(args.s), args.pmax, args.pmax if args.qmax is None else args.qmax,
                                  args.route, args.tol, args.out, args.format)
            except ValueError as exc:
                raise CliError(str(exc)) from None
            return cmd_coeffs(cfg)
        if args.command == "verify":
            try:
                config = verify.VerifyConfig(seed=args.seed, n=args.n)
            except ValueError as exc:
                raise CliError(str(exc)) from None
            return cmd_verify(args.suite, config, args.out, args.format, args.runtime)
        return cmd_norms(args.spec, args.s, args.m, args.t, args.out, args.format)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
