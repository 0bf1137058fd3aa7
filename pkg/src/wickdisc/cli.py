"""Command-line interface: ``wickdisc <subcommand> ...``.

Exit status is 0 on success, 1 when a verification suite fails and 2 for
usage, document or evaluation errors.  Polynomials are written as
PolyDocuments, verification output as JSON lines.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import verify
from .ambient import AmbientPoly, GroupElement, mul_ambient, poisson_ambient, wick_star
from .analytic import expand
from .charts import CHARTS, ChartPoint, eval_discpoly_at
from .disc import (
    DiscPoly,
    act_mobius,
    eval_disc,
    mul_disc,
    norm_disc,
    poisson_disc,
    reduce,
    sigma_pullback,
    star,
    unreduce,
)
from .documents import DocumentError, dumps, read_poly
from .expr import ExprError, parse_expr
from .scalars import PoleError, QScalar, parse_hbar, qs


class UsageError(Exception):
    pass


def _emit(text: str, args) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_poly(a, args, metadata: dict | None = None) -> None:
    _emit(dumps(a, hbar_render=args.hbar_view, metadata=metadata), args)


def _emit_reports(reports, args) -> int:
    text = "".join(r.to_json(timing=args.timing) + "\n" for r in reports)
    _emit(text, args)
    return 0 if all(r.passed for r in reports) else 1


def _hbar(args, required: bool = True):
    if args.hbar is None:
        if required:
            raise UsageError("--hbar is required for this subcommand")
        return None
    try:
        return parse_hbar(args.hbar)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse --hbar {args.hbar!r}") from None


def _scalar(text: str) -> QScalar:
    try:
        return qs(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse number {text!r}") from None


def parse_point(text: str):
    """'w1,...,wn' is a disc point; 'chart:x1,..,xn|y1,..,yn' a chart point."""
    if ":" in text:
        chart, rest = text.split(":", 1)
        chart = chart.strip().lower()
        if chart not in CHARTS:
            raise UsageError(f"unknown chart {chart!r}")
        if "|" not in rest:
            raise UsageError("chart points are written chart:x1,..,xn|y1,..,yn")
        xs, ys = rest.split("|", 1)
        return ChartPoint(chart, tuple(_scalar(v) for v in xs.split(",")), tuple(_scalar(v) for v in ys.split(",")))
    return [_scalar(v) for v in text.split(",")]


def _matrix(text: str) -> list[list[QScalar]]:
    return [[_scalar(v) for v in row.split(",")] for row in text.split(";")]


def _same_space(a, b):
    if type(a) is not type(b):
        raise UsageError("both documents must live in the same space")
    if a.n != b.n:
        raise UsageError(f"dimension mismatch: n={a.n} vs n={b.n}")


def _disc(a, what: str) -> DiscPoly:
    if not isinstance(a, DiscPoly):
        raise UsageError(f"{what} needs a disc document")
    return a


# -- subcommands --------------------------------------------------------------


def cmd_star(args):
    a, b = read_poly(args.a), read_poly(args.b)
    _same_space(a, b)
    h = _hbar(args)
    out = star(a, b, h) if isinstance(a, DiscPoly) else wick_star(a, b, h)
    _emit_poly(out, args)
    return 0


def cmd_mul(args):
    a, b = read_poly(args.a), read_poly(args.b)
    _same_space(a, b)
    _emit_poly(mul_disc(a, b) if isinstance(a, DiscPoly) else mul_ambient(a, b), args)
    return 0


def cmd_reduce(args):
    a = read_poly(args.a)
    if not isinstance(a, AmbientPoly):
        raise UsageError("reduce needs an ambient document")
    _emit_poly(reduce(a, _hbar(args)), args)
    return 0


def cmd_unreduce(args):
    a = _disc(read_poly(args.a), "unreduce")
    _emit_poly(unreduce(a, _hbar(args)), args)
    return 0


def cmd_poisson(args):
    a, b = read_poly(args.a), read_poly(args.b)
    _same_space(a, b)
    _emit_poly(poisson_disc(a, b) if isinstance(a, DiscPoly) else poisson_ambient(a, b), args)
    return 0


def cmd_eval(args):
    a = _disc(read_poly(args.a), "eval")
    if args.point is None:
        raise UsageError("--point is required")
    h = _hbar(args, required=False)
    if not a.is_numeric():
        if h is None:
            raise UsageError("the document depends on hbar; pass --hbar")
        a = a.at_hbar(h)
    pt = parse_point(args.point)
    value = eval_discpoly_at(a, pt) if isinstance(pt, ChartPoint) else eval_disc(a, pt)
    exact = isinstance(value, QScalar)
    c = complex(value)
    rec = {"value": str(value) if exact else [c.real, c.imag], "exact": exact, "float": [c.real, c.imag]}
    _emit(json.dumps(rec, sort_keys=True) + "\n", args)
    return 0


def cmd_act(args):
    a = _disc(read_poly(args.a), "act")
    if args.matrix:
        U = GroupElement(_matrix(args.matrix))
    elif args.boost:
        alpha, beta = args.boost.split(",")
        U = GroupElement.boost(a.n, _scalar(alpha), _scalar(beta))
    else:
        raise UsageError("act needs --matrix or --boost")
    if U.n != a.n:
        raise UsageError(f"matrix acts on n={U.n}, document has n={a.n}")
    if not U.in_su1n():
        raise UsageError("the matrix is not in SU(1,n)")
    _emit_poly(act_mobius(U, a), args)
    return 0


def cmd_sigma(args):
    a = _disc(read_poly(args.a), "sigma")
    if a.n != 1:
        raise UsageError("sigma is only defined for n = 1")
    _emit_poly(sigma_pullback(a), args)
    return 0


def cmd_norm(args):
    a = _disc(read_poly(args.a), "norm")
    if not a.is_numeric():
        a = a.at_hbar(_hbar(args))
    rho = args.radius if args.radius is not None else 1.0
    _emit(json.dumps({"norm": norm_disc(a, rho), "rho": rho}) + "\n", args)
    return 0


def cmd_expand(args):
    try:
        f = parse_expr(args.expr, chart=args.chart, n=args.n)
    except ExprError as exc:
        raise UsageError(str(exc)) from None
    s = expand(f, args.max_degree, args.radius or 1.0, args.nodes, n=f.n, rho=args.rho)
    _emit_poly(s.body, args, metadata=s.metadata())
    return 0


def cmd_poles(args):
    a, b = read_poly(args.a), read_poly(args.b)
    _same_space(a, b)
    return _emit_reports([verify.pole_report(_disc(a, "poles"), b)], args)


def cmd_limit_scan(args):
    a, b = read_poly(args.a), read_poly(args.b)
    _same_space(a, b)
    a = _disc(a, "limit-scan")
    K = verify.CompactSample.random(a.n, args.points, args.seed)
    return _emit_reports([verify.classical_limit_scan(a, b, K)], args)


def cmd_gram(args):
    if args.point is None:
        raise UsageError("--point is required")
    w = parse_point(args.point)
    if isinstance(w, ChartPoint):
        raise UsageError("gram needs a disc point w1,..,wn")
    rep = verify.check_positivity_gram(w, _hbar(args), args.max_degree, exterior_probe=args.exterior)
    return _emit_reports([rep], args)


def _suite_kwargs(name: str, args) -> dict:
    m, n = args.max, args.n
    table = {
        "star-power": {"m_max": m},
        "oracle": {"n": n or 1, "max_degree": m if m is not None else 3},
        "associativity": {"n": n or 1, "max_degree": m if m is not None else 2},
        "kernel": {"n": n or 1, "max_degree": m if m is not None else 4},
        "biorthogonality": {"max_degree": m},
        "expansion": {"max_degree": m, "seed": args.seed},
        "limit": {"seed": args.seed},
        "poles": {"max_degree": m},
        "gram": {"max_degree": m},
        "symmetries": {},
        "moment": {"max_degree": m},
        "dimensions": {"n_max": n, "m_max": m},
        "inequalities": {},
        "divergence": {"m_max": m},
    }
    return {k: v for k, v in table[name].items() if v is not None}


def cmd_check(args):
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        if name == "dimensions" and args.n is not None:
            reports.append(verify.check_dimensions(args.n, args.max if args.max is not None else 8))
        else:
            reports.append(verify.SUITES[name](**_suite_kwargs(name, args)))
    return _emit_reports(reports, args)


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--hbar", help='rational value such as 1/2, or "symbolic"')
    common.add_argument("--n", type=int, help="dimension of the disc")
    common.add_argument("--max-degree", type=int, default=3)
    common.add_argument("--radius", type=float)
    common.add_argument("--nodes", type=int, default=64)
    common.add_argument("--point", help="w1,..,wn or chart:x1,..,xn|y1,..,yn")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", "-o", help="write here instead of stdout")
    common.add_argument("--hbar-view", action="store_true", help="add an hbar rendering of symbolic coefficients")
    common.add_argument("--timing", action="store_true", help="include runtimes in reports")

    p = argparse.ArgumentParser(prog="wickdisc", description="Exact star products on the hyperbolic disc.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, nfiles, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        for label in ("a", "b")[:nfiles]:
            sp.add_argument(label, help="PolyDocument JSON file")
        sp.set_defaults(func=fn)
        return sp

    add("star", cmd_star, 2, "star product (disc) or Wick product (ambient)")
    add("mul", cmd_mul, 2, "pointwise product")
    add("reduce", cmd_reduce, 1, "ambient -> disc")
    add("unreduce", cmd_unreduce, 1, "disc -> ambient")
    add("poisson", cmd_poisson, 2, "Poisson bracket")
    add("eval", cmd_eval, 1, "evaluate at --point")
    sp = add("act", cmd_act, 1, "pull back along a Moebius transformation")
    sp.add_argument("--matrix", help="rows separated by ';', entries by ','")
    sp.add_argument("--boost", help="alpha,beta")
    add("sigma", cmd_sigma, 1, "pull back along the involution Sigma (n = 1)")
    add("norm", cmd_norm, 1, "weighted l1 norm with rho = --radius")
    sp = add("expand", cmd_expand, 0, "truncated expansion of a holomorphic expression")
    sp.add_argument("expr", help='e.g. "exp(x1*y1)"')
    sp.add_argument("--chart", default="p", choices=CHARTS)
    sp.add_argument("--rho", type=float)
    add("poles", cmd_poles, 2, "pole report of the symbolic product")
    sp = add("limit-scan", cmd_limit_scan, 2, "classical limit scan on a random compact sample")
    sp.add_argument("--points", type=int, default=16)
    sp = add("gram", cmd_gram, 0, "Gram positivity check at --point")
    sp.add_argument("--exterior", action="store_true", help="allow points outside the disc (not asserted)")
    sp = add("check", cmd_check, 0, "run verification suites")
    sp.add_argument("--suite", default="all", choices=["all"] + list(verify.SUITES))
    sp.add_argument("--max", type=int, help="size parameter of the suite")
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, DocumentError, PoleError, ExprError) as exc:
        print(f"wickdisc {args.command}: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError, NotImplementedError, OSError) as exc:
        print(f"wickdisc {args.command}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
