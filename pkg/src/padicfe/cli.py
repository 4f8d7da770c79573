"""Command-line front end: ``padicfe <subcommand> [instance.json] [flags]``.

Exit status is 0 on success, 1 on a domain error (its class name is
printed) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from padicfe import kernels
from padicfe.analyzer import (
    analyze,
    instance_from_dict,
    pe_roots,
    poly_from_json,
)
from padicfe.clark import (
    liouville_scan,
    natural_root_bound,
    poly_weight,
    poly_weight_empirical,
    sumx_closed,
    sumx_empirical,
    weight,
    weight_empirical,
)
from padicfe.errors import DomainError
from padicfe.ode import Jet, OdeE, build_ode, char_data, closed_form_pe, h_from_jets
from padicfe.poly import Poly
from padicfe.recurrence import derive_recurrence, forward_solve, growth_report
from padicfe.valuation import (
    INF,
    SeriesPrefix,
    element_from_json,
    parse_element,
    format_rational,
    lognorm,
    lognorm_argmax,
    ord_factorial,
    ord_rat,
    parse_rational,
)


class UsageError(Exception):
    pass


def _fmt(q) -> str:
    return format_rational(q)


def _dec(q) -> str:
    return "inf" if q == INF else f"{float(q):.6g}"


def _load(args) -> dict:
    if getattr(args, "instance", None) is None:
        return {}
    try:
        with open(args.instance, encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read instance {args.instance}: {exc}") from None
    if not isinstance(obj, dict):
        raise UsageError("instance file must hold a JSON object")
    return obj


def _need(args, obj: dict, name: str, conv=lambda v: v):
    val = getattr(args, name, None)
    if val is None:
        val = obj.get(name)
    if val is None:
        raise UsageError(f"--{name.replace('_', '-')} is required (flag or instance field)")
    try:
        return conv(val)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad value for {name}: {exc}") from None


def _grid(text) -> list[Fraction]:
    if isinstance(text, list):
        return [parse_rational(x) for x in text]
    return [parse_rational(x) for x in str(text).split(",") if x.strip()]


def _poly_arg(val) -> Poly:
    if isinstance(val, list):
        return poly_from_json(val)
    return Poly(parse_rational(x) for x in str(val).split(","))


def _trace_points(N: int) -> list[int]:
    pts, n = [], 1
    while n < N:
        pts.append(n)
        n *= 2
    return pts + [N]


def _write_scan_csv(path: str, reports) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["N", "mean_num", "mean_den", "gap_decimal"])
        for r in reports:
            w.writerow([r.N, r.mean.numerator, r.mean.denominator, f"{float(r.abs_gap):.12g}"])


def _ode_from(args, obj: dict) -> tuple[OdeE, Optional[Poly]]:
    if all(k in obj for k in ("Q2", "Q1", "Q0")):
        return OdeE(poly_from_json(obj["Q2"]), poly_from_json(obj["Q1"]), poly_from_json(obj["Q0"])), None
    A = _need(args, obj, "A", _poly_arg)
    B = _need(args, obj, "B", _poly_arg)
    if "h" in obj:
        h = poly_from_json(obj["h"])
    else:
        if obj.get("fjet") is None or obj.get("gjet") is None:
            raise UsageError("instance needs either h or both jets")
        h = h_from_jets(A, B, Jet(poly_from_json_raw(obj["fjet"])), Jet(poly_from_json_raw(obj["gjet"])))
    return build_ode(A, B, h), h


def poly_from_json_raw(values) -> list[Fraction]:
    return [parse_rational(v) for v in values]


def _init_jet(obj: dict) -> Jet:
    vals = obj.get("init", obj.get("fjet"))
    if vals is None:
        raise UsageError("instance needs an init (or fjet) jet")
    return Jet(poly_from_json_raw(vals))


# --------------------------------------------------------------------------
# Subcommands
# --------------------------------------------------------------------------


def cmd_ord(args, out) -> None:
    obj = _load(args)
    p = _need(args, obj, "p", int)
    q = _need(args, obj, "q", parse_rational)
    print(f"ord_{p}({_fmt(q)}) = {_fmt(ord_rat(p, q))}", file=out)


def cmd_factorial_ord(args, out) -> None:
    obj = _load(args)
    p = _need(args, obj, "p", int)
    n = _need(args, obj, "n", int)
    print(f"ord_{p}({n}!) = {ord_factorial(p, n)}", file=out)


def cmd_sumx(args, out) -> None:
    obj = _load(args)
    p = _need(args, obj, "p", int)
    s = _need(args, obj, "s", int)
    N = _need(args, obj, "N", int)
    reports = sumx_empirical(p, s, N, trace=_trace_points(N))
    last = reports[-1]
    print(f"closed form: {_fmt(sumx_closed(p, s))}", file=out)
    print(f"empirical mean (N={N}): {_fmt(last.mean)} = {_dec(last.mean)}", file=out)
    print(f"abs gap: {_dec(last.abs_gap)}", file=out)
    if args.out:
        _write_scan_csv(args.out, reports)


def cmd_weight(args, out) -> None:
    obj = _load(args)
    p = _need(args, obj, "p", int)
    alpha = _need(args, obj, "alpha", lambda v: element_from_json(v) if isinstance(v, dict) else parse_element(v))
    rep = weight(p, alpha)
    print(f"case: {rep.case.value}", file=out)
    print(f"r(alpha) = {_fmt(rep.r_alpha)}", file=out)
    if rep.r_floor is not None:
        print(f"[r] = {rep.r_floor}, <r> = {_fmt(rep.r_frac)}", file=out)
    print(f"weight (closed form) = {_fmt(rep.weight)}", file=out)
    if args.show_paper_sign or rep.displayed_sign_weight != rep.weight:
        print(f"weight with minus sign on <r>p^(-[r]-1) = {_fmt(rep.displayed_sign_weight)}", file=out)
    if rep.note:
        print(f"note: {rep.note}", file=out)
    if args.empirical:
        N = args.empirical
        m = args.m if args.m is not None else rep.m_start
        reports = weight_empirical(p, alpha, m, N, trace=_trace_points(N))
        last = reports[-1]
        print(f"empirical mean (i = {m}..{N}): {_fmt(last.mean)} = {_dec(last.mean)}", file=out)
        print(f"gap to closed form: {_dec(last.abs_gap)}", file=out)
        if rep.displayed_sign_weight != rep.weight or args.show_paper_sign:
            print(f"gap to minus-sign value: {_dec(abs(last.mean - rep.displayed_sign_weight))}", file=out)
        if args.out:
            _write_scan_csv(args.out, reports)


def cmd_liouville(args, out) -> None:
    obj = _load(args)
    p = _need(args, obj, "p", int)
    alpha = _need(args, obj, "alpha", lambda v: element_from_json(v) if isinstance(v, dict) else parse_element(v))
    k = args.k if args.k is not None else int(obj.get("k", 1))
    N = _need(args, obj, "N", int)
    best = liouville_scan(p, alpha, k, N)
    print(f"max_(2<=n<={N}) ord_p(alpha-n) - {k} log_p(n) <= {_fmt(best)} = {_dec(best)}", file=out)


def cmd_poly_weight(args, out) -> None:
    obj = _load(args)
    p = _need(args, obj, "p", int)
    P = _need(args, obj, "poly", _poly_arg) if (args.poly or "poly" in obj) else _need(args, obj, "P", _poly_arg)
    roots_val = args.roots if args.roots is not None else obj.get("roots")
    if roots_val is None:
        roots = pe_roots(p, P)
    elif isinstance(roots_val, list):
        roots = [element_from_json(r) for r in roots_val]
    else:
        roots = [parse_element(r) for r in roots_val.split(";") if r]
    L = poly_weight(p, P, roots)
    print(f"P = {P.pretty('x')}", file=out)
    print(f"L = {_fmt(L)}", file=out)
    if args.empirical:
        m = natural_root_bound(roots)
        rep = poly_weight_empirical(p, P, m, args.empirical, target=L)
        print(f"empirical mean (n = {m}..{args.empirical}): {_fmt(rep.mean)} = {_dec(rep.mean)}", file=out)
        print(f"abs gap: {_dec(rep.abs_gap)}", file=out)


def cmd_ode_build(args, out) -> None:
    obj = _load(args)
    E, h = _ode_from(args, obj)
    if h is not None:
        print(f"h = {h.pretty()}", file=out)
    print(f"Q2 = {E.Q2.pretty()}", file=out)
    print(f"Q1 = {E.Q1.pretty()}", file=out)
    print(f"Q0 = {E.Q0.pretty()}", file=out)


def cmd_charpoly(args, out) -> None:
    obj = _load(args)
    E, h = _ode_from(args, obj)
    cd = char_data(E)
    print(f"N(E) = {cd.n_of_e}", file=out)
    print(f"P_E(xi) = {cd.p_e.pretty('xi')}", file=out)
    print(f"contributing orders: {sorted(cd.contributing)}", file=out)
    if h is not None:
        A, B = _poly_arg(obj["A"]), _poly_arg(obj["B"])
        cf = closed_form_pe(A.degree, B.degree, h.degree, A.lead, B.lead, h.lead)
        print(f"closed form: {cf.pretty('xi')} ({'agrees' if cf == cd.p_e else 'DIFFERS'})", file=out)


def cmd_recurrence(args, out) -> None:
    obj = _load(args)
    p = _need(args, obj, "p", int)
    E, _ = _ode_from(args, obj)
    R = derive_recurrence(p, E)
    print(f"t = {R.t}, gamma = {_fmt(R.gamma)}, valid for n >= {R.valid_from}", file=out)
    for i, P in enumerate(R.P):
        print(f"P_{i}(n) = {P.pretty('n')}", file=out)


def _solve(args, obj):
    p = _need(args, obj, "p", int)
    E, _ = _ode_from(args, obj)
    R = derive_recurrence(p, E)
    M = args.M if args.M is not None else int(obj.get("series_terms", 20))
    return p, R, forward_solve(R, _init_jet(obj), M)


def cmd_solve_series(args, out) -> None:
    obj = _load(args)
    p, R, s = _solve(args, obj)
    for n, c in enumerate(s.coeffs):
        print(f"c_{n} = {_fmt(c)}    ord_{p} = {_fmt(ord_rat(p, c))}", file=out)
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "c_num", "c_den", "ord"])
            for n, c in enumerate(s.coeffs):
                w.writerow([n, c.numerator, c.denominator, _fmt(ord_rat(p, c))])


def cmd_growth(args, out) -> None:
    obj = _load(args)
    p, R, s = _solve(args, obj)
    roots = pe_roots(p, R.P[0])
    L = poly_weight(p, R.P[0], roots)
    grid = _grid(args.lambda_grid) if args.lambda_grid else (_grid(obj["lambda_grid"]) if obj.get("lambda_grid") else None)
    rep = growth_report(p, R, s, L, grid)
    print(f"L = {_fmt(rep.L)}", file=out)
    print(f"lambda_star = {'none' if rep.lambda_star is None else _fmt(rep.lambda_star)}", file=out)
    print(f"entire-consistent on window c_0..c_{rep.window[1]}: {rep.entire_consistent}", file=out)
    print(f"growth witnesses: {len(rep.witnesses)}, violations: {len(rep.violations)}", file=out)


def cmd_norms(args, out) -> None:
    obj = _load(args)
    inst = instance_from_dict(obj)
    if inst.fjet is None:
        raise UsageError("norms needs fjet and gjet")
    p = inst.p
    f, g = Poly(inst.fjet.coeffs), Poly(inst.gjet.coeffs)
    Af2 = inst.A * f * f
    Bg2 = inst.B * g * g
    grid = _grid(args.rho_grid) if args.rho_grid else [Fraction(k) for k in range(0, 11)]
    sa = SeriesPrefix(Af2.coeffs or (0,), p)
    sb = SeriesPrefix(Bg2.coeffs or (0,), p)
    print("rho  log||A f^2||  log||B g^2||  slope_A  slope_B", file=out)
    for rho in grid:
        la, lb = lognorm(sa, rho), lognorm(sb, rho)
        print(f"{_fmt(rho)}  {_fmt(la)}  {_fmt(lb)}  {lognorm_argmax(sa, rho)}  {lognorm_argmax(sb, rho)}", file=out)
    print(f"degrees: A f^2 -> {Af2.degree}, B g^2 -> {Bg2.degree}", file=out)


def cmd_analyze(args, out) -> None:
    inst = instance_from_dict(_load(args))
    for line in analyze(inst).render():
        print(line, file=out)


def cmd_backend(args, out) -> None:
    print(kernels.BACKEND, file=out)


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="padicfe", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, *flags):
        sp = sub.add_parser(name)
        sp.add_argument("instance", nargs="?", help="JSON instance file")
        for fl in flags:
            fl(sp)
        sp.set_defaults(func=func)
        return sp

    P = lambda sp: sp.add_argument("--p", type=int)
    OUT = lambda sp: sp.add_argument("--out", help="CSV trace file")

    add("ord", cmd_ord, P, lambda sp: sp.add_argument("--q"))
    add("factorial-ord", cmd_factorial_ord, P, lambda sp: sp.add_argument("--n", type=int))
    add("sumx", cmd_sumx, P, OUT, lambda sp: sp.add_argument("--s", type=int), lambda sp: sp.add_argument("--N", type=int))
    add(
        "weight",
        cmd_weight,
        P,
        OUT,
        lambda sp: sp.add_argument("--alpha", help="rat:Q | ram:Q:E[:U] | unr:Q:E | zp:P:d0,d1,..."),
        lambda sp: sp.add_argument("--empirical", type=int, metavar="N"),
        lambda sp: sp.add_argument("--m", type=int),
        lambda sp: sp.add_argument("--show-paper-sign", action="store_true"),
    )
    add(
        "liouville-scan",
        cmd_liouville,
        P,
        lambda sp: sp.add_argument("--alpha"),
        lambda sp: sp.add_argument("--k", type=int),
        lambda sp: sp.add_argument("--N", type=int),
    )
    add(
        "poly-weight",
        cmd_poly_weight,
        P,
        lambda sp: sp.add_argument("--poly", help="coefficients c0,c1,... low to high"),
        lambda sp: sp.add_argument("--roots", help="element specs separated by ';'"),
        lambda sp: sp.add_argument("--empirical", type=int, metavar="N"),
    )
    add("ode-build", cmd_ode_build)
    add("charpoly", cmd_charpoly)
    add("recurrence", cmd_recurrence, P)
    add("solve-series", cmd_solve_series, P, OUT, lambda sp: sp.add_argument("--M", type=int))
    add(
        "growth",
        cmd_growth,
        P,
        lambda sp: sp.add_argument("--M", type=int),
        lambda sp: sp.add_argument("--lambda-grid", help="a/b,c/d,..."),
    )
    add("norms", cmd_norms, lambda sp: sp.add_argument("--rho-grid", help="a/b,c/d,..."))
    add("analyze", cmd_analyze)
    add("backend", cmd_backend)
    return ap


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
