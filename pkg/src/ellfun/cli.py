"""ellfun command line.

    ellfun analyze "y^2 = x*(x-1)*(x-T)" --field Q
    ellfun minimize "[0,0,0,T^8,T^12+1]" --field GF(5) --chart inf
    ellfun mason "T^2" "1" --field GF(3)
    ellfun constancy "y^2 = x^3 + T^4*x" --field GF(5)
    ellfun oracle roots --p 2 --r 1 --m 1 --n 1 --q1 "T" --q "0" --c 1 --bound 6
    ellfun oracle unit-pairs --field GF(5) --bound 3 --shift 2
    ellfun search --field GF(2) --form reduced --deg 4
    ellfun examples

Exit codes: 0 success, 1 usage or input error, 2 a checked statement
failed (bound violation, mismatch, root found), 3 undecided verdicts only.
The factorization seed is read from ELLFUN_FACTOR_SEED.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter

from .algebra.factor import SEED_ENV
from .algebra.fields import FieldError, field_from_tag
from .height_mason import (
    AZero,
    BothPowers,
    BZero,
    UnitDifferenceViolation,
    MasonTriple,
    MasonViolation,
    classify_unit_difference,
    frobenius_root_search,
    mason_check,
    unit_difference_pairs,
)
from .moduli import DEFAULT_EXTENSION_BOUND, Constant, HypothesisError, is_constant
from .parser import ParseError, parse_equation, parse_ratfunc
from .reduction import Chart, global_minimal
from .search import (
    EXIT_OK,
    EXIT_UNDECIDED,
    EXIT_VIOLATION,
    SearchConfig,
    analyze_curve,
    format_factored,
    parse_degree_bound,
    parse_shard,
    run_examples,
    verify_bounds,
)
from .transform import to_reduced_form
from .weierstrass import SingularEquation, invariants

EXIT_INPUT = 1


def _emit(args, data, text):
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print(text)


def _verdict_text(v):
    if isinstance(v, Constant):
        return f"Constant: {v.model} via {v.witness}"
    return f"{v.kind}: {v.reason}"


# -- subcommands -------------------------------------------------------------------


def cmd_analyze(args):
    W = parse_equation(args.equation, args.field)
    a = analyze_curve(W, args.ext_bound)
    rec = a.record(args.field)
    inv = invariants(W)
    rec["delta"] = str(inv.delta)
    rec["c4"] = str(inv.c4)
    rec["c6"] = str(inv.c6)
    lines = [
        f"equation          {W}",
        f"delta             {inv.delta}",
        f"j                 {inv.j}",
        f"delta_min         {rec['delta_min_factored']}",
        "bad places        " + (", ".join(f"{b['generator']} (v={b['v_delta']}, deg {b['degree']})"
                                       for b in rec["bad_places"]) or "none"),
        f"geometric count   {rec['geometric_bad_count']}",
        f"constancy         {_verdict_text(a.verdict)}",
    ]
    if args.reduce:
        form, tr = to_reduced_form(W)
        rec["reduced_form"] = {"form": type(form).__name__, "equation": str(form.equation(W.field)),
                               "transform": str(tr)}
        lines.append(f"reduced form      {type(form).__name__}: {form.equation(W.field)}")
        lines.append(f"  via             {tr}")
    _emit(args, rec, "\n".join(lines))
    return EXIT_OK


def cmd_minimize(args):
    W = parse_equation(args.equation, args.field)
    chart = Chart.parse(args.chart)
    M, tr = global_minimal(W, chart)
    d = invariants(M).delta.num
    data = {"chart": chart.value, "model": str(M), "transform": str(tr),
            "delta_min_factored": format_factored(d)}
    text = f"minimal model ({chart.value} chart)  {M}\ntransform  {tr}\ndelta_min  {data['delta_min_factored']}"
    _emit(args, data, text)
    return EXIT_OK


def cmd_mason(args):
    g1 = parse_ratfunc(args.g1, args.field)
    g2 = parse_ratfunc(args.g2, args.field)
    t = MasonTriple.completing(g1, g2)
    try:
        v = mason_check(t)
    except MasonViolation as ex:
        print(f"violation: {ex}")
        return EXIT_VIOLATION
    data = {"gamma3": str(t.gamma3), "exempt": v.exempt.value, "v_size": v.v_size, "height": v.height,
            "slack": v.slack, "places": [str(p) for p in v.places]}
    text = (f"gamma3 = {t.gamma3}\nexemption  {v.exempt.value}\n|V| = {v.v_size}  H = {v.height}  "
            f"slack = {v.slack}\nV = {{{', '.join(data['places'])}}}")
    _emit(args, data, text)
    return EXIT_OK


def cmd_constancy(args):
    W = parse_equation(args.equation, args.field)
    v = is_constant(W, args.ext_bound)
    data = {"kind": v.kind, "reason": None if v.reason is None else str(v.reason)}
    if isinstance(v, Constant):
        data["model"] = str(v.model)
        data["witness"] = str(v.witness)
    _emit(args, data, _verdict_text(v))
    return EXIT_UNDECIDED if v.kind == "Undecided" else EXIT_OK


def cmd_roots(args):
    F = field_from_tag(args.field or f"GF({args.p})")
    Q1 = parse_ratfunc(args.q1, F).as_poly()
    Q = parse_ratfunc(args.q, F).as_poly()
    t0 = time.time()
    root = frobenius_root_search(args.p, args.r, args.m, args.n, Q1, Q, args.c, args.bound,
                               shard=parse_shard(args.shard))
    data = {"root": None if root is None else str(root), "bound": args.bound, "seconds": round(time.time() - t0, 3)}
    text = f"no root with degree <= {args.bound}" if root is None else f"root found: {root}"
    _emit(args, data, text)
    return EXIT_OK if root is None else EXIT_VIOLATION


def cmd_unit_pairs(args):
    F = field_from_tag(args.field)
    counts = Counter()
    try:
        pairs = unit_difference_pairs(F, args.bound, args.shift)
        for A, B in pairs:
            cls = classify_unit_difference(A, B)
            if cls.reconstruct(F) != (A, B):
                raise UnitDifferenceViolation(f"reconstruction failed for A = {A}, B = {B}")
            counts[type(cls).__name__] += 1
    except UnitDifferenceViolation as ex:
        print(f"violation: {ex}")
        return EXIT_VIOLATION
    data = {"pairs": len(pairs), "families": {k.__name__: counts[k.__name__] for k in (BothPowers, AZero, BZero)}}
    text = f"{len(pairs)} unit-difference pairs\n" + "\n".join(f"  {k}: {v}" for k, v in data["families"].items())
    _emit(args, data, text)
    return EXIT_OK


def cmd_search(args):
    cfg = SearchConfig(
        field=args.field,
        form=args.form,
        degree_bound=parse_degree_bound(args.deg),
        shard=parse_shard(args.shard),
        output=args.output,
        extension_bound=args.ext_bound,
        check_structure=args.check_structure,
    )
    t0 = time.time()
    s = verify_bounds(cfg, workers=args.workers)
    elapsed = time.time() - t0
    data = s.to_json()
    data["seconds"] = round(elapsed, 2)
    _emit(args, data, s.table() + f"\nseconds  {elapsed:.1f}")
    return s.exit_code()


def cmd_examples(args):
    checks = run_examples()
    if args.json:
        print(json.dumps([c.__dict__ for c in checks], indent=2))
    else:
        for c in checks:
            status = "ok" if c.ok else "MISMATCH"
            print(f"[{status}] {c.name} over {c.field}: {c.equation}")
            print(f"    delta = {c.delta}   j = {c.j}")
            print(f"    bad places {{{', '.join(c.bad_places)}}}   {c.constancy}")
            for m in c.mismatches:
                print(f"    ! {m}")
    return EXIT_OK if all(c.ok for c in checks) else EXIT_VIOLATION


# -- parser --------------------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(prog="ellfun", description="Elliptic curves over k(T).",
                                 epilog=f"Factorization seed: ${SEED_ENV}.")
    ap.add_argument("--json", action="store_true", help="structured output")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="structured output")

    p = sub.add_parser("analyze", help="invariants, bad reduction and constancy of one curve")
    p.add_argument("equation")
    p.add_argument("--field", required=True)
    p.add_argument("--reduce", action="store_true", help="also show the reduced form (char 2, 3)")
    p.add_argument("--ext-bound", type=int, default=DEFAULT_EXTENSION_BOUND)
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("minimize", help="globally minimal model on a chart")
    p.add_argument("equation")
    p.add_argument("--field", required=True)
    p.add_argument("--chart", choices=["0", "inf"], default="0")
    common(p)
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("mason", help="check g1 + g2 + g3 = 0 against the ABC inequality")
    p.add_argument("g1")
    p.add_argument("g2")
    p.add_argument("--field", required=True)
    common(p)
    p.set_defaults(func=cmd_mason)

    p = sub.add_parser("constancy", help="decide whether a curve is constant")
    p.add_argument("equation")
    p.add_argument("--field", required=True)
    p.add_argument("--ext-bound", type=int, default=DEFAULT_EXTENSION_BOUND)
    common(p)
    p.set_defaults(func=cmd_constancy)

    p = sub.add_parser("oracle", help="exhaustive oracles")
    osub = p.add_subparsers(dest="oracle", required=True)
    q = osub.add_parser("roots", help="root search for Y^(p^r) - Y^n Q1^m - Q1^(m+1) Q - c")
    for name in ("p", "r", "m", "n", "c", "bound"):
        q.add_argument(f"--{name}", type=int, required=True)
    q.add_argument("--q1", required=True)
    q.add_argument("--q", required=True)
    q.add_argument("--field", default=None, help="defaults to GF(p)")
    q.add_argument("--shard", default="0/1")
    common(q)
    q.set_defaults(func=cmd_roots)
    q = osub.add_parser("unit-pairs", help="classify Laurent pairs with A^3 - B^2 a unit")
    q.add_argument("--field", required=True)
    q.add_argument("--bound", type=int, required=True, help="degree bound of the unit part")
    q.add_argument("--shift", type=int, default=2, help="bound on |shift|")
    common(q)
    q.set_defaults(func=cmd_unit_pairs)

    p = sub.add_parser("search", help="exhaustive scan checking the lower bounds on bad places")
    p.add_argument("--field", required=True)
    p.add_argument("--form", required=True,
                   help="general, reduced, char2jnonzero, char2jzero, char3jnonzero, char3jzero, short")
    p.add_argument("--deg", required=True, help="N, or per slot, e.g. A=2,B=3")
    p.add_argument("--shard", default="0/1", help="i/n")
    p.add_argument("--output", default=None, help="JSONL record file")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--ext-bound", type=int, default=DEFAULT_EXTENSION_BOUND)
    p.add_argument("--check-structure", action="store_true",
                   help="also check idempotence and chart consistency of minimal models")
    common(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("examples", help="check the named examples")
    common(p)
    p.set_defaults(func=cmd_examples)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except SingularEquation as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_INPUT
    except ParseError as ex:
        print(f"parse error: {ex}", file=sys.stderr)
        return EXIT_INPUT
    except (FieldError, HypothesisError, ValueError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
