"""Command-line front end: invariant reports, verdicts, and verification suites.

Exit codes: 0 success / all rows pass, 1 suite or check failure, 2 parse
error, 3 certificate gap under --strict.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .certificates import CertificateGapError, default_db, load_registry
from .hf_invariants import (
    ContradictionError,
    Evaluator,
    IntInterval,
    RatInterval,
    lens_d,
)
from .knotexpr import (
    Atom,
    Cable,
    CableSignError,
    Mirror,
    ParseError,
    Sum,
    WHITEHEAD_TREFOIL,
    alexander,
    normalize,
    parse,
    render,
    torus_atom,
)
from .laurent import LaurentPoly
from .obstructions import (
    RULE_A,
    RULE_C,
    kinkiness_bounds,
    obstruct_definite,
    obstruct_negative_definite,
    obstruct_positive_definite,
)
from .qform_verify import bcg_cobordism_check
from .signatures import (
    JumpPointError,
    SignatureUnavailable,
    sigma,
    signature_combination_check,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_GAP = 3


# ---------------------------------------------------------------- families

def family_kn(n: int):
    """(#^3 Wh(T(2,3))) # ((Wh(T(2,3)))_{n+3,1})*: topologically slice,
    obstructed in every definite 4-manifold, tau = -n."""
    wh = Atom(WHITEHEAD_TREFOIL)
    return normalize(Sum((wh, wh, wh, Mirror(Cable(n + 3, 1, wh)))))


def family_kkl(k: int, l: int):
    """(#^(2k+1) Wh(T(2,3))) # ((Wh(T(2,3)))_{l+2k+1,1})*: topologically
    slice with kinkiness bounds k+ >= k, k- >= l."""
    wh = Atom(WHITEHEAD_TREFOIL)
    parts = tuple([wh] * (2 * k + 1)) + (Mirror(Cable(l + 2 * k + 1, 1, wh)),)
    return normalize(Sum(parts))


def family_jk(k: int):
    """T(2,2k+9) # (#^(k+5) T(2,3))*: mixed-sign signature family."""
    parts = (torus_atom(2, 2 * k + 9),) + tuple(
        Mirror(torus_atom(2, 3)) for _ in range(k + 5)
    )
    return normalize(Sum(parts))


# ---------------------------------------------------------------- encoding

def jsonable(x):
    if isinstance(x, Fraction):
        return {"num": x.numerator, "den": x.denominator}
    if isinstance(x, IntInterval):
        return {"lo": x.lo, "hi": x.hi}
    if isinstance(x, RatInterval):
        return {
            "lo": None if x.lo is None else jsonable(x.lo),
            "hi": None if x.hi is None else jsonable(x.hi),
        }
    if isinstance(x, dict):
        return {k: jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


def fmt_frac(x: Fraction) -> str:
    return str(x)


def fmt_rat_interval(x: RatInterval) -> str:
    return str(x)


def verdict_json(v):
    return {
        "target": v.target,
        "status": v.status,
        "reasons": [
            {"rule": r.rule, "statement": r.statement, "evidence": jsonable(r.evidence)}
            for r in v.reasons
        ],
    }


def _print_json(data):
    print(json.dumps(jsonable(data), indent=2))


# ---------------------------------------------------------------- report

def build_report(text: str, db) -> dict:
    ev = Evaluator(db)
    e = parse(text, db)
    warnings = []
    data = {"schema": 1, "expression": text, "normalized": render(e)}
    try:
        alex = alexander(e, db)
        data["alexander"] = [[exp, c] for exp, c in alex.items()]
        data["alexander_pretty"] = alex.pretty()
        data["topologically_slice_certified"] = alex == LaurentPoly.one()
    except CertificateGapError as exc:
        warnings.append(str(exc))
        data["alexander"] = None
        data["alexander_pretty"] = None
        data["topologically_slice_certified"] = None
    try:
        g = ev.genus_bound(e)
        vs = ev.v_seq(e)
        data["genus_bound"] = g
        upto = min(g if g is not None else len(vs.entries) - 1, 24)
        data["v"] = [jsonable(vs.at(k)) for k in range(upto + 1)]
        data["v_exact_tail_from"] = vs.zero_from
        data["tau"] = jsonable(ev.tau(e))
        data["nu_plus"] = jsonable(ev.nu_plus(e))
        data["d1"] = jsonable(ev.d1(e))
    except CableSignError as exc:
        warnings.append(str(exc))
        for key in ("genus_bound", "v", "v_exact_tail_from", "tau", "nu_plus", "d1"):
            data[key] = None
    try:
        fn = sigma(e, db)
        data["sigma"] = [
            {"from": jsonable(lo), "to": jsonable(hi), "value": val}
            for lo, hi, val in fn.pieces()
        ]
    except (SignatureUnavailable, CableSignError) as exc:
        warnings.append(str(exc))
        data["sigma"] = None
    try:
        data["verdicts"] = [
            verdict_json(obstruct_negative_definite(e, ev)),
            verdict_json(obstruct_positive_definite(e, ev)),
            verdict_json(obstruct_definite(e, ev)),
        ]
    except (CableSignError, CertificateGapError) as exc:
        warnings.append(str(exc))
        data["verdicts"] = None
    try:
        kb = kinkiness_bounds(e, ev)
        data["kinkiness"] = {"k_plus_lo": kb.k_plus_lo, "k_minus_lo": kb.k_minus_lo}
    except CableSignError as exc:
        warnings.append(str(exc))
        data["kinkiness"] = None
    data["warnings"] = warnings
    return data


def _iv_str(d):
    if d is None:
        return "unavailable"
    lo, hi = d["lo"], d["hi"]
    if lo is not None and lo == hi:
        return str(lo)
    return f"[{'-inf' if lo is None else lo}, {'inf' if hi is None else hi}]"


def _frac_str(d):
    if isinstance(d, dict):
        return str(Fraction(d["num"], d["den"]))
    return str(d)


def print_report(data):
    print(f"expression:  {data['expression']}")
    print(f"normalized:  {data['normalized']}")
    print(f"alexander:   {data['alexander_pretty'] or 'unavailable'}")
    ts = data["topologically_slice_certified"]
    print(f"topologically slice (certified): {'yes' if ts else 'no' if ts is not None else 'unavailable'}")
    print(f"genus bound: {data['genus_bound'] if data['genus_bound'] is not None else 'unknown'}")
    print(
        f"tau: {_iv_str(data['tau'])}    nu+: {_iv_str(data['nu_plus'])}    "
        f"d1: {_iv_str(data['d1'])}"
    )
    if data["v"] is not None:
        vals = "  ".join(f"V_{k}={_iv_str(iv)}" for k, iv in enumerate(data["v"]))
        print(f"V-sequence:  {vals}")
        if data["v_exact_tail_from"] is not None:
            print(f"             (V_k = 0 for k >= {data['v_exact_tail_from']})")
    if data["sigma"] is not None:
        if len(data["sigma"]) == 1 and data["sigma"][0]["value"] == 0:
            print("sigma:       0 on (0, 1/2]")
        else:
            print("sigma:")
            for piece in data["sigma"]:
                lo = _frac_str(piece["from"])
                hi = _frac_str(piece["to"])
                print(f"             ({lo}, {hi}): {piece['value']}")
    else:
        print("sigma:       unavailable")
    if data["verdicts"] is not None:
        print("verdicts:")
        for v in data["verdicts"]:
            line = f"  {v['target']}: {v['status'].upper() if v['status'] == 'obstructed' else v['status']}"
            if v["reasons"]:
                line += " (" + ", ".join(r["rule"] for r in v["reasons"]) + ")"
            print(line)
            for r in v["reasons"]:
                print(f"      {r['rule']}: {r['statement']}")
                print(f"      evidence: {json.dumps(r['evidence'])}")
    if data["kinkiness"] is not None:
        kb = data["kinkiness"]
        print(f"kinkiness:   k+ >= {kb['k_plus_lo']}, k- >= {kb['k_minus_lo']}")
    for w in data["warnings"]:
        print(f"warning: {w}")


def cmd_report(args, db) -> int:
    data = build_report(args.expr, db)
    if args.json:
        _print_json(data)
    else:
        print_report(data)
    if args.strict and data["warnings"]:
        return EXIT_GAP
    return EXIT_OK


# ---------------------------------------------------------------- suites

def _suite_thm1(ns, ev):
    rows = []
    for n in ns:
        e = family_kn(n)
        t = ev.tau(e)
        v0 = ev.v_seq(e).at(0)
        slice_ok = alexander(e, ev.db) == LaurentPoly.one()
        verdict = obstruct_definite(e, ev)
        rule_a = any(r.rule == RULE_A for r in verdict.reasons)
        ok = (
            t.is_exact
            and t.value == -n
            and v0.lo >= 1
            and slice_ok
            and verdict.obstructed
            and rule_a
        )
        rows.append(
            {
                "n": n,
                "expression": render(e),
                "tau": jsonable(t),
                "v0": jsonable(v0),
                "topologically_slice": slice_ok,
                "verdict": verdict.status,
                "rule_a": rule_a,
                "pass": ok,
            }
        )
    return rows


def _suite_thm2(ks, ls, ev):
    rows = []
    for k in ks:
        for l in ls:
            e = family_kkl(k, l)
            t = ev.tau(e)
            np_ = ev.nu_plus(e)
            kb = kinkiness_bounds(e, ev)
            ok = (
                t.is_exact
                and t.value == -l
                and np_.lo >= k
                and kb.k_plus_lo >= k
                and kb.k_minus_lo >= l
            )
            rows.append(
                {
                    "k": k,
                    "l": l,
                    "tau": jsonable(t),
                    "nu_plus": jsonable(np_),
                    "k_plus_lo": kb.k_plus_lo,
                    "k_minus_lo": kb.k_minus_lo,
                    "pass": ok,
                }
            )
    return rows


def _arc_samples(k: int):
    # three interior rational angles of theta in (pi/(2k+9), 3pi/(2k+9))
    q = 2 * k + 9
    return [Fraction(2 + i, 4 * q) for i in (1, 2, 3)]


def _suite_remark(ks, ev):
    rows = []
    for k in ks:
        e = family_jk(k)
        fn = sigma(e, ev.db)
        at_minus_one = fn.at_minus_one()
        arc_vals = [fn.value(x) for x in _arc_samples(k)]
        verdict = obstruct_definite(e, ev)
        rule_c = any(r.rule == RULE_C for r in verdict.reasons)
        ok = (
            at_minus_one == 2
            and all(v == -2 for v in arc_vals)
            and verdict.obstructed
            and rule_c
        )
        rows.append(
            {
                "k": k,
                "sigma_at_-1": at_minus_one,
                "sigma_on_arc": arc_vals,
                "verdict": verdict.status,
                "rule_signature": rule_c,
                "pass": ok,
            }
        )
    ks = list(ks)
    if all(k in ks for k in (1, 2, 3, 4)):
        chk = signature_combination_check([family_jk(k) for k in (1, 2, 3, 4)], 3, ev.db)
        rows.append(
            {
                "independence": "J_1..J_4, bound 3",
                "result": chk.summary(),
                "pass": chk.independent,
            }
        )
    return rows


def _suite_bcg(ns):
    rows = []
    for n in ns:
        rep = bcg_cobordism_check(n)
        rows.append(
            {
                "n": n,
                "c1_sq": jsonable(rep.c1_sq),
                "c1_cobordism": jsonable(rep.c1_cobordism),
                "sigma_cobordism": rep.sigma_cobordism,
                "failed": [item.name for item in rep.items if not item.passed],
                "pass": rep.passed,
            }
        )
    return rows


def _suite_lens(ns):
    rows = []
    for n in ns:
        id1 = 4 * lens_d(2, 1, 0) == 1
        id2 = 4 * lens_d(2 * n, 1, n) == -1
        id3 = 4 * lens_d(2 * n + 2, 1, n) == 1 - Fraction(2 * n, n + 1)
        rows.append(
            {
                "n": n,
                "4d(S3_2,0)=1": id1,
                "4d(S3_2n,n)=-1": id2,
                "4d(S3_2n+2,n)=1-2n/(n+1)": id3,
                "pass": id1 and id2 and id3,
            }
        )
    return rows


def cmd_suite(args, db) -> int:
    ev = Evaluator(db)
    name = args.name
    if name == "thm1":
        rows = _suite_thm1(_range(args.n, "1..20"), ev)
    elif name == "thm2":
        rows = _suite_thm2(_range(args.k, "1..10"), _range(args.l, "1..10"), ev)
    elif name == "remark":
        rows = _suite_remark(_range(args.k, "1..20"), ev)
    elif name == "bcg":
        rows = _suite_bcg(_range(args.n, "1..50"))
    elif name == "lens":
        rows = _suite_lens(_range(args.n, "1..100"))
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(name)
    passed = all(r["pass"] for r in rows)
    if args.json:
        _print_json({"schema": 1, "suite": name, "rows": rows, "passed": passed})
    else:
        for r in rows:
            status = "PASS" if r["pass"] else "FAIL"
            fields = "  ".join(
                f"{k}={v}" for k, v in r.items() if k != "pass"
            )
            print(f"[{status}] {fields}")
        print(f"suite {name}: {'PASS' if passed else 'FAIL'} ({len(rows)} rows)")
    return EXIT_OK if passed else EXIT_FAIL


# ---------------------------------------------------------------- surgery

def cmd_surgery(args, db) -> int:
    if args.p < 1 or args.q < 1:
        raise ValueError(f"surgery coefficient must have p, q > 0, got {args.p}/{args.q}")
    e = parse(args.expr, db)
    ev = Evaluator(db)
    rows = []
    for i in range(args.p):
        d = ev.surgery_d(e, args.p, args.q, i)
        rows.append({"i": i, "d": jsonable(d) if not d.is_exact else jsonable(d.value)})
    if args.json:
        _print_json(
            {"schema": 1, "expression": args.expr, "p": args.p, "q": args.q, "rows": rows}
        )
    else:
        print(f"d(S^3_{{{args.p}/{args.q}}}({render(e)}), i):")
        for i in range(args.p):
            d = ev.surgery_d(e, args.p, args.q, i)
            print(f"  i={i}: {d if not d.is_exact else d.value}")
    return EXIT_OK


# ---------------------------------------------------------------- sigma

def cmd_sigma(args, db) -> int:
    e = parse(args.expr, db)
    try:
        fn = sigma(e, db)
    except SignatureUnavailable as exc:
        print(f"signature unavailable: {exc}", file=sys.stderr)
        return EXIT_GAP if args.strict else EXIT_OK
    queries = []
    for spec in args.at or []:
        theta = Fraction(spec)  # multiple of pi
        x = theta / 2
        entry = {"theta_over_pi": jsonable(theta), "x": jsonable(x)}
        try:
            entry["value"] = fn.value(x)
        except JumpPointError as exc:
            entry["jump"] = {"left": exc.left, "right": exc.right}
        queries.append(entry)
    if args.json:
        data = {
            "schema": 1,
            "expression": args.expr,
            "pieces": [
                {"from": jsonable(lo), "to": jsonable(hi), "value": v}
                for lo, hi, v in fn.pieces()
            ],
            "queries": queries,
        }
        _print_json(data)
    else:
        print(f"sigma({render(e)}) on (0, 1/2], omega = e^(2*pi*i*x):")
        for lo, hi, v in fn.pieces():
            print(f"  ({lo}, {hi}): {v}")
        for entry in queries:
            if "value" in entry:
                print(f"  at theta = {_frac_str(entry['theta_over_pi'])}*pi: {entry['value']}")
            else:
                j = entry["jump"]
                print(
                    f"  at theta = {_frac_str(entry['theta_over_pi'])}*pi: jump point "
                    f"(left {j['left']}, right {j['right']})"
                )
    return EXIT_OK


# ---------------------------------------------------------------- check-bcg

def cmd_check_bcg(args) -> int:
    ns = _range(args.n, "1..50")
    reports = [bcg_cobordism_check(n) for n in ns]
    passed = all(r.passed for r in reports)
    if args.json:
        data = {
            "schema": 1,
            "rows": [
                {
                    "n": r.n,
                    "passed": r.passed,
                    "c1_sq": jsonable(r.c1_sq),
                    "c1_outside": jsonable(r.c1_outside),
                    "c1_cobordism": jsonable(r.c1_cobordism),
                    "sigma_cobordism": r.sigma_cobordism,
                    "b2_cobordism": r.b2_cobordism,
                    "items": [
                        {"name": i.name, "passed": i.passed, "detail": i.detail}
                        for i in r.items
                    ],
                    "skipped": list(r.skipped),
                }
                for r in reports
            ],
            "passed": passed,
        }
        _print_json(data)
    else:
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            print(
                f"[{status}] n={r.n}: c1^2={r.c1_sq}, c1_W^2={r.c1_cobordism}, "
                f"sigma_W={r.sigma_cobordism}, b2_W={r.b2_cobordism}"
            )
            for item in r.items:
                if not item.passed:
                    print(f"    FAILED {item.name}: {item.detail}")
        for note in reports[0].skipped:
            print(f"skipped: {note}")
        print(f"cobordism check: {'PASS' if passed else 'FAIL'} ({len(reports)} rows)")
    return EXIT_OK if passed else EXIT_FAIL


# ---------------------------------------------------------------- independence

def cmd_independence(args, db) -> int:
    knots = [parse(s, db) for s in args.exprs]
    chk = signature_combination_check(knots, args.bound, db)
    if args.json:
        _print_json(
            {
                "schema": 1,
                "expressions": args.exprs,
                "bound": chk.bound,
                "combinations": chk.count,
                "dependent": [list(v) for v in chk.dependent],
                "independent": chk.independent,
            }
        )
    else:
        print(chk.summary())
    return EXIT_OK if chk.independent else EXIT_FAIL


# ---------------------------------------------------------------- main

def _range(value, default):
    s = value if value is not None else default
    if ".." in s:
        a, b = s.split("..", 1)
        lo, hi = int(a), int(b)
    else:
        lo = hi = int(s)
    if lo < 1 or hi < lo:
        raise ValueError(f"bad range {s!r}")
    return range(lo, hi + 1)


def main(argv=None) -> int:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--strict", action="store_true", help="exit 3 on certificate gaps")
    common.add_argument("--atoms", metavar="FILE", help="JSON registry of extra atoms")

    ap = argparse.ArgumentParser(
        prog="defslice",
        description="Knot concordance invariants and sliceness obstructions "
        "in definite 4-manifolds.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", parents=[common], help="full invariant report")
    p.add_argument("expr")

    p = sub.add_parser("suite", parents=[common], help="verification suites")
    p.add_argument("name", choices=["thm1", "thm2", "remark", "bcg", "lens"])
    p.add_argument("--n", metavar="A..B")
    p.add_argument("--k", metavar="A..B")
    p.add_argument("--l", metavar="A..B")

    p = sub.add_parser("surgery", parents=[common], help="surgery correction terms")
    p.add_argument("expr")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)

    p = sub.add_parser("sigma", parents=[common], help="signature step function")
    p.add_argument("expr")
    p.add_argument(
        "--at",
        action="append",
        metavar="A/B",
        help="query sigma at theta = (A/B)*pi (repeatable)",
    )

    p = sub.add_parser("check-bcg", parents=[common], help="cobordism arithmetic replay")
    p.add_argument("--n", metavar="A..B")

    p = sub.add_parser("independence", parents=[common], help="signature independence check")
    p.add_argument("exprs", nargs="+")
    p.add_argument("--bound", type=int, default=3)

    args = ap.parse_args(argv)

    try:
        db = load_registry(args.atoms) if args.atoms else default_db()
        if args.command == "report":
            return cmd_report(args, db)
        if args.command == "suite":
            return cmd_suite(args, db)
        if args.command == "surgery":
            return cmd_surgery(args, db)
        if args.command == "sigma":
            return cmd_sigma(args, db)
        if args.command == "check-bcg":
            return cmd_check_bcg(args)
        if args.command == "independence":
            return cmd_independence(args, db)
        raise AssertionError(args.command)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CertificateGapError as exc:
        print(f"certificate gap: {exc}", file=sys.stderr)
        return EXIT_GAP
    except (ContradictionError, CableSignError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
