"""Command-line interface.

Exit codes: 0 success, 1 semantic failure (not permissible, no relation,
failed verification), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

import mpmath

from chinburg import fixtures
from chinburg.fields import is_fundamental_conductor
from chinburg.intrel import lindep
from chinburg.numerics import (
    l_prime_minus1,
    mahler_linear,
    mahler_quadratic,
    verify_thm41,
)
from chinburg.numerics.special import suggest_conductor
from chinburg.permissible import check, check_brv_form
from chinburg.polyz import IntPoly
from chinburg.records import dumps_record
from chinburg.search import (
    CASES, SIGNS, CandidateRecord, SearchConfig, a_blocks, run_search, summarize,
)

MAX_DIGITS = 300
DEFAULT_DIGITS = 60
THM41_CONDUCTORS = (3, 4, 7, 8, 11, 15, 20)


class UsageError(Exception):
    pass


def _digits(text: str) -> int:
    try:
        d = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 10 <= d <= MAX_DIGITS:
        raise argparse.ArgumentTypeError(f"digits must lie in [10, {MAX_DIGITS}]")
    return d


def _poly(text: str) -> IntPoly:
    try:
        p = IntPoly.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if p.is_zero:
        raise argparse.ArgumentTypeError("polynomial must be nonzero")
    return p


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from None


def _emit(kind: str, payload: dict) -> None:
    print(dumps_record(kind, payload))


def _polys(args) -> tuple[str, IntPoly, IntPoly]:
    if args.a is not None and args.b is not None and args.p is None and args.q is None:
        return "quadratic", args.a, args.b
    if args.p is not None and args.q is not None and args.a is None and args.b is None:
        return "linear", args.p, args.q
    raise UsageError("give either --a and --b, or --p and --q")


def _measure(kind: str, first: IntPoly, second: IntPoly, digits: int):
    if kind == "quadratic":
        return mahler_quadratic(first, second, digits)
    return mahler_linear(first, second, digits)


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------

def cmd_dvalue(args) -> int:
    f = args.f
    if not is_fundamental_conductor(f):
        hint = suggest_conductor(f)
        msg = f"error: -{f} is not a fundamental discriminant"
        if hint:
            msg += f" (did you mean f={hint}?)"
        print(msg, file=sys.stderr)
        return 1
    val = l_prime_minus1(f, args.digits)
    with mpmath.workdps(args.digits + 5):
        print(mpmath.nstr(val.value, args.digits, strip_zeros=False))
    return 0


def cmd_check(args) -> int:
    kind, first, second = _polys(args)
    if kind == "quadratic":
        report = check(first, second, strict_galois=args.strict_galois)
    else:
        report = check_brv_form(first, second, strict_galois=args.strict_galois)
    _emit("permissibility_report", report.to_dict())
    return 0 if report.permissible else 1


def cmd_measure(args) -> int:
    kind, first, second = _polys(args)
    val = _measure(kind, first, second, args.digits)
    with mpmath.workdps(args.digits + 5):
        _emit("measure", {"kind": kind, "digits": args.digits,
                          "value": mpmath.nstr(val.value, args.digits, strip_zeros=False),
                          "err": mpmath.nstr(val.err, 3)})
    return 0


def cmd_relate(args) -> int:
    kind, first, second = _polys(args)
    for f in args.conductors:
        if not is_fundamental_conductor(f):
            raise UsageError(f"-{f} is not a fundamental discriminant")

    def values(d):
        return [_measure(kind, first, second, d)] + [l_prime_minus1(f, d) for f in args.conductors]

    rel = lindep(values(args.digits), args.digits, values)
    if rel is None:
        _emit("relation", {"found": False, "conductors": args.conductors, "digits": args.digits})
        return 1
    payload = {"found": True, "conductors": args.conductors, **rel.to_dict()}
    _emit("relation", payload)
    return 0


def _verify_tables(digits: int, out) -> bool:
    ok_all = True
    for e in fixtures.load():
        if not e.ratios:
            continue
        t0 = time.time()
        fs = sorted(e.ratios)

        def values(d, e=e, fs=fs):
            return [_measure(e.kind, e.first, e.second, d)] + [l_prime_minus1(f, d) for f in fs]

        rel = lindep(values(digits), digits, values)
        got = dict(zip(fs, rel.rationals)) if rel else None
        ok = got == e.ratios and rel.confirmed_at is not None
        ok_all &= ok
        shown = {f: str(r) for f, r in got.items()} if got else None
        print(f"{'PASS' if ok else 'FAIL'} {e.label}: expected "
              f"{ {f: str(r) for f, r in e.ratios.items()} } got {shown} "
              f"({time.time() - t0:.1f}s)", file=out)
    return ok_all


def _verify_checker(out) -> bool:
    ok_all = True
    for e in fixtures.load():
        if e.kind == "quadratic":
            r = check(e.first, e.second)
            expected_ok = e.fails is None
        else:
            r = check_brv_form(e.first, e.second)
            expected_ok = e.brv_permissible
        if expected_ok:
            ok = r.permissible and r.conductors == e.conductors
        else:
            ok = not r.permissible and (e.fails is None or r.first_failure == e.fails)
        ok_all &= ok
        print(f"{'PASS' if ok else 'FAIL'} {e.label}: permissible={r.permissible} "
              f"conductors={list(r.conductors)} first_failure={r.first_failure}", file=out)
    return ok_all


def _verify_thm41(digits: int, out) -> bool:
    ok_all = True
    for f in THM41_CONDUCTORS:
        res = verify_thm41(f, digits)
        ok_all &= res["ok"]
        print(f"{'PASS' if res['ok'] else 'FAIL'} f={f}: |lhs - 2 d_f| = "
              f"{mpmath.nstr(res['diff'], 3)}", file=out)
    return ok_all


def _verify_smyth(digits: int, out) -> bool:
    m = mahler_linear(IntPoly([1]), IntPoly([1, 1]), digits)
    d3 = l_prime_minus1(3, digits)
    with mpmath.workdps(digits + 10):
        diff = abs(m.value - d3.value)
    ok = diff < mpmath.mpf(10) ** (-(digits - 10))
    print(f"{'PASS' if ok else 'FAIL'} m(1+x+y) = d_3: difference {mpmath.nstr(diff, 3)}", file=out)
    return bool(ok)


SUITES = ("checker", "tables", "thm41", "smyth", "all")


def cmd_verify(args) -> int:
    out = sys.stdout
    suites = ("checker", "smyth", "thm41", "tables") if args.suite == "all" else (args.suite,)
    ok = True
    for s in suites:
        print(f"== {s}", file=out)
        if s == "checker":
            ok &= _verify_checker(out)
        elif s == "tables":
            ok &= _verify_tables(args.digits, out)
        elif s == "thm41":
            ok &= _verify_thm41(args.digits, out)
        elif s == "smyth":
            ok &= _verify_smyth(args.digits, out)
    print("ALL PASS" if ok else "SOME CHECKS FAILED", file=out)
    return 0 if ok else 1


def cmd_search(args) -> int:
    cfg = SearchConfig(
        ell=args.ell, bound=args.bound,
        cases=tuple(args.cases), signs=tuple(args.signs), vanish_at=tuple(args.vanish),
        out_path=args.out, checkpoint_path=args.checkpoint,
    )
    if args.resume and not (args.out and args.checkpoint):
        raise UsageError("--resume needs --out and --checkpoint")
    records = []
    for rec in run_search(cfg, resume=args.resume, threads=args.threads):
        records.append(rec)
        if not args.out:
            print(rec.to_json())
    if args.out and args.resume:
        # report on the complete output, not only the resumed tail
        lines = Path(args.out).read_text().splitlines()
        records = [CandidateRecord.from_payload(json.loads(x)["payload"]) for x in lines]
    summary = summarize(records, len(a_blocks(cfg)))
    print(f"blocks={summary.blocks} records={summary.records}", file=sys.stderr)
    if args.compare_table4:
        print(summary.published_comparison(cfg.ell), file=sys.stderr)
    return 0


def cmd_fixtures(args) -> int:
    if args.action == "export":
        text = fixtures.raw_text()
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
    else:
        for e in fixtures.load():
            ratios = ", ".join(f"{r} d_{f}" for f, r in sorted(e.ratios.items()))
            print(f"{e.label:18s} {e.kind:9s} {ratios}")
    return 0


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

def _add_poly_args(p):
    p.add_argument("--a", type=_poly, help="a(x), ascending coefficients")
    p.add_argument("--b", type=_poly, help="b(x), ascending coefficients")
    p.add_argument("--p", type=_poly, help="p(x) of the linear form p*y + q")
    p.add_argument("--q", type=_poly, help="q(x) of the linear form p*y + q")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chinburg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dvalue", help="print d_f = L'(chi_-f, -1)")
    p.add_argument("--f", type=int, required=True)
    p.add_argument("--digits", type=_digits, default=DEFAULT_DIGITS)
    p.set_defaults(func=cmd_dvalue)

    p = sub.add_parser("check", help="permissibility report as JSON")
    _add_poly_args(p)
    p.add_argument("--strict-galois", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("measure", help="Mahler measure")
    _add_poly_args(p)
    p.add_argument("--digits", type=_digits, default=DEFAULT_DIGITS)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("relate", help="rational relation between m(P) and d_f values")
    _add_poly_args(p)
    p.add_argument("--conductors", type=_int_list, required=True)
    p.add_argument("--digits", type=_digits, default=DEFAULT_DIGITS)
    p.set_defaults(func=cmd_relate)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--digits", type=_digits, default=DEFAULT_DIGITS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="enumerate permissible candidates")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--cases", nargs="+", choices=CASES, default=list(CASES))
    p.add_argument("--signs", nargs="+", choices=SIGNS, default=list(SIGNS))
    p.add_argument("--vanish", nargs="+", type=int, choices=(1, -1), default=[1, -1])
    p.add_argument("--out")
    p.add_argument("--checkpoint")
    p.add_argument("--resume", action="store_true")
    p.add_argument("--threads", type=int, default=int(os.environ.get("CHINBURG_THREADS", "1")))
    p.add_argument("--compare-table4", action="store_true",
                   help="print distinct strong/weak tuple counts next to the published ones")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("fixtures", help="list or export the reference fixtures")
    p.add_argument("action", choices=("list", "export"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
