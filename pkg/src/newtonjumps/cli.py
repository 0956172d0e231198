"""Command-line front end.

Exit status is 0 on success, 1 when the inputs are rejected by the library
(non-coprime pairs, malformed or non-convex diagrams, failed checks) and 2
on usage errors, which argparse reports itself.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .diagram import DiagramError, nu_axes, nu_general, parse_diagram, triangle
from .eea import EeaError, eea_table, format_table, table_json
from .oracle import DEFAULT_CANDIDATE_CAP, OracleError, verify_theorem
from .planner import DEFAULT_MAX_LEN, PlanError, check_full_coverage, example_chain_40_73, search_chain, validate_chain
from .procedures import ProcedureError, expected_unit_jumps, procedure6_master

DOMAIN_ERRORS = (DiagramError, EeaError, ProcedureError, OracleError, PlanError, OverflowError)

ACCEPTANCE_PAIRS = [
    (2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (3, 7), (3, 8),
    (4, 5), (4, 7), (5, 6), (5, 7), (5, 8), (6, 7), (7, 8),
]


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def cmd_eea(args) -> int:
    table = eea_table(args.p, args.q)
    if args.json:
        _emit(table_json(table))
    else:
        print(format_table(table))
    return 0


def cmd_nu(args) -> int:
    d = parse_diagram(" ".join(args.diagram))
    value = nu_general(d)
    if args.json:
        _emit({"diagram": d.to_json(), "nu": value})
    else:
        print(value)
    return 0


def summary_line(seq) -> str:
    m_, n_, m = seq.final_shape()
    return f"origin={seq.origin_nu} jumps={seq.unit_prefix()} final=(M={m_},N={n_},m={m})"


def cmd_jumps(args) -> int:
    seq = procedure6_master(args.p, args.q)
    if args.summary:
        print(summary_line(seq))
        return 0
    for step in seq.steps:
        if args.json:
            _emit(step.record())
        else:
            flag = " dup" if step.duplicate else ""
            jump = "-" if step.jump is None else step.jump
            print(f"{step.stage} {step.label} nu={step.nu_computed} jump={jump}{flag} {step.result}")
    if not args.json:
        print(summary_line(seq))
    return 0


def _parse_range(text: str) -> tuple:
    try:
        lo, hi = (int(t) for t in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected pmin..pmax, got {text!r}")
    if lo < 2 or hi <= lo:
        raise argparse.ArgumentTypeError(f"need 2 <= pmin < pmax, got {text!r}")
    return lo, hi


def _verify_line(rep: dict) -> str:
    ok = rep["subset_ok"] and rep["unit_jumps_ok"]
    return (
        f"({rep['p']},{rep['q']}) r={rep['r']} expected={rep['expected_unit_jumps']} "
        f"subset_ok={rep['subset_ok']} unit_jumps_ok={rep['unit_jumps_ok']} {'PASS' if ok else 'FAIL'}"
    )


def cmd_verify(args) -> int:
    if args.pairs:
        lo, hi = args.pairs
        pairs = [(p, q) for p in range(lo, hi + 1) for q in range(p + 1, hi + 1) if math.gcd(p, q) == 1]
    elif args.p is not None and args.q is not None:
        pairs = [(args.p, args.q)]
    else:
        print("error: verify needs <p> <q> or --pairs pmin..pmax", file=sys.stderr)
        return 2
    status = 0
    for p, q in pairs:
        rep = verify_theorem(p, q, floor=args.floor, cap=args.cap)
        if args.json:
            _emit(rep)
        else:
            print(_verify_line(rep))
        if not (rep["subset_ok"] and rep["unit_jumps_ok"]):
            status = 1
    return status


def cmd_plan(args) -> int:
    plan = search_chain(args.p, args.q, args.max_len)
    if args.json:
        _emit(None if plan is None else plan.record())
        return 0
    if plan is None:
        print(f"no admissible step below ({args.p},{args.q})")
        return 0
    for s in plan.steps:
        print(f"({s.p},{s.q}) r={s.r} mu={s.mu} covered_low={s.covered_low}")
    low, high = plan.coverage
    print(f"coverage=[{low},{high}] full_coverage={plan.full_coverage} terminal_rule={plan.terminal_rule}")
    return 0


def selftest_checks():
    """Yield ``(name, ok)`` for each golden and invariant check."""
    table = eea_table(40, 73)
    rows = tuple(r[:2] if r[2] is None else r for r in table.rows)
    yield "eea 40 73 table", rows == ((17, 31, 2), (6, 11, 2), (5, 9, 1), (1, 2, 4), (1, 1, 1), (0, 1))
    yield "eea 40 73 k0/sign", (table.k0, table.sign, 31 * 40 - 17 * 73) == (4, -1, -1)
    seq = procedure6_master(40, 73)
    yield "jumps 40 73 summary", summary_line(seq) == "origin=2808 jumps=231 final=(M=33,N=7,m=1)"
    yield "jumps 40 73 predicted nu", all(s.nu_predicted == s.nu_computed for s in seq.steps)
    yield "nu TRI p q", all(nu_axes(triangle(p, q)) == (p - 1) * (q - 1) for p in range(1, 16) for q in range(1, 16))
    ok = True
    for p, q in ACCEPTANCE_PAIRS:
        rep = verify_theorem(p, q)
        ok = ok and rep["subset_ok"] and rep["unit_jumps_ok"]
    yield "oracle agreement on small pairs", ok
    ok = True
    for q in range(3, 60):
        for p in range(2, q):
            if math.gcd(p, q) == 1:
                s = procedure6_master(p, q)
                ok = ok and s.unit_prefix() == expected_unit_jumps(p, q) == len(s.values) - 1
    yield "unit jumps for q < 60", ok
    plan = validate_chain((40, 73), example_chain_40_73())
    yield "hand chain for 40 73", check_full_coverage(plan, 40) and plan.coverage == (1308, 2808)
    yield "no full plan for 5 7", not search_chain(5, 7).full_coverage


def cmd_selftest(args) -> int:
    status = 0
    for name, ok in selftest_checks():
        print(f"{'PASS' if ok else 'FAIL'} {name}")
        status = status or (0 if ok else 1)
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="newtonjumps", description="Newton numbers and their unit jumps.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("eea", help="print the reversed Euclid table of (p, q)")
    sp.add_argument("p", type=int)
    sp.add_argument("q", type=int)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_eea)

    sp = sub.add_parser("nu", help="Newton number of a diagram (x:y,... | TRI p q | JSON)")
    sp.add_argument("diagram", nargs="+")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_nu)

    sp = sub.add_parser("jumps", help="deformation steps realizing the unit jumps of (p, q)")
    sp.add_argument("p", type=int)
    sp.add_argument("q", type=int)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--summary", action="store_true")
    sp.set_defaults(func=cmd_jumps)

    sp = sub.add_parser("verify", help="compare the procedures with brute-force enumeration")
    sp.add_argument("p", type=int, nargs="?")
    sp.add_argument("q", type=int, nargs="?")
    sp.add_argument("--floor", type=int, default=None)
    sp.add_argument("--pairs", type=_parse_range, default=None, metavar="PMIN..PMAX")
    sp.add_argument("--cap", type=int, default=DEFAULT_CANDIDATE_CAP, help="refuse diagrams with more candidate points")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("plan", help="search a chain of segments covering lower Newton numbers")
    sp.add_argument("p", type=int)
    sp.add_argument("q", type=int)
    sp.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_plan)

    sp = sub.add_parser("selftest", help="run golden and invariant checks")
    sp.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
