"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 when any check reports "disagree".
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from mpmath import mpf

from . import zeta as Z
from .etaq import QuotientSpec, coeffs_direct, coeffs_nested, parse_layer
from .numeric import DEFAULT_CAP, DEFAULT_DIGITS, ClosedFormValue, DivergenceError, PrecisionContext, closed_form
from .partitions import All, GrammarError, PartitionClass, count_partitions, enumerate_partitions, parse_class
from .report import AGREE, DISAGREE, HEURISTIC, CheckResult, dumps, exact_verdict, jsonify, within
from .series import (
    expand_distinct15,
    expand_form4,
    expand_form5,
    expand_form6,
    expand_form8,
    expand_form16,
    expand_form17,
    expand_form18,
    phi_series,
    reciprocal,
)
from .suites import SUITES, SuiteParams, run_suites
from .weights import parse_rational, parse_weight

FORMS = {
    "4": expand_form4,
    "5": expand_form5,
    "6": expand_form6,
    "8": expand_form8,
    "15": expand_distinct15,
    "16": expand_form16,
    "17": expand_form17,
    "18": expand_form18,
    "phi": phi_series,
    "reciprocal": lambda f, n: reciprocal(phi_series(f, n)),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=int, default=DEFAULT_DIGITS, help="decimal digits (default 50)")
    common.add_argument("--order", "-N", "--N", dest="order", type=int, default=None, help="series order or product cap")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="partzeta", description="Partition generating functions and partition zeta values.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("partitions", parents=[common], help="enumerate partitions of n")
    p.add_argument("n", type=int)
    p.add_argument("--class", dest="cls", default="all")
    p.add_argument("--count", action="store_true", help="only print the count")

    p = sub.add_parser("expand", parents=[common], help="expand one of the product forms")
    p.add_argument("form", choices=sorted(FORMS))
    p.add_argument("--f", required=True, help="weight, e.g. pow:-2 or const:1/2")

    p = sub.add_parser("verify", parents=[common], help="run identity suites")
    p.add_argument("suite", nargs="?", default="all", help="suite name or 'all'")
    p.add_argument("--only", action="append", default=[], help="restrict to these suites (repeatable, comma lists allowed)")
    p.add_argument("--f", help="use this weight instead of random ones")
    p.add_argument("--q", default="3/10", help="real q for numeric forms")
    p.add_argument("--part-cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--seed", type=int, default=SuiteParams.seed)

    p = sub.add_parser("zeta", parents=[common], help="partition zeta value of a class")
    p.add_argument("--class", dest="cls", default="all")
    p.add_argument("--s", required=True)
    p.add_argument("--signed", action="store_true", help="eta instead of zeta")
    p.add_argument("--part-cap", type=int, default=None)

    p = sub.add_parser("mzv", parents=[common], help="zeta({2^t}^k) over distinct parts")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--part-cap", type=int, default=None)

    p = sub.add_parser("pi", parents=[common], help="pi from partitions into multiples of m")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--t", type=int, default=1)

    p = sub.add_parser("etaq", parents=[common], help="coefficients of a finite product of layers")
    p.add_argument("--layer", action="append", required=True, help="X=<partset>;f=<weight>;inner=+|-;exp=+1|-1")
    return parser


# -- command handlers ---------------------------------------------------------


def cmd_partitions(args, ctx):
    cls = parse_class(args.cls)
    count = count_partitions(args.n, cls)
    if args.count:
        return {"n": args.n, "class": cls.to_grammar(), "count": count}, []
    parts = [list(lam.parts) for lam in enumerate_partitions(args.n, cls)]
    return {"n": args.n, "class": cls.to_grammar(), "count": count, "partitions": parts}, []


def cmd_expand(args, ctx):
    f = parse_weight(args.f)
    N = 30 if args.order is None else args.order
    series = FORMS[args.form](f, N)
    return {"form": args.form, "f": str(f), "series": series.to_json_obj()}, []


def _split_names(values):
    return [n.strip() for v in values for n in v.split(",") if n.strip()]


def cmd_verify(args, ctx):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    only = _split_names(args.only)
    if only:
        names = [n for n in names if n in only] if args.suite == "all" else names
        unknown = [n for n in only if n not in SUITES]
        if unknown:
            raise UsageError(f"unknown suite {unknown[0]!r}; choose from {', '.join(SUITES)}")
    if any(n not in SUITES for n in names):
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    params = SuiteParams(
        order=30 if args.order is None else args.order,
        ctx=ctx,
        weight=parse_weight(args.f) if args.f else None,
        q=parse_rational(args.q),
        part_cap=args.part_cap,
        seed=args.seed,
    )
    results = run_suites(names, params)
    checks = [c for cs in results.values() for c in cs]
    return {"suites": {n: [c.to_json_obj(ctx.digits) for c in cs] for n, cs in results.items()}}, checks


def _is_pow2(s: Fraction) -> bool:
    return s.denominator == 1 and s >= 2 and (int(s) & (int(s) - 1)) == 0


def cmd_zeta(args, ctx):
    cls = parse_class(args.cls)
    s = parse_rational(args.s)
    if cls.fixed_length is None:
        query = Z.ZetaQuery(cls, s, args.signed)
        numeric = Z.zeta_class(query, ctx, cap=args.order)
        if numeric.divergent:
            raise DivergenceError(f"the sum diverges for this class ({numeric.note})")
        oracle = Z.zeta_class(query, ctx, cap=args.order, accelerate=True)
        if numeric.exact is not None or oracle.terms == numeric.terms and oracle.value == numeric.value:
            oracle_obj, verdict = None, (AGREE if numeric.rigorous else HEURISTIC)
        else:
            oracle_obj = oracle
            verdict, _ = within(numeric, oracle)
        result = {"closed_form": None, "numeric": numeric, "oracle": oracle_obj, "verdict": verdict}
        return jsonify(result, ctx.digits), [CheckResult("zeta", verdict)]
    k = cls.fixed_length
    sign = -1 if args.signed and k % 2 else 1
    value = None
    if _is_pow2(s) and isinstance(cls.base, All):
        value = Z.fixed_length_value(cls.base, s, k, cls.distinct, ctx)
    brute = Z.zeta_fixed_length_bruteforce(cls, s, k, args.part_cap, ctx, signed=args.signed)
    if value is None:
        verdict = AGREE if brute.exact is not None or k == 0 else HEURISTIC
        result = {"closed_form": None, "numeric": brute, "oracle": None, "verdict": verdict}
        return jsonify(result, ctx.digits), [CheckResult("zeta", verdict)]
    numeric = value.numeric
    if sign < 0:
        numeric = closed_form(-numeric.value, ctx)
        value = ClosedFormValue(-value.rational, value.pi_power, numeric)
    delta = abs(numeric.value - brute.value)
    scale = brute.estimate if brute.estimate is not None else mpf(0)
    verdict = HEURISTIC if delta <= 2 * scale + mpf(10) ** -3 else DISAGREE
    result = {"closed_form": value, "numeric": numeric, "oracle": brute, "verdict": verdict, "delta": delta}
    return jsonify(result, ctx.digits), [CheckResult("zeta", verdict)]


def cmd_mzv(args, ctx):
    if args.t < 1 or args.k < 0:
        raise UsageError("need t >= 1 and k >= 0")
    value = Z.mzv_pow2t_closed(args.t, args.k, ctx)
    result = {"closed_form": value, "numeric": value.numeric, "oracle": None, "verdict": AGREE}
    if args.k <= 3 and args.t <= 2:
        cap = args.part_cap or Z.default_part_cap(args.k)
        brute = Z.zeta_fixed_length_bruteforce(PartitionClass(distinct=True), 2**args.t, args.k, cap, ctx)
        delta = abs(brute.value - value.numeric.value)
        bound = 2 * (brute.estimate or 0) + mpf(10) ** -3
        result.update(oracle=brute, delta=delta, verdict=HEURISTIC if delta <= bound else DISAGREE)
    return jsonify(result, ctx.digits), [CheckResult("mzv", result["verdict"])]


def cmd_pi(args, ctx):
    if args.m < 2 or args.t not in (1, 2):
        raise UsageError("need --m >= 2 and --t 1 or 2")
    closed, product = Z.pi_formula(args.m, args.t, ctx, cap=args.order)
    verdict, delta = within(closed, product)
    result = {"closed_form": closed, "numeric": product, "oracle": None, "verdict": verdict, "delta": delta}
    return jsonify(result, ctx.digits), [CheckResult("pi", verdict)]


def cmd_etaq(args, ctx):
    layers = [parse_layer(text) for text in args.layer]
    spec = QuotientSpec(layers, 30 if args.order is None else args.order)
    nested = coeffs_nested(spec)
    verdict = exact_verdict(nested == coeffs_direct(spec))
    result = {"layers": [l.to_grammar() for l in layers], "series": nested.to_json_obj(), "verdict": verdict}
    return result, [CheckResult("etaq", verdict)]


HANDLERS = {
    "partitions": cmd_partitions,
    "expand": cmd_expand,
    "verify": cmd_verify,
    "zeta": cmd_zeta,
    "mzv": cmd_mzv,
    "pi": cmd_pi,
    "etaq": cmd_etaq,
}


def _render_text(command: str, payload: dict, checks: list[CheckResult]) -> str:
    if command == "verify":
        lines = []
        for name, cs in payload["suites"].items():
            for c in cs:
                lines.append(f"{c['verdict']:>9}  {name}: {c['name']}")
        bad = sum(c.verdict == DISAGREE for c in checks)
        lines.append(f"{len(checks) - bad}/{len(checks)} checks without disagreement")
        return "\n".join(lines)
    if command == "partitions" and "partitions" in payload:
        body = [" + ".join(map(str, p)) if p else "(empty)" for p in payload["partitions"]]
        return "\n".join(body + [f"count: {payload['count']}"])
    return dumps(payload)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.order is not None and args.order < 0:
        parser.error("--order must be non-negative")
    try:
        ctx = PrecisionContext(digits=args.prec)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        with ctx.work():
            payload, checks = HANDLERS[args.command](args, ctx)
            text = dumps(payload) if args.json else _render_text(args.command, payload, checks)
    except GrammarError as exc:
        print(f"partzeta: usage error: {exc} (offending token: {exc.token!r})", file=sys.stderr)
        return 1
    except (UsageError, DivergenceError, ValueError, TypeError) as exc:
        print(f"partzeta: usage error: {exc}", file=sys.stderr)
        return 1
    print(text)
    return 2 if any(c.verdict == DISAGREE for c in checks) else 0


if __name__ == "__main__":
    sys.exit(main())
