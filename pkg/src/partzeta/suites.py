"""Verification suites: each returns a list of CheckResult."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from mpmath import mpf

from . import zeta as Z
from .arith import liouville, mobius
from .etaq import ProductLayer, QuotientSpec, coeffs_direct, coeffs_nested
from .numeric import (
    DEFAULT_CAP,
    DEFAULT_CTX,
    PrecisionContext,
    closed_form,
    eval_forms_numeric,
    eval_product,
    pi,
    sinh,
    zeta_even,
)
from .partitions import All, ArithProg, Finite, GreaterEq, Multiples, PartitionClass, Primes, count_partitions
from .report import DISAGREE, CheckResult, exact_verdict, within, within_tol
from .series import (
    TruncatedSeries,
    cf_convergent,
    congruence_check,
    expand_distinct15,
    expand_form4,
    expand_form5,
    expand_form6,
    expand_form16,
    expand_form17,
    golden_relation_residual,
    phi_series,
    reciprocal,
    z_marker_extract,
)
from .weights import Constant, Power, Restricted, Table, WeightFunction, ZScaled


@dataclass
class SuiteParams:
    order: int = 30
    ctx: PrecisionContext = DEFAULT_CTX
    weight: WeightFunction | None = None
    q: Fraction = Fraction(3, 10)
    cap: int = DEFAULT_CAP
    part_cap: int = DEFAULT_CAP
    seed: int = 20240601
    samples: int = 20
    extra: dict = field(default_factory=dict)


def random_exact_weight(rng: random.Random, order: int) -> WeightFunction:
    """A small random exact weight: table, constant, integer power, or a restriction of one."""
    kind = rng.choice(("table", "table", "const", "pow", "restrict"))
    if kind == "const":
        return Constant(Fraction(rng.randint(-3, 3), rng.randint(1, 4)))
    if kind == "pow":
        return Power(rng.randint(-3, 1))
    table = Table({n: Fraction(rng.randint(-4, 4), rng.randint(1, 5)) for n in range(1, order + 1)})
    if kind == "restrict":
        X = rng.choice((Primes(), Multiples(rng.randint(2, 4)), GreaterEq(rng.randint(2, 5)), ArithProg(1, 3)))
        return Restricted(table, X)
    return table


def _weights(p: SuiteParams, count: int | None = None) -> list[WeightFunction]:
    if p.weight is not None:
        return [p.weight]
    rng = random.Random(p.seed)
    return [random_exact_weight(rng, p.order) for _ in range(count or p.samples)]


def pentagonal_partition_numbers(n_max: int) -> list[int]:
    """p(0..n_max) from Euler's pentagonal recurrence."""
    p = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        acc, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            acc += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                acc += sign * p[n - g2]
            k += 1
        p[n] = acc
    return p


# -- formal series --------------------------------------------------------------


def suite_partition_gf(p: SuiteParams) -> list[CheckResult]:
    N = max(p.order, 40)
    got = [int(c) for c in reciprocal(phi_series(Constant(1), N)).coeffs]
    want = pentagonal_partition_numbers(N)
    counted = [count_partitions(n) for n in range(N + 1)]
    return [CheckResult("partition-gf", exact_verdict(got == want == counted), {"order": N, "p": got})]


def suite_five_forms(p: SuiteParams) -> list[CheckResult]:
    N = p.order
    out = []
    bad = []
    for f in _weights(p):
        target = reciprocal(phi_series(f, N))
        forms = {
            "form4": expand_form4(f, N),
            "form5": expand_form5(f, N),
            "form6": expand_form6(f, N),
            "form8": cf_convergent(f, N + 1, N),
        }
        if any(s != target for s in forms.values()):
            bad.append(str(f))
    out.append(CheckResult("five-forms-formal", exact_verdict(not bad), {"order": N, "weights": len(_weights(p)), "failures": bad}))
    numeric_weights = [p.weight] if p.weight is not None else [Constant(Fraction(1, 2)), Power(-2)]
    for f in numeric_weights:
        if f.marked:
            continue
        rep = eval_forms_numeric(f, p.q, p.ctx)
        delta = rep.max_delta()
        tol = mpf(10) ** -(p.ctx.digits - 10)
        verdict = within_tol(delta, tol)
        if rep.form7_verdict == "convergent":
            d7 = max(abs(rep.form7.value - v.value) for v in rep.values().values())
            if d7 > mpf(10) ** -(p.ctx.digits - 20):
                verdict = DISAGREE
        out.append(CheckResult("five-forms-numeric", verdict, {"f": str(f), "q": p.q, "report": rep.to_json_obj(p.ctx.digits), "tolerance": tol}))
    return out


def suite_dual(p: SuiteParams) -> list[CheckResult]:
    N = p.order
    bad = []
    for f in _weights(p):
        target = phi_series(f, N)
        if not (expand_distinct15(f, N) == expand_form16(f, N) == expand_form17(f, N) == target):
            bad.append(str(f))
        if cf_convergent(f, N + 1, N, distinct=True) != target:
            bad.append(f"{f} (continued fraction)")
    return [CheckResult("dual-forms", exact_verdict(not bad), {"order": N, "failures": bad})]


def suite_golden(p: SuiteParams) -> list[CheckResult]:
    N = p.order
    bad_golden, bad_z = [], []
    for f in _weights(p, 10):
        if golden_relation_residual(f, N).valuation() <= N:
            bad_golden.append(str(f))
        marked = reciprocal(phi_series(ZScaled(f), N))
        extracted = z_marker_extract(marked, 1)
        direct = TruncatedSeries.from_coeffs([0] + [f(n) for n in range(1, N + 1)])
        if extracted != direct:
            bad_z.append(str(f))
    return [
        CheckResult("golden-relation", exact_verdict(not bad_golden), {"order": N, "failures": bad_golden}),
        CheckResult("z-limit", exact_verdict(not bad_z), {"order": N, "failures": bad_z}),
    ]


def suite_congruence(p: SuiteParams) -> list[CheckResult]:
    cases = p.extra.get("congruence", [(1, 3, 1), (2, 4, 1), (1, 5, 2)])
    return [
        CheckResult(f"congruence a={a} m={m} s={s}", exact_verdict(congruence_check(a, m, s, p.order)), {"order": p.order})
        for a, m, s in cases
    ]


# -- partition zeta -----------------------------------------------------------


def suite_pi(p: SuiteParams) -> list[CheckResult]:
    out = []
    for m, t in [(m, 1) for m in range(2, 7)] + [(2, 2)]:
        closed, product = Z.pi_formula(m, t, p.ctx, cap=p.cap)
        verdict, delta = within(closed, product)
        out.append(CheckResult(f"pi m={m} t={t}", verdict, {"closed_form": closed, "product": product, "delta": delta}))
    return out


def suite_zeta_closed(p: SuiteParams) -> list[CheckResult]:
    ctx = p.ctx
    listed = {
        1: Fraction(1, 6),
        2: Fraction(7, 360),
        3: Fraction(31, 15120),
        13: Fraction(22076500342261, 93067260259985915904000000),
    }
    out = []
    for k, r in listed.items():
        mult = Fraction(2 ** (2 * k - 1) - 1, 2 ** (2 * k - 2))
        got = Z.zeta_P_2k_rational(k)
        ok = got == r and got == mult * Z.zeta_even_rational(2 * k)
        out.append(CheckResult(f"zeta_P({{2}}^{k})", exact_verdict(ok), {"rational": got, "pi_power": 2 * k}))
    ok = all(Z.zeta_P_2k_rational(k) == Z.zeta_pow2t_rational(1, k) for k in range(14))
    out.append(CheckResult("zeta_P({2}^k) recursion agreement k<=13", exact_verdict(ok)))
    closed = Z.zeta_P_2k_closed(2, ctx).numeric
    brute = Z.zeta_fixed_length_bruteforce(All(), 2, 2, p.part_cap, ctx)
    delta = abs(closed.value - brute.value)
    out.append(CheckResult("zeta_P({2}^2) brute force", within_tol(delta, mpf(10) ** -3), {"closed": closed, "brute": brute, "delta": delta}))
    ok = all(Z.zeta_P_4k_rational(k) == Z.zeta_pow2t_rational(2, k) for k in range(1, 5))
    ok = ok and Z.zeta_P_4k_rational(1) == Z.zeta_even_rational(4)
    out.append(CheckResult("zeta_P({4}^k) sum vs recursion k<=4", exact_verdict(ok), {"k1": Z.zeta_P_4k_rational(1)}))
    # shuffle-type identity for length two
    ok = Z.zeta_P_s2_rational(2) == Z.zeta_P_2k_rational(2)
    out.append(CheckResult("zeta_P({s}^2) at s=2", exact_verdict(ok), {"rational": Z.zeta_P_s2_rational(2)}))
    shuffle = Z.zeta_P_s2(3, ctx)
    brute = Z.zeta_fixed_length_bruteforce(All(), 3, 2, p.part_cap, ctx)
    delta = abs(shuffle.value - brute.value)
    out.append(CheckResult("zeta_P({3}^2) brute force", within_tol(delta, mpf(10) ** -3), {"formula": shuffle, "brute": brute, "delta": delta}))
    return out


def suite_mzv(p: SuiteParams) -> list[CheckResult]:
    out = []
    ok = all(Z.mzv_pow2t_rational(1, k) == Fraction(1, factorial(2 * k + 1)) for k in range(7))
    out.append(CheckResult("zeta({2}^k) k<=6", exact_verdict(ok)))
    closed = Z.mzv_pow2t_closed(1, 2, p.ctx).numeric
    brute = Z.zeta_fixed_length_bruteforce(PartitionClass(All(), True), 2, 2, p.part_cap, p.ctx)
    delta = abs(closed.value - brute.value)
    out.append(CheckResult("zeta({2}^2) brute force", within_tol(delta, mpf(10) ** -3), {"closed": closed, "brute": brute, "delta": delta}))
    for t, corrected, printed in ((2, Z.mzv4_display_corrected, Z.mzv4_display_rational), (3, Z.mzv8_display_corrected, Z.mzv8_display_rational)):
        for k in range(1, 4):
            rec = Z.mzv_pow2t_rational(t, k)
            out.append(
                CheckResult(
                    f"zeta({{{2**t}}}^{k}) sign-corrected display",
                    exact_verdict(corrected(k) == rec),
                    {"recursion": rec, "printed_display": printed(k), "printed_matches": printed(k) == rec},
                )
            )
    ok = all(Z.fixed_length_doubling_check(All(), 2, n, k, True, p.ctx).ok for n in range(3) for k in range(4))
    out.append(CheckResult("mzv chain satisfies doubling", exact_verdict(ok)))
    return out


def suite_doubling(p: SuiteParams) -> list[CheckResult]:
    ctx = p.ctx
    rng = random.Random(p.seed)
    out = []
    for s in (2, 3):
        for distinct in (False, True):
            X = Finite(frozenset(rng.sample(range(2, 51), 8)))
            out.append(Z.doubling_check(X, s, distinct, ctx))
    out.append(Z.doubling_check(Finite(frozenset(range(2, 51))), 2, False, ctx))
    out.append(Z.doubling_check(Primes(), 2, False, ctx, cap=p.cap))
    out.append(Z.doubling_check(Primes(), 2, True, ctx, cap=p.cap))
    M = p.extra.get("dirichlet_max", 1000)
    lio = Z.dirichlet_extract(Primes(), M, signed=True)
    mob = Z.dirichlet_extract(PartitionClass(Primes(), True), M, signed=True)
    sqf = Z.dirichlet_extract(PartitionClass(Primes(), True), M)
    ok = all(lio[n] == liouville(n) and mob[n] == mobius(n) and sqf[n] == abs(mobius(n)) for n in range(1, M + 1))
    out.append(CheckResult("dirichlet coefficients", exact_verdict(ok), {"up_to": M}))
    for X, s, n, k, d in ((All(), 2, 0, 2, False), (All(), 2, 0, 2, True), (Finite({2, 3, 5}), 2, 1, 3, False), (Finite({2, 3, 5, 7}), 3, 0, 3, True)):
        out.append(Z.fixed_length_doubling_check(X, s, n, k, d, ctx))
    return out


def suite_ramanujan(p: SuiteParams) -> list[CheckResult]:
    ctx = p.ctx
    r = Z.ramanujan_value(ctx, cap=p.cap)
    out = []
    for name, (closed, product) in (("parts>=2 s=3", r.main), ("companion", r.companion), ("parts>=2 s=6", r.sixth)):
        verdict, delta = within(closed, product)
        out.append(CheckResult(f"ramanujan {name}", verdict, {"closed_form": closed, "product": product, "delta": delta}))
    with ctx.work():
        pv = pi(ctx).value
        closed = closed_form(sinh(pv, ctx) / pv, ctx)
        product = eval_product(Power(-2), All(), 1, ctx, inner=1, exponent=1, cap=p.cap)
        verdict, delta = within(closed, product)
        out.append(CheckResult("distinct s=2 sinh", verdict, {"closed_form": closed, "product": product, "delta": delta}))
    with ctx.work():
        for s in (2, 4):
            ps = Z.prime_zeta_sum(s, ctx, p.cap)
            ref = zeta_even(s, ctx).numeric
            verdict, delta = within(ps, ref)
            out.append(CheckResult(f"prime sum s={s}", verdict, {"sum": ps, "zeta": ref, "delta": delta}))
    return out


def suite_etaq(p: SuiteParams) -> list[CheckResult]:
    rng = random.Random(p.seed)
    bad = []
    n = p.extra.get("etaq_samples", 50)
    for _ in range(n):
        layers = []
        for _ in range(rng.randint(1, 3)):
            X = Finite(frozenset(rng.sample(range(1, 11), rng.randint(0, 6))))
            f = Table({m: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for m in range(1, 11)})
            layers.append(ProductLayer(X, f, rng.choice((1, -1)), rng.choice((1, -1))))
        spec = QuotientSpec(layers, 15)
        if coeffs_nested(spec) != coeffs_direct(spec):
            bad.append([l.to_grammar() for l in layers])
    out = [CheckResult("eta-quotient nested vs direct", exact_verdict(not bad), {"specs": n, "failures": bad})]
    spec = QuotientSpec([ProductLayer(All(), Constant(1), -1, -1)], 10)
    got = [int(c) for c in coeffs_nested(spec).coeffs]
    out.append(CheckResult("eta-quotient partition numbers", exact_verdict(got == pentagonal_partition_numbers(10)), {"coeffs": got}))
    return out


def suite_telescoping(p: SuiteParams) -> list[CheckResult]:
    depth = p.extra.get("depth", 8)
    return [
        Z.telescoping_product_check(GreaterEq(2), 2, depth, "zeta", p.ctx, cap=p.cap),
        Z.telescoping_product_check(GreaterEq(2), 2, depth, "eta", p.ctx, cap=p.cap),
    ]


SUITES = {
    "partition-gf": suite_partition_gf,
    "five-forms": suite_five_forms,
    "dual": suite_dual,
    "golden": suite_golden,
    "congruence": suite_congruence,
    "pi": suite_pi,
    "zeta-closed": suite_zeta_closed,
    "mzv": suite_mzv,
    "doubling": suite_doubling,
    "ramanujan": suite_ramanujan,
    "etaq": suite_etaq,
    "telescoping": suite_telescoping,
}


def run_suites(names, params: SuiteParams) -> dict[str, list[CheckResult]]:
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(unknown[0])
    return {name: SUITES[name](params) for name in names}
