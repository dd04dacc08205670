"""Partition zeta functions.

For a partition class P' and real s,

    zeta_{P'}(s) = sum_{lam in P'} n_lam^-s,   eta_{P'}(s) = sum (-1)^len(lam) n_lam^-s,

where n_lam is the product of the parts.  Over P_X (parts from X) and P*_X
(distinct parts from X) these are Euler-type products; fixing the length
k gives zeta_P({s}^k), which over distinct parts is the multiple zeta value
zeta({s}^k).

Closed forms live in exact "rational * pi^m" arithmetic.  The generating
functions sum_k zeta_P({s}^k) z^k = prod 1/(1 - z n^-s) and
sum_k zeta({s}^k) z^k = prod (1 + z n^-s) give, after multiplying by the
same series at -z, the doubling rules

    zeta_P({2s}^k) = sum_{j=0}^{2k} (-1)^j zeta_P({s}^j) zeta_P({s}^{2k-j})
    zeta({2s}^k)   = (-1)^k sum_{j=0}^{2k} (-1)^j zeta({s}^j) zeta({s}^{2k-j})

which lift s = 2 to every power of two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mpf

from .arith import primes_upto
from .numeric import (
    DEFAULT_CAP,
    DEFAULT_CTX,
    Approximation,
    ClosedFormValue,
    DivergenceError,
    PrecisionContext,
    closed_form,
    cosh,
    eval_product,
    exp,
    pi,
    power_tail_bound,
    sin,
    sinh,
    sqrt,
    to_mpf,
    zeta_even_rational,
    zeta_real,
)
from .partitions import (
    All,
    GreaterEq,
    Multiples,
    PartitionClass,
    PartSpec,
    Primes,
    as_class,
)
from .report import AGREE, DISAGREE, HEURISTIC, CheckResult, exact_verdict, within
from .weights import Power

# -- queries over product families ------------------------------------------


@dataclass(frozen=True)
class ZetaQuery:
    cls: PartitionClass
    s: Fraction
    signed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "cls", as_class(self.cls))
        object.__setattr__(self, "s", Fraction(self.s))


def _signs(distinct: bool, signed: bool) -> tuple[int, int]:
    """(inner, exponent) of the Euler-type product for the class."""
    if distinct:
        return (-1, 1) if signed else (1, 1)
    return (1, -1) if signed else (-1, -1)


def _weight(s) -> Power:
    s = Fraction(s)
    return Power(-int(s) if s.denominator == 1 else -s)


def zeta_class(
    query: ZetaQuery,
    ctx: PrecisionContext = DEFAULT_CTX,
    *,
    cap: int | None = None,
    accelerate: bool = False,
) -> Approximation:
    """zeta or eta over P_X or P*_X via its product; exact for finite X and integer s."""
    cls = query.cls
    if cls.fixed_length is not None:
        raise ValueError("fixed-length sums are not products; use fixed_length_value")
    if not cls.base.finite and query.s <= 1:
        raise DivergenceError("the product needs s > 1")
    inner, exponent = _signs(cls.distinct, query.signed)
    return eval_product(
        _weight(query.s), cls.base, 1, ctx, inner=inner, exponent=exponent, cap=cap, accelerate=accelerate
    )


# -- fixed length ------------------------------------------------------------


def _elementary(values, k: int, distinct: bool, zero, one) -> list:
    """H[j] = sum over j-multisets (or j-sets) of the values of their product, j <= k."""
    H = [one] + [zero] * k
    for x in values:
        rng = range(k, 0, -1) if distinct else range(1, k + 1)
        for j in rng:
            H[j] = H[j] + x * H[j - 1]
    return H


def default_part_cap(k: int) -> int:
    return DEFAULT_CAP if k <= 3 else 300


def zeta_fixed_length_bruteforce(
    cls: PartitionClass | PartSpec,
    s,
    k: int,
    part_cap: int | None = None,
    ctx: PrecisionContext = DEFAULT_CTX,
    *,
    signed: bool = False,
) -> Approximation:
    """Sum of n_lam^-s over lam in the class with k parts, all parts <= part_cap.

    The tail estimate k * (sum_{n > cap} n^-s) * (value at k-1) is heuristic.
    Finite part sets with integer s give the exact rational as well.
    """
    cls = as_class(cls)
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return Approximation(mpf(1), mpf(0), 0, exact=Fraction(1))
    s = Fraction(s)
    base = cls.base
    finite = base.finite
    part_cap = base.maximum if finite else (part_cap or default_part_cap(k))
    parts = base.upto(part_cap)
    sign = -1 if signed and k % 2 else 1
    exact = None
    if finite and s.denominator == 1:
        H = _elementary((Fraction(1, n ** int(s)) for n in parts), k, cls.distinct, Fraction(0), Fraction(1))
        exact = sign * H[k]
    with ctx.work():
        w = _weight(s)
        H = _elementary((w.numeric(n) for n in parts), k, cls.distinct, mpf(0), mpf(1))
        value = sign * H[k]
        if finite:
            return Approximation(value, abs(value) * ctx.eps, part_cap, exact=exact)
        if s <= 1:
            return Approximation(value, None, part_cap, divergent=True, note="s <= 1")
        estimate = k * power_tail_bound(base, to_mpf(s), part_cap) * H[k - 1]
        return Approximation(value, None, part_cap, note="heuristic tail estimate", estimate=estimate)


# -- closed forms: rational * pi^m ---------------------------------------------


def _cfv(r: Fraction, power: int, ctx: PrecisionContext) -> ClosedFormValue:
    with ctx.work():
        value = to_mpf(r) * pi(ctx).value ** power
        return ClosedFormValue(r, power, closed_form(value, ctx))


def zeta_P_2k_rational(k: int) -> Fraction:
    """zeta_P({2}^k) / pi^(2k) = (2^(2k-1) - 1) / 2^(2k-2) * zeta(2k) / pi^(2k)."""
    if k == 0:
        return Fraction(1)
    return Fraction(2 ** (2 * k - 1) - 1, 1) / Fraction(2) ** (2 * k - 2) * zeta_even_rational(2 * k)


def zeta_P_2k_closed(k: int, ctx: PrecisionContext = DEFAULT_CTX) -> ClosedFormValue:
    if k < 0:
        raise ValueError("k must be non-negative")
    return _cfv(zeta_P_2k_rational(k), 2 * k, ctx)


def mzv_2k_rational(k: int) -> Fraction:
    """zeta({2}^k) / pi^(2k) = 1/(2k+1)!."""
    return Fraction(1, math.factorial(2 * k + 1))


def _lift(level: list[Fraction], distinct: bool) -> list[Fraction]:
    out = []
    for k in range((len(level) - 1) // 2 + 1):
        acc = sum(((-1) ** j * level[j] * level[2 * k - j] for j in range(2 * k + 1)), Fraction(0))
        out.append((-1) ** k * acc if distinct else acc)
    return out


@lru_cache(maxsize=64)
def _pow2t_rationals(t: int, k: int, distinct: bool) -> tuple[Fraction, ...]:
    """Rational parts of the length-j sums at s = 2^t for j = 0..k."""
    if t < 1:
        raise ValueError("t must be at least 1")
    seed = mzv_2k_rational if distinct else zeta_P_2k_rational
    level = [seed(j) for j in range(2 ** (t - 1) * k + 1)]
    for _ in range(t - 1):
        level = _lift(level, distinct)
    return tuple(level[: k + 1])


def zeta_pow2t_rational(t: int, k: int) -> Fraction:
    return _pow2t_rationals(t, k, False)[k]


def mzv_pow2t_rational(t: int, k: int) -> Fraction:
    return _pow2t_rationals(t, k, True)[k]


def zeta_pow2t_closed(t: int, k: int, ctx: PrecisionContext = DEFAULT_CTX) -> ClosedFormValue:
    """zeta_P({2^t}^k) by repeated Cauchy squaring from the s = 2 family."""
    return _cfv(zeta_pow2t_rational(t, k), 2**t * k, ctx)


def mzv_pow2t_closed(t: int, k: int, ctx: PrecisionContext = DEFAULT_CTX) -> ClosedFormValue:
    """zeta({2^t}^k) over distinct parts, by the same squaring from pi^(2k)/(2k+1)!."""
    return _cfv(mzv_pow2t_rational(t, k), 2**t * k, ctx)


def zeta_P_4k_rational(k: int) -> Fraction:
    """16^(1-k) sum_{n=0}^{2k} (-1)^n (2^(2n-1)-1)(2^(4k-2n-1)-1) zeta(2n) zeta(4k-2n) / pi^(4k).

    The n = 0 and n = 2k terms use zeta(0) = -1/2.
    """
    if k == 0:
        return Fraction(1)

    def alpha(m: int) -> Fraction:
        return (Fraction(2) ** (m - 1) - 1) * zeta_even_rational(m)

    total = sum(((-1) ** n * alpha(2 * n) * alpha(4 * k - 2 * n) for n in range(2 * k + 1)), Fraction(0))
    return Fraction(16) ** (1 - k) * total


def zeta_P_4k_closed(k: int, ctx: PrecisionContext = DEFAULT_CTX) -> ClosedFormValue:
    return _cfv(zeta_P_4k_rational(k), 4 * k, ctx)


def mzv4_display_rational(k: int) -> Fraction:
    """sum_{n=0}^{2k} (-1)^n / ((2n+1)! (4k-2n+1)!), the printed sum for zeta({4}^k)."""
    return sum(
        (Fraction((-1) ** n, math.factorial(2 * n + 1) * math.factorial(4 * k - 2 * n + 1)) for n in range(2 * k + 1)),
        Fraction(0),
    )


def _c(n: int, m: int) -> Fraction:
    # sum_{i=0}^{n} (-1)^i / ((2i+1)! (2m-2i+1)!)
    return sum(
        (Fraction((-1) ** i, math.factorial(2 * i + 1) * math.factorial(2 * m - 2 * i + 1)) for i in range(n + 1)),
        Fraction(0),
    )


def mzv8_display_rational(k: int) -> Fraction:
    """The printed double sum for zeta({8}^k), taken literally."""
    return sum((Fraction((-1) ** n) * _c(n, n) * _c(4 * k - n, 4 * k - n) for n in range(4 * k + 1)), Fraction(0))


def mzv4_display_corrected(k: int) -> Fraction:
    """The printed zeta({4}^k) sum with the (-1)^k it needs."""
    return (-1) ** k * mzv4_display_rational(k)


def mzv8_display_corrected(k: int) -> Fraction:
    """The zeta({8}^k) double sum with the signs the squaring actually produces."""
    total = sum(
        ((-1) ** (n // 2) * _c(n, n) * _c(4 * k - n, 4 * k - n) for n in range(0, 4 * k + 1, 2)),
        Fraction(0),
    )
    return (-1) ** k * total


# -- numeric companions -------------------------------------------------------


def zeta_P_s2(s, ctx: PrecisionContext = DEFAULT_CTX) -> Approximation:
    """zeta_P({s}^2) = (zeta(2s) + zeta(s)^2) / 2."""
    s = Fraction(s)
    if s <= 1:
        raise DivergenceError("zeta_P({s}^2) needs s > 1")
    with ctx.work():
        a, b = zeta_real(2 * s, ctx), zeta_real(s, ctx)
        value = (a.value + b.value**2) / 2
        bound = (a.tail_bound + 2 * b.value * b.tail_bound + b.tail_bound**2) / 2
        exact = None
        if s.denominator == 1 and s % 2 == 0:
            exact = (zeta_even_rational(int(2 * s)) + zeta_even_rational(int(s)) ** 2) / 2
        return Approximation(value, bound, a.terms + b.terms, exact=exact)


def zeta_P_s2_rational(s: int) -> Fraction:
    """Rational part of (zeta(2s) + zeta(s)^2)/2 for even s, a multiple of pi^(2s)."""
    if s % 2 or s < 2:
        raise ValueError("needs an even s >= 2")
    return (zeta_even_rational(2 * s) + zeta_even_rational(s) ** 2) / 2


def pi_formula(m: int, t: int, ctx: PrecisionContext = DEFAULT_CTX, cap: int | None = None) -> tuple[Approximation, Approximation]:
    """Closed form and product value of sum over partitions into multiples of m of n_lam^-(2^t)."""
    if m < 2 or t not in (1, 2):
        raise ValueError("need m >= 2 and t in {1, 2}")
    with ctx.work():
        p = pi(ctx).value
        x = p / m
        if t == 1:
            value = x / sin(x, ctx)
        else:
            value = x * x / (sin(x, ctx) * sinh(x, ctx))
        product = eval_product(Power(-(2**t)), Multiples(m), 1, ctx, cap=cap)
        return closed_form(value, ctx), product


@dataclass
class RamanujanValues:
    main: tuple[Approximation, Approximation]
    companion: tuple[Approximation, Approximation]
    sixth: tuple[Approximation, Approximation]


def ramanujan_value(
    ctx: PrecisionContext = DEFAULT_CTX, cap: int | None = None, *, accelerate_companions: bool = True
) -> RamanujanValues:
    """Closed form vs product for sum over parts >= 2 of n^-3, its companion and the s = 6 sum.

    The main product is plainly truncated at ``cap``; the companion
    products get the Euler-Maclaurin tail correction unless told otherwise.
    """
    with ctx.work():
        p = pi(ctx).value
        c = cosh(p * sqrt(3, ctx) / 2, ctx)
        main = eval_product(Power(-3), GreaterEq(2), 1, ctx, cap=cap)
        acc = accelerate_companions
        comp = eval_product(Power(-3), All(), 1, ctx, inner=1, exponent=1, cap=cap, accelerate=acc)
        sixth = eval_product(Power(-6), GreaterEq(2), 1, ctx, cap=cap, accelerate=acc)
        return RamanujanValues(
            (closed_form(3 * p / c, ctx), main),
            (closed_form(c / p, ctx), comp),
            (closed_form(6 * p * p / (c * c), ctx), sixth),
        )


def prime_zeta_sum(s, ctx: PrecisionContext = DEFAULT_CTX, P: int | None = None) -> Approximation:
    """1 + sum_{p <= P} p^-s / prod_{r <= p} (1 - r^-s), with a tail bound."""
    s = Fraction(s)
    if s <= 1:
        raise DivergenceError("needs s > 1")
    P = DEFAULT_CAP if P is None else P
    primes = primes_upto(P)
    w = _weight(s)
    with ctx.work():
        total = mpf(1)
        prod = mpf(1)
        for p in primes:
            x = w.numeric(p)
            prod *= 1 - x
            total += x / prod
        exact = None
        if s.denominator == 1 and len(primes) <= 25:
            exact, eprod = Fraction(1), Fraction(1)
            for p in primes:
                x = Fraction(1, p ** int(s))
                eprod *= 1 - x
                exact += x / eprod
        # the partial sum is exactly 1/prod_{p <= P}(1 - p^-s)
        T = power_tail_bound(All(), to_mpf(s), max(P, 1))
        bound = total * (exp(2 * T, ctx) - 1) + total * ctx.eps * len(primes)
        return Approximation(total, bound, len(primes), exact=exact)


def dirichlet_extract(cls: PartitionClass | PartSpec, up_to: int, *, signed: bool = False) -> dict[int, int]:
    """n -> sum over lam in the class with n_lam = n of (+-1)^len(lam), for n <= up_to."""
    cls = as_class(cls)
    if 1 in cls.base:
        raise ValueError("1 in the part set gives infinitely many partitions with each product")
    if cls.fixed_length is not None:
        raise ValueError("fixed-length Dirichlet coefficients are not supported")
    c = [0] * (up_to + 1)
    if up_to >= 1:
        c[1] = 1
    sgn = -1 if signed else 1
    for p in cls.base.upto(up_to):
        rng = range(up_to // p, 0, -1) if cls.distinct else range(1, up_to // p + 1)
        for n in rng:
            if c[n]:
                c[n * p] += sgn * c[n]
    return {n: c[n] for n in range(1, up_to + 1)}


# -- identity checks ------------------------------------------------------------


def _pair(a: Approximation, b: Approximation, name: str, **data) -> CheckResult:
    if a.exact is not None and b.exact is not None:
        return CheckResult(name, exact_verdict(a.exact == b.exact), {"lhs": a.exact, "rhs": b.exact, **data})
    verdict, delta = within(a, b)
    return CheckResult(name, verdict, {"lhs": a, "rhs": b, "delta": delta, **data})


def _mul(a: Approximation, b: Approximation) -> Approximation:
    value = a.value * b.value
    bound = None
    if a.tail_bound is not None and b.tail_bound is not None:
        bound = abs(a.value) * b.tail_bound + abs(b.value) * a.tail_bound + a.tail_bound * b.tail_bound
    exact = a.exact * b.exact if a.exact is not None and b.exact is not None else None
    return Approximation(value, bound, max(a.terms, b.terms), a.divergent or b.divergent, exact)


def doubling_check(
    X: PartSpec, s, distinct: bool, ctx: PrecisionContext = DEFAULT_CTX, *, cap: int | None = None
) -> CheckResult:
    """zeta_{P_X}(2s) = zeta_{P_X}(s) eta_{P_X}(s), or eta_{P*_X}(2s) = eta_{P*_X}(s) zeta_{P*_X}(s)."""
    s = Fraction(s)
    cls = PartitionClass(X, distinct)
    with ctx.work():
        lhs = zeta_class(ZetaQuery(cls, 2 * s, signed=distinct), ctx, cap=cap)
        plain = zeta_class(ZetaQuery(cls, s, False), ctx, cap=cap)
        signed = zeta_class(ZetaQuery(cls, s, True), ctx, cap=cap)
        name = f"doubling X={X} s={s}" + (" distinct" if distinct else "")
        result = _pair(lhs, _mul(plain, signed), name, X=str(X), s=s, distinct=distinct)
        if isinstance(X, Primes) and s.denominator == 1:
            # over primes: zeta_{P_P}(2s) = zeta(2s), and eta_{P*_P}(s) = 1/zeta(s)
            if distinct:
                z = zeta_real(s, ctx)
                ours, ref = signed, Approximation(1 / z.value, 2 * z.tail_bound / z.value**2, z.terms)
            else:
                ours, ref = lhs, zeta_real(2 * s, ctx)
            verdict, delta = within(ours, ref)
            result.data["classical"] = ref
            result.data["classical_delta"] = delta
            if verdict == DISAGREE:
                result.verdict = DISAGREE
        return result


def fixed_length_value(X: PartSpec, s, k: int, distinct: bool, ctx: PrecisionContext = DEFAULT_CTX, part_cap=None):
    """Best available value of the length-k sum: ClosedFormValue, exact brute force, or numeric."""
    s = Fraction(s)
    if isinstance(X, All) and s.denominator == 1 and s >= 2 and (int(s) & (int(s) - 1)) == 0:
        t = int(s).bit_length() - 1
        return (mzv_pow2t_closed if distinct else zeta_pow2t_closed)(t, k, ctx)
    return zeta_fixed_length_bruteforce(PartitionClass(X, distinct), s, k, part_cap, ctx)


def fixed_length_doubling_check(
    X: PartSpec, s, n_level: int, k: int, distinct: bool, ctx: PrecisionContext = DEFAULT_CTX, part_cap=None
) -> CheckResult:
    """Length-k sum at 2^(n+1) s against sum_{j=0}^{2k} (-1)^j (length j)(length 2k-j) at 2^n s.

    Over distinct parts the right side carries the extra factor (-1)^k.
    """
    s = Fraction(s)
    base = s * 2**n_level
    lhs = fixed_length_value(X, 2 * base, k, distinct, ctx, part_cap)
    parts = [fixed_length_value(X, base, j, distinct, ctx, part_cap) for j in range(2 * k + 1)]
    sign = (-1) ** k if distinct else 1
    name = f"fixed-length doubling X={X} s={s} n={n_level} k={k}" + (" distinct" if distinct else "")
    data = {"X": str(X), "s": s, "n": n_level, "k": k, "distinct": distinct}
    if isinstance(lhs, ClosedFormValue):
        rhs = sign * sum((Fraction((-1) ** j) * parts[j].rational * parts[2 * k - j].rational for j in range(2 * k + 1)), Fraction(0))
        return CheckResult(name, exact_verdict(lhs.rational == rhs), {**data, "lhs": lhs, "rhs_rational": rhs})
    if lhs.exact is not None and all(p.exact is not None for p in parts):
        rhs = sign * sum((Fraction((-1) ** j) * parts[j].exact * parts[2 * k - j].exact for j in range(2 * k + 1)), Fraction(0))
        return CheckResult(name, exact_verdict(lhs.exact == rhs), {**data, "lhs": lhs.exact, "rhs": rhs})
    with ctx.work():
        rhs = sign * mpmath.fsum((-1) ** j * parts[j].value * parts[2 * k - j].value for j in range(2 * k + 1))
        delta = abs(lhs.value - rhs)
        # brute-force truncations carry only heuristic error estimates
        verdict = HEURISTIC if delta < mpf(10) ** -3 else DISAGREE
        return CheckResult(name, verdict, {**data, "lhs": lhs, "rhs": rhs, "delta": delta})


def telescoping_product_check(
    X: PartSpec,
    s,
    depth: int = 8,
    chain: str = "zeta",
    ctx: PrecisionContext = DEFAULT_CTX,
    *,
    cap: int | None = None,
    tol=mpf(10) ** -9,
) -> CheckResult:
    """prod_{j<D} zeta_{P*_X}(2^j s) -> zeta_{P_X}(s), or prod_{j<D} eta_{P_X}(2^j s) -> eta_{P*_X}(s).

    Tails use the Euler-Maclaurin acceleration so the residual of the chain
    itself is what gets measured.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if chain not in ("zeta", "eta"):
        raise ValueError("chain is 'zeta' or 'eta'")
    s = Fraction(s)
    with ctx.work():
        signed = chain == "eta"
        factor_cls = PartitionClass(X, distinct=not signed)
        target_cls = PartitionClass(X, distinct=signed)
        partial = Approximation(mpf(1), mpf(0), 0, exact=Fraction(1))
        trajectory = []
        for j in range(depth):
            f = zeta_class(ZetaQuery(factor_cls, s * 2**j, signed), ctx, cap=cap, accelerate=True)
            partial = _mul(partial, f)
            trajectory.append(partial.value)
        target = zeta_class(ZetaQuery(target_cls, s, signed), ctx, cap=cap, accelerate=True)
        delta = abs(partial.value - target.value)
        verdict = AGREE if delta <= tol else DISAGREE
        return CheckResult(
            f"telescoping-{chain}",
            verdict,
            {"X": str(X), "s": s, "depth": depth, "partial": partial, "target": target,
             "delta": delta, "tolerance": mpf(tol), "trajectory": trajectory},
        )
