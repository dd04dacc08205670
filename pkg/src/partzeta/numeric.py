"""Arbitrary-precision real evaluation with tail-bound bookkeeping.

mpmath supplies the big-float type (``mpf``) and square roots / real powers;
pi, exp, sin, cos, sinh and cosh are evaluated here from their series so the
closed forms they feed can be cross-checked against mpmath independently.

Conventions for infinite products: a factor is ``(1 + inner*f(n)*q^n)**exponent``
with ``inner`` and ``exponent`` each +1 or -1, so

    inner=-1, exponent=-1   1/prod(1 - f q^n)    zeta over P_X
    inner=+1, exponent=-1   1/prod(1 + f q^n)    eta over P_X
    inner=+1, exponent=+1   prod(1 + f q^n)      zeta over distinct parts
    inner=-1, exponent=+1   prod(1 - f q^n)      eta over distinct parts

Products are truncated only once every remaining factor has |u| <= 1/2, where
|log(1+u)| <= 2|u|; with T bounding the sum of the remaining |u| the
truncation error is at most |partial| * (exp(2T) - 1).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mpf

from .partitions import All, ArithProg, Finite, GreaterEq, Multiples, PartSpec
from .weights import Constant, Negated, Power, Restricted, Table, WeightFunction

DEFAULT_DIGITS = 50
DEFAULT_GUARD = 10
DEFAULT_CAP = 10_000


class DivergenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class PrecisionContext:
    digits: int = DEFAULT_DIGITS
    guard: int = DEFAULT_GUARD

    def __post_init__(self):
        if self.digits < 10 or self.guard < 10:
            raise ValueError("need digits >= 10 and guard >= 10")

    @property
    def dps(self) -> int:
        return self.digits + self.guard

    def work(self):
        return mpmath.workdps(self.dps)

    @property
    def eps(self) -> mpf:
        return mpf(10) ** (-self.dps)

    @property
    def target(self) -> mpf:
        """Accuracy promised to callers: 10^-(digits-2)."""
        return mpf(10) ** (-(self.digits - 2))


DEFAULT_CTX = PrecisionContext()


@dataclass
class Approximation:
    """A big-float value; tail_bound None means the error estimate is heuristic."""

    value: mpf
    tail_bound: mpf | None = None
    terms: int = 0
    divergent: bool = False
    exact: Fraction | None = None
    note: str = ""
    estimate: mpf | None = None  # size of the error when tail_bound is heuristic

    @property
    def rigorous(self) -> bool:
        return self.tail_bound is not None and not self.divergent

    @property
    def bound(self) -> mpf:
        """Tail bound, or +inf when only heuristic."""
        return self.tail_bound if self.tail_bound is not None else mpf("inf")

    def to_json_obj(self, digits: int = DEFAULT_DIGITS) -> dict:
        out = {
            "value": "divergent" if self.divergent else decimal_string(self.value, digits),
            "tail_bound": "heuristic" if self.tail_bound is None else decimal_string(self.tail_bound, 6),
            "terms": int(self.terms),
        }
        if self.exact is not None:
            out["exact"] = f"{self.exact.numerator}/{self.exact.denominator}"
        if self.estimate is not None:
            out["tail_estimate"] = decimal_string(self.estimate, 6)
        return out


@dataclass
class ClosedFormValue:
    """rational * pi**pi_power, with its numeric value."""

    rational: Fraction
    pi_power: int
    numeric: Approximation = field(repr=False, default=None)

    def to_json_obj(self, digits: int = DEFAULT_DIGITS) -> dict:
        return {
            "rational": f"{self.rational.numerator}/{self.rational.denominator}",
            "pi_power": self.pi_power,
        }


def decimal_string(x, digits: int) -> str:
    if x is None:
        return "null"
    with mpmath.workdps(max(digits, 15) + 5):
        x = mpf(x)
        if mpmath.isinf(x) or mpmath.isnan(x):
            return str(x)
        return mpmath.nstr(x, digits, strip_zeros=False, min_fixed=-5, max_fixed=digits)


def to_mpf(x) -> mpf:
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    if isinstance(x, str):
        fx = Fraction(x)
        return mpf(fx.numerator) / fx.denominator
    return mpf(x)


def closed_form(value: mpf, ctx: PrecisionContext, exact: Fraction | None = None) -> Approximation:
    """Wrap a closed-form evaluation; its only error is rounding."""
    return Approximation(value, abs(value) * mpf(10) ** (-(ctx.dps - 5)), 0, exact=exact)


# -- Bernoulli numbers and even zeta values -----------------------------------

_BERNOULLI: list[Fraction] = [Fraction(1)]
_BERNOULLI_LOCK = threading.Lock()


def bernoulli(n: int) -> Fraction:
    """B_n from sum_{j=0..n} C(n+1, j) B_j = 0, so B_1 = -1/2."""
    if n < 0:
        raise ValueError("Bernoulli index must be non-negative")
    if n >= len(_BERNOULLI):
        with _BERNOULLI_LOCK:
            while len(_BERNOULLI) <= n:
                m = len(_BERNOULLI)
                if m > 1 and m % 2:
                    _BERNOULLI.append(Fraction(0))
                    continue
                acc = sum(math.comb(m + 1, j) * _BERNOULLI[j] for j in range(m))
                _BERNOULLI.append(-acc / (m + 1))
    return _BERNOULLI[n]


def zeta_even_rational(n: int) -> Fraction:
    """r with zeta(n) = r * pi**n, n even and positive; n = 0 gives the value -1/2."""
    if n % 2 or n < 0:
        raise ValueError("zeta_even needs a non-negative even argument")
    if n == 0:
        return Fraction(-1, 2)
    k = n // 2
    return (-1) ** (k + 1) * bernoulli(n) * 2 ** (n - 1) / math.factorial(n)


def zeta_even(n: int, ctx: PrecisionContext = DEFAULT_CTX) -> ClosedFormValue:
    if n < 2:
        raise ValueError("zeta_even needs n = 2k with k >= 1")
    r = zeta_even_rational(n)
    with ctx.work():
        value = to_mpf(r) * pi(ctx).value ** n
        return ClosedFormValue(r, n, closed_form(value, ctx))


# -- Euler-Maclaurin zeta tails ----------------------------------------------


def hurwitz_tail(sigma, a: int, ctx: PrecisionContext = DEFAULT_CTX) -> Approximation:
    """sum_{n >= a} n^-sigma for real sigma > 1 and integer a >= 1, by Euler-Maclaurin.

    The remainder after the last correction term is bounded by twice the
    first omitted term (the derivatives of x^-sigma alternate in sign and
    decrease in size for real sigma).
    """
    with ctx.work():
        s = to_mpf(sigma)
        if s <= 1:
            raise DivergenceError(f"sum n^-s diverges for s = {sigma}")
        A = mpf(a)
        head = A ** (1 - s) / (s - 1) + A ** (-s) / 2
        eps = ctx.eps * abs(head)
        total = head
        rising = s  # s (s+1) ... (s+2j-2)
        power = A ** (-s - 1)
        prev = mpf("inf")
        j = 1
        while True:
            term = to_mpf(bernoulli(2 * j)) / math.factorial(2 * j) * rising * power
            if abs(term) > abs(prev):
                # asymptotic series turned around; last accepted term bounds the error
                return Approximation(total, 2 * abs(prev), j - 1)
            total += term
            if abs(term) < eps:
                rising *= (s + 2 * j - 1) * (s + 2 * j)
                power /= A * A
                nxt = to_mpf(bernoulli(2 * j + 2)) / math.factorial(2 * j + 2) * rising * power
                return Approximation(total, 2 * abs(nxt), j)
            prev = term
            rising *= (s + 2 * j - 1) * (s + 2 * j)
            power /= A * A
            j += 1


def zeta_real(s, ctx: PrecisionContext = DEFAULT_CTX) -> Approximation:
    """Riemann zeta at real s > 1: direct head plus an Euler-Maclaurin tail."""
    with ctx.work():
        sv = to_mpf(s)
        if sv <= 1:
            raise DivergenceError("zeta(s) is only summed for s > 1")
        a = max(16, ctx.dps)
        head = mpmath.fsum(mpf(n) ** (-sv) for n in range(1, a))
        tail = hurwitz_tail(s, a, ctx)
        value = head + tail.value
        return Approximation(value, tail.tail_bound + a * ctx.eps * value, a - 1 + tail.terms)


# -- pi and elementary functions ----------------------------------------------


@lru_cache(maxsize=16)
def _machin_pi(bits: int) -> mpf:
    # pi = 16 arctan(1/5) - 4 arctan(1/239), in binary fixed point
    unity = 1 << (bits + 20)

    def arccot(x: int) -> int:
        total, term, k, x2 = 0, unity // x, 1, x * x
        sign = 1
        while term:
            total += sign * (term // k)
            term //= x2
            k += 2
            sign = -sign
        return total

    fixed = 16 * arccot(5) - 4 * arccot(239)
    return mpmath.ldexp(mpf(fixed), -(bits + 20))


def pi(ctx: PrecisionContext = DEFAULT_CTX) -> Approximation:
    bits = int(ctx.dps * 3.33) + 16
    with ctx.work():
        value = +_machin_pi(bits)
        return Approximation(value, mpf(2) ** (-bits), 0)


def _taylor(x: mpf, eps: mpf, start, first, ratio):
    """Sum a series term_k = term_{k-1} * ratio(k, x) starting at index ``start``."""
    total = term = first
    k = start
    while abs(term) > eps * (abs(total) + eps):
        k += 1
        term = term * ratio(k, x)
        total += term
    return total


def exp(x, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """e**x by halving the argument, a Taylor series, then repeated squaring."""
    with ctx.work():
        x = to_mpf(x)
        if x == 0:
            return mpf(1)
        halvings = max(0, int(mpmath.log(abs(x), 2)) + 10) if abs(x) > mpf(2) ** -10 else 0
        with mpmath.workdps(ctx.dps + halvings // 3 + 10):
            r = mpmath.ldexp(x, -halvings)
            val = _taylor(r, mpmath.eps, 0, mpf(1), lambda k, y: y / k)
            for _ in range(halvings):
                val = val * val
        return +val


def _reduce_2pi(x: mpf, ctx: PrecisionContext) -> mpf:
    extra = max(0, int(mpmath.log(abs(x) + 1, 10))) + 5
    with mpmath.workdps(ctx.dps + extra):
        two_pi = 2 * pi(PrecisionContext(ctx.digits + extra, ctx.guard)).value
        return x - two_pi * mpmath.nint(x / two_pi)


def sin(x, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    with ctx.work():
        r = _reduce_2pi(to_mpf(x), ctx)
        with mpmath.workdps(ctx.dps + 5):
            val = _taylor(r, mpmath.eps, 1, r, lambda k, y: -y * y / ((2 * k - 2) * (2 * k - 1)))
        return +val


def cos(x, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    with ctx.work():
        r = _reduce_2pi(to_mpf(x), ctx)
        with mpmath.workdps(ctx.dps + 5):
            val = _taylor(r, mpmath.eps, 0, mpf(1), lambda k, y: -y * y / ((2 * k - 1) * (2 * k)))
        return +val


def _sinh_cosh(x: mpf, ctx: PrecisionContext) -> tuple[mpf, mpf]:
    # series on a small argument, then the double-angle formulas
    halvings = max(0, int(mpmath.log(abs(x), 2)) + 4) if abs(x) > mpf(1) / 16 else 0
    with mpmath.workdps(ctx.dps + halvings + 10):
        r = mpmath.ldexp(x, -halvings)
        sh = _taylor(r, mpmath.eps, 1, r, lambda k, y: y * y / ((2 * k - 2) * (2 * k - 1)))
        ch = _taylor(r, mpmath.eps, 0, mpf(1), lambda k, y: y * y / ((2 * k - 1) * (2 * k)))
        for _ in range(halvings):
            sh, ch = 2 * sh * ch, 2 * ch * ch - 1
    return sh, ch


def sinh(x, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    with ctx.work():
        x = to_mpf(x)
        if abs(x) > 40:
            e = exp(x, ctx)
            return (e - 1 / e) / 2
        return +_sinh_cosh(x, ctx)[0]


def cosh(x, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    with ctx.work():
        x = to_mpf(x)
        if abs(x) > 40:
            e = exp(x, ctx)
            return (e + 1 / e) / 2
        return +_sinh_cosh(x, ctx)[1]


def sqrt(x, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    with ctx.work():
        return mpmath.sqrt(to_mpf(x))


# -- tail sums over part sets --------------------------------------------------


def power_tail_bound(X: PartSpec, s, N: int) -> mpf:
    """Upper bound for sum_{n in X, n > N} n^-s, s > 1."""
    s = to_mpf(s)
    if isinstance(X, Finite):
        return mpf(0) if X.maximum <= N else sum(mpf(n) ** (-s) for n in X.elements if n > N)
    if isinstance(X, Multiples):
        J = N // X.m
        if J == 0:
            return mpf(X.m) ** (-s) * (1 + 1 / (s - 1))
        return mpf(X.m) ** (-s) * mpf(J) ** (1 - s) / (s - 1)
    if isinstance(X, ArithProg):
        first = N + 1 + (X.a - N - 1) % X.m
        return mpf(first) ** (-s) + mpf(first) ** (1 - s) / ((s - 1) * X.m)
    if isinstance(X, GreaterEq) and X.a > N + 1:
        return mpf(X.a) ** (-s) + mpf(X.a) ** (1 - s) / (s - 1)
    # All, Primes, GreaterEq below N: compare with the integral
    if N == 0:
        return 1 + 1 / (s - 1)
    return mpf(N) ** (1 - s) / (s - 1)


def _power_exponent(f: WeightFunction):
    """(exponent, sign) when f is +-n^e, else None."""
    sign = 1
    while isinstance(f, Negated):
        f, sign = f.inner, -sign
    if isinstance(f, Power):
        return f.e, sign
    return None


def _effective(f: WeightFunction, X: PartSpec) -> tuple[WeightFunction, PartSpec, int | None]:
    """Peel restrictions off f into X; return (core weight, part set, finite support max)."""
    support = f.support_max()
    while isinstance(f, Restricted):
        if isinstance(X, All):
            X = f.to
        f = f.inner
    if isinstance(X, Finite):
        support = X.maximum if support is None else min(support, X.maximum)
    return f, X, support


def weight_tail_bound(f: WeightFunction, X: PartSpec, qa: mpf, N: int) -> mpf | None:
    """Upper bound for sum_{n in X, n > N} |f(n)| qa^n, or None if unknown."""
    core, X, support = _effective(f, X)
    if support is not None and support <= N:
        return mpf(0)
    if qa == 1:
        pe = _power_exponent(core)
        if pe is not None and to_mpf(pe[0]) < -1:
            return power_tail_bound(X, -to_mpf(pe[0]), N)
        return None
    if isinstance(core, (Constant,)) or (isinstance(core, Negated) and isinstance(core.inner, Constant)):
        c = abs(core(1))
        return to_mpf(c) * qa ** (N + 1) / (1 - qa)
    pe = _power_exponent(core)
    if pe is not None:
        e = to_mpf(pe[0])
        r = ((mpf(N + 2) / (N + 1)) ** max(e, 0)) * qa
        if r >= 1:
            return None
        return mpf(N + 1) ** e * qa ** (N + 1) / (1 - r)
    if isinstance(core, Table):
        return mpf(0) if core.support_max() <= N else None
    return None


def _factor_size(f: WeightFunction, n: int, q: mpf) -> mpf:
    return abs(f.numeric(n) * q**n)


def _is_q_one(q) -> bool:
    return to_mpf(q) == 1


def eval_product(
    f: WeightFunction,
    X: PartSpec | None = None,
    q=1,
    ctx: PrecisionContext = DEFAULT_CTX,
    *,
    inner: int = -1,
    exponent: int = -1,
    cap: int | None = None,
    accelerate: bool = False,
) -> Approximation:
    """prod_{n in X} (1 + inner*f(n)*q^n)**exponent, truncated with a tail bound.

    q is a real with |q| < 1, or exactly 1 (the zeta regime, f = n^-s with s > 1).
    ``cap`` limits the largest n used.  ``accelerate`` (zeta regime, f a pure
    power, X one of all / geq / multiples) adds the analytic value of the
    tail via Euler-Maclaurin, leaving only a tiny remainder.
    """
    if inner not in (1, -1) or exponent not in (1, -1):
        raise ValueError("inner and exponent must each be +1 or -1")
    if f.marked:
        raise TypeError("weights carrying the marker z cannot be evaluated numerically")
    X = X if X is not None else All()
    core, Xe, support = _effective(f, X)
    cap = DEFAULT_CAP if cap is None else cap
    rational_q = isinstance(q, (int, Fraction, str))
    with ctx.work():
        qv = to_mpf(q)
        qa = abs(qv)
        if qa > 1 or (qa == 1 and qv != 1):
            raise ValueError("q must lie in (-1, 1) or equal 1")
        eps = ctx.eps
        finite = support is not None and support <= cap
        limit = support if finite else cap
        exact = Fraction(1) if finite and f.exact and rational_q else None
        qe = Fraction(q) if exact is not None else None

        product = mpf(1)
        n_used = 0
        # extra digits absorb the rounding of up to `cap` multiplications
        with mpmath.workdps(ctx.dps + len(str(cap)) + 2):
            for n in Xe.upto(limit):
                factor = 1 + inner * f.numeric(n) * qv**n
                if factor == 0:
                    if exponent == -1:
                        return Approximation(mpf("inf"), None, n_used, divergent=True, note=f"zero factor at n={n}")
                    return Approximation(mpf(0), mpf(0), n, exact=Fraction(0) if exact is not None else None)
                product *= factor if exponent == 1 else 1 / factor
                if exact is not None:
                    ef = 1 + inner * f(n) * qe**n
                    exact *= ef if exponent == 1 else 1 / ef
                n_used = n
                if not finite and qa < 1 and n >= 8 and abs(factor - 1) <= eps:
                    T = weight_tail_bound(f, X, qa, n)
                    if T is not None and T <= eps and _factor_size(f, n + 1, qv) <= mpf(1) / 2:
                        limit = n
                        break
        product = +product
        rounding = abs(product) * eps
        if finite:
            return Approximation(product, rounding, n_used, exact=exact)

        N = limit
        T = weight_tail_bound(f, X, qa, N)
        if T is None:
            if qa == 1:
                return Approximation(product, None, N, divergent=True, note="terms do not decay at q = 1")
            return Approximation(product, None, N, note="no tail bound for this weight")
        if accelerate and qa == 1:
            acc = _accelerated_tail(core, Xe, N, inner, exponent, ctx)
            if acc is not None:
                log_tail, err = acc
                value = product * exp(log_tail, ctx)
                return Approximation(value, abs(value) * (exp(2 * err, ctx) - 1) + 2 * rounding, N)
        return Approximation(product, abs(product) * (exp(2 * T, ctx) - 1) + rounding, N)


def _accelerated_tail(core: WeightFunction, X: PartSpec, N: int, inner: int, exponent: int, ctx: PrecisionContext):
    """log of prod_{n in X, n > N} (1 + inner*c*n^-s)**exponent, and an error bound."""
    pe = _power_exponent(core)
    if pe is None or not isinstance(X, (All, GreaterEq, Multiples)):
        return None
    e, sign = pe
    s = -to_mpf(e)
    if s <= 1:
        return None
    c = sign * inner  # factor is 1 + c * n^-s
    if isinstance(X, Multiples):
        scale, a = lambda k: mpf(X.m) ** (-s * k), N // X.m + 1
    else:
        scale, a = lambda k: mpf(1), max(N + 1, getattr(X, "a", 1))
    if mpf(a) ** (-s) * scale(1) > mpf(1) / 2:
        return None
    total, err = mpf(0), mpf(0)
    k = 1
    while True:
        tail = hurwitz_tail(s * k, a, ctx)
        term = (-1) ** (k + 1) * mpf(c) ** k / k * scale(k) * tail.value
        total += term
        err += scale(k) * tail.bound / k
        if abs(term) < ctx.eps * ctx.eps:
            # later terms shrink at least geometrically with ratio a^-s <= 1/2
            err += 2 * abs(term)
            break
        k += 1
    return exponent * total, err


# -- the five forms, numerically ----------------------------------------------


@dataclass
class FormsReport:
    form4: Approximation
    form5: Approximation
    form6: Approximation
    form7: Approximation | None
    form8: Approximation
    form7_verdict: str

    def values(self) -> dict[str, Approximation]:
        out = {"form4": self.form4, "form5": self.form5, "form6": self.form6, "form8": self.form8}
        if self.form7 is not None and self.form7_verdict == "convergent":
            out["form7"] = self.form7
        return out

    def max_delta(self, keys=("form4", "form5", "form6", "form8")) -> mpf:
        vals = [getattr(self, k).value for k in keys]
        return max((abs(a - b) for a in vals for b in vals), default=mpf(0))

    def to_json_obj(self, digits: int = DEFAULT_DIGITS) -> dict:
        out = {k: v.to_json_obj(digits) for k, v in self.values().items()}
        out["form7_verdict"] = self.form7_verdict
        if self.form7 is not None and self.form7_verdict != "convergent":
            out["form7"] = None
        keys = ("form4", "form5", "form6", "form8")
        out["pairwise_deltas"] = {
            f"{a}-{b}": decimal_string(abs(getattr(self, a).value - getattr(self, b).value), 6)
            for i, a in enumerate(keys)
            for b in keys[i + 1 :]
        }
        if self.form7_verdict == "convergent":
            out["form7_max_delta"] = decimal_string(
                max(abs(self.form7.value - getattr(self, k).value) for k in keys), 6
            )
        return out


def _terms_needed(f: WeightFunction, qa: mpf, eps: mpf, limit: int = 100_000) -> int:
    n = 8
    while n < limit:
        T = weight_tail_bound(f, All(), qa, n)
        if T is not None and T <= eps:
            return n
        n = n * 2 if T is None or T > 1 else n + max(1, n // 4)
    raise DivergenceError("weight tail does not fall below the requested precision")


def _majorant(f: WeightFunction, qa: mpf, N: int, ctx: PrecisionContext) -> mpf:
    """Upper bound for prod_{n>=1} 1/(1 - |f(n)| qa^n)."""
    val = mpf(1)
    for n in range(1, N + 1):
        u = abs(f.numeric(n)) * qa**n
        if u >= 1:
            raise DivergenceError("majorant product has a non-positive factor")
        val /= 1 - u
    T = weight_tail_bound(f, All(), qa, N)
    return val * exp(2 * T, ctx)


def eval_forms_numeric(f: WeightFunction, q, ctx: PrecisionContext = DEFAULT_CTX, max_depth: int | None = None) -> FormsReport:
    """Numeric values of the five equivalent forms of 1/phi_infinity(f; q), real |q| < 1."""
    if f.marked:
        raise TypeError("weights carrying the marker z cannot be evaluated numerically")
    with ctx.work():
        qv = to_mpf(q)
        qa = abs(qv)
        if qa >= 1:
            raise ValueError("numeric forms need |q| < 1")
        eps = ctx.eps
        if qa == 0 or f.support_max() == 0:
            one = Approximation(mpf(1), mpf(0), 0)
            return FormsReport(one, one, one, None if qa == 0 else one, one,
                               "inapplicable" if qa == 0 or f.support_max() == 0 else "convergent")
        N = _terms_needed(f, qa, eps)
        fv = [mpf(0)] + [f.numeric(n) for n in range(1, N + 1)]
        qp = [mpf(1)]
        for n in range(1, N + 1):
            qp.append(qp[-1] * qv)
        T = weight_tail_bound(f, All(), qa, N)
        F = _majorant(f, qa, N, ctx)
        G = exp(sum(abs(fv[n]) * qa**n for n in range(1, N + 1)) + T, ctx)

        # (5) and (6), and phi_N along the way
        phi = mpf(1)
        s5 = mpf(0)
        s6 = mpf(0)
        for n in range(1, N + 1):
            t = qp[n] * fv[n]
            s6 += t * phi
            phi *= 1 - t
            s5 += t / phi
        inv_phi_err = abs(1 / phi) * (exp(2 * T, ctx) - 1)
        form5 = Approximation(1 + s5, F * T + eps, N)
        form6 = Approximation(1 + s6 / phi, F * G * T + abs(s6) * inv_phi_err + eps, N)

        # (4): partition sums a_n = sum_{lam |- n} prod f(parts), for n up to M
        r = mpmath.sqrt(qa)
        M = N
        FR = _majorant(f, r, _terms_needed(f, r, eps), ctx)
        while FR * (qa / r) ** (M + 1) / (1 - qa / r) > eps:
            M += max(4, M // 4)
        fv4 = fv + [f.numeric(n) for n in range(N + 1, M + 1)]
        a = [mpf(0)] * (M + 1)
        a[0] = mpf(1)
        for p in range(1, M + 1):
            fp = fv4[p]
            if fp:
                for n in range(p, M + 1):
                    a[n] += fp * a[n - p]
        form4_val = mpmath.fsum(a[n] * qv**n for n in range(M + 1))
        form4 = Approximation(form4_val, FR * (qa / r) ** (M + 1) / (1 - qa / r) + eps, M)

        # (8): continued fraction, convergents of increasing depth
        form8 = _cf_numeric(s5, s6, ctx, max_depth or 20 * ctx.dps)

        # (7): the inverted sum
        form7, verdict = _form7(fv, qv, N, ctx)
        return FormsReport(form4, form5, form6, form7, form8, verdict)


def _cf_value(s5: mpf, s6: mpf, depth: int) -> mpf:
    tail = mpf(1)
    for level in range(depth, 0, -1):
        tail = 1 + (s6 if level % 2 else -s5) / tail
    return tail


def _cf_numeric(s5: mpf, s6: mpf, ctx: PrecisionContext, max_depth: int) -> Approximation:
    prev = None
    stable = 0
    for depth in range(1, max_depth + 1):
        try:
            val = _cf_value(s5, s6, depth)
        except ZeroDivisionError:
            return Approximation(mpf("nan"), None, depth, divergent=True, note="zero denominator")
        if prev is not None and abs(val - prev) <= ctx.eps * (1 + abs(val)):
            stable += 1
            if stable >= 3:
                return Approximation(val, None, depth, note="heuristic: successive convergents agree")
        else:
            stable = 0
        prev = val
    return Approximation(prev, None, max_depth, divergent=True, note="convergents did not settle")


def _form7(fv: list, qv: mpf, N: int, ctx: PrecisionContext) -> tuple[Approximation | None, str]:
    """1 + sum_n (-1)^n q^{-n(n-1)/2} / (phi_n(1/f; 1/q) prod_{k<n} f(k))."""
    if any(fv[k] == 0 for k in range(1, N + 1)):
        return None, "inapplicable"
    qi = 1 / qv
    total = mpf(1)
    phi_inv = mpf(1)  # phi_n(1/f; 1/q)
    fprod = mpf(1)  # prod_{k<n} f(k)
    qpow = mpf(1)  # (1/q)^{n(n-1)/2}
    grow = 0
    prev = None
    limit = mpf(10) ** ctx.digits
    small = 0
    for n in range(1, 50 * N + 1):
        fn = fv[n] if n < len(fv) else None
        if fn is None:
            break
        phi_inv *= 1 - qi**n / fn
        if phi_inv == 0:
            return None, "inapplicable"
        term = (-1) ** n * qpow / (phi_inv * fprod)
        total += term
        if abs(term) > limit:
            return Approximation(total, None, n, divergent=True), "divergent"
        if prev is not None and abs(term) > abs(prev):
            grow += 1
            if grow >= 5:
                return Approximation(total, None, n, divergent=True), "divergent"
        else:
            grow = 0
        if abs(term) <= ctx.eps * (1 + abs(total)):
            small += 1
            if small >= 3:
                return Approximation(total, None, n, note="heuristic: terms below working precision"), "convergent"
        else:
            small = 0
        prev = term
        fprod *= fn
        qpow *= qi**n
    return Approximation(total, None, N, note="ran out of terms"), "undecided"
