import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mpf

from conftest import bernoulli_at, zeta_even_over_pi
from partzeta import numeric as N
from partzeta.numeric import Approximation, DivergenceError, PrecisionContext, eval_forms_numeric, eval_product
from partzeta.partitions import All, Finite, GreaterEq, Multiples, Primes
from partzeta.weights import Constant, Power, Restricted, Table

ZETA3 = "1.20205690315959428539973816151"


def close(a, b, digits):
    return abs(mpf(a) - mpf(b)) <= mpf(10) ** (-digits) * max(1, abs(mpf(b)))


@pytest.mark.parametrize("n", range(0, 41))
def test_bernoulli_matches_oracle(n):
    assert N.bernoulli(n) == bernoulli_at(n)


def test_bernoulli_small():
    assert [N.bernoulli(n) for n in range(5)] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30)]


def test_zeta_even_rational():
    assert N.zeta_even_rational(0) == Fraction(-1, 2)
    assert N.zeta_even_rational(2) == Fraction(1, 6)
    assert N.zeta_even_rational(4) == Fraction(1, 90)
    for k in range(1, 14):
        assert N.zeta_even_rational(2 * k) == zeta_even_over_pi(2 * k)


@pytest.mark.parametrize("k", range(1, 14))
def test_zeta_even_matches_real(ctx, k):
    closed = N.zeta_even(2 * k, ctx).numeric
    direct = N.zeta_real(2 * k, ctx)
    with ctx.work():
        assert abs(closed.value - direct.value) <= closed.bound + direct.bound
        assert close(closed.value, mpmath.zeta(2 * k), ctx.digits - 2)


def test_zeta3(ctx):
    z = N.zeta_real(3, ctx)
    assert z.rigorous
    with ctx.work():
        assert abs(z.value - mpf(ZETA3)) <= mpf(10) ** -29
        assert abs(z.value - mpmath.zeta(3)) <= z.bound


def test_zeta_real_rejects_s_le_1(ctx):
    with pytest.raises((ValueError, DivergenceError)):
        N.zeta_real(1, ctx)


def test_pi(ctx):
    p = N.pi(ctx)
    with ctx.work():
        assert abs(p.value - mpmath.pi) <= p.bound
        assert p.bound <= ctx.target


@pytest.mark.parametrize("x", ["0", "1", "-2.5", "10", "1/3", "-7/2"])
def test_elementary_against_mpmath(ctx, x):
    with ctx.work():
        v = N.to_mpf(Fraction(x))
        for mine, ref in ((N.exp, mpmath.exp), (N.sinh, mpmath.sinh), (N.cosh, mpmath.cosh),
                          (N.sin, mpmath.sin), (N.cos, mpmath.cos)):
            assert abs(mine(v, ctx) - ref(v)) <= ctx.target * max(1, abs(ref(v)))


def test_sin_pi_over_6(ctx):
    with ctx.work():
        assert abs(N.sin(N.pi(ctx).value / 6, ctx) - mpf(1) / 2) <= ctx.target


@settings(max_examples=20)
@given(st.fractions(min_value=-20, max_value=20, max_denominator=97))
def test_pythagorean_identities(x):
    ctx = PrecisionContext()
    with ctx.work():
        v = N.to_mpf(x)
        assert abs(N.sin(v, ctx) ** 2 + N.cos(v, ctx) ** 2 - 1) <= ctx.target
        s, c = N.sinh(v, ctx), N.cosh(v, ctx)
        assert abs(c**2 - s**2 - 1) <= ctx.target * c**2


def test_sqrt(ctx):
    with ctx.work():
        assert abs(N.sqrt(2, ctx) ** 2 - 2) <= ctx.target


def test_decimal_string_respects_digits(ctx):
    with ctx.work():
        text = N.decimal_string(N.pi(ctx).value, 50)
    assert text.startswith("3.14159265358979323846264338327950288419716939937")
    assert len(text.replace(".", "")) == 50


# -- products ------------------------------------------------------------------


def test_part_one_gives_zero_factor(ctx):
    assert eval_product(Power(-2), All(), 1, ctx).divergent


def test_telescoping_product(ctx):
    # prod_{n >= 2} 1/(1 - n^-2) = 2
    got = eval_product(Power(-2), GreaterEq(2), 1, ctx, cap=2000)
    with ctx.work():
        assert abs(got.value - 2) <= got.bound
        assert got.bound < mpf("1e-2")


def test_accelerated_product_is_tight(ctx):
    got = eval_product(Power(-2), GreaterEq(2), 1, ctx, cap=1000, accelerate=True)
    with ctx.work():
        assert abs(got.value - 2) <= got.bound
        assert got.bound < mpf(10) ** -40


@pytest.mark.parametrize("X,s", [(GreaterEq(2), 3), (GreaterEq(3), 2), (GreaterEq(2), 2), (Multiples(2), 2),
                                 (Multiples(3), 4), (Primes(), 2), (Primes(), 3), (GreaterEq(5), 3),
                                 (GreaterEq(2), Fraction(5, 2)), (Multiples(2), 3)])
def test_tail_bound_halves_or_better_when_cap_doubles(ctx, X, s):
    f = Power(-s)
    small = eval_product(f, X, 1, ctx, cap=500)
    big = eval_product(f, X, 1, ctx, cap=1000)
    assert big.bound <= small.bound
    with ctx.work():
        assert abs(small.value - big.value) <= small.bound + big.bound


def test_finite_product_exact(ctx):
    got = eval_product(Power(-2), Finite([2, 3]), 1, ctx)
    assert got.exact == Fraction(3, 2)
    signed = eval_product(Power(-2), Finite([2, 3]), 1, ctx, inner=1, exponent=-1)
    assert signed.exact == Fraction(1, (1 + Fraction(1, 4)) * (1 + Fraction(1, 9)))


def test_zero_factor(ctx):
    assert eval_product(Power(-2), Finite([1]), 1, ctx).divergent
    zero = eval_product(Power(-2), Finite([1]), 1, ctx, inner=-1, exponent=1)
    assert zero.value == 0 and not zero.divergent


def test_divergent_regime(ctx):
    assert eval_product(Power(-1), All(), 1, ctx).divergent
    assert eval_product(Constant(1), GreaterEq(2), 1, ctx).divergent


def test_liouville_instance(ctx):
    # sum over all partitions of lambda(prod parts) / prod^2 = prod_p 1/(1+p^-2) = zeta(4)/zeta(2)
    got = eval_product(Restricted(Power(-2), Primes()), All(), 1, ctx, inner=1, cap=10000)
    with ctx.work():
        assert abs(got.value - mpmath.zeta(4) / mpmath.zeta(2)) <= got.bound


def test_q_products(ctx):
    got = eval_product(Constant(1), All(), Fraction(1, 2), ctx)
    with ctx.work():
        assert abs(got.value - 1 / mpmath.qp(mpf(1) / 2)) <= got.bound
    with pytest.raises(ValueError):
        eval_product(Constant(1), All(), 2, ctx)


def test_inner_exponent_validation(ctx):
    with pytest.raises(ValueError):
        eval_product(Power(-2), All(), 1, ctx, inner=2)


# -- the five forms, numerically ----------------------------------------------


@pytest.mark.parametrize("f,q", [(Constant(Fraction(1, 2)), Fraction(3, 10)), (Power(-2), Fraction(3, 10)),
                                 (Constant(1), Fraction(-1, 3)), (Power(1), Fraction(1, 5))])
def test_forms_numeric_agree(ctx, f, q):
    report = eval_forms_numeric(f, q, ctx)
    with ctx.work():
        assert report.max_delta() <= mpf(10) ** -(ctx.digits - 10)
        assert abs(report.form5.value - report.form4.value) <= report.form5.bound + report.form4.bound
    if report.form7_verdict == "convergent":
        assert abs(report.form7.value - report.form4.value) <= mpf(10) ** -(ctx.digits - 20)


def test_forms_numeric_partition_gf(ctx):
    report = eval_forms_numeric(Constant(1), Fraction(1, 2), ctx)
    with ctx.work():
        assert abs(report.form4.value - 1 / mpmath.qp(mpf(1) / 2)) <= report.form4.bound


def test_forms_numeric_zero_weight(ctx):
    report = eval_forms_numeric(Constant(0), Fraction(1, 2), ctx)
    assert all(v.value == 1 for v in report.values().values())
    assert report.form7_verdict == "inapplicable"


def test_form7_inapplicable_with_zero_value(ctx):
    report = eval_forms_numeric(Table({1: 1, 3: 2}), Fraction(1, 3), ctx)
    assert report.form7_verdict == "inapplicable"
    assert "form7" not in report.values()


def test_forms_numeric_rejects_q_ge_1(ctx):
    with pytest.raises(ValueError):
        eval_forms_numeric(Constant(1), 1, ctx)


def test_approximation_json():
    with mpmath.workdps(30):
        a = Approximation(mpf(1) / 3, mpf("1e-20"), 7, exact=Fraction(1, 3))
    obj = a.to_json_obj(20)
    assert obj["value"] == "0.33333333333333333333"
    assert obj["exact"] == "1/3" and obj["terms"] == 7
    assert Approximation(mpf(1), None).to_json_obj()["tail_bound"] == "heuristic"
    assert Approximation(mpf("inf"), None, divergent=True).to_json_obj()["value"] == "divergent"
    assert not Approximation(mpf(1), None).rigorous and Approximation(mpf(1), None).bound == mpf("inf")


def test_precision_context_validation():
    with pytest.raises(ValueError):
        PrecisionContext(digits=5)
    assert PrecisionContext(30).dps == 40
