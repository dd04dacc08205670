from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import naive_partitions, pentagonal_p, poly_mul
from partzeta.partitions import ArithProg, Finite, Multiples, Primes
from partzeta.series import (
    QZ,
    RingMismatch,
    TruncatedSeries,
    cf_convergent,
    congruence_check,
    expand_distinct15,
    expand_form4,
    expand_form5,
    expand_form6,
    expand_form8,
    expand_form16,
    expand_form17,
    expand_form18,
    golden_relation_residual,
    mul,
    phi_series,
    reciprocal,
    sigma5,
    sigma6,
    z_marker_extract,
)
from partzeta.weights import Constant, Negated, Power, Restricted, Table, ZScaled, weight_product
from partzeta.zpoly import ZPoly

S = TruncatedSeries.from_coeffs

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def series_strategy(order=30):
    return st.lists(fractions, min_size=order + 1, max_size=order + 1).map(S)


@st.composite
def weights(draw):
    kind = draw(st.sampled_from(["table", "const", "pow", "restrict", "neg"]))
    if kind == "const":
        return Constant(draw(fractions))
    if kind == "pow":
        return Power(draw(st.integers(-3, 1)))
    table = Table({n: draw(fractions) for n in range(1, 16)})
    if kind == "restrict":
        return Restricted(table, draw(st.sampled_from([Primes(), Multiples(2), ArithProg(1, 3)])))
    if kind == "neg":
        return Negated(table)
    return table


def test_mul_examples():
    one_plus_q = S([1, 1, 0, 0])
    assert mul(one_plus_q, one_plus_q) == S([1, 2, 1, 0])
    a = S([1, 2, 3])
    assert mul(a, TruncatedSeries.one(2)) == a
    geometric = S([1] * 11)
    assert mul(geometric, S([1, -1] + [0] * 9)) == TruncatedSeries.one(10)


def test_orders_take_minimum():
    assert mul(S([1, 1, 1]), S([1, 1])).order == 1
    assert (S([1, 1, 1]) + S([1])).order == 0


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        mul(S([1, 1]), S([ZPoly([1]), ZPoly([0, 1])]))


def test_reciprocal_examples():
    assert reciprocal(S([1, -1] + [0] * 5)) == S([1] * 7)
    assert reciprocal(TruncatedSeries.one(4)) == TruncatedSeries.one(4)
    assert [int(c) for c in reciprocal(phi_series(Constant(1), 10)).coeffs] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    with pytest.raises(ZeroDivisionError):
        reciprocal(S([0, 1]))


@settings(max_examples=25)
@given(series_strategy(), series_strategy(), series_strategy())
def test_ring_axioms(a, b, c):
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, b + c) == mul(a, b) + mul(a, c)
    assert mul(a, b) == mul(b, a)
    assert a + b == b + a
    assert (a - a) == TruncatedSeries.from_coeffs([0], 30)


@settings(max_examples=25)
@given(series_strategy(20))
def test_reciprocal_inverts(a):
    if a[0] == 0:
        return
    assert mul(a, reciprocal(a)) == TruncatedSeries.one(20)


def test_phi_examples():
    assert phi_series(Constant(1), 7) == S([1, -1, -1, 0, 0, 1, 0, 1])
    assert phi_series(Constant(0), 5) == TruncatedSeries.one(5)
    marked = phi_series(ZScaled(Constant(1)), 3)
    z = ZPoly.z()
    assert marked.coeffs == (ZPoly([1]), -z, -z, ZPoly([0, -1, 1]))


def test_phi_against_naive_product():
    f = Table({1: Fraction(1, 2), 2: Fraction(-3), 4: Fraction(2, 7), 9: Fraction(5)})
    expected = [Fraction(1)] + [Fraction(0)] * 12
    for k in range(1, 13):
        factor = [Fraction(0)] * 13
        factor[0] = Fraction(1)
        factor[k] = -f(k)
        expected = poly_mul(expected, factor, 12)
    assert list(phi_series(f, 12).coeffs) == expected


def test_form4_examples():
    assert [int(c) for c in expand_form4(Constant(1), 5).coeffs] == [1, 1, 2, 3, 5, 7]
    assert expand_form5(Constant(0), 6) == TruncatedSeries.one(6)
    primes_only = expand_form4(Restricted(Power(-2), Primes()), 3)
    assert primes_only.coeffs[2] == Fraction(1, 4) and primes_only.coeffs[3] == Fraction(1, 9)


def test_form4_is_enumeration():
    f = Table({n: Fraction(n, n + 1) for n in range(1, 11)})
    got = expand_form4(f, 10)
    for n in range(11):
        from partzeta.partitions import Partition

        want = sum((weight_product(Partition(p), f) for p in naive_partitions(n)), Fraction(0))
        assert got[n] == want


@settings(max_examples=20)
@given(weights())
def test_five_forms_agree(f):
    N = 30
    target = reciprocal(phi_series(f, N))
    assert expand_form4(f, N) == target
    assert expand_form5(f, N) == target
    assert expand_form6(f, N) == target
    assert expand_form8(f, N) == target


@settings(max_examples=20)
@given(weights())
def test_dual_forms_agree(f):
    N = 30
    target = phi_series(f, N)
    assert expand_distinct15(f, N) == target
    assert expand_form16(f, N) == target
    assert expand_form17(f, N) == target
    assert expand_form18(f, N) == target


@settings(max_examples=10)
@given(weights())
def test_golden_relation(f):
    assert golden_relation_residual(f, 30).valuation() == 31
    s5, s6 = sigma5(f, 30), sigma6(f, 30)
    assert s5 - s6 == mul(s5, s6)


def test_dual_examples():
    assert expand_distinct15(Constant(1), 7) == phi_series(Constant(1), 7)
    assert expand_distinct15(Constant(0), 4) == TruncatedSeries.one(4)
    assert expand_distinct15(Table({1: 1}), 3) == S([1, -1, 0, 0])


def test_cf_examples():
    f = Constant(1)
    target = reciprocal(phi_series(f, 12))
    depth1 = cf_convergent(f, 1, 12)
    assert (depth1 - target).valuation() >= 2
    assert cf_convergent(Constant(0), 5, 8) == TruncatedSeries.one(8)
    with pytest.raises(ValueError):
        cf_convergent(f, 0, 5)


def test_cf_valuation_non_decreasing():
    f = Table({n: Fraction((-1) ** n * n, 3) for n in range(1, 21)})
    target = reciprocal(phi_series(f, 20))
    vals = [(cf_convergent(f, m, 20) - target).valuation() for m in range(1, 23)]
    assert vals == sorted(vals)
    assert vals[-1] == 21


def test_restriction_law():
    f = Restricted(Constant(2), Multiples(3))
    phi = phi_series(f, 12)
    expected = TruncatedSeries.one(12)
    for k in (3, 6, 9, 12):
        factor = [0] * 13
        factor[0], factor[k] = 1, -2
        expected = mul(expected, S(factor))
    assert phi == expected
    got = expand_form4(f, 12)
    for n in range(13):
        want = sum(2 ** len(p) for p in naive_partitions(n) if all(x % 3 == 0 for x in p))
        assert got[n] == want


@pytest.mark.parametrize("a,m,s,N", [(1, 3, 1, 30), (1, 2, 0, 20), (2, 4, 1, 25), (1, 5, 2, 30)])
def test_congruence(a, m, s, N):
    assert congruence_check(a, m, s, N)


def test_z_marker_extract():
    f = Constant(1)
    marked = reciprocal(phi_series(ZScaled(f), 10))
    assert z_marker_extract(marked, 1) == S([0] + [1] * 10)
    assert z_marker_extract(marked, 0) == TruncatedSeries.one(10)
    assert z_marker_extract(S([1, 2]).to_zring(), 5) == S([0, 0])


@settings(max_examples=10)
@given(weights())
def test_z_limit_law(f):
    marked = reciprocal(phi_series(ZScaled(f), 30))
    assert z_marker_extract(marked, 1) == S([0] + [f(n) for n in range(1, 31)])


def test_length_k_extraction_counts_partitions():
    marked = expand_form4(ZScaled(Constant(1)), 12)
    for k in range(5):
        got = z_marker_extract(marked, k)
        assert [int(c) for c in got.coeffs] == [sum(len(p) == k for p in naive_partitions(n)) for n in range(13)]


def test_zpoly_capped_at_order():
    marked = reciprocal(phi_series(ZScaled(Constant(1)), 6))
    assert all(c.degree <= 6 for c in marked.coeffs)
    assert marked.ring == QZ


@settings(max_examples=15)
@given(series_strategy(12))
def test_json_round_trip(a):
    assert TruncatedSeries.from_json(a.to_json()) == a


def test_json_round_trip_marked():
    marked = reciprocal(phi_series(ZScaled(Table({1: Fraction(1, 3), 2: -2})), 8))
    assert TruncatedSeries.from_json(marked.to_json()) == marked


def test_partition_gf_to_forty():
    got = reciprocal(phi_series(Constant(1), 40))
    assert [int(c) for c in got.coeffs] == [pentagonal_p(n) for n in range(41)]
