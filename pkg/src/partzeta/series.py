"""Exact truncated q-series and both sides of the product/partition-sum identities.

Coefficients live either in Q (``Fraction``) or, when a length marker z is
present, in Q[z]/(z^(N+1)) (``ZPoly``).  Reducing mod z^(N+1) is a ring
homomorphism, and no partition of size <= N has more than N parts, so the
cap never loses information for series built from weights.

phi_n(f; q) = prod_{k=1..n} (1 - f(k) q^k).  Because the factor for k > N
is 1 + O(q^(N+1)), phi_N truncated at order N *is* phi_infinity to that order.

Sigma5 and Sigma6 are the two telescoping sums

    Sigma5 = sum_{n>=1} q^n f(n) / phi_n,     Sigma6 = sum_{n>=1} q^n f(n) phi_{n-1},

satisfying 1/phi = 1 + Sigma5 and phi = 1 - Sigma6.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .partitions import ArithProg
from .weights import Constant, Power, Restricted, WeightFunction, require_exact
from .zpoly import ZPoly

Q = "Q"
QZ = "Qz"


class RingMismatch(TypeError):
    pass


def _normalize(c, ring: str, zcap: int):
    if ring == Q:
        if isinstance(c, ZPoly):
            if not c.is_constant():
                raise RingMismatch("z-dependent coefficient in a Q series")
            return c.constant
        return Fraction(c)
    if not isinstance(c, ZPoly):
        c = ZPoly([c])
    return c if c.degree <= zcap else c.truncate(zcap)


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    """c_0 + c_1 q + ... + c_N q^N, known exactly up to q^N."""

    coeffs: tuple
    ring: str = Q

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a truncated series needs order >= 0")
        if self.ring not in (Q, QZ):
            raise ValueError(f"unknown ring {self.ring!r}")
        order = len(self.coeffs) - 1
        object.__setattr__(
            self, "coeffs", tuple(_normalize(c, self.ring, order) for c in self.coeffs)
        )

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def zero_coeff(self):
        return ZPoly() if self.ring == QZ else Fraction(0)

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, order: int | None = None, ring: str | None = None):
        if ring is None:
            ring = QZ if any(isinstance(c, ZPoly) for c in coeffs) else Q
        cs = list(coeffs)
        if order is not None:
            zero = ZPoly() if ring == QZ else Fraction(0)
            cs = (cs + [zero] * (order + 1))[: order + 1]
        return cls(tuple(cs), ring)

    @classmethod
    def constant(cls, c, order: int, ring: str = Q):
        return cls.from_coeffs([c], order, ring)

    @classmethod
    def one(cls, order: int, ring: str = Q):
        return cls.constant(1, order, ring)

    @classmethod
    def monomial(cls, c, power: int, order: int, ring: str = Q):
        zero = ZPoly() if ring == QZ else Fraction(0)
        cs = [zero] * (order + 1)
        if power <= order:
            cs[power] = c
        return cls(tuple(cs), ring)

    # -- structure -----------------------------------------------------------

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.coeffs[: order + 1], self.ring)

    def to_zring(self) -> TruncatedSeries:
        return self if self.ring == QZ else TruncatedSeries(self.coeffs, QZ)

    def valuation(self) -> int:
        """Index of the first nonzero coefficient; order+1 if none are nonzero."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return self.order + 1

    def _pair(self, other: TruncatedSeries):
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected a TruncatedSeries, got {type(other).__name__}")
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        n = min(self.order, other.order)
        return self.coeffs[: n + 1], other.coeffs[: n + 1]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(other, self.order, self.ring)
        a, b = self._pair(other)
        return TruncatedSeries(tuple(x + y for x, y in zip(a, b)), self.ring)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(tuple(-c for c in self.coeffs), self.ring)

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(other, self.order, self.ring)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> TruncatedSeries:
        ring = QZ if isinstance(c, ZPoly) else self.ring
        return TruncatedSeries(tuple(x * c for x in self.coeffs), ring)

    def shift(self, k: int) -> TruncatedSeries:
        """Multiply by q^k, keeping the order."""
        if k < 0:
            raise ValueError("negative shifts leave the power-series ring")
        zero = self.zero_coeff
        cs = ([zero] * k + list(self.coeffs))[: self.order + 1]
        return TruncatedSeries(tuple(cs), self.ring)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return f"TruncatedSeries(order={self.order}, ring={self.ring}, coeffs={list(self.coeffs)})"

    # -- serialization -------------------------------------------------------

    def to_json_obj(self) -> dict:
        def enc(c: Fraction) -> str:
            return f"{c.numerator}/{c.denominator}"

        if self.ring == Q:
            cs = [enc(c) for c in self.coeffs]
        else:
            cs = [[enc(x) for x in c.coeffs] for c in self.coeffs]
        return {"order": self.order, "ring": self.ring, "coeffs": cs}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: dict) -> TruncatedSeries:
        ring = obj.get("ring", Q)
        raw = obj["coeffs"]
        if ring == Q:
            cs = [Fraction(x) for x in raw]
        else:
            cs = [ZPoly([Fraction(x) for x in c]) for c in raw]
        out = cls.from_coeffs(cs, obj["order"], ring)
        if len(raw) != out.order + 1:
            raise ValueError("coefficient count does not match order")
        return out

    @classmethod
    def from_json(cls, text: str) -> TruncatedSeries:
        return cls.from_json_obj(json.loads(text))


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated at the smaller of the two orders."""
    x, y = a._pair(b)
    n = len(x)
    zero = a.zero_coeff
    out = []
    for k in range(n):
        acc = zero
        for i in range(k + 1):
            xi = x[i]
            if xi != 0:
                yk = y[k - i]
                if yk != 0:
                    acc = acc + xi * yk
        out.append(acc)
    return TruncatedSeries(tuple(out), a.ring)


def reciprocal(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse to the same order; the constant term must be invertible."""
    c0 = a.coeffs[0]
    if a.ring == QZ:
        if c0.constant == 0:
            raise ZeroDivisionError("constant term has zero z-degree-0 part")
        inv0 = c0.inverse(a.order)
    else:
        if c0 == 0:
            raise ZeroDivisionError("constant term is zero")
        inv0 = 1 / c0
    out = [inv0]
    for k in range(1, a.order + 1):
        acc = a.zero_coeff
        for j in range(1, k + 1):
            aj = a.coeffs[j]
            if aj != 0:
                acc = acc + aj * out[k - j]
        out.append(-(acc * inv0))
    return TruncatedSeries(tuple(out), a.ring)


# -- the phi product ---------------------------------------------------------


def _ring_of(f: WeightFunction) -> str:
    return QZ if f.marked else Q


def _factor_into(cs: list, fk, k: int) -> None:
    """In place: cs <- cs * (1 - fk q^k)."""
    if fk == 0:
        return
    for j in range(len(cs) - 1, k - 1, -1):
        if cs[j - k] != 0:
            cs[j] = cs[j] - fk * cs[j - k]


def phi_partial(f: WeightFunction, n: int, order: int) -> TruncatedSeries:
    """phi_n(f; q) = prod_{k=1..n} (1 - f(k) q^k), truncated at q^order."""
    require_exact(f)
    ring = _ring_of(f)
    cs = list(TruncatedSeries.one(order, ring).coeffs)
    for k in range(1, min(n, order) + 1):
        _factor_into(cs, f(k), k)
    return TruncatedSeries(tuple(cs), ring)


def phi_series(f: WeightFunction, order: int) -> TruncatedSeries:
    """phi_infinity(f; q) to the given order."""
    return phi_partial(f, order, order)


def _phi_prefixes(f: WeightFunction, order: int) -> list[TruncatedSeries]:
    """[phi_0, phi_1, ..., phi_order], each truncated at q^order."""
    ring = _ring_of(f)
    cs = list(TruncatedSeries.one(order, ring).coeffs)
    out = [TruncatedSeries(tuple(cs), ring)]
    for k in range(1, order + 1):
        _factor_into(cs, f(k), k)
        out.append(TruncatedSeries(tuple(cs), ring))
    return out


def sigma5(f: WeightFunction, order: int) -> TruncatedSeries:
    """sum_{n=1..N} q^n f(n) / phi_n(f; q)."""
    require_exact(f)
    ring = _ring_of(f)
    phis = _phi_prefixes(f, order)
    total = TruncatedSeries.constant(0, order, ring)
    for n in range(1, order + 1):
        fn = f(n)
        if fn != 0:
            total = total + reciprocal(phis[n]).shift(n).scale(fn)
    return total


def sigma6(f: WeightFunction, order: int) -> TruncatedSeries:
    """sum_{n=1..N} q^n f(n) phi_{n-1}(f; q)."""
    require_exact(f)
    ring = _ring_of(f)
    phis = _phi_prefixes(f, order)
    total = TruncatedSeries.constant(0, order, ring)
    for n in range(1, order + 1):
        fn = f(n)
        if fn != 0:
            total = total + phis[n - 1].shift(n).scale(fn)
    return total


# -- five forms of 1/phi -----------------------------------------------------


def _partition_sum(f: WeightFunction, order: int, distinct: bool) -> TruncatedSeries:
    """Visit every partition of size <= order once, carrying the running part product.

    Partitions sharing a prefix share its product; a zero prefix prunes the
    whole subtree, since every extension contributes zero.
    """
    require_exact(f)
    ring = _ring_of(f)
    one = ZPoly([1]) if ring == QZ else Fraction(1)
    values = [None] + [f(k) for k in range(1, order + 1)]
    terms: list[list] = [[] for _ in range(order + 1)]
    step = 1 if distinct else 0

    def visit(size: int, largest: int, product, negative: bool) -> None:
        terms[size].append(-product if negative else product)
        for p in range(min(largest, order - size), 0, -1):
            v = values[p]
            if v != 0:
                visit(size + p, p - step, product * v, negative ^ distinct)

    visit(0, order, one, False)
    zero = ZPoly() if ring == QZ else Fraction(0)
    return TruncatedSeries(tuple(_exact_sum(ts, zero) for ts in terms), ring)


def _exact_sum(items: list, zero):
    if items and isinstance(items[0], Fraction):
        # one common denominator is far cheaper than pairwise Fraction adds
        den = lcm(*(x.denominator for x in items))
        return Fraction(sum(x.numerator * (den // x.denominator) for x in items), den)
    return sum(items, zero)


def expand_form4(f: WeightFunction, order: int) -> TruncatedSeries:
    """sum over all partitions lam with |lam| <= N of q^|lam| prod f(parts), by enumeration."""
    return _partition_sum(f, order, distinct=False)


def expand_form5(f: WeightFunction, order: int) -> TruncatedSeries:
    return 1 + sigma5(f, order)


def expand_form6(f: WeightFunction, order: int) -> TruncatedSeries:
    return 1 + mul(reciprocal(phi_series(f, order)), sigma6(f, order))


def expand_distinct15(f: WeightFunction, order: int) -> TruncatedSeries:
    """sum over distinct-part lam of (-1)^len q^|lam| prod f(parts), by enumeration."""
    return _partition_sum(f, order, distinct=True)


def expand_form16(f: WeightFunction, order: int) -> TruncatedSeries:
    return 1 - sigma6(f, order)


def expand_form17(f: WeightFunction, order: int) -> TruncatedSeries:
    return 1 - mul(phi_series(f, order), sigma5(f, order))


def cf_convergent(f: WeightFunction, depth: int, order: int, *, distinct: bool = False) -> TruncatedSeries:
    """Depth-m truncation of 1 + S6/(1 - S5/(1 + S6/(1 - ...))).

    Level 1 is ``1 + S6/(level 2)``, level 2 is ``1 - S5/(level 3)`` and so on,
    with level m+1 replaced by 1.  With ``distinct=True`` the dual fraction
    1 - S5/(1 + S6/(1 - ...)) for phi itself is returned instead.
    """
    if depth < 1:
        raise ValueError("continued-fraction depth must be >= 1")
    s5, s6 = sigma5(f, order), sigma6(f, order)
    ring = s5.ring
    tail = TruncatedSeries.one(order, ring)
    offset = 1 if distinct else 0
    for level in range(depth, 0, -1):
        plus_s6 = (level + offset) % 2 == 1
        num = s6 if plus_s6 else -s5
        tail = 1 + mul(num, reciprocal(tail))
    return tail


def expand_form8(f: WeightFunction, order: int, depth: int | None = None) -> TruncatedSeries:
    return cf_convergent(f, order + 1 if depth is None else depth, order)


def expand_form18(f: WeightFunction, order: int, depth: int | None = None) -> TruncatedSeries:
    return cf_convergent(f, order + 1 if depth is None else depth, order, distinct=True)


# -- congruences and the z marker --------------------------------------------


def congruence_series(a: int, m: int, s: int, order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """1/prod_{n = a mod m}(1 - n^s q^n) and 1/(a^s q^a; q^m)_infinity, both to the order."""
    if not 1 <= a <= m:
        raise ValueError("need 1 <= a <= m")
    if s < 0:
        raise ValueError("congruence check needs an integer exponent s >= 0")
    prog = ArithProg(a, m)
    lhs = reciprocal(phi_series(Restricted(Power(s), prog), order))
    rhs = reciprocal(phi_series(Restricted(Constant(Fraction(a) ** s), prog), order))
    return lhs, rhs


def congruence_check(a: int, m: int, s: int, order: int) -> bool:
    """True iff the two series of :func:`congruence_series` agree coefficient-wise mod m."""
    lhs, rhs = congruence_series(a, m, s, order)
    for x, y in zip(lhs.coeffs, rhs.coeffs):
        if x.denominator != 1 or y.denominator != 1:
            raise ValueError("non-integer coefficient in a congruence series")
        if (x.numerator - y.numerator) % m:
            return False
    return True


def z_marker_extract(series: TruncatedSeries, z_degree: int) -> TruncatedSeries:
    """The q-series multiplying z^d."""
    if series.ring != QZ:
        raise RingMismatch("z-marker extraction needs a series over Q[z]")
    return TruncatedSeries(tuple(c.coeff(z_degree) for c in series.coeffs), Q)


def golden_relation_residual(f: WeightFunction, order: int) -> TruncatedSeries:
    """(S5 - S6) - S5*S6, identically zero."""
    s5 = expand_form5(f, order) - 1
    s6 = 1 - expand_form16(f, order)
    return (s5 - s6) - mul(s5, s6)
