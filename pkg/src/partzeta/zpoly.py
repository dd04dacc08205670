"""Polynomials in a formal length marker z with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


class ZPoly:
    """Immutable polynomial c0 + c1 z + ... with trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def z(cls, power: int = 1, coeff=1) -> ZPoly:
        return cls([0] * power + [coeff])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def constant(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def coeff(self, d: int) -> Fraction:
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else Fraction(0)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def truncate(self, degree: int) -> ZPoly:
        return ZPoly(self.coeffs[: degree + 1])

    @staticmethod
    def _lift(other):
        if isinstance(other, ZPoly):
            return other
        if isinstance(other, (int, Rational)):
            return ZPoly([other])
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return ZPoly([self.coeff(i) + o.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return ZPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return ZPoly([c * other for c in self.coeffs])
        if not isinstance(other, ZPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return ZPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return ZPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.constant)
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "ZPoly(0)"
        terms = []
        for d, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if d == 0 else f"{c}*z^{d}" if d > 1 else f"{c}*z")
        return "ZPoly(" + " + ".join(terms) + ")"

    def inverse(self, degree: int) -> ZPoly:
        """Power-series inverse in z, truncated at the given z-degree."""
        c0 = self.constant
        if c0 == 0:
            raise ZeroDivisionError("z-degree-0 part is zero")
        inv = [1 / c0]
        for d in range(1, degree + 1):
            acc = sum((self.coeff(i) * inv[d - i] for i in range(1, d + 1)), Fraction(0))
            inv.append(-acc / c0)
        return ZPoly(inv)
