"""Weight functions f : Z+ -> coefficients.

Exact weights evaluate to :class:`~fractions.Fraction` (or to a
:class:`~partzeta.zpoly.ZPoly` once a length marker z is attached); weights
with a non-integer exponent only have a big-float evaluation.

Grammar accepted by :func:`parse_weight`::

    const:c | pow:e | table:n1=v1,n2=v2   [;restrict:<partset>]
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

import mpmath

from .partitions import GrammarError, Partition, PartSpec, parse_partspec
from .zpoly import ZPoly


class InexactWeightError(TypeError):
    """An exact-arithmetic path was asked to evaluate a big-float-only weight."""


class WeightFunction:
    exact = True
    marked = False  # True when values carry the formal marker z

    def __call__(self, n: int):
        raise NotImplementedError

    def numeric(self, n: int):
        """Big-float value at n (current mpmath precision)."""
        if self.marked:
            raise InexactWeightError("weights carrying the marker z have no numeric value")
        v = self(n)
        return mpmath.mpf(v.numerator) / v.denominator

    def support_max(self) -> int | None:
        """Largest n with f(n) != 0 when the support is finite, else None."""
        return None

    def __neg__(self):
        return Negated(self)


def _frac(v) -> Fraction:
    if isinstance(v, float):
        raise TypeError("use exact rationals, not floats")
    return Fraction(v)


@dataclass(frozen=True)
class Constant(WeightFunction):
    c: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "c", _frac(self.c))

    def __call__(self, n):
        return self.c

    def support_max(self):
        return 0 if self.c == 0 else None

    def __str__(self):
        return f"const:{self.c}"


@dataclass(frozen=True)
class Power(WeightFunction):
    """f(n) = n**e; integer e is exact, any other real e is big-float only."""

    e: int | Fraction = -2

    def __post_init__(self):
        e = self.e
        if isinstance(e, Fraction) and e.denominator == 1:
            e = int(e)
        object.__setattr__(self, "e", e)

    @property
    def exact(self):
        return isinstance(self.e, int)

    def __call__(self, n):
        if not self.exact:
            raise InexactWeightError(f"n^{self.e} is not rational in general")
        return Fraction(n) ** self.e

    def numeric(self, n):
        if self.exact:
            return mpmath.mpf(n) ** self.e
        e = Fraction(self.e)
        return mpmath.power(n, mpmath.mpf(e.numerator) / e.denominator)

    def __str__(self):
        return f"pow:{self.e}"


@dataclass(frozen=True)
class Table(WeightFunction):
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        vals = {int(k): _frac(v) for k, v in dict(self.values).items()}
        if any(k < 1 for k in vals):
            raise ValueError("table keys must be positive integers")
        object.__setattr__(self, "values", vals)

    def __call__(self, n):
        return self.values.get(n, Fraction(0))

    def support_max(self):
        return max((k for k, v in self.values.items() if v), default=0)

    def __hash__(self):
        return hash(tuple(sorted(self.values.items())))

    def __str__(self):
        return "table:" + ",".join(f"{k}={v}" for k, v in sorted(self.values.items()))


@dataclass(frozen=True)
class Restricted(WeightFunction):
    inner: WeightFunction
    to: PartSpec

    @property
    def exact(self):
        return self.inner.exact

    @property
    def marked(self):
        return self.inner.marked

    def __call__(self, n):
        if n in self.to:
            return self.inner(n)
        return ZPoly() if self.marked else Fraction(0)

    def numeric(self, n):
        return self.inner.numeric(n) if n in self.to else mpmath.mpf(0)

    def support_max(self):
        bounds = [b for b in (self.inner.support_max(), getattr(self.to, "maximum", None)) if b is not None]
        return min(bounds) if bounds else None

    def __str__(self):
        return f"{self.inner};restrict:{self.to}"


@dataclass(frozen=True)
class ZScaled(WeightFunction):
    """n -> z * inner(n), z a formal marker counting parts."""

    inner: WeightFunction
    marked = True

    @property
    def exact(self):
        return self.inner.exact

    def __call__(self, n):
        return ZPoly.z() * self.inner(n)

    def support_max(self):
        return self.inner.support_max()

    def __str__(self):
        return f"z*({self.inner})"


@dataclass(frozen=True)
class Negated(WeightFunction):
    """n -> -inner(n)."""

    inner: WeightFunction

    @property
    def exact(self):
        return self.inner.exact

    @property
    def marked(self):
        return self.inner.marked

    def __call__(self, n):
        return -self.inner(n)

    def numeric(self, n):
        return -self.inner.numeric(n)

    def support_max(self):
        return self.inner.support_max()

    def __neg__(self):
        return self.inner

    def __str__(self):
        return f"-({self.inner})"


def require_exact(f: WeightFunction) -> None:
    if not f.exact:
        raise InexactWeightError(f"weight {f} has no exact evaluation; use the numeric path")


def weight_product(lam: Partition, f: WeightFunction):
    """Product of f over the parts of lam, with multiplicity (1 for the empty partition)."""
    require_exact(f)
    one = ZPoly([1]) if f.marked else Fraction(1)
    return prod((f(p) for p in lam.parts), start=one)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise GrammarError(text, "expected a rational such as 3/10") from None


def parse_weight(text: str) -> WeightFunction:
    head, *mods = [p.strip() for p in text.split(";")]
    kind, _, body = head.partition(":")
    kind = kind.lower()
    if kind == "const":
        f: WeightFunction = Constant(parse_rational(body))
    elif kind == "pow":
        e = parse_rational(body)
        f = Power(int(e) if e.denominator == 1 else e)
    elif kind == "table":
        vals = {}
        for item in filter(None, (x.strip() for x in body.split(","))):
            k, eq, v = item.partition("=")
            if not eq:
                raise GrammarError(item, "table entries look like n=v")
            try:
                vals[int(k)] = parse_rational(v)
            except ValueError:
                raise GrammarError(item, "table key must be an integer") from None
        f = Table(vals)
    else:
        raise GrammarError(head, "unknown weight kind")
    for mod in mods:
        if not mod:
            continue
        if not mod.lower().startswith("restrict:"):
            raise GrammarError(mod, "unknown weight modifier")
        f = Restricted(f, parse_partspec(mod[len("restrict:"):]))
    return f
