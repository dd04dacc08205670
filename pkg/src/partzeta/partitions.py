"""Partitions, part sets and restricted partition families.

A partition is stored as its explicit tuple of parts (non-increasing), so
sums "over the parts of lambda" iterate with multiplicity.  Part sets
(``PartSpec``) come in six flavours; a ``PartitionClass`` adds the
distinct-parts and fixed-length constraints on top of one of them.

Textual grammar accepted by :func:`parse_partspec` and :func:`parse_class`::

    all | finite:1,2,3 | multiples:m | mod:a,m | geq:a | primes
    <partset>[;distinct][;len:k]
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import prod
from typing import Iterator, Sequence

from .arith import factorize, is_prime, primes_upto


class GrammarError(ValueError):
    """A part-set, class or weight string could not be parsed."""

    def __init__(self, token: str, message: str = ""):
        self.token = token
        super().__init__(f"bad token {token!r}" + (f": {message}" if message else ""))


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        for i, p in enumerate(parts):
            if not isinstance(p, int) or p < 1:
                raise ValueError(f"parts must be positive integers, got {p!r}")
            if i and parts[i - 1] < p:
                raise ValueError(f"parts must be non-increasing: {parts}")

    @classmethod
    def from_parts(cls, parts: Sequence[int]) -> Partition:
        """Build from parts in any order."""
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def integer(self) -> int:
        """Product of the parts; 1 for the empty partition."""
        return prod(self.parts)

    @property
    def sign(self) -> int:
        return -1 if len(self.parts) % 2 else 1

    def is_distinct(self) -> bool:
        return all(a > b for a, b in zip(self.parts, self.parts[1:]))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __repr__(self):
        return f"Partition{self.parts}"


EMPTY = Partition()


# -- part sets ---------------------------------------------------------------


class PartSpec:
    """A subset X of the positive integers."""

    finite = False

    def __contains__(self, n: int) -> bool:
        raise NotImplementedError

    def upto(self, n: int) -> list[int]:
        """Elements of X that are <= n, increasing."""
        raise NotImplementedError

    def __iter__(self) -> Iterator[int]:
        """Enumerate X in increasing order (infinite unless finite)."""
        if self.finite:
            yield from self.upto(self.maximum)
            return
        block, lo = 64, 0
        while True:
            for v in self.upto(lo + block):
                if v > lo:
                    yield v
            lo += block
            block *= 2

    def to_grammar(self) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.to_grammar()


@dataclass(frozen=True)
class All(PartSpec):
    def __contains__(self, n):
        return n >= 1

    def upto(self, n):
        return list(range(1, n + 1))

    def to_grammar(self):
        return "all"


@dataclass(frozen=True)
class Finite(PartSpec):
    elements: frozenset = frozenset()
    finite = True

    def __post_init__(self):
        els = frozenset(int(e) for e in self.elements)
        if any(e < 1 for e in els):
            raise ValueError("finite part sets hold positive integers only")
        object.__setattr__(self, "elements", els)

    @property
    def maximum(self) -> int:
        return max(self.elements, default=0)

    def __contains__(self, n):
        return n in self.elements

    def upto(self, n):
        return sorted(e for e in self.elements if e <= n)

    def to_grammar(self):
        return "finite:" + ",".join(map(str, sorted(self.elements)))


@dataclass(frozen=True)
class Multiples(PartSpec):
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("multiples need m >= 1")

    def __contains__(self, n):
        return n >= 1 and n % self.m == 0

    def upto(self, n):
        return list(range(self.m, n + 1, self.m))

    def to_grammar(self):
        return f"multiples:{self.m}"


@dataclass(frozen=True)
class ArithProg(PartSpec):
    """Positive integers congruent to a mod m, with 1 <= a <= m."""

    a: int
    m: int

    def __post_init__(self):
        if not 1 <= self.a <= self.m:
            raise ValueError(f"need 1 <= a <= m, got a={self.a}, m={self.m}")

    def __contains__(self, n):
        return n >= 1 and (n - self.a) % self.m == 0

    def upto(self, n):
        return list(range(self.a, n + 1, self.m))

    def to_grammar(self):
        return f"mod:{self.a},{self.m}"


@dataclass(frozen=True)
class GreaterEq(PartSpec):
    a: int

    def __new__(cls, a: int = 2):
        if a == 1:
            return All()
        return super().__new__(cls)

    def __post_init__(self):
        if self.a < 1:
            raise ValueError("geq needs a >= 1")

    def __contains__(self, n):
        return n >= self.a

    def upto(self, n):
        return list(range(self.a, n + 1))

    def to_grammar(self):
        return f"geq:{self.a}"


@dataclass(frozen=True)
class Primes(PartSpec):
    def __contains__(self, n):
        return is_prime(n)

    def upto(self, n):
        return list(primes_upto(n))

    def to_grammar(self):
        return "primes"


def _ints(body: str, token: str) -> list[int]:
    try:
        return [int(x) for x in body.split(",") if x.strip() != ""]
    except ValueError:
        raise GrammarError(token, "expected comma-separated integers") from None


def parse_partspec(text: str) -> PartSpec:
    token = text.strip()
    kind, _, body = token.partition(":")
    kind = kind.strip().lower()
    try:
        if kind == "all" and not body:
            return All()
        if kind == "primes" and not body:
            return Primes()
        if kind == "finite":
            return Finite(frozenset(_ints(body, token)))
        if kind == "multiples":
            (m,) = _ints(body, token)
            return Multiples(m)
        if kind == "mod":
            a, m = _ints(body, token)
            return ArithProg(a, m)
        if kind == "geq":
            (a,) = _ints(body, token)
            return GreaterEq(a)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, GrammarError):
            raise
        raise GrammarError(token, str(exc)) from None
    raise GrammarError(token, "unknown part set")


# -- partition classes -------------------------------------------------------


@dataclass(frozen=True)
class PartitionClass:
    base: PartSpec = All()
    distinct: bool = False
    fixed_length: int | None = None

    def __post_init__(self):
        if self.fixed_length is not None and self.fixed_length < 0:
            raise ValueError("fixed_length must be non-negative")

    def __contains__(self, lam: Partition) -> bool:
        if any(p not in self.base for p in lam.parts):
            return False
        if self.distinct and not lam.is_distinct():
            return False
        return self.fixed_length is None or lam.length == self.fixed_length

    def to_grammar(self) -> str:
        out = [self.base.to_grammar()]
        if self.distinct:
            out.append("distinct")
        if self.fixed_length is not None:
            out.append(f"len:{self.fixed_length}")
        return ";".join(out)

    def __str__(self):
        return self.to_grammar()


UNRESTRICTED = PartitionClass()
DISTINCT = PartitionClass(distinct=True)


def parse_class(text: str) -> PartitionClass:
    pieces = [p.strip() for p in text.split(";") if p.strip()]
    if not pieces:
        raise GrammarError(text, "empty class")
    base = parse_partspec(pieces[0])
    distinct, length = False, None
    for mod in pieces[1:]:
        if mod.lower() == "distinct":
            distinct = True
        elif mod.lower().startswith("len:"):
            try:
                length = int(mod[4:])
            except ValueError:
                raise GrammarError(mod, "len needs an integer") from None
            if length < 0:
                raise GrammarError(mod, "len must be non-negative")
        else:
            raise GrammarError(mod, "unknown class modifier")
    return PartitionClass(base, distinct, length)


def as_class(cls: PartitionClass | PartSpec | None) -> PartitionClass:
    if cls is None:
        return UNRESTRICTED
    if isinstance(cls, PartSpec):
        return PartitionClass(cls)
    return cls


# -- enumeration and counting ------------------------------------------------


def enumerate_partitions(n: int, cls: PartitionClass | PartSpec | None = None) -> Iterator[Partition]:
    """Partitions of n in the class, in decreasing lexicographic order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    cls = as_class(cls)
    allowed = cls.base.upto(n)[::-1]
    k = cls.fixed_length
    step = 1 if cls.distinct else 0

    def rec(rest: int, start: int, prefix: list[int]) -> Iterator[Partition]:
        if rest == 0:
            if k is None or len(prefix) == k:
                yield Partition(tuple(prefix))
            return
        if k is not None and len(prefix) >= k:
            return
        for i in range(start, len(allowed)):
            p = allowed[i]
            if p > rest:
                continue
            prefix.append(p)
            yield from rec(rest - p, i + step, prefix)
            prefix.pop()

    yield from rec(n, 0, [])


def count_partitions(n: int, cls: PartitionClass | PartSpec | None = None) -> int:
    """Number of partitions of n in the class, by dynamic programming."""
    if n < 0:
        raise ValueError("n must be non-negative")
    cls = as_class(cls)
    return _count(n, cls.base, cls.distinct, cls.fixed_length)


@lru_cache(maxsize=256)
def _count(n: int, base: PartSpec, distinct: bool, k: int | None) -> int:
    if k is None:
        ways = [1] + [0] * n
        for p in base.upto(n):
            rng = range(n, p - 1, -1) if distinct else range(p, n + 1)
            for m in rng:
                ways[m] += ways[m - p]
        return ways[n]
    kmax = k
    # table[j][m]: partitions of m with exactly j parts, using parts seen so far
    table = [[0] * (n + 1) for _ in range(kmax + 1)]
    table[0][0] = 1
    for p in base.upto(n):
        if distinct:
            for j in range(kmax, 0, -1):
                row, prev = table[j], table[j - 1]
                for m in range(n, p - 1, -1):
                    row[m] += prev[m - p]
        else:
            for j in range(1, kmax + 1):
                row, prev = table[j], table[j - 1]
                for m in range(p, n + 1):
                    row[m] += prev[m - p]
    return table[k][n]


# -- the integers <-> prime partitions bijection ------------------------------


def integer_to_prime_partition(n: int) -> Partition:
    if n < 1:
        raise ValueError(f"need a positive integer, got {n}")
    return Partition(tuple(factorize(n)))


def prime_partition_to_integer(lam: Partition) -> int:
    bad = [p for p in lam.parts if not is_prime(p)]
    if bad:
        raise ValueError(f"not a prime partition, offending parts {bad}")
    return lam.integer
