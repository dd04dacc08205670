"""Independent oracles shared by the tests.

Nothing here calls into the package: each oracle recomputes its quantity
by a different route so agreement means something.
"""

import sys
from fractions import Fraction
from functools import lru_cache
from math import factorial

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@lru_cache(maxsize=None)
def pentagonal_p(n: int) -> int:
    """p(n) by Euler's recurrence over generalized pentagonal numbers."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while k * (3 * k - 1) // 2 <= n:
        sign = -1 if k % 2 == 0 else 1
        total += sign * (pentagonal_p(n - k * (3 * k - 1) // 2) + pentagonal_p(n - k * (3 * k + 1) // 2))
        k += 1
    return total


def naive_partitions(n: int, max_part: int | None = None) -> set[tuple[int, ...]]:
    """All partitions of n as a set of non-increasing tuples, by plain recursion."""
    if max_part is None:
        max_part = n
    if n == 0:
        return {()}
    out = set()
    for first in range(min(n, max_part), 0, -1):
        for rest in naive_partitions(n - first, first):
            out.add((first,) + rest)
    return out


def bernoulli_at(n: int) -> Fraction:
    """B_n by the Akiyama-Tanigawa algorithm, converted to B_1 = -1/2."""
    a = [Fraction(1, m + 1) for m in range(n + 1)]
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return -a[0] if n == 1 else a[0]


def zeta_even_over_pi(n: int) -> Fraction:
    k = n // 2
    return Fraction((-1) ** (k + 1)) * bernoulli_at(n) * 2 ** (n - 1) / factorial(n)


def newton_fixed_length(power_sums: list[Fraction], k: int, distinct: bool) -> list[Fraction]:
    """Complete (or elementary when distinct) symmetric sums from power sums p_1..p_k."""
    e = [Fraction(1)]
    for m in range(1, k + 1):
        acc = sum(((-1) ** (i - 1) if distinct else 1) * e[m - i] * power_sums[i] for i in range(1, m + 1))
        e.append(acc / m)
    return e


def poly_mul(a: list, b: list, n: int) -> list:
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        for j, y in enumerate(b[: n + 1 - i]):
            out[i + j] += x * y
    return out


@pytest.fixture
def ctx():
    from partzeta.numeric import PrecisionContext

    return PrecisionContext(50, 10)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
