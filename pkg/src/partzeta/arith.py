"""Small integer arithmetic helpers: primality, factorisation, Liouville and Moebius."""

from __future__ import annotations

from functools import lru_cache


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@lru_cache(maxsize=32)
def primes_upto(n: int) -> tuple[int, ...]:
    """All primes p <= n by the sieve of Eratosthenes."""
    if n < 2:
        return ()
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return tuple(i for i, v in enumerate(sieve) if v)


def factorize(n: int) -> list[int]:
    """Prime factors of n with multiplicity, in non-increasing order."""
    if n < 1:
        raise ValueError(f"factorize needs a positive integer, got {n}")
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return sorted(out, reverse=True)


def big_omega(n: int) -> int:
    return len(factorize(n))


def liouville(n: int) -> int:
    return -1 if big_omega(n) % 2 else 1


def mobius(n: int) -> int:
    fs = factorize(n)
    if len(set(fs)) != len(fs):
        return 0
    return -1 if len(fs) % 2 else 1
