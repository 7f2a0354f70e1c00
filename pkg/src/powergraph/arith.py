"""Exact integer and rational helpers.

Rationals are ``fractions.Fraction`` values, which are already kept in lowest
terms with the sign on the numerator. Nothing here touches floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "reduce",
    "format_rational",
    "parse_rational",
    "factorize",
    "factorize_rational",
    "valuation",
    "gcd_vector",
    "is_prime",
    "primes_up_to",
    "divisors",
]

_SIEVE_LIMIT = 1 << 16


def reduce(numer: int, denom: int) -> Fraction:
    """Lowest-terms rational ``numer/denom`` with a positive denominator."""
    if denom == 0:
        raise ValueError("zero denominator")
    return Fraction(numer, denom)


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return reduce(int(num), int(den))
    return Fraction(int(text))


@lru_cache(maxsize=None)
def primes_up_to(n: int) -> tuple[int, ...]:
    """All primes ``<= n`` (sieve of Eratosthenes)."""
    if n < 2:
        return ()
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, n + 1, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _trial_primes():
    yield from primes_up_to(_SIEVE_LIMIT)
    # past the sieve fall back to odd candidates; composites never divide
    # what is left once their prime factors are stripped
    k = _SIEVE_LIMIT + 1
    while True:
        yield k
        k += 2


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of ``n >= 1`` as ``[(p, e), ...]`` with ``p`` increasing."""
    if n <= 0:
        raise ValueError("nonpositive input")
    out = []
    for p in _trial_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    if n > 1:
        out.append((n, 1))
    return out


def factorize_rational(x: Fraction | int) -> list[tuple[int, int]]:
    """Signed-exponent factorization of ``|x|``; denominator primes get negative exponents."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("cannot factor zero")
    num = dict(factorize(abs(x.numerator)))
    den = {p: -e for p, e in factorize(x.denominator)}
    # lowest terms: the two supports are disjoint
    return sorted({**num, **den}.items())


def valuation(x: Fraction | int, p: int) -> int:
    """Exponent of the prime ``p`` in ``x``."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero undefined")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    v = 0
    num, den = abs(x.numerator), x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def gcd_vector(values) -> int:
    values = list(values)
    if not values:
        raise ValueError("gcd of an empty list")
    return math.gcd(*values)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n <= _SIEVE_LIMIT:
        return n in _prime_set()
    return factorize(n) == [(n, 1)]


@lru_cache(maxsize=1)
def _prime_set() -> frozenset[int]:
    return frozenset(primes_up_to(_SIEVE_LIMIT))


def divisors(n: int) -> list[int]:
    """Positive divisors of ``n != 0``, ascending."""
    if n == 0:
        raise ValueError("zero has infinitely many divisors")
    divs = [1]
    for p, e in factorize(abs(n)):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)
