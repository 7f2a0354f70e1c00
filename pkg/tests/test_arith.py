from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from powergraph.arith import (
    divisors,
    factorize,
    factorize_rational,
    format_rational,
    gcd_vector,
    is_prime,
    parse_rational,
    primes_up_to,
    reduce,
    valuation,
)


def naive_factor(n):
    """Divide by every integer from 2 upward; no primality knowledge needed."""
    out, d = [], 2
    while n > 1:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    return out


@pytest.mark.parametrize("num, den, expected", [
    (4, 6, (2, 3)),
    (0, 5, (0, 1)),
    (3, -6, (-1, 2)),
])
def test_reduce_examples(num, den, expected):
    x = reduce(num, den)
    assert (x.numerator, x.denominator) == expected


def test_reduce_zero_denominator():
    with pytest.raises(ValueError, match="zero denominator"):
        reduce(1, 0)


def test_reduce_idempotent_small_range():
    for a in range(-100, 101):
        for b in range(-100, 101):
            if b == 0:
                continue
            x = reduce(a, b)
            assert reduce(x.numerator, x.denominator) == x
            assert x.denominator >= 1


@pytest.mark.parametrize("n, expected", [(12, [(2, 2), (3, 1)]), (1, []), (97, [(97, 1)])])
def test_factorize_examples(n, expected):
    assert factorize(n) == expected


@pytest.mark.parametrize("n", [0, -3])
def test_factorize_rejects_nonpositive(n):
    with pytest.raises(ValueError, match="nonpositive input"):
        factorize(n)


def test_factorize_matches_naive():
    for n in range(1, 3000):
        assert factorize(n) == naive_factor(n)


def test_factorize_large_prime_past_sieve():
    p = 1_000_003
    assert factorize(p) == [(p, 1)]
    assert factorize(p * 65537 * 4) == [(2, 2), (65537, 1), (p, 1)]


def test_factorize_multiplicative():
    for m in range(1, 1001, 7):
        for n in range(1, 1001, 11):
            merged = dict(factorize(m))
            for p, e in factorize(n):
                merged[p] = merged.get(p, 0) + e
            assert factorize(m * n) == sorted(merged.items())


@pytest.mark.parametrize("x, p, expected", [
    (Fraction(3, 8), 2, -3),
    (Fraction(5), 5, 1),
    (Fraction(7, 3), 2, 0),
])
def test_valuation_examples(x, p, expected):
    assert valuation(x, p) == expected


def test_valuation_of_zero():
    with pytest.raises(ValueError, match="valuation of zero undefined"):
        valuation(Fraction(0), 2)


@given(st.integers(-10**4, 10**4).filter(bool), st.integers(1, 10**4))
def test_rational_is_product_of_prime_powers(num, den):
    x = Fraction(num, den)
    rebuilt = Fraction(1 if x > 0 else -1)
    for p, _ in factorize_rational(x):
        rebuilt *= Fraction(p) ** valuation(x, p)
    assert rebuilt == x


@pytest.mark.parametrize("values, expected", [([2, 4], 2), ([0, 0], 0), ([3, 5], 1), ([-6, 9], 3)])
def test_gcd_vector(values, expected):
    assert gcd_vector(values) == expected


def test_gcd_vector_empty():
    with pytest.raises(ValueError):
        gcd_vector([])


def test_canonical_string_round_trip():
    for s in ["0", "5", "-1/2", "3/4", "-7"]:
        assert format_rational(parse_rational(s)) == s
    assert format_rational(parse_rational("4/-6")) == "-2/3"


def test_primes_and_divisors():
    assert primes_up_to(30) == (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)
    assert [n for n in range(50) if is_prime(n)] == list(primes_up_to(49))
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(-9) == [1, 3, 9]
    for n in range(1, 200):
        assert divisors(n) == [d for d in range(1, n + 1) if n % d == 0]
