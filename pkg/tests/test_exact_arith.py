from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cuboid_factor.exact_arith import (
    DomainError,
    format_rational,
    integer_sqrt,
    is_perfect_square,
    parse_rational,
    passes_square_filter,
)


def test_integer_sqrt_examples():
    assert integer_sqrt(0) == 0
    assert 267 * 267 == 71289
    assert integer_sqrt(71289) == 267
    assert 270 * 270 == 72900 and 271 * 271 == 73441
    assert integer_sqrt(73225) == 270


def test_integer_sqrt_negative():
    with pytest.raises(DomainError):
        integer_sqrt(-1)


@given(st.integers(min_value=0, max_value=10**60))
def test_integer_sqrt_brackets(n):
    r = integer_sqrt(n)
    assert r * r <= n < (r + 1) * (r + 1)


def test_is_perfect_square_examples():
    assert is_perfect_square(71289)
    assert not is_perfect_square(73225)
    assert not is_perfect_square(-4)
    assert is_perfect_square(0)


def test_filter_agrees_with_plain_test_exhaustively():
    for n in range(0, 200_000):
        assert is_perfect_square(n) == is_perfect_square(n, use_filter=False)
        if n == int(n**0.5) ** 2:
            assert passes_square_filter(n)


@given(st.integers(min_value=-10**30, max_value=10**40))
def test_filter_never_changes_answer(n):
    assert is_perfect_square(n) == is_perfect_square(n, use_filter=False)


@given(st.integers(min_value=0, max_value=10**25))
def test_squares_pass(k):
    assert is_perfect_square(k * k)
    assert not is_perfect_square((k + 1) ** 2 + 1)


def cross_multiply_add(a, b):
    # independent oracle: (p/q) + (r/s) = (ps + rq) / qs, then compare by cross-multiplication
    return a.numerator * b.denominator + b.numerator * a.denominator, a.denominator * b.denominator


def test_rational_addition_matches_cross_multiplication():
    import random

    rng = random.Random(1234)
    for _ in range(10_000):
        a = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        b = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        num, den = cross_multiply_add(a, b)
        s = a + b
        assert s.numerator * den == num * s.denominator
        assert s.denominator > 0


@given(st.fractions())
def test_canonicalization_idempotent(q):
    again = Fraction(q.numerator, q.denominator)
    assert (again.numerator, again.denominator) == (q.numerator, q.denominator)
    assert parse_rational(format_rational(q)) == q


@pytest.mark.parametrize("text,value", [("3", 3), ("-4/6", Fraction(-2, 3)), (" 10/5 ", 2), ("0/7", 0)])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1.5", "1/0", "abc", "", "2/x"])
def test_parse_rational_rejects(text):
    with pytest.raises(DomainError):
        parse_rational(text)


def test_format_rational():
    assert format_rational(Fraction(6, -4)) == "-3/2"
    assert format_rational(Fraction(5)) == "5"
