from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from src.core.rational import approx, as_rational, bit_size, format_rational, parse_rational, to_rational
from src.errors import InputError

from .strategies import rationals


@pytest.mark.parametrize("value,expected", [
    (3, Fraction(3)),
    (Fraction(1, 3), Fraction(1, 3)),
    ("3/4", Fraction(3, 4)),
    ("-1/100", Fraction(-1, 100)),
    (" 7 ", Fraction(7)),
])
def test_as_rational_accepts_exact_inputs(value, expected):
    assert as_rational(value) == expected


@pytest.mark.parametrize("value", [0.5, 1j, True, None, [1, 2]])
def test_as_rational_rejects_inexact_inputs(value):
    with pytest.raises(InputError):
        as_rational(value, name="height")


def test_float_error_names_the_argument():
    with pytest.raises(InputError, match="height"):
        as_rational(0.25, name="height")


@pytest.mark.parametrize("text", ["", "abc", "1/0", "1.5", "1/-2", "/3"])
def test_parse_rational_rejects_bad_literals(text):
    with pytest.raises(InputError):
        parse_rational(text)


def test_format_rational():
    assert format_rational(Fraction(3)) == "3"
    assert format_rational(Fraction(-2, 4)) == "-1/2"
    assert format_rational(Fraction(5, 3)) == "5/3"


def test_approx_rounds_half_up():
    assert approx(Fraction(1, 3)) == "0.333333"
    assert approx(Fraction(2, 3)) == "0.666667"
    assert approx(Fraction(-1, 3)) == "-0.333333"
    assert approx(Fraction(0)) == "0.000000"
    assert approx(Fraction(1, 8), places=2) == "0.13"


def test_bit_size():
    assert bit_size(Fraction(1, 1)) == 2
    assert bit_size(Fraction(-3, 4)) == 5


def test_to_rational_recovers_small_fractions():
    assert to_rational(0.5, 10) == Fraction(1, 2)
    assert to_rational(1 / 3, 10) == Fraction(1, 3)
    assert to_rational(-0.25, 10) == Fraction(-1, 4)
    assert to_rational(2.0, 10) == Fraction(2)


@given(rationals)
def test_format_then_parse_is_identity(q):
    assert parse_rational(format_rational(q)) == q


@given(st.fractions(min_value=-5, max_value=5, max_denominator=50))
def test_to_rational_is_exact_within_denominator_limit(q):
    assert to_rational(float(q), 50) == q
