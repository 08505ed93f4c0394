from fractions import Fraction

import pytest

from relaxedchar.numbers import (
    QuadraticNumber,
    as_number,
    format_number,
    is_integer,
    number_from_json,
    number_to_json,
    parse_number,
    sqrt_number,
)


def test_parse_rationals():
    assert parse_number("-3/2") == Fraction(-3, 2)
    assert parse_number("7") == 7
    assert parse_number("−1/2") == Fraction(-1, 2)


def test_parse_quadratic():
    x = parse_number("1/2-sqrt(2)")
    assert isinstance(x, QuadraticNumber)
    assert (x.a, x.b, x.radicand) == (Fraction(1, 2), -1, 2)
    assert parse_number("3*sqrt(5)") == QuadraticNumber(0, 3, 5)


@pytest.mark.parametrize("bad", ["", "1.5", "sqrt(4)", "1sqrt(2)", "abc"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_number(bad)


def test_floats_refused():
    with pytest.raises(TypeError):
        as_number(0.5)


def test_surd_cancels_to_fraction():
    r = sqrt_number(2)
    assert isinstance(r * r, Fraction)
    assert r * r == 2
    assert isinstance(r - r, Fraction)


def test_quadratic_ordering_and_inverse():
    r = sqrt_number(2)
    assert 1 < r < 2
    assert (1 / r) * r == 1
    assert -r < 0


def test_is_integer():
    assert is_integer(Fraction(4, 2))
    assert not is_integer(Fraction(1, 2))
    assert not is_integer(sqrt_number(3))


@pytest.mark.parametrize("text", ["-3/2", "0", "5", "1/3+2*sqrt(7)", "-sqrt(2)", "10*sqrt(5)", "-12/7*sqrt(3)"])
def test_format_round_trip(text):
    x = parse_number(text)
    assert parse_number(format_number(x)) == x
    assert number_from_json(number_to_json(x)) == x
