from fractions import Fraction

import pytest

from eigenwedge import DomainError, ParseError, QQi, TolerancePolicy
from eigenwedge.scalars import EXACT, FLOAT, format_scalar, parse_exact, to_scalar


@pytest.mark.parametrize(
    "text, re, im",
    [("1/2", Fraction(1, 2), 0), ("3i", 0, 3), ("-i", 0, -1), ("1/2+3/4i", Fraction(1, 2), Fraction(3, 4)),
     ("-2-i", -2, -1), ("7", 7, 0)],
)
def test_parse_exact(text, re, im):
    z = parse_exact(text)
    assert z.real == re and z.imag == im


@pytest.mark.parametrize("text", ["", "1/0", "abc", "1.5", "2+"])
def test_parse_exact_rejects(text):
    with pytest.raises(ParseError):
        parse_exact(text)


@pytest.mark.parametrize("text", ["1/2", "-3/7+2i", "-i", "0", "5/3-1/9i"])
def test_format_round_trip(text):
    z = parse_exact(text)
    assert parse_exact(format_scalar(z)) == z


def test_exact_arithmetic_is_exact():
    a = QQi(Fraction(1, 3), 1)
    b = QQi(Fraction(2, 3), -1)
    assert a + b == 1
    assert a * a.conjugate() == Fraction(10, 9)
    assert (a / a) == 1
    assert a.abs2() == Fraction(10, 9)


def test_nonfinite_rejected():
    for bad in (float("nan"), float("inf"), complex(0, float("nan"))):
        with pytest.raises(DomainError):
            to_scalar(bad, FLOAT)


def test_to_scalar_modes():
    assert to_scalar(Fraction(1, 2), EXACT) == QQi(Fraction(1, 2), 0)
    assert to_scalar(3, FLOAT) == 3 + 0j


def test_tolerance_policy():
    tol = TolerancePolicy(1e-10, 1e-300)
    assert tol.is_zero(1e-12, 1.0)
    assert not tol.is_zero(1e-8, 1.0)
    with pytest.raises(DomainError):
        TolerancePolicy(-1.0, 0.0)
