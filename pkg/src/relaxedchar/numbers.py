"""Exact scalars: rationals plus real quadratic irrationals a + b*sqrt(D).

Levels are allowed to be irrational so that "generic level" behaviour can be
exercised exactly; everything else (weight coordinates, root data) stays in
``Fraction``.  Arithmetic on a :class:`QuadraticNumber` whose surd part
cancels returns a plain ``Fraction``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union


def _squarefree(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


class QuadraticNumber:
    """Element ``a + b*sqrt(radicand)`` of a real quadratic field, ``b != 0``."""

    __slots__ = ("a", "b", "radicand")

    def __init__(self, a, b, radicand: int):
        if not _squarefree(radicand):
            raise ValueError(f"radicand must be squarefree and > 1, got {radicand}")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.radicand = radicand
        if self.b == 0:
            raise ValueError("use Fraction for rational values")

    @staticmethod
    def make(a, b, radicand: int) -> "Number":
        b = Fraction(b)
        if b == 0:
            return Fraction(a)
        return QuadraticNumber(a, b, radicand)

    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if other.radicand != self.radicand:
                raise ValueError("cannot mix different quadratic fields")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return QuadraticNumber.make(self.a + c[0], self.b + c[1], self.radicand)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.radicand)

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return QuadraticNumber.make(self.a - c[0], self.b - c[1], self.radicand)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        a, b = c
        return QuadraticNumber.make(
            self.a * a + self.b * b * self.radicand, self.a * b + self.b * a, self.radicand
        )

    __rmul__ = __mul__

    def _inverse(self):
        norm = self.a * self.a - self.b * self.b * self.radicand
        return QuadraticNumber(self.a / norm, -self.b / norm, self.radicand)

    def __truediv__(self, other):
        if isinstance(other, QuadraticNumber):
            return self * other._inverse()
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber.make(self.a / other, self.b / other, self.radicand)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._inverse() * other
        return NotImplemented

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 D
        lhs = self.a * self.a
        rhs = self.b * self.b * self.radicand
        return sa if lhs > rhs else sb

    def _cmp(self, other):
        diff = self - other
        if isinstance(diff, Fraction):
            return (diff > 0) - (diff < 0)
        return diff.sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            return (self.a, self.b, self.radicand) == (other.a, other.b, other.radicand)
        return False

    def __hash__(self):
        return hash((self.a, self.b, self.radicand))

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.radicand)

    def __repr__(self):
        return f"QuadraticNumber({self.a}, {self.b}, {self.radicand})"

    def __str__(self):
        return format_number(self)


Number = Union[Fraction, QuadraticNumber]


def as_number(x) -> Number:
    if isinstance(x, QuadraticNumber):
        return x
    if isinstance(x, str):
        return parse_number(x)
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or a 'p/q' string")
    return Fraction(x)


def is_rational(x) -> bool:
    return not isinstance(x, QuadraticNumber)


def is_integer(x) -> bool:
    if isinstance(x, QuadraticNumber):
        return False
    return Fraction(x).denominator == 1


def sqrt_number(radicand: int) -> QuadraticNumber:
    return QuadraticNumber(0, 1, radicand)


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_number(x) -> str:
    if isinstance(x, QuadraticNumber):
        b = x.b
        if b == 1:
            surd = f"sqrt({x.radicand})"
        elif b == -1:
            surd = f"-sqrt({x.radicand})"
        else:
            surd = f"{format_rational(b)}*sqrt({x.radicand})"
        if x.a == 0:
            return surd
        sign = "" if surd.startswith("-") else "+"
        return f"{format_rational(x.a)}{sign}{surd}"
    return format_rational(x)


_RAT = r"[+-]?\d+(?:/\d+)?"
_NUMBER_RE = re.compile(
    rf"^(?:(?P<a>{_RAT})(?=$|[+-]))?(?:(?P<sign>[+-])?(?:(?P<b>\d+(?:/\d+)?)\*)?sqrt\((?P<d>\d+)\))?$"
)


def parse_number(text: str) -> Number:
    """Parse ``p``, ``p/q`` or ``p/q+r/s*sqrt(D)`` exactly."""
    s = text.strip().replace(" ", "").replace("−", "-")
    m = _NUMBER_RE.match(s)
    if not s or m is None or (m.group("a") is None and m.group("d") is None):
        raise ValueError(f"not an exact number: {text!r}")
    a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
    if m.group("d") is None:
        return a
    if m.group("a") is not None and m.group("sign") is None:
        raise ValueError(f"not an exact number: {text!r}")
    b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
    if m.group("sign") == "-":
        b = -b
    return QuadraticNumber.make(a, b, int(m.group("d")))


def number_to_json(x):
    """Numerator/denominator pairs; quadratic numbers carry both parts."""
    if isinstance(x, QuadraticNumber):
        return {
            "rational": [x.a.numerator, x.a.denominator],
            "surd": [x.b.numerator, x.b.denominator],
            "radicand": x.radicand,
        }
    x = Fraction(x)
    return [x.numerator, x.denominator]


def number_from_json(obj) -> Number:
    if isinstance(obj, dict):
        return QuadraticNumber.make(
            Fraction(*obj["rational"]), Fraction(*obj["surd"]), obj["radicand"]
        )
    if isinstance(obj, str):
        return parse_number(obj)
    return Fraction(obj[0], obj[1])
