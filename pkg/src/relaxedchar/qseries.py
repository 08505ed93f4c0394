"""Truncated q-series ``q^base * sum_{n=0}^{order} c_n q^n`` with exact coefficients."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .numbers import Number, as_number, format_number, is_integer, number_from_json, parse_number


class TruncationError(IndexError):
    """Raised when a coefficient beyond the known order is requested."""


class QSeries:
    __slots__ = ("base", "coeffs", "order")

    def __init__(self, base, coeffs, order: int | None = None):
        self.base = as_number(base)
        cs = [Fraction(c) if not isinstance(c, Fraction) else c for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < -1:
            raise ValueError("order must be >= -1")
        cs = cs[: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def zero(cls, order: int, base=0) -> "QSeries":
        return cls(base, [], order)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls(0, [1], order)

    @classmethod
    def monomial(cls, exponent, coeff=1, order: int = 0) -> "QSeries":
        return cls(exponent, [coeff], order)

    # -- access

    def __getitem__(self, n: int):
        if n < 0:
            return Fraction(0)
        if n > self.order:
            raise TruncationError(f"coefficient {n} requested, series known to order {self.order}")
        return self.coeffs[n]

    def coefficient_at(self, exponent):
        diff = as_number(exponent) - self.base
        if not is_integer(diff):
            return Fraction(0)
        return self[int(diff)]

    @property
    def top_exponent(self):
        return self.base + self.order

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def leading(self):
        """(exponent, coefficient) of the first nonzero term, or None."""
        for i, c in enumerate(self.coeffs):
            if c:
                return self.base + i, c
        return None

    # -- arithmetic

    def _offset(self, other: "QSeries") -> int:
        diff = other.base - self.base
        if not is_integer(diff):
            raise ValueError(f"cannot align q-exponents {self.base} and {other.base}")
        return int(diff)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)) and other == 0:
            return self  # lets sum() start from 0
        if not isinstance(other, QSeries):
            return NotImplemented
        t = self._offset(other)
        if t < 0:
            return other.__add__(self)
        order = min(self.order, t + other.order)
        cs = list(self.coeffs[: order + 1])
        cs += [Fraction(0)] * (order + 1 - len(cs))
        for i, c in enumerate(other.coeffs):
            j = i + t
            if j > order:
                break
            cs[j] += c
        return QSeries(self.base, cs, order)

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.base, [-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "QSeries":
        s = Fraction(s)
        return QSeries(self.base, [s * c for c in self.coeffs], self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        order = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        cs = [Fraction(0)] * (order + 1)
        for i in range(order + 1):
            ai = a[i]
            if not ai:
                continue
            for j in range(order + 1 - i):
                if b[j]:
                    cs[i + j] += ai * b[j]
        return QSeries(self.base + other.base, cs, order)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def shift(self, e) -> "QSeries":
        """Multiply by q^e."""
        return QSeries(self.base + as_number(e), self.coeffs, self.order)

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise TruncationError(f"cannot extend order {self.order} to {order}")
        return QSeries(self.base, self.coeffs[: order + 1], order)

    def rebase(self, base) -> "QSeries":
        """Same series written relative to ``base`` (which must be <= self.base
        modulo integers); order counts from the new base."""
        t = self._offset(QSeries(base, [], 0))
        # t = base - self.base, want new base lower: t <= 0
        if t > 0:
            if any(self.coeffs[:t]):
                raise ValueError("rebasing would drop nonzero terms")
            return QSeries(base, self.coeffs[t:], self.order - t)
        return QSeries(base, [Fraction(0)] * (-t) + list(self.coeffs), self.order - t)

    def equal_to_order(self, other: "QSeries", order: int | None = None) -> bool:
        return self.first_difference(other, order) is None

    def first_difference(self, other: "QSeries", order: int | None = None):
        """First exponent where the two series differ, compared up to the
        smaller known top exponent; None if they agree."""
        diff = other - self
        top = diff.order if order is None else min(order, diff.order)
        for i in range(top + 1):
            if diff.coeffs[i]:
                return diff.base + i
        return None

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.base == other.base and self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.base, self.coeffs, self.order))

    def __repr__(self):
        return f"QSeries(base={format_number(self.base)}, coeffs={[format_number(c) for c in self.coeffs]})"

    # -- serialisation

    def to_json(self) -> dict:
        return {
            "base": format_number(self.base),
            "coeffs": [format_number(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj) -> "QSeries":
        if isinstance(obj.get("base"), (list, dict)):
            base = number_from_json(obj["base"])
        else:
            base = parse_number(str(obj["base"]))
        coeffs = [parse_number(str(c)) for c in obj["coeffs"]]
        return cls(base, coeffs, len(coeffs) - 1)


@lru_cache(maxsize=None)
def _sigma(n: int) -> int:
    return sum(d for d in range(1, n + 1) if n % d == 0)


@lru_cache(maxsize=256)
def _phi_power_coeffs(m: int, N: int) -> tuple:
    # n a_n = -m sum_{j=1}^n sigma(j) a_{n-j}, from q d/dq log phi = -sum sigma(n) q^n
    a = [Fraction(1)] + [Fraction(0)] * N
    for n in range(1, N + 1):
        s = sum(_sigma(j) * a[n - j] for j in range(1, n + 1))
        a[n] = Fraction(-m) * s / n
    for c in a:
        assert c.denominator == 1
    return tuple(a)


def phi_power(m: int, N: int) -> QSeries:
    """phi(q)^m, phi(q) = prod_{n>=1} (1 - q^n)."""
    return QSeries(0, _phi_power_coeffs(m, N), N)


def phi_inverse_power(d: int, N: int) -> QSeries:
    return phi_power(-d, N)


def eta_power(m: int, N: int) -> QSeries:
    """eta(q)^m = q^{m/24} phi(q)^m."""
    return QSeries(Fraction(m, 24), _phi_power_coeffs(m, N), N)
