from fractions import Fraction

import pytest

from relaxedchar.qseries import QSeries, TruncationError, eta_power, phi_inverse_power, phi_power


def _ints(s):
    return [int(c) for c in s.coeffs]


def test_partition_numbers():
    assert _ints(phi_inverse_power(1, 4)) == [1, 1, 2, 3, 5]
    assert _ints(phi_inverse_power(3, 3)) == [1, 3, 9, 22]
    assert phi_inverse_power(17, 5)[0] == 1


def test_euler_pentagonal():
    assert _ints(phi_power(1, 12)) == [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]


def test_eta_powers():
    assert eta_power(0, 5) == QSeries.one(5)
    s = eta_power(-2, 3)
    assert s.base == Fraction(-1, 12)
    assert _ints(s) == [1, 2, 5, 10]
    for l in (1, 2, 3):
        assert (eta_power(2 * l, 8) * eta_power(-2 * l, 8)).equal_to_order(QSeries.one(8), 8)


def test_truncation_is_enforced():
    s = phi_inverse_power(1, 3)
    with pytest.raises(TruncationError):
        s[4]
    with pytest.raises(TruncationError):
        s.truncate(5)
    assert (s * phi_inverse_power(1, 6)).order == 3


def test_fractional_bases():
    a = QSeries(Fraction(1, 3), [1, 2], 4)
    b = QSeries(Fraction(4, 3), [5], 3)
    c = a + b
    assert c.base == Fraction(1, 3) and c[1] == 7
    assert (a * b).base == Fraction(5, 3)
    assert a.coefficient_at(Fraction(4, 3)) == 2
    assert a.coefficient_at(Fraction(1, 2)) == 0
    with pytest.raises(ValueError):
        a + QSeries(Fraction(1, 2), [1], 2)


def test_json_round_trip():
    s = QSeries(Fraction(-1, 6), [1, Fraction(-3, 2), 0, 7], 3)
    assert QSeries.from_json(s.to_json()) == s
    assert s.to_json() == {"base": "-1/6", "coeffs": ["1", "-3/2", "0", "7"]}


def test_first_difference_and_rebase():
    a = QSeries(0, [1, 2, 3], 2)
    b = QSeries(0, [1, 2, 4], 2)
    assert a.first_difference(b) == 2
    assert a.equal_to_order(b, 1)
    r = a.rebase(-1)
    assert r.base == -1 and r[0] == 0 and r[1] == 1
    assert r.rebase(0) == a
