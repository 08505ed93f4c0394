"""Gram ranks against KL-route multiplicities beyond the acceptance weights."""

from fractions import Fraction

import pytest

from relaxedchar.cli import oracle_comparison
from relaxedchar.numbers import sqrt_number

from conftest import weight

F = Fraction

CASES = [
    ([F(-3, 2)], F(-1, 2), 4, 4),
    ([1], F(-1, 2), 4, 4),
    ([0], 1, 4, 4),
    ([2], 1, 3, 4),
    ([0], F(-4, 3), 3, 4),
    ([F(1, 3)], F(-4, 3), 3, 3),
    ([0], -3, 3, 3),
    ([F(1, 2)], F(-5, 2), 3, 3),
    ([-1], F(-1, 2), 3, 4),
    ([0, F(-3, 2)], F(-3, 2), 2, 3),
    ([1, F(-1, 2)], F(-3, 2), 2, 3),
    ([-1, 0], F(-3, 2), 2, 2),
    ([0, 1], F(-9, 2), 2, 2),
]


@pytest.mark.slow
@pytest.mark.parametrize("coords,k,depth,window", CASES)
def test_oracle_agrees(coords, k, depth, window):
    rep = oracle_comparison(weight(coords, k), depth, window)
    assert rep["ok"], rep["mismatches"]
    assert rep["default_convention"] in rep["agreeing_conventions"]


def test_unsigned_conventions_fail_at_half_level():
    rep = oracle_comparison(weight([0], F(-1, 2)), 4, 4)
    assert set(rep["agreeing_conventions"]) == {"inverse-signed", "direct-signed"}
    assert "inverse-unsigned" in rep["mismatches"]


def test_generic_level_is_verma():
    rep = oracle_comparison(weight([F(1, 3)], sqrt_number(2) - 1), 3, 3)
    assert rep["ok"] and len(rep["agreeing_conventions"]) == 4
