from fractions import Fraction

import pytest

from relaxedchar.cartan import finite_weight, sugawara_weight


def weight(coords, level):
    return sugawara_weight(finite_weight(coords), level)


@pytest.fixture
def half():
    return Fraction(-1, 2)
