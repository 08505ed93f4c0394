import json
import random
from fractions import Fraction

import pytest

from relaxedchar.admissible import (
    SingCoset,
    SingData,
    admissible_weights,
    enumerate_spectrum,
    is_admissible,
    load_sing,
    search_radius,
)
from relaxedchar.cartan import AffineWeight, finite_weight, in_P0plus_k, in_Pbarplus, pairing
from relaxedchar.numbers import sqrt_number
from relaxedchar.weyl import CriticalLevel, affine_weyl_group, integral_data

from conftest import weight

HALF = Fraction(-1, 2)


def test_half_level_vacuum():
    rep = is_admissible(weight([0], HALF))
    assert rep.is_admissible and rep.integral_span_ok and rep.violated_root is None


@pytest.mark.parametrize("k", [1, 2, 3])
def test_positive_integer_levels(k):
    for lam in range(k + 1):
        assert is_admissible(weight([lam], k)).is_admissible
    assert not is_admissible(weight([k + 1], k)).is_admissible


def test_level_minus_one_violates():
    rep = is_admissible(weight([0], -1))
    assert not rep.is_admissible
    g = rep.violated_root
    assert g.is_positive()
    rho = AffineWeight(finite_weight([1]), 2, 0)
    p = pairing(weight([0], -1) + rho, g)
    assert p.denominator == 1 and p <= 0


def test_irrational_level():
    rep = is_admissible(weight([0], sqrt_number(2)))
    assert not rep.is_admissible and not rep.integral_span_ok


def test_errors():
    with pytest.raises(CriticalLevel):
        is_admissible(AffineWeight(finite_weight([0]), -2, 0))
    with pytest.raises(ValueError):
        is_admissible(weight([0], HALF), denominator_hint=3)


@pytest.mark.parametrize("k,count", [(0, 1), (1, 2), (2, 3)])
def test_integer_level_counts(k, count):
    assert len(admissible_weights(1, k, 6)) == count


def test_half_level_rank_one_list():
    got = sorted(L.finite.coords[0] for L in admissible_weights(1, HALF, 4))
    assert got == [Fraction(-3, 2), HALF, 0, 1]


def test_orbit_compatibility():
    # w o Lam is admissible exactly when w keeps the positive integral roots positive
    rng = random.Random(4)
    W = affine_weyl_group(1)
    for L in admissible_weights(1, HALF, 3):
        simple = integral_data(L).simple_integral_roots
        for _ in range(15):
            w = W.from_word([rng.randrange(2) for _ in range(rng.randint(0, 6))])
            M = W.dot(w, L)
            keeps = all(W.act_root(w, g).is_positive() for g in simple)
            assert is_admissible(M).is_admissible == keeps


def test_spectrum_p3():
    entries = enumerate_spectrum(2, Fraction(-3, 2))
    assert [e.symbol.weight.finite for e in entries] == [finite_weight([0, Fraction(-3, 2)])]
    assert entries[0].cosets == "unresolved"


def test_spectrum_p5_filters():
    entries = enumerate_spectrum(2, HALF)
    assert len(entries) == 6
    for e in entries:
        L = e.symbol.weight
        assert in_P0plus_k(L) and is_admissible(L).is_admissible and not in_Pbarplus(L.finite)
        assert e.symbol.kind == "RelaxedSimple"


def test_spectrum_level_checks():
    with pytest.raises(ValueError):
        enumerate_spectrum(2, Fraction(-4, 3))
    with pytest.raises(ValueError):
        enumerate_spectrum(1, HALF)
    assert search_radius(Fraction(-3, 2)) == 4


def _sing(w):
    normals = [finite_weight([1, 0]), finite_weight([0, 1]), finite_weight([1, 1])]
    return SingData(w, tuple(SingCoset(n, Fraction(1, 2)) for n in normals))


def test_sing_data(tmp_path):
    w = finite_weight([0, Fraction(-3, 2)])
    sd = _sing(w)
    assert SingData.from_json(sd.to_json()) == sd
    with pytest.raises(ValueError):
        SingData(w, sd.cosets[:2])
    with pytest.raises(ValueError):
        SingData(w, (sd.cosets[0],) * 3)
    path = tmp_path / "sing.json"
    path.write_text(json.dumps([sd.to_json()]))
    table = load_sing(path)
    assert table[w] == sd
    entries = enumerate_spectrum(2, Fraction(-3, 2), table)
    assert entries[0].sing == sd and entries[0].cosets != "unresolved"
    assert entries[0].to_json()["sing"] == sd.to_json()


def test_sing_membership():
    sd = _sing(finite_weight([0, 0]))
    # (omega_1 | mu) = 2/3 mu_1 + 1/3 mu_2
    assert sd.cosets[0].contains(finite_weight([Fraction(3, 4), 0]))
    assert not sd.is_singular(finite_weight([0, 0]))
