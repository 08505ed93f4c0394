from fractions import Fraction

import pytest

from relaxedchar.cartan import (
    AffineRoot,
    AffineWeight,
    FiniteRoot,
    RankMismatch,
    RootSystemA,
    bilinear,
    finite_weight,
    grading_degree,
    in_P0plus_k,
    in_Pbar0plus,
    in_Pbarplus,
    norm2,
    pairing,
    parse_weight_literal,
    structure_constants,
    sugawara_weight,
    weight_from_json,
    weight_to_json,
)

from conftest import weight


def test_root_length_normalisation():
    rs = RootSystemA(1)
    a = rs.simple_root(1)
    assert bilinear(a, a) == 2


def test_a2_form_values():
    rs = RootSystemA(2)
    w1, w2 = rs.fundamental_weight(1), rs.fundamental_weight(2)
    assert bilinear(w1, w2) == Fraction(1, 3)
    assert bilinear(rs.rho(), w2) == 1


def test_pairings():
    rs = RootSystemA(2)
    w1 = rs.fundamental_weight(1)
    assert pairing(w1, rs.simple_root(1)) == 1
    assert pairing(w1, rs.beta(1)) == 1
    k = Fraction(-1, 2)
    Lam = AffineWeight(RootSystemA(1).zero_weight(), k)
    assert pairing(Lam, AffineRoot(RootSystemA(1).simple_root(1), 1)) == k


def test_pairing_errors():
    rs = RootSystemA(2)
    with pytest.raises(RankMismatch):
        pairing(RootSystemA(1).rho(), rs.simple_root(1))
    with pytest.raises(ValueError):
        pairing(rs.rho(), rs.zero_root())


def test_grading():
    rs = RootSystemA(2)
    assert grading_degree(rs.simple_root(1)) == 0
    assert grading_degree(rs.beta(1)) == 1
    assert grading_degree(-rs.simple_root(2)) == -1
    with pytest.raises(ValueError):
        grading_degree(FiniteRoot((2, 0)))


@pytest.mark.parametrize("l", range(1, 7))
def test_degree_one_roots_are_betas(l):
    rs = RootSystemA(l)
    assert set(rs.graded_roots(1)) == {rs.beta(i) for i in range(1, l + 1)}


def test_structure_constants():
    sc = structure_constants(2)
    assert (sc.dual_coxeter, sc.dim_g) == (3, 8)
    sc = structure_constants(1)
    assert (sc.dim_g, sc.dim_g0) == (3, 1)
    assert structure_constants(3).dim_g0 == 9


@pytest.mark.parametrize("l", range(1, 7))
def test_duality_and_strange_formula(l):
    rs = RootSystemA(l)
    for i in range(1, l + 1):
        for j in range(1, l + 1):
            assert bilinear(rs.fundamental_weight(i), rs.simple_root(j)) == (i == j)
    sc = structure_constants(l)
    assert norm2(rs.rho()) == Fraction(sc.dual_coxeter * sc.dim_g, 12)


def test_root_weight_round_trip():
    rs = RootSystemA(3)
    coords = (Fraction(1, 2), -2, 3)
    back = rs.weight_to_root_coords(rs.root_to_weight(coords))
    assert back == tuple(Fraction(c) for c in coords)


def test_membership():
    lam = finite_weight([2, Fraction(-1, 2)])
    assert in_Pbar0plus(lam) and not in_Pbarplus(lam)
    zero = finite_weight([0, 0])
    assert in_Pbar0plus(zero) and in_Pbarplus(zero)
    neg = finite_weight([-1, 0])
    assert not in_Pbar0plus(neg) and not in_Pbarplus(neg)
    assert in_P0plus_k(sugawara_weight(lam, "-3/2"))


def test_sugawara_values():
    assert weight([0], "-1/2").conformal_weight == 0
    k = Fraction(5, 3)
    assert weight([1], k).conformal_weight == Fraction(3, 4) / (k + 2)


def test_critical_level_rejected():
    with pytest.raises(ValueError):
        weight([0, 0], -3)


def test_weight_literal_and_json():
    L = parse_weight_literal("rank=2 level=-3/2 lambda=[0,-1/2]")
    assert L == weight([0, Fraction(-1, 2)], "-3/2")
    M = parse_weight_literal("level=1 lambda=[1] d=4")
    assert M.delta_coeff == 4 and M.conformal_weight == -4
    assert weight_from_json(weight_to_json(L)) == L
    with pytest.raises(ValueError):
        parse_weight_literal("rank=3 level=1 lambda=[0,0]")
    with pytest.raises(ValueError):
        parse_weight_literal("level=1 lambda=[0] spin=2")
