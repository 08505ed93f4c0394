import random
from fractions import Fraction

import pytest

from relaxedchar.cartan import RootSystemA, finite_weight, structure_constants
from relaxedchar.characters import (
    ModuleSymbol,
    bgg_identity_check,
    central,
    conformal_weights,
    exponent_defect,
    main_identity_check,
    modular_span,
    relaxed_simple_character,
    relaxed_simple_string,
    relaxed_verma_character,
    simple_weight_multiplicities,
    span_rank,
    virasoro_central_charge,
    w_ordinary_character,
)
from relaxedchar.charring import affine_parabolic_verma_char, affine_verma_char, weyl_dim
from relaxedchar.kl import _finite_elements
from relaxedchar.numbers import sqrt_number
from relaxedchar.oracle import oracle_string_limit
from relaxedchar.qseries import QSeries, eta_power, phi_inverse_power
from relaxedchar.weyl import CriticalLevel, levi_weyl_group

from conftest import weight

HALF = Fraction(-1, 2)


def test_central_values():
    cd = central(1, HALF)
    assert (cd.c_affine, cd.c_w, cd.kappa) == (-1, 0, Fraction(3, 2))
    assert central(2, Fraction(-3, 2)).c_affine == -8
    with pytest.raises(CriticalLevel):
        central(2, -3)


def test_virasoro_reduction():
    rng = random.Random(1)
    for _ in range(10):
        kappa = Fraction(rng.choice([-1, 1]) * rng.randint(1, 50), rng.randint(1, 13))
        assert central(1, kappa - 2).c_w == virasoro_central_charge(kappa)


def test_conformal_weights():
    k = Fraction(4, 9)
    h, hw = conformal_weights(weight([0], k))
    assert h == 0 and hw == -k / 4
    h, _ = conformal_weights(weight([1], k))
    assert h == Fraction(3, 4) / (k + 2)


def test_exponent_identity_random():
    rng = random.Random(2)
    for _ in range(100):
        l = rng.randint(1, 3)
        k = Fraction(rng.randint(-30, 30), rng.randint(1, 7))
        if k + l + 1 == 0:
            continue
        coords = [rng.randint(0, 3) for _ in range(l - 1)] + [Fraction(rng.randint(-9, 9), rng.randint(1, 5))]
        assert exponent_defect(weight(coords, k)) == 0


def test_phi_power_bookkeeping():
    for l in range(1, 6):
        assert structure_constants(l).dim_g == l * l + 2 * l


def test_module_symbol_validation():
    L = weight([0, HALF], Fraction(-3, 2))
    ModuleSymbol("RelaxedSimple", L)
    with pytest.raises(ValueError):
        ModuleSymbol("Cuspidal", L)
    with pytest.raises(ValueError):
        ModuleSymbol("WOrdinary", weight([-1, 0], Fraction(-3, 2)))


def test_relaxed_verma():
    L = weight([0], HALF)
    ch = relaxed_verma_character(L, 3)
    (s,) = ch.strings.values()
    assert s.base == L.conformal_weight - central(1, HALF).c_affine / 24
    assert [int(c) for c in s.coeffs] == [1, 3, 9, 22]
    M = weight([2, Fraction(1, 3)], Fraction(-3, 2))
    (t,) = relaxed_verma_character(M, 2).strings.values()
    assert t[0] == weyl_dim(M.finite) == 3


def test_generic_level_simple_is_verma():
    k = sqrt_number(2) - 1
    L = weight([Fraction(1, 3)], k)
    (s,) = relaxed_verma_character(L, 4).strings.values()
    assert relaxed_simple_string(L, 4) == s


@pytest.mark.parametrize("coords,k", [([0], HALF), ([1], HALF), ([3], 2), ([1, 0], Fraction(-3, 2)), ([0, 2], 1)])
def test_dominant_integral_vanishes(coords, k):
    L = weight(coords, k)
    assert relaxed_simple_string(L, 6).is_zero()
    assert w_ordinary_character(L, 6).is_zero()


def test_vacuum_matches_oracle_limit():
    for coords in ([0], [HALF]):
        L = weight(coords, HALF)
        assert oracle_string_limit(L, 4) == relaxed_simple_string(L, 4)


def test_w_character_leading_term():
    L = weight([1, HALF], Fraction(-3, 2))
    s = w_ordinary_character(L, 5)
    assert s.leading()[1] == weyl_dim(L.finite) == 2
    _, hw = conformal_weights(L)
    assert s.base == hw - central(2, L.level).c_w / 24


def test_w_character_generic_single_term():
    k = sqrt_number(3) - 1
    L = weight([Fraction(1, 5)], k)
    s = w_ordinary_character(L, 5, check=False)
    _, hw = conformal_weights(L)
    assert s.base == hw - central(1, k).c_w / 24
    assert list(s.coeffs) == list(phi_inverse_power(1, 5).coeffs)


def test_known_half_level_characters():
    L = weight([HALF], HALF)
    assert [int(c) for c in relaxed_simple_string(L, 3).coeffs] == [1, 2, 5, 10]
    w = w_ordinary_character(L, 6)
    assert w == QSeries(0, [1], 6)


def test_main_identity():
    for coords in ([HALF], [Fraction(-3, 2)], [0], [1]):
        rep = main_identity_check(weight(coords, HALF), None, 8)
        assert rep.ok, rep.first_difference
    rep = main_identity_check(weight([0, Fraction(-3, 2)], Fraction(-3, 2)), None, 8)
    assert rep.ok


def test_main_identity_generic_level():
    k = sqrt_number(2) - 2
    L = weight([1, Fraction(2, 3)], k)
    assert main_identity_check(L, None, 6).ok


def test_coset_independence():
    L = weight([1, HALF], Fraction(-3, 2))
    rs = RootSystemA(2)
    mu = finite_weight([Fraction(1, 3), Fraction(1, 7)])
    ch = relaxed_simple_character(L, 4, coset=mu)
    s = ch.string(mu)
    assert not s.is_zero()
    assert s == ch.string(mu - rs.root_to_weight([3, -1])) == ch.string(mu + rs.root_to_weight([1, 1]))
    assert s == relaxed_simple_string(L, 4)


def test_bgg():
    assert bgg_identity_check(weight([HALF], HALF), 4).ok
    for x in (HALF, Fraction(2, 3)):
        rep = bgg_identity_check(weight([1, x], Fraction(-3, 2)), 6, window=2)
        assert rep.ok and rep.checked > 0


def test_bgg_top_space():
    L = weight([2, Fraction(1, 3)], Fraction(-3, 2))
    U = levi_weyl_group(2)
    terms = [((-1) ** u.length, affine_verma_char(U.dot(u, L), 0)) for u in _finite_elements(U)]
    par = affine_parabolic_verma_char(L, 0)
    rs = RootSystemA(2)
    for g in ([0, 0], [1, 0], [2, 0], [3, 0]):
        mu = L.finite - rs.root_to_weight(g)
        assert par.string(mu)[0] == sum(sgn * ch.string(mu)[0] for sgn, ch in terms)


def test_modular_span_small_cases():
    L = weight([HALF], HALF)
    assert modular_span([L], (6, 8)).ranks == (1, 1)
    assert modular_span([L, L], (6,)).ranks == (1,)
    M = weight([Fraction(-3, 2)], HALF)
    rep = modular_span([L, M], (6, 8, 10))
    assert rep.stable and rep.count == 2


def test_span_rank():
    a = QSeries(0, [1, 2, 3], 2)
    b = QSeries(1, [1, 2], 1)
    assert span_rank([a, a.scale(3)], 2) == 1
    assert span_rank([a, b], 2) == 2
    assert span_rank([QSeries.zero(2)], 2) == 0
    assert (eta_power(4, 3) * eta_power(-4, 3)).equal_to_order(QSeries.one(3), 3)


def test_weight_multiplicities_top():
    L = weight([0], HALF)
    mult = simple_weight_multiplicities(L, 2, [(0,), (1,)])
    assert mult[((0,), 0)] == 1 and mult[((1,), 0)] == 0
    assert mult[((0,), 1)] == 1
