"""Relaxed and W-algebra characters built from the parabolic KL coefficients."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .cartan import (
    AffineWeight,
    FiniteWeight,
    RootSystemA,
    bilinear,
    in_P0plus_k,
    norm2,
)
from .charring import (
    QZCharacter,
    affine_central_charge,
    affine_parabolic_verma_char,
    affine_verma_char,
    assert_nonnegative_integers,
    canonical_coset,
    limiting_string,
    weyl_dim,
)
from .kl import CharacterVector, _finite_elements, parabolic_coefficients, simple_in_verma
from .linalg import rank as exact_rank
from .numbers import as_number, is_integer
from .qseries import QSeries, eta_power, phi_inverse_power
from .weyl import CriticalLevel, levi_weyl_group


@dataclass(frozen=True)
class CentralData:
    rank: int
    level: object
    c_affine: object
    c_w: object
    kappa: object


def central(rank: int, level) -> CentralData:
    level = as_number(level)
    kappa = level + rank + 1
    if kappa == 0:
        raise CriticalLevel("critical level")
    rs = RootSystemA(rank)
    wl = rs.fundamental_weight(rank)
    shifted = rs.rho() - wl * kappa
    c_w = rank * rank - 12 / kappa * norm2(shifted)
    return CentralData(rank, level, affine_central_charge(rank, level), c_w, kappa)


def c_w_closed_form(rank: int, level):
    """The closed rational expression sometimes quoted for c_W.

    It does not agree with :func:`central` (e.g. 49/4 instead of 0 for
    rank 1 at level -1/2) and is kept only for regression purposes.
    """
    k = as_number(level)
    l = rank
    return l * ((l * l - 12) * k * k + l * k + 10 * (l + 1) ** 2) / ((k + l + 1) * (l + 1))


def virasoro_central_charge(kappa):
    kappa = as_number(kappa)
    return 13 - 6 * kappa - 6 / kappa


def w_conformal_shift(rank: int, level):
    """h^W - h for every weight at this level."""
    rs = RootSystemA(rank)
    wl = rs.fundamental_weight(rank)
    kappa = as_number(level) + rank + 1
    return -kappa / 2 * norm2(wl) + bilinear(wl, rs.rho())


def conformal_weights(Lam: AffineWeight):
    h = Lam.conformal_weight
    return h, h + w_conformal_shift(Lam.rank, Lam.level)


def exponent_defect(Omega: AffineWeight):
    """(h - c/24) - (h^W - c_W/24 - l/12); zero by the exponent identity."""
    cd = central(Omega.rank, Omega.level)
    h, hw = conformal_weights(Omega)
    return (h - cd.c_affine / 24) - (hw - cd.c_w / 24 - Fraction(Omega.rank, 12))


@dataclass(frozen=True)
class ModuleSymbol:
    kind: str
    weight: AffineWeight
    coset: FiniteWeight | None = None

    KINDS = ("Verma", "ParabolicVerma", "Simple", "RelaxedVerma", "RelaxedSimple", "WOrdinary")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown module kind {self.kind!r}")
        if self.kind in ("RelaxedSimple", "RelaxedVerma", "WOrdinary") and not in_P0plus_k(self.weight):
            raise ValueError(f"{self.kind} needs a weight in P^(0,+)_k")


def _require_levi(Lam: AffineWeight):
    if not in_P0plus_k(Lam):
        raise ValueError(f"{Lam} is not integrable for the Levi factor")


def _coset_key(Lam: AffineWeight, coset):
    return canonical_coset(coset if coset is not None else Lam.finite)


def relaxed_verma_character(Lam: AffineWeight, N: int, coset: FiniteWeight | None = None) -> QZCharacter:
    _require_levi(Lam)
    vec = CharacterVector({Lam: 1}, Lam.conformal_weight + N, Lam)
    s = limiting_string(vec, N)
    return QZCharacter(Lam.level, {_coset_key(Lam, coset): s}, "coset-uniform", N)


def simple_coefficients(Lam: AffineWeight, N: int, convention: str | None = None) -> CharacterVector:
    """c_{Lam,Omega} for h_Omega <= h_Lam + N."""
    _require_levi(Lam)
    return parabolic_coefficients(Lam, Lam.conformal_weight + N, convention)


def relaxed_simple_string(Lam: AffineWeight, N: int, convention: str | None = None, check: bool = True) -> QSeries:
    vec = simple_coefficients(Lam, N, convention)
    s = limiting_string(vec, N)
    if check:
        assert_nonnegative_integers(s, f"relaxed simple string of {Lam}")
    return s


def relaxed_simple_character(
    Lam: AffineWeight, N: int, coset: FiniteWeight | None = None, convention: str | None = None, check: bool = True
) -> QZCharacter:
    s = relaxed_simple_string(Lam, N, convention, check)
    return QZCharacter(Lam.level, {_coset_key(Lam, coset): s}, "coset-uniform", N)


def w_ordinary_character(Lam: AffineWeight, N: int, convention: str | None = None, check: bool = True) -> QSeries:
    """q-character of the reduction of L_Lam, to order N."""
    l = Lam.rank
    cd = central(l, Lam.level)
    vec = simple_coefficients(Lam, N, convention)
    _, hw = conformal_weights(Lam)
    phi = phi_inverse_power(l * l, N)
    coeffs = [Fraction(0)] * (N + 1)
    for Om, c in vec.items():
        t = Om.conformal_weight - Lam.conformal_weight
        if not is_integer(t) or t < 0:
            raise AssertionError("orbit member below the defining weight")
        t = int(t)
        if t > N:
            continue
        deg = weyl_dim(Om.finite)
        for i in range(N + 1 - t):
            coeffs[t + i] += c * deg * phi.coeffs[i]
    s = QSeries(hw - cd.c_w / 24, coeffs, N)
    if check:
        assert_nonnegative_integers(s, f"W character of {Lam}")
    return s


@dataclass
class IdentityReport:
    ok: bool
    order: int
    first_difference: object = None
    relaxed: QSeries | None = None
    predicted: QSeries | None = None


def main_identity_check(Lam: AffineWeight, mu: FiniteWeight | None, N: int, convention: str | None = None) -> IdentityReport:
    """Relaxed simple string against eta^{-2l} times the W character."""
    l = Lam.rank
    rel = relaxed_simple_character(Lam, N, mu, convention, check=False)
    key = _coset_key(Lam, mu)
    lhs = rel.string(mu if mu is not None else Lam.finite)
    assert lhs is rel.strings[key]
    pred = w_ordinary_character(Lam, N, convention, check=False) * eta_power(-2 * l, N)
    diff = _series_difference(lhs, pred, N)
    return IdentityReport(diff is None, N, diff, lhs, pred)


def _series_difference(a: QSeries, b: QSeries, N: int):
    if a.is_zero() and b.is_zero():
        return None
    d = b.base - a.base
    if not is_integer(d):
        lead = a.leading() or b.leading()
        return lead[0]
    return a.first_difference(b, N)


@dataclass
class BGGReport:
    ok: bool
    order: int
    checked: int
    first_failure: object = None


def bgg_identity_check(Lam: AffineWeight, N: int, window: int = 3) -> BGGReport:
    """V^0 against the alternating sum of Vermas over the Levi Weyl group.

    Strings are compared at every weight lam - gamma with gamma of height at
    most ``window`` (all other strings are determined by the same code path).
    """
    _require_levi(Lam)
    l = Lam.rank
    par = affine_parabolic_verma_char(Lam, N)
    U = levi_weyl_group(l)
    terms = []
    for u in _finite_elements(U):
        M = U.dot(u, Lam)
        terms.append(((-1) ** u.length, M, affine_verma_char(M, N)))
    checked = 0
    for g in itertools.product(range(-window, window + 1), repeat=l):
        if sum(abs(x) for x in g) > window:
            continue
        mu = _minus_roots(Lam.finite, g)
        lhs = par.string(mu)
        assert_nonnegative_integers(lhs, "parabolic Verma string")
        rhs = None
        for sgn, M, ch in terms:
            s = ch.string(mu)
            assert_nonnegative_integers(s, "Verma string")
            s = s.scale(sgn)
            rhs = s if rhs is None else rhs + s
        checked += 1
        if not lhs.equal_to_order(rhs, N):
            return BGGReport(False, N, checked, (mu, lhs.first_difference(rhs, N)))
    return BGGReport(True, N, checked)


def _minus_roots(lam: FiniteWeight, gamma) -> FiniteWeight:
    rs = RootSystemA(lam.rank)
    return lam - rs.root_to_weight(gamma)


@dataclass
class SpanReport:
    orders: tuple
    ranks: tuple
    count: int

    @property
    def stable(self) -> bool:
        return len(set(self.ranks)) <= 1


def span_rank(series: list, N: int) -> int:
    """Rank of the coefficient matrix, columns at exponents <= b_min + N."""
    nz = [s for s in series if not s.is_zero()]
    if not nz:
        return 0
    bmin = min(s.base for s in nz)
    cols = {}
    rows = []
    for s in nz:
        if s.top_exponent < bmin + N:
            raise ValueError("series not known far enough")
        row = {}
        for i, c in enumerate(s.coeffs):
            e = s.base + i
            if e > bmin + N:
                break
            if c:
                j = cols.setdefault(e, len(cols))
                row[j] = c
        rows.append(row)
    dense = [[r.get(j, Fraction(0)) for j in range(len(cols))] for r in rows]
    return exact_rank(dense)


def modular_span(weights: list, orders=(10, 15, 20), convention: str | None = None) -> SpanReport:
    """Rank of {eta^{2l} s[R]} over the relaxed modules at ``weights``, per order."""
    ranks = []
    for n in orders:
        series = [relaxed_simple_string(L, n, convention) * eta_power(2 * L.rank, n) for L in weights]
        ranks.append(span_rank(series, n))
    return SpanReport(tuple(orders), tuple(ranks), len(weights))


def simple_weight_multiplicities(
    Lam: AffineWeight, depth: int, offsets, convention: str | None = None
) -> dict:
    """dim L_Lam at Lam - gamma - n delta for gamma in ``offsets`` and n <= depth.

    Computed as sum_Omega c_{Lam,Omega} ch V^0_Omega when Lam is in
    P^{0,+}_k, and from the full Verma expansion otherwise.  Returns
    ``{(gamma, n): multiplicity}``.
    """
    if in_P0plus_k(Lam):
        vec = simple_coefficients(Lam, depth, convention)
        make = affine_parabolic_verma_char
    else:
        vec = simple_in_verma(Lam, Lam.conformal_weight + depth, convention)
        make = affine_verma_char
    rs = RootSystemA(Lam.rank)
    out = {(tuple(g), n): 0 for g in offsets for n in range(depth + 1)}
    for Om, c in vec.items():
        t = int(Om.conformal_weight - Lam.conformal_weight)
        if t > depth:
            continue
        ch = make(Om, depth - t)
        for g in offsets:
            mu = Lam.finite - rs.root_to_weight(g)
            s = ch.string(mu)
            for n in range(t, depth + 1):
                out[(tuple(g), n)] += c * s[n - t]
    return out
