"""Characters as string-function maps.

z-variables are never kept symbolically.  A finite character is a map from
weights to multiplicities; an affine character is a map from finite weights
to q-series (string functions).  Internally weights are often handled as
integer offsets ``gamma`` in the simple-root basis, ``mu = lambda - gamma``.

Conventions: the string function of ``M`` at ``mu`` is
``sum_n dim M(k Lambda_0 + mu - n delta) q^{n - c/24}``, so a highest weight
``Lambda`` contributes at ``q^{h_Lambda - c/24}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

from .cartan import (
    AffineWeight,
    FiniteWeight,
    RootSystemA,
    in_Pbar0plus,
    structure_constants,
)
from .numbers import as_number, format_number, is_integer
from .qseries import QSeries, phi_inverse_power


class NotLeviDominant(ValueError):
    pass


def affine_central_charge(rank: int, level):
    level = as_number(level)
    kappa = level + rank + 1
    if kappa == 0:
        raise ValueError("critical level")
    return level * (rank * (rank + 2)) / kappa


# ---------------------------------------------------------------- helpers


def _cartan_apply(gamma, rank):
    """C gamma: the fundamental-weight coordinates of a root-lattice element."""
    return tuple(
        2 * gamma[i] - (gamma[i - 1] if i > 0 else 0) - (gamma[i + 1] if i + 1 < rank else 0)
        for i in range(rank)
    )


def offset_of(lam: FiniteWeight, mu: FiniteWeight):
    """Integer root coordinates of lam - mu, or None if not in the root lattice."""
    rs = RootSystemA(lam.rank)
    g = rs.weight_to_root_coords(lam - mu)
    if not all(is_integer(c) for c in g):
        return None
    return tuple(int(c) for c in g)


def weight_at(lam: FiniteWeight, gamma) -> FiniteWeight:
    cg = _cartan_apply(gamma, lam.rank)
    return FiniteWeight(tuple(a - b for a, b in zip(lam.coords, cg)))


def canonical_coset(mu: FiniteWeight) -> FiniteWeight:
    """Representative of mu + Q with root coordinates in [0, 1)."""
    rs = RootSystemA(mu.rank)
    coords = rs.weight_to_root_coords(mu)
    red = []
    for c in coords:
        if isinstance(c, Fraction):
            red.append(c - (c.numerator // c.denominator))
        else:
            # quadratic coordinate: reduce the rational part only
            fl = c.a.numerator // c.a.denominator
            red.append(c - fl)
    return rs.root_to_weight(red)


def _levi_positive_roots(rank: int):
    return [r.coords for r in RootSystemA(rank).positive_roots() if r.coords[-1] == 0]


# ---------------------------------------------------------------- finite characters


@dataclass
class FiniteCharacter:
    """Finitely supported weight multiplicities, keyed by offsets from ``top``."""

    top: FiniteWeight
    offsets: dict

    @property
    def multiplicities(self) -> dict:
        return {weight_at(self.top, g): m for g, m in self.offsets.items()}

    def multiplicity(self, mu: FiniteWeight) -> int:
        g = offset_of(self.top, mu)
        return 0 if g is None else self.offsets.get(g, 0)

    @property
    def dimension(self) -> int:
        return sum(self.offsets.values())


def _check_levi(lam: FiniteWeight):
    if not in_Pbar0plus(lam):
        raise NotLeviDominant(f"{lam} is not integral dominant for the Levi factor")


@lru_cache(maxsize=None)
def _freudenthal(lam: FiniteWeight) -> dict:
    l = lam.rank
    rho = RootSystemA(l).rho()
    lr = tuple(a + b for a, b in zip(lam.coords, rho.coords))
    pos = _levi_positive_roots(l)
    lam_pair = {a: sum((lam.coords[i] * a[i] for i in range(l)), Fraction(0)) for a in pos}

    def ip(g, h):
        ch = _cartan_apply(h, l)
        return sum(g[i] * ch[i] for i in range(l))

    zero = (0,) * l
    mult = {zero: 1}
    level = [zero]
    simple = [tuple(1 if j == i else 0 for j in range(l)) for i in range(l - 1)]
    while level:
        cands = set()
        for g in level:
            for a in simple:
                cands.add(tuple(x + y for x, y in zip(g, a)))
        nxt = []
        for g in sorted(cands):
            denom = 2 * sum(lr[i] * g[i] for i in range(l)) - ip(g, g)
            total = Fraction(0)
            for a in pos:
                ga = ip(g, a)
                j = 1
                while True:
                    h = tuple(x - j * y for x, y in zip(g, a))
                    if any(c < 0 for c in h):
                        break
                    m = mult.get(h)
                    if m:
                        total += m * (lam_pair[a] - ga + 2 * j)
                    j += 1
            if total:
                val = 2 * total / denom
                assert val.denominator == 1 and val > 0, (g, val)
                mult[g] = int(val)
                nxt.append(g)
        level = nxt
    return mult


def finite_simple_character(lam: FiniteWeight) -> FiniteCharacter:
    """Character of the simple Levi module H_lam (weights lam - sum n_i alpha_i, i < l)."""
    _check_levi(lam)
    return FiniteCharacter(lam, dict(_freudenthal(lam)))


def weyl_dim(lam: FiniteWeight) -> int:
    _check_levi(lam)
    l = lam.rank
    num = Fraction(1)
    for a in _levi_positive_roots(l):
        pair = sum((lam.coords[i] * a[i] for i in range(l)), Fraction(0))
        ht = sum(a)
        num *= (pair + ht) / ht
    assert num.denominator == 1
    return int(num)


class ParabolicVermaFinite:
    """Lazy character of the finite parabolic Verma module V^0_lam.

    The multiplicity at mu is the number of ways to reach mu from a weight of
    H_lam by the commuting lowering operators f_{beta_1}, ..., f_{beta_l}.
    """

    def __init__(self, lam: FiniteWeight):
        _check_levi(lam)
        self.top = lam
        self.rank = lam.rank
        self._top_mult = _freudenthal(lam)
        self._cache: dict = {}

    @property
    def degree(self) -> int:
        return sum(self._top_mult.values())

    def multiplicity(self, mu: FiniteWeight) -> int:
        g = offset_of(self.top, mu)
        return 0 if g is None else self.multiplicity_offset(g)

    def multiplicity_offset(self, gamma) -> int:
        hit = self._cache.get(gamma)
        if hit is not None:
            return hit
        l = self.rank
        c = gamma[-1]
        total = 0
        if c >= 0 and all(x >= 0 for x in gamma):
            for m in _compositions(c, l):
                # sum m_i beta_i has j-th root coordinate m_1 + ... + m_j
                acc = 0
                rest = []
                for j in range(l):
                    acc += m[j]
                    rest.append(gamma[j] - acc)
                if rest[-1] != 0 or any(x < 0 for x in rest):
                    continue
                total += self._top_mult.get(tuple(rest), 0)
        self._cache[gamma] = total
        return total


@lru_cache(maxsize=None)
def _compositions(total: int, parts: int) -> tuple:
    if parts == 1:
        return ((total,),)
    out = []
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return tuple(out)


def parabolic_verma_finite_char(lam: FiniteWeight) -> ParabolicVermaFinite:
    return ParabolicVermaFinite(lam)


@lru_cache(maxsize=None)
def kostant_partition(rank: int, gamma: tuple, upto: int | None = None) -> int:
    """Number of ways to write gamma as a sum of positive roots of A_rank."""
    roots = [r.coords for r in RootSystemA(rank).positive_roots()]
    if upto is None:
        upto = len(roots)
    if all(x == 0 for x in gamma):
        return 1
    if upto == 0 or any(x < 0 for x in gamma):
        return 0
    r = roots[upto - 1]
    total = 0
    g = gamma
    while all(x >= 0 for x in g):
        total += kostant_partition(rank, g, upto - 1)
        g = tuple(x - y for x, y in zip(g, r))
    return total


class VermaFinite:
    """Lazy character of the finite Verma module M(lam)."""

    def __init__(self, lam: FiniteWeight):
        self.top = lam
        self.rank = lam.rank

    def multiplicity(self, mu: FiniteWeight) -> int:
        g = offset_of(self.top, mu)
        return 0 if g is None else self.multiplicity_offset(g)

    def multiplicity_offset(self, gamma) -> int:
        return kostant_partition(self.rank, tuple(gamma))


# ---------------------------------------------------------------- affine characters


@lru_cache(maxsize=None)
def loop_partitions(rank: int, N: int) -> tuple:
    """T[n][gamma]: ways to build offset gamma at depth n from negative modes.

    Generators: ``e_alpha t^{-j}`` (offset -alpha, depth j) for every root
    alpha and ``rank`` Cartan modes ``h_i t^{-j}`` (offset 0, depth j), j >= 1.
    """
    roots = [r.coords for r in RootSystemA(rank).roots()]
    zero = (0,) * rank
    T = [dict() for _ in range(N + 1)]
    T[0][zero] = 1
    gens = []
    for j in range(1, N + 1):
        for a in roots:
            gens.append((tuple(-x for x in a), j))
        for _ in range(rank):
            gens.append((zero, j))
    for off, j in gens:
        for n in range(j, N + 1):
            src = T[n - j]
            dst = T[n]
            for g, c in src.items():
                key = tuple(x + y for x, y in zip(g, off))
                dst[key] = dst.get(key, 0) + c
    return tuple(T)


@dataclass
class QZCharacter:
    """``y^level * sum_mu s_mu(q) z^mu`` stored string-wise.

    ``support_tag`` is ``"finite-list"`` (``strings`` lists the computed
    weights, ``lazy`` produces others) or ``"coset-uniform"`` (one series per
    coset, keyed by :func:`canonical_coset`).
    """

    level: object
    strings: dict
    support_tag: str = "finite-list"
    order: int = 0
    lazy: Callable | None = None

    def string(self, mu: FiniteWeight) -> QSeries:
        if self.support_tag == "coset-uniform":
            key = canonical_coset(mu)
            if key in self.strings:
                return self.strings[key]
            return QSeries.zero(self.order)
        got = self.strings.get(mu)
        if got is None and self.lazy is not None:
            got = self.lazy(mu)
        return got

    def cosets(self):
        return list(self.strings)


def _string_from_parts(fin, T, gamma_mu, base, N):
    coeffs = []
    for n in range(N + 1):
        total = 0
        for g, c in T[n].items():
            rest = tuple(x - y for x, y in zip(gamma_mu, g))
            m = fin.multiplicity_offset(rest)
            if m:
                total += c * m
        coeffs.append(total)
    return QSeries(base, coeffs, N)


def _affine_char(Lam: AffineWeight, N: int, fin, window: int) -> QZCharacter:
    l = Lam.rank
    c = affine_central_charge(l, Lam.level)
    base = Lam.conformal_weight - c / 24
    T = loop_partitions(l, N)
    lam = Lam.finite

    def lazy(mu):
        g = offset_of(lam, mu)
        if g is None:
            return QSeries.zero(N, base)
        return _string_from_parts(fin, T, g, base, N)

    strings = {}
    for g in _window_offsets(l, window):
        strings[weight_at(lam, g)] = _string_from_parts(fin, T, g, base, N)
    return QZCharacter(Lam.level, strings, "finite-list", N, lazy)


def _window_offsets(rank: int, height: int):
    """Offsets gamma with nonnegative entries and total height <= ``height``."""
    out = []
    for g in itertools.product(range(height + 1), repeat=rank):
        if sum(g) <= height:
            out.append(g)
    return out


def affine_parabolic_verma_char(Lam: AffineWeight, N: int, window: int = 0) -> QZCharacter:
    """Character of V^0_Lam to q-order N.

    ``window`` controls which strings are materialised eagerly; every other
    string is available through :meth:`QZCharacter.string`.
    """
    return _affine_char(Lam, N, ParabolicVermaFinite(Lam.finite), window)


def affine_verma_char(Lam: AffineWeight, N: int, window: int = 0) -> QZCharacter:
    return _affine_char(Lam, N, VermaFinite(Lam.finite), window)


def string(char: QZCharacter, mu: FiniteWeight) -> QSeries:
    return char.string(mu)


def limiting_string(vector, N: int, rank: int | None = None, level=None) -> QSeries:
    """sum c_Omega q^{h_Omega - c/24} dim H_Omega / phi^{dim g}, to order N.

    ``vector`` maps AffineWeights to integer coefficients (a
    CharacterVector works).  The base exponent is the smallest h - c/24;
    terms further than N above it are dropped.
    """
    items = list(vector.items())
    if not items:
        return QSeries.zero(N)
    if rank is None:
        rank = items[0][0].rank
    if level is None:
        level = items[0][0].level
    c = affine_central_charge(rank, level)
    dim_g = structure_constants(rank).dim_g
    h0 = min(W.conformal_weight for W, _ in items)
    base = h0 - c / 24
    phi = phi_inverse_power(dim_g, N)
    coeffs = [Fraction(0)] * (N + 1)
    for W, a in items:
        t = W.conformal_weight - h0
        if not is_integer(t):
            raise ValueError("conformal weights do not differ by integers")
        t = int(t)
        if t > N:
            continue
        deg = weyl_dim(W.finite)
        for i in range(N + 1 - t):
            coeffs[t + i] += a * deg * phi.coeffs[i]
    return QSeries(base, coeffs, N)


def assert_nonnegative_integers(series: QSeries, what: str = "series"):
    for i, c in enumerate(series.coeffs):
        if c.denominator != 1 or c < 0:
            raise AssertionError(f"{what}: coefficient {format_number(c)} at q^{format_number(series.base + i)}")
