"""Affine Weyl group of A_l^(1), integral Weyl groups and orbit representatives.

Group elements are integer matrices acting on the coordinate vector
``(x_1, ..., x_l, K, d)`` of an element ``sum x_i alpha_i + K Lambda_0 + d delta``
of h*.  Finite parts are written in the simple-root basis so that every
reflection in a real root has integer entries.  Two elements are equal iff
their matrices agree, which is the faithful normal form used for hashing.

A :class:`ReflectionGroup` is the Coxeter group generated by reflections in a
chosen set of simple roots.  The ambient affine Weyl group is the special case
where the simple roots are ``alpha_0, ..., alpha_l``; an integral Weyl group
``W(Lambda)`` uses the simple integral roots and carries its own length and
Bruhat order.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .cartan import (
    AffineRoot,
    AffineWeight,
    FiniteRoot,
    FiniteWeight,
    RootSystemA,
    affine_simple_root,
    structure_constants,
)
from .numbers import Number, as_number, format_number, is_integer


class NotFoundWithinBound(RuntimeError):
    pass


class CriticalLevel(ValueError):
    pass


class CosetTooLarge(RuntimeError):
    pass


# ---------------------------------------------------------------- vectors


def weight_vector(Lam: AffineWeight) -> tuple:
    rs = RootSystemA(Lam.rank)
    return rs.weight_to_root_coords(Lam.finite) + (Lam.level, Lam.delta_coeff)


def vector_weight(v: Sequence) -> AffineWeight:
    l = len(v) - 2
    rs = RootSystemA(l)
    return AffineWeight(rs.root_to_weight(v[:l]), v[l], v[l + 1])


def root_vector(gamma: AffineRoot) -> tuple:
    return gamma.finite.coords + (0, gamma.delta_mult)


def vector_root(v: Sequence) -> AffineRoot:
    l = len(v) - 2
    if v[l] != 0:
        raise ValueError("not a root vector (nonzero level)")
    return AffineRoot(FiniteRoot(tuple(v[:l])), v[l + 1])


def root_vector_positive(v: Sequence) -> bool:
    n = v[-1]
    if n != 0:
        return n > 0
    fin = v[:-2]
    return any(c > 0 for c in fin) and all(c >= 0 for c in fin)


def coroot_pairing_vec(v: Sequence, g: Sequence) -> Number:
    """<v, gamma^vee> for v in (root coords, K, d) and gamma = (a, 0, n)."""
    l = len(v) - 2
    a = g[:l]
    # (x | a) = x^T C a with the A_l Cartan matrix
    total = Fraction(0)
    for i in range(l):
        ca = 2 * a[i] - (a[i - 1] if i > 0 else 0) - (a[i + 1] if i + 1 < l else 0)
        if ca:
            total = total + v[i] * ca
    return total + g[l + 1] * v[l]


# ---------------------------------------------------------------- matrices


def _identity(n: int):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _matmul(A, B):
    n = len(A)
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col) if a and b) for col in cols) for row in A)


def _apply(M, v):
    out = []
    for row in M:
        s = 0
        for m, x in zip(row, v):
            if m:
                s = s + m * x
        out.append(s)
    return tuple(out)


def reflection_matrix(g: Sequence):
    """Matrix of s_gamma: v -> v - <v, gamma^vee> gamma."""
    l = len(g) - 2
    a = g[:l]
    r = [2 * a[i] - (a[i - 1] if i > 0 else 0) - (a[i + 1] if i + 1 < l else 0) for i in range(l)]
    r += [g[l + 1], 0]
    n = l + 2
    return tuple(
        tuple((1 if i == j else 0) - g[i] * r[j] for j in range(n)) for i in range(n)
    )


# ---------------------------------------------------------------- groups


class ReflectionGroup:
    """Coxeter group generated by reflections in ``simple_roots``.

    The simple roots must form a simple system of a (finite or affine type)
    real root subsystem, so that ``y s_gamma < y`` iff ``y(gamma)`` is a
    negative root.
    """

    def __init__(self, rank: int, simple_roots: Sequence[AffineRoot], names: Sequence[str] | None = None):
        self.rank = rank
        self.simple_roots = tuple(simple_roots)
        self._gvecs = tuple(root_vector(g) for g in self.simple_roots)
        self._gmats = tuple(reflection_matrix(g) for g in self._gvecs)
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(len(self._gvecs)))
        self._length: dict = {}
        self._bruhat: dict = {}
        self.identity = WeylElement(self, _identity(rank + 2))
        self._length[self.identity.matrix] = 0

    @property
    def ngens(self) -> int:
        return len(self._gvecs)

    def generator(self, i: int) -> "WeylElement":
        return WeylElement(self, self._gmats[i])

    def from_word(self, word: Iterable[int]) -> "WeylElement":
        M = self.identity.matrix
        for i in word:
            M = _matmul(M, self._gmats[i])
        return WeylElement(self, M)

    def parse_word(self, text: str) -> "WeylElement":
        text = text.strip()
        if text in ("", "e", "1"):
            return self.identity
        letters = []
        for tok in text.split("."):
            tok = tok.strip()
            if not tok.startswith("s"):
                raise ValueError(f"bad generator {tok!r}")
            letters.append(self.names.index(tok[1:]))
        return self.from_word(letters)

    def is_right_descent(self, w: "WeylElement", i: int) -> bool:
        return not root_vector_positive(_apply(w.matrix, self._gvecs[i]))

    def right_descents(self, w: "WeylElement") -> tuple[int, ...]:
        return tuple(i for i in range(self.ngens) if self.is_right_descent(w, i))

    def mul_gen(self, w: "WeylElement", i: int) -> "WeylElement":
        return WeylElement(self, _matmul(w.matrix, self._gmats[i]))

    def reduced_word(self, w: "WeylElement") -> tuple[int, ...]:
        letters = []
        cur = w
        while cur.matrix != self.identity.matrix:
            for i in range(self.ngens):
                if self.is_right_descent(cur, i):
                    letters.append(i)
                    cur = self.mul_gen(cur, i)
                    break
            else:
                raise RuntimeError("no descent found: element outside the group?")
        word = tuple(reversed(letters))
        self._length.setdefault(w.matrix, len(word))
        return word

    def length(self, w: "WeylElement") -> int:
        L = self._length.get(w.matrix)
        if L is None:
            L = len(self.reduced_word(w))
        return L

    def bruhat_leq(self, x: "WeylElement", y: "WeylElement") -> bool:
        key = (x.matrix, y.matrix)
        hit = self._bruhat.get(key)
        if hit is not None:
            return hit
        lx, ly = self.length(x), self.length(y)
        if lx > ly:
            res = False
        elif lx == ly:
            res = x.matrix == y.matrix
        elif lx == 0:
            res = True
        else:
            s = next(i for i in range(self.ngens) if self.is_right_descent(y, i))
            ys = self.mul_gen(y, s)
            xs = self.mul_gen(x, s) if self.is_right_descent(x, s) else x
            res = self.bruhat_leq(xs, ys)
        self._bruhat[key] = res
        return res

    def act_vector(self, w: "WeylElement", v: Sequence) -> tuple:
        return _apply(w.matrix, v)

    def act(self, w: "WeylElement", Lam: AffineWeight) -> AffineWeight:
        return vector_weight(_apply(w.matrix, weight_vector(Lam)))

    def dot(self, w: "WeylElement", Lam: AffineWeight) -> AffineWeight:
        rho = weight_vector(structure_constants(self.rank).rho)
        v = tuple(a + b for a, b in zip(weight_vector(Lam), rho))
        wv = _apply(w.matrix, v)
        return vector_weight(tuple(a - b for a, b in zip(wv, rho)))

    def act_root(self, w: "WeylElement", gamma: AffineRoot) -> AffineRoot:
        return vector_root(_apply(w.matrix, root_vector(gamma)))

    def format_word(self, word: Sequence[int]) -> str:
        if not word:
            return "e"
        return ".".join("s" + self.names[i] for i in word)


@dataclass(frozen=True, eq=False)
class WeylElement:
    group: ReflectionGroup
    matrix: tuple

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.group, _matmul(self.matrix, other.matrix))

    def inverse(self) -> "WeylElement":
        return self.group.from_word(reversed(self.word))

    @property
    def word(self) -> tuple[int, ...]:
        return self.group.reduced_word(self)

    @property
    def length(self) -> int:
        return self.group.length(self)

    def __str__(self):
        return self.group.format_word(self.word)

    def __repr__(self):
        return f"WeylElement({self})"


@lru_cache(maxsize=None)
def affine_weyl_group(rank: int) -> ReflectionGroup:
    rs = RootSystemA(rank)
    return ReflectionGroup(rank, [affine_simple_root(rs, i) for i in range(rank + 1)])


@lru_cache(maxsize=None)
def finite_weyl_group(rank: int) -> ReflectionGroup:
    rs = RootSystemA(rank)
    return ReflectionGroup(
        rank, [affine_simple_root(rs, i) for i in range(1, rank + 1)], names=[str(i) for i in range(1, rank + 1)]
    )


@lru_cache(maxsize=None)
def levi_weyl_group(rank: int) -> ReflectionGroup:
    """Weyl group of the A_{l-1} factor of g_0 (generated by s_1..s_{l-1})."""
    rs = RootSystemA(rank)
    return ReflectionGroup(
        rank, [affine_simple_root(rs, i) for i in range(1, rank)], names=[str(i) for i in range(1, rank)]
    )


def act(w: WeylElement, Lam: AffineWeight) -> AffineWeight:
    return w.group.act(w, Lam)


def dot(w: WeylElement, Lam: AffineWeight) -> AffineWeight:
    return w.group.dot(w, Lam)


def bruhat_leq(x: WeylElement, y: WeylElement) -> bool:
    return x.group.bruhat_leq(x, y)


def translate(alpha: FiniteRoot, Ups: AffineWeight) -> AffineWeight:
    """t_alpha(Y) = Y + Y(K) alpha - ((Y|alpha) + |alpha|^2 Y(K) / 2) delta."""
    from .cartan import bilinear, norm2

    aw = alpha.to_weight()
    k = Ups.level
    shifted = FiniteWeight(tuple(c + k * a for c, a in zip(Ups.finite.coords, aw.coords)))
    return AffineWeight(shifted, k, Ups.delta_coeff - (bilinear(Ups.finite, aw) + norm2(aw) * k / 2))


def translation(alpha: FiniteRoot) -> WeylElement:
    """t_alpha as a group element: t_alpha = s_{delta - alpha} s_alpha for a root,
    extended additively over the root lattice."""
    l = alpha.rank
    W = affine_weyl_group(l)
    rs = RootSystemA(l)
    result = W.identity
    for i, c in enumerate(alpha.coords):
        if c == 0:
            continue
        a = rs.simple_root(i + 1)
        # t_a = s_{-a + delta} s_a
        t = WeylElement(W, _matmul(reflection_matrix(root_vector(AffineRoot(-a, 1))),
                                     reflection_matrix(root_vector(AffineRoot(a, 0)))))
        step = t if c > 0 else t.inverse()
        for _ in range(abs(c)):
            result = result * step
    return result


# ---------------------------------------------------------------- integral data


def _kappa(Lam: AffineWeight):
    kappa = Lam.level + Lam.rank + 1
    if kappa == 0:
        raise CriticalLevel("critical level k = -h^vee")
    return kappa


def _shifted_pairing(Lam_rho_vec, gamma_vec):
    return coroot_pairing_vec(Lam_rho_vec, gamma_vec)


def default_delta_bound(level) -> int:
    level = as_number(level)
    if isinstance(level, Fraction):
        return 2 * level.denominator + 2
    return 2


def _integral_residues(p, kappa):
    """All n in Z with p + n*kappa integral: returns (n0, period) or None."""
    if isinstance(kappa, Fraction) and isinstance(p, Fraction):
        period = kappa.denominator
        for n in range(period):
            if (p + n * kappa).denominator == 1:
                return n, period
        return None
    # irrational kappa: only n = 0 can work
    if is_integer(p):
        return 0, 0
    return None


@dataclass
class IntegralWeylData:
    base_weight: AffineWeight
    delta_bound: int
    positive_integral_roots: list
    simple_integral_roots: list
    singular_generators: list
    pairings: dict = field(default_factory=dict)

    @property
    def group(self) -> ReflectionGroup:
        if getattr(self, "_group", None) is None:
            self._group = ReflectionGroup(self.base_weight.rank, self.simple_integral_roots)
        return self._group

    def to_json(self) -> dict:
        return {
            "weight": str(self.base_weight),
            "delta_bound": self.delta_bound,
            "positive_integral_roots": [
                {"finite": list(g.finite.coords), "n": g.delta_mult, "pairing": format_number(self.pairings[g])}
                for g in self.positive_integral_roots
            ],
            "simple_integral_roots": [
                {"finite": list(g.finite.coords), "n": g.delta_mult} for g in self.simple_integral_roots
            ],
            "singular_generators": [
                {"finite": list(g.finite.coords), "n": g.delta_mult} for g in self.singular_generators
            ],
        }


def _indecomposable(roots: list, ok) -> list:
    """Simple system of a root subsystem given by the positive roots ``roots``.

    gamma is simple iff s_gamma sends no other positive root of the subsystem
    to a negative root.  Candidates beta only need delta-multiplicity at most
    2 n_gamma (+ finite part) for s_gamma(beta) to become negative.
    """
    simple = []
    for g in roots:
        gv = root_vector(g)
        M = reflection_matrix(gv)
        bad = False
        for b in roots:
            if b == g:
                continue
            bv = root_vector(b)
            img = _apply(M, bv)
            if not root_vector_positive(img):
                bad = True
                break
        if not bad:
            simple.append(g)
    return simple


def _positive_integral_roots(Lam: AffineWeight, bound: int):
    rs = RootSystemA(Lam.rank)
    kappa = _kappa(Lam)
    rho = weight_vector(structure_constants(Lam.rank).rho)
    v = tuple(a + b for a, b in zip(weight_vector(Lam), rho))
    out = []
    pairings = {}
    for a in rs.roots():
        p = coroot_pairing_vec(v, root_vector(AffineRoot(a, 0)))
        res = _integral_residues(p, kappa)
        if res is None:
            continue
        n0, period = res
        ns = [0] if period == 0 else [n for n in range(-bound, bound + 1) if (n - n0) % period == 0]
        for n in ns:
            if n < 0 or (n == 0 and not a.is_positive()):
                continue
            if n > bound:
                continue
            g = AffineRoot(a, n)
            out.append(g)
            pairings[g] = p + n * kappa
    out.sort(key=lambda g: (g.delta_mult, sum(g.finite.coords) < 0, g.finite.coords))
    return out, pairings


def integral_data(Lam: AffineWeight, delta_bound: int | None = None) -> IntegralWeylData:
    if delta_bound is None:
        delta_bound = default_delta_bound(Lam.level)
    roots, pairings = _positive_integral_roots(Lam, delta_bound)
    # simple roots have delta multiplicity at most the period; a root needs
    # partners up to twice its multiplicity to be tested
    half = [g for g in roots if 2 * g.delta_mult <= delta_bound]
    simple = []
    for g in half:
        M = reflection_matrix(root_vector(g))
        limit = 2 * g.delta_mult + 1
        if all(
            b == g or b.delta_mult > limit or root_vector_positive(_apply(M, root_vector(b)))
            for b in roots
        ):
            simple.append(g)
    sing = [g for g in roots if pairings[g] == 0]
    sing_simple = _indecomposable(sing, None)
    return IntegralWeylData(Lam, delta_bound, roots, simple, sing_simple, pairings)


def singular_roots(Lam: AffineWeight, delta_bound: int | None = None) -> list:
    data = integral_data(Lam, delta_bound)
    return [g for g in data.positive_integral_roots if data.pairings[g] == 0]


def dominant_representative(Lam: AffineWeight, length_bound: int = 10_000, data: IntegralWeylData | None = None):
    """Return ``(Omega, w, sign, data)`` with ``w o Omega = Lam`` in ``W(Lam)``.

    ``sign`` is ``+1`` for a dominant and ``-1`` for an antidominant
    representative.  For kappa > 0 dominance is tried first.
    """
    if data is None:
        data = integral_data(Lam)
    kappa = _kappa(Lam)
    order = (+1, -1) if kappa > 0 else (-1, +1)
    finite_group = all(g.delta_mult == 0 for g in data.simple_integral_roots)
    rho = weight_vector(structure_constants(Lam.rank).rho)
    gvecs = [root_vector(g) for g in data.simple_integral_roots]
    for sign in order:
        if not finite_group and sign != order[0]:
            break
        v = tuple(a + b for a, b in zip(weight_vector(Lam), rho))
        letters = []
        for _ in range(length_bound + 1):
            bad = None
            for i, g in enumerate(gvecs):
                p = coroot_pairing_vec(v, g)
                if (sign > 0 and p < 0) or (sign < 0 and p > 0):
                    bad = (i, p)
                    break
            if bad is None:
                break
            i, p = bad
            v = tuple(x - p * y for x, y in zip(v, gvecs[i]))
            letters.append(i)
        else:
            continue
        Omega = vector_weight(tuple(a - b for a, b in zip(v, rho)))
        G = data.group
        # Omega = s_m ... s_1 o Lam, so Lam = s_1 ... s_m o Omega
        w = G.from_word(letters)
        return Omega, w, sign, data
    raise NotFoundWithinBound(f"no (anti)dominant representative within {length_bound} reflections")


def coset_extremal(w: WeylElement, C_generators: Sequence[int], longest: bool = True, cap: int = 100_000) -> WeylElement:
    """Longest (or shortest) element of ``w C`` where C is generated by the
    simple reflections with indices ``C_generators`` of ``w.group``."""
    G = w.group
    cur = w
    steps = 0
    while True:
        for i in C_generators:
            if G.is_right_descent(cur, i):
                cur = G.mul_gen(cur, i)
                break
        else:
            break
        steps += 1
        if steps > cap:
            raise CosetTooLarge("coset enumeration exceeded the configured cap")
    if not longest:
        return cur
    steps = 0
    while True:
        for i in C_generators:
            if not G.is_right_descent(cur, i):
                cur = G.mul_gen(cur, i)
                break
        else:
            return cur
        steps += 1
        if steps > cap:
            raise CosetTooLarge("coset enumeration exceeded the configured cap")


def singular_simple_indices(data: IntegralWeylData, Omega: AffineWeight) -> list[int]:
    """Indices of simple integral roots orthogonal to Omega + rho."""
    rho = weight_vector(structure_constants(Omega.rank).rho)
    v = tuple(a + b for a, b in zip(weight_vector(Omega), rho))
    return [i for i, g in enumerate(data.simple_integral_roots) if coroot_pairing_vec(v, root_vector(g)) == 0]


def inversion_count(w: WeylElement, max_delta: int) -> int:
    """Number of positive real roots of the ambient group with delta
    multiplicity <= max_delta that w sends to negative roots."""
    rs = RootSystemA(w.group.rank)
    count = 0
    for n in range(0, max_delta + 1):
        for a in rs.roots():
            g = AffineRoot(a, n)
            if not g.is_positive():
                continue
            if not root_vector_positive(_apply(w.matrix, root_vector(g))):
                count += 1
    return count
