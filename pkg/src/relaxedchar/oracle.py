"""Brute-force contravariant forms on Verma-type modules over affine sl_{l+1}.

The loop algebra is realised on trace-zero matrices.  A weight space of a
(parabolic) Verma module is spanned by ordered PBW monomials in lowering
modes; the Gram matrix of the contravariant form on it is computed by
straightening and its rank is the multiplicity in the simple quotient.

Parabolic mode needs a one-dimensional top, i.e. a highest weight whose
finite part is a multiple of the last fundamental weight.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .cartan import AffineWeight, RootSystemA, weight_to_json
from .charring import affine_central_charge
from .linalg import rank as exact_rank
from .numbers import as_number, format_number
from .qseries import QSeries

DEPTH_CAPS = {1: 4, 2: 3}


class DepthExceeded(ValueError):
    pass


class NoStabilization(RuntimeError):
    pass


# ---------------------------------------------------------------- sl_{l+1}


@dataclass(frozen=True)
class ChevalleyBasis:
    """Matrix units E_ij (i != j) and h_i = E_ii - E_{i+1,i+1}."""

    rank: int
    names: tuple
    kinds: tuple  # ("E", i, j) or ("h", i), zero-based
    roots: tuple  # root coordinates (simple-root basis) of each element
    bracket: tuple  # bracket[a][b] -> tuple of (c, coeff)
    form: tuple  # trace form tr(ab)
    sigma: tuple  # index of the contravariant image

    def index(self, name: str) -> int:
        return self.names.index(name)

    def height(self, a: int) -> int:
        return sum(self.roots[a])


def _matrix(kind, n):
    M = {}
    if kind[0] == "E":
        M[(kind[1], kind[2])] = 1
    else:
        i = kind[1]
        M[(i, i)] = 1
        M[(i + 1, i + 1)] = -1
    return M


def _mat_mul(A, B):
    out = {}
    for (i, j), a in A.items():
        for (j2, k), b in B.items():
            if j == j2:
                out[(i, k)] = out.get((i, k), 0) + a * b
    return {k: v for k, v in out.items() if v}


def _decompose(M, index, n):
    """Coordinates of a trace-zero matrix in the Chevalley basis."""
    out = {}
    for (i, j), v in M.items():
        if i != j and v:
            out[index[("E", i, j)]] = v
    acc = 0
    for i in range(n - 1):
        acc += M.get((i, i), 0)
        if acc:
            out[index[("h", i)]] = out.get(index[("h", i)], 0) + acc
    assert acc + M.get((n - 1, n - 1), 0) == 0
    return out


@lru_cache(maxsize=None)
def chevalley_basis(rank: int) -> ChevalleyBasis:
    n = rank + 1
    kinds = []
    for i in range(n):
        for j in range(n):
            if i != j:
                kinds.append(("E", i, j))
    for i in range(rank):
        kinds.append(("h", i))
    index = {k: a for a, k in enumerate(kinds)}
    names = tuple(f"E{k[1] + 1}{k[2] + 1}" if k[0] == "E" else f"h{k[1] + 1}" for k in kinds)
    roots = []
    for k in kinds:
        r = [0] * rank
        if k[0] == "E":
            i, j = k[1], k[2]
            lo, hi = min(i, j), max(i, j)
            for t in range(lo, hi):
                r[t] = 1 if i < j else -1
        roots.append(tuple(r))
    mats = [_matrix(k, n) for k in kinds]
    br = []
    fm = []
    for A in mats:
        row = []
        frow = []
        for B in mats:
            C = _mat_mul(A, B)
            D = _mat_mul(B, A)
            comm = dict(C)
            for key, v in D.items():
                comm[key] = comm.get(key, 0) - v
            comm = {k: v for k, v in comm.items() if v}
            row.append(tuple(sorted(_decompose(comm, index, n).items())))
            frow.append(sum(v for (i, j), v in C.items() if i == j))
        br.append(tuple(row))
        fm.append(tuple(frow))
    sigma = []
    for k in kinds:
        sigma.append(index[("E", k[2], k[1])] if k[0] == "E" else index[k])
    basis = ChevalleyBasis(rank, names, tuple(kinds), tuple(roots), tuple(br), tuple(fm), tuple(sigma))
    check_identities(basis)
    return basis


def _br(basis, vec, b):
    out = {}
    for a, c in vec.items():
        for z, d in basis.bracket[a][b]:
            out[z] = out.get(z, 0) + c * d
    return {k: v for k, v in out.items() if v}


def check_identities(basis: ChevalleyBasis) -> None:
    """Jacobi identity, invariance of the trace form and sigma([a,b]) = [sigma b, sigma a]."""
    n = len(basis.names)
    for a in range(n):
        for b in range(n):
            ab = dict(basis.bracket[a][b])
            sab = {basis.sigma[z]: c for z, c in ab.items()}
            if sab != dict(basis.bracket[basis.sigma[b]][basis.sigma[a]]):
                raise AssertionError(f"sigma is not an anti-involution at {basis.names[a]}, {basis.names[b]}")
            for c in range(n):
                lhs = sum(v * basis.form[z][c] for z, v in ab.items())
                rhs = sum(v * basis.form[a][z] for z, v in basis.bracket[b][c])
                if lhs != rhs:
                    raise AssertionError("trace form is not invariant")
                total = {}
                for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                    for k, v in _br(basis, dict(basis.bracket[y][z]), x).items():
                        total[k] = total.get(k, 0) - v
                if any(total.values()):
                    raise AssertionError(f"Jacobi fails at {basis.names[a]}, {basis.names[b]}, {basis.names[c]}")


def affine_bracket(basis: ChevalleyBasis, a, b):
    """[x t^m, y t^n] for modes a=(x,m), b=(y,n): ([(z, m+n, coeff)], central coefficient of K)."""
    (x, m), (y, n) = a, b
    terms = [(z, m + n, c) for z, c in basis.bracket[x][y]]
    central = m * basis.form[x][y] if m + n == 0 else 0
    return terms, central


# ---------------------------------------------------------------- modules


class VermaTypeModule:
    """Verma (``parabolic=False``) or one-dimensional-top parabolic Verma module."""

    def __init__(self, Lam: AffineWeight, parabolic: bool = False):
        l = Lam.rank
        self.Lam = Lam
        self.rank = l
        self.parabolic = parabolic
        self.basis = B = chevalley_basis(l)
        self.level = as_number(Lam.level)
        lam = Lam.finite.coords
        if parabolic and any(c != 0 for c in lam[:-1]):
            raise ValueError("parabolic oracle needs a finite part proportional to the last fundamental weight")
        self._hval = {}
        for a, k in enumerate(B.kinds):
            if k[0] == "h":
                self._hval[a] = as_number(lam[k[1]])
        # zero-mode lowering directions
        low0 = set()
        for a, k in enumerate(B.kinds):
            if k[0] != "E":
                continue
            i, j = k[1], k[2]
            if i > j:
                if not parabolic or i == l:
                    low0.add(a)
        self._low0 = frozenset(low0)
        self._memo: dict = {}

    # ordering of lowering modes: more negative mode first, then height, then index
    def order_key(self, g):
        x, n = g
        return (n, self.basis.height(x), x)

    def is_lowering(self, g) -> bool:
        x, n = g
        return n < 0 or (n == 0 and x in self._low0)

    def _vacuum(self, g) -> dict:
        x, n = g
        if self.is_lowering(g):
            return {(g,): Fraction(1)}
        if n == 0 and x in self._hval:
            v = self._hval[x]
            return {(): v} if v else {}
        return {}

    def act(self, g, mono: tuple) -> dict:
        """g . (mono v) as a combination of ordered monomials."""
        key = (g, mono)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if not mono:
            res = self._vacuum(g)
        else:
            Y = mono[0]
            rest = mono[1:]
            if self.is_lowering(g) and self.order_key(g) <= self.order_key(Y):
                res = {(g,) + mono: Fraction(1)}
            else:
                res = {}
                for m, c in self.act(g, rest).items():
                    for m2, c2 in self.act(Y, m).items():
                        res[m2] = res.get(m2, 0) + c * c2
                terms, central = affine_bracket(self.basis, g, Y)
                for z, n, c in terms:
                    for m2, c2 in self.act((z, n), rest).items():
                        res[m2] = res.get(m2, 0) + c * c2
                if central:
                    s = central * self.level
                    res[rest] = res.get(rest, 0) + s
                res = {m: c for m, c in res.items() if c}
        self._memo[key] = res
        return res

    def act_vector(self, g, vec: dict) -> dict:
        out = {}
        for m, c in vec.items():
            for m2, c2 in self.act(g, m).items():
                out[m2] = out.get(m2, 0) + c * c2
        return {m: c for m, c in out.items() if c}

    def sigma(self, g):
        x, n = g
        return (self.basis.sigma[x], -n)

    def pairing(self, u: tuple, w: tuple):
        """<u v, w v>: vacuum coefficient of sigma(u) w v."""
        vec = {w: Fraction(1)}
        for Y in u:
            vec = self.act_vector(self.sigma(Y), vec)
            if not vec:
                return Fraction(0)
        return vec.get((), Fraction(0))

    # weight spaces

    def _loop_generators(self, depth):
        gens = []
        for n in range(1, depth + 1):
            for x in range(len(self.basis.kinds)):
                gens.append((x, -n))
        return gens

    def weight_space(self, offset, depth: int) -> list:
        """Ordered monomials of finite offset ``offset`` (lam - mu in root
        coordinates) and delta-depth ``depth``."""
        offset = tuple(offset)
        l = self.rank
        B = self.basis
        zero_gens = sorted(self._low0, key=lambda x: (B.height(x), x))
        out = []
        for loop in _multisets_by_depth(self._loop_generators(depth), depth):
            got = [0] * l
            for x, n in loop:
                for t in range(l):
                    got[t] -= B.roots[x][t]
            need = tuple(o - g for o, g in zip(offset, got))
            for zm in _zero_mode_fillings(B, zero_gens, need):
                mono = tuple(sorted(list(loop) + [(x, 0) for x in zm], key=self.order_key))
                out.append(mono)
        return sorted(set(out), key=lambda m: [self.order_key(g) for g in m])


def _multisets_by_depth(gens, depth):
    out = []

    def rec(start, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for i in range(start, len(gens)):
            d = -gens[i][1]
            if d <= remaining:
                acc.append(gens[i])
                rec(i, remaining - d, acc)
                acc.pop()

    rec(0, depth, [])
    return out


def _zero_mode_fillings(B, gens, need):
    """Multisets of negative zero modes with total offset ``need``."""
    if any(c < 0 for c in need):
        return []
    out = []

    def rec(start, rem, acc):
        if all(c == 0 for c in rem):
            out.append(tuple(acc))
            return
        for i in range(start, len(gens)):
            r = B.roots[gens[i]]
            nxt = tuple(a + b for a, b in zip(rem, r))  # roots are negative
            if all(c >= 0 for c in nxt):
                acc.append(gens[i])
                rec(i, nxt, acc)
                acc.pop()

    rec(0, tuple(need), [])
    return out


# ---------------------------------------------------------------- Gram blocks


@dataclass
class GramBlock:
    weight: AffineWeight
    basis: list
    matrix: list
    rank: int
    names: tuple = field(default=(), repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def monomial_strings(self) -> list:
        return [format_monomial(self.names, m) for m in self.basis]

    def to_json(self) -> dict:
        return {
            "weight": weight_to_json(self.weight),
            "basis": self.monomial_strings(),
            "dim": self.dim,
            "rank": self.rank,
        }


def format_monomial(names, mono) -> str:
    if not mono:
        return "1"
    return " ".join(f"{names[x]}({n})" for x, n in mono)


def _check_depth(rank: int, depth: int, cap: int | None):
    limit = DEPTH_CAPS.get(rank, 2) if cap is None else cap
    if depth > limit:
        raise DepthExceeded(f"depth {depth} exceeds the oracle cap {limit} for rank {rank}")


def verma_weight_space(Lam: AffineWeight, offset, depth: int, parabolic: bool = False, cap: int | None = None) -> list:
    _check_depth(Lam.rank, depth, cap)
    return _module(Lam, parabolic).weight_space(offset, depth)


_MODULES: dict = {}


def _module(Lam, parabolic) -> VermaTypeModule:
    key = (Lam, parabolic)
    mod = _MODULES.get(key)
    if mod is None:
        if len(_MODULES) > 32:
            _MODULES.clear()
        mod = _MODULES[key] = VermaTypeModule(Lam, parabolic)
    return mod


def gram_rank(Lam: AffineWeight, offset, depth: int, parabolic: bool = False, cap: int | None = None) -> GramBlock:
    _check_depth(Lam.rank, depth, cap)
    mod = _module(Lam, parabolic)
    basis = mod.weight_space(offset, depth)
    n = len(basis)
    M = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = mod.pairing(basis[i], basis[j])
            M[i][j] = v
            M[j][i] = v
    rs = RootSystemA(Lam.rank)
    weight = AffineWeight(Lam.finite - rs.root_to_weight(offset), Lam.level, Lam.delta_coeff - depth)
    return GramBlock(weight, basis, M, exact_rank(M), mod.basis.names)


def oracle_string_limit(
    Lam: AffineWeight,
    m: int,
    n_range=(-8, 0),
    parabolic: bool = True,
    use_rank: bool = True,
    cap: int | None = None,
    run: int = 3,
) -> QSeries:
    """Stabilised multiplicities along lam + n beta_0 for q-powers 0..m.

    For each depth the multiplicity at offset -n beta_0 is computed for every
    n in ``n_range``.  The sequence counts as stable when it is constant from
    some n down to ``n_range[0]``, over at least ``run`` points.
    ``use_rank=False`` reads dimensions of the module itself instead of
    Gram ranks.
    """
    l = Lam.rank
    beta0 = tuple(range(1, l + 1))
    lo, hi = n_range
    coeffs = []
    for depth in range(m + 1):
        vals = []
        for n in range(hi, lo - 1, -1):
            off = tuple(-n * b for b in beta0)
            if use_rank:
                vals.append(gram_rank(Lam, off, depth, parabolic, cap).rank)
            else:
                vals.append(len(verma_weight_space(Lam, off, depth, parabolic, cap)))
        tail = 1
        while tail < len(vals) and vals[-tail - 1] == vals[-1]:
            tail += 1
        if tail < run:
            raise NoStabilization(f"no stabilisation at depth {depth} for n in [{lo}, {hi}]: {vals}")
        coeffs.append(vals[-1])
    c = affine_central_charge(l, Lam.level)
    return QSeries(Lam.conformal_weight - c / 24, coeffs, m)
