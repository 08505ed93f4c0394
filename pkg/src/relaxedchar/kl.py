"""Kazhdan-Lusztig data on integral Weyl groups.

A :class:`CoxeterIdeal` is a finite Bruhat-lower-closed subset of a
:class:`~relaxedchar.weyl.ReflectionGroup` with integer ids, lengths, right
descents and the right multiplication table.  :class:`KLTable` computes
``P_{x,y}`` for all ``x <= y`` inside the ideal by the standard right-descent
recursion.

Character conventions (``a_y`` is the coefficient of ``[V_{y o Omega}]`` in
``[L_{w o Omega}]``):

``dominant``      ``a = row w of P(1)^{-1}``, i.e. ``(-1)^{l(y)-l(w)} Q_{w,y}(1)``
                  with ``Q`` the inverse KL polynomials; sum over ``y >= w``.
``antidominant``  ``a_y = (-1)^{l(w)-l(y)} P_{y,w}(1)``; sum over ``y <= w``.

Other evaluation rules are available through ``convention=`` so that an
external oracle can decide between them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .cartan import AffineWeight, in_P0plus_k
from .numbers import format_number
from .weyl import (
    IntegralWeylData,
    ReflectionGroup,
    WeylElement,
    coset_extremal,
    dominant_representative,
    integral_data,
    levi_weyl_group,
    root_vector_positive,
    singular_simple_indices,
    structure_constants,
    weight_vector,
    vector_weight,
    _apply,
    _matmul,
)


class NotUnitriangular(ValueError):
    pass


class OutsideContext(KeyError):
    pass


class IdealTooLarge(RuntimeError):
    pass


# ---------------------------------------------------------------- ideals


class CoxeterIdeal:
    """Finite lower-closed subset of a reflection group, indexed by ints."""

    def __init__(self, group: ReflectionGroup, elements: Sequence[WeylElement]):
        self.group = group
        elements = sorted(set(elements), key=lambda e: (e.length, e.matrix))
        self.elements = list(elements)
        self.index = {e.matrix: i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        ng = group.ngens
        self.lengths = [e.length for e in self.elements]
        self.descents = [frozenset(group.right_descents(e)) for e in self.elements]
        self.mult = [[-1] * ng for _ in range(n)]
        for i, e in enumerate(self.elements):
            for s in range(ng):
                j = self.index.get(_matmul(e.matrix, group._gmats[s]))
                if j is not None:
                    self.mult[i][s] = j
        for i in range(n):
            for s in self.descents[i]:
                if self.mult[i][s] < 0:
                    raise ValueError("element set is not closed under taking prefixes")
        self._lower: list = [None] * n

    def __len__(self):
        return len(self.elements)

    def id_of(self, w: WeylElement) -> int:
        try:
            return self.index[w.matrix]
        except KeyError:
            raise OutsideContext(f"{w} is not in the computed ideal") from None

    def lower_interval(self, y: int) -> frozenset:
        """ids of all x <= y."""
        got = self._lower[y]
        if got is not None:
            return got
        # iterate over a reduced word to avoid deep recursion
        chain = [y]
        cur = y
        while self._lower[cur] is None and self.lengths[cur] > 0:
            s = min(self.descents[cur])
            cur = self.mult[cur][s]
            chain.append(cur)
        if self._lower[cur] is None:
            self._lower[cur] = frozenset([cur])
        for k in range(len(chain) - 2, -1, -1):
            node = chain[k]
            if self._lower[node] is not None:
                continue
            below = chain[k + 1]
            s = min(self.descents[node])
            assert self.mult[node][s] == below
            base = self._lower[below]
            extra = set()
            for x in base:
                xs = self.mult[x][s]
                if xs < 0:
                    raise ValueError("ideal is not lower closed")
                extra.add(xs)
            self._lower[node] = base | extra
        return self._lower[y]

    def leq(self, x: int, y: int) -> bool:
        return x in self.lower_interval(y)


def lower_ideal_by_energy(group: ReflectionGroup, Omega: AffineWeight, bound, cap: int = 200_000) -> CoxeterIdeal:
    """All y with h(y o Omega) <= bound.

    For dominant Omega at positive shifted level this set is lower closed,
    because the conformal weight is monotone along the Bruhat order.
    """
    rho = weight_vector(structure_constants(Omega.rank).rho)
    v0 = tuple(a + b for a, b in zip(weight_vector(Omega), rho))

    def energy(M):
        return -(_apply(M, v0)[-1] - rho[-1])

    if energy(group.identity.matrix) > bound:
        raise ValueError("energy bound is below the conformal weight of Omega")
    seen = {group.identity.matrix: group.identity}
    queue = deque([group.identity])
    while queue:
        y = queue.popleft()
        for s in range(group.ngens):
            if group.is_right_descent(y, s):
                continue
            M = _matmul(y.matrix, group._gmats[s])
            if M in seen:
                continue
            if energy(M) > bound:
                continue
            ys = WeylElement(group, M)
            group._length.setdefault(M, group.length(y) + 1)
            seen[M] = ys
            queue.append(ys)
            if len(seen) > cap:
                raise IdealTooLarge(f"more than {cap} elements below energy {bound}")
    return CoxeterIdeal(group, list(seen.values()))


def lower_interval_elements(w: WeylElement) -> list[WeylElement]:
    """[e, w] via [e, v] = [e, vs] u [e, vs] s for s in D_R(v)."""
    G = w.group
    word = w.word
    current = {G.identity.matrix: G.identity}
    for s in word:
        new = dict(current)
        for e in current.values():
            es = G.mul_gen(e, s)
            new.setdefault(es.matrix, es)
        current = new
    return list(current.values())


# ---------------------------------------------------------------- polynomials


def _padd(a, b, shift=0, scale=1):
    n = max(len(a), len(b) + shift)
    out = list(a) + [0] * (n - len(a))
    for i, c in enumerate(b):
        out[i + shift] += scale * c
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_eval1(p) -> int:
    return sum(p)


def format_poly(p) -> str:
    if not p:
        return "0"
    terms = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        mon = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
        coef = str(c) if (c != 1 or i == 0) else ""
        terms.append(coef + ("*" if coef and mon else "") + mon)
    return " + ".join(terms)


class KLTable:
    """Memoized KL polynomials on a Coxeter ideal."""

    def __init__(self, ideal: CoxeterIdeal):
        self.ideal = ideal
        self._P: list = [None] * len(ideal)  # y -> {x: poly}
        self._mu: list = [None] * len(ideal)  # v -> [(z, mu)]
        self._built = 0
        self.frozen = False

    def freeze(self):
        self._column(len(self.ideal) - 1)
        self.frozen = True

    def _column(self, y: int) -> dict:
        # ids are sorted by length and every dependency of column y is shorter
        if y >= len(self.ideal) or y < 0:
            raise OutsideContext(y)
        while self._built <= y:
            if self.frozen:
                raise RuntimeError("table is frozen")
            t = self._built
            if self.ideal.lengths[t] == 0:
                self._P[t] = {t: [1]}
            else:
                s = min(self.ideal.descents[t])
                self._P[t] = self._build(t, s, self.ideal.mult[t][s])
            self._compute_mu(t)
            self._built += 1
        return self._P[y]

    def _compute_mu(self, v: int):
        col = self._P[v]
        Lv = self.ideal.lengths[v]
        out = []
        for z, p in col.items():
            if z == v:
                continue
            d = Lv - self.ideal.lengths[z]
            if d % 2 == 1:
                k = (d - 1) // 2
                if k < len(p) and p[k] != 0:
                    out.append((z, p[k]))
        self._mu[v] = out

    def _build(self, y: int, s: int, v: int) -> dict:
        ideal = self.ideal
        Pv = self._P[v]
        Ly = ideal.lengths[y]
        lower = ideal.lower_interval(y)
        mu_terms = [(z, m) for z, m in self._mu[v] if s in ideal.descents[z]]
        col = {}
        for x in lower:
            xs = ideal.mult[x][s]
            c = 1 if s in ideal.descents[x] else 0
            p = []
            a = Pv.get(xs) if xs >= 0 else None
            if a:
                p = _padd(p, a, shift=1 - c)
            b = Pv.get(x)
            if b:
                p = _padd(p, b, shift=c)
            for z, m in mu_terms:
                pz = self._P[z].get(x)
                if pz:
                    p = _padd(p, pz, shift=(Ly - ideal.lengths[z]) // 2, scale=-m)
            d = Ly - ideal.lengths[x]
            if x != y:
                if p and 2 * (len(p) - 1) > d - 1:
                    raise AssertionError(f"degree bound violated for P_{{{x},{y}}}: {p}")
            else:
                assert p == [1], p
            if any(c_ < 0 for c_ in p):
                raise AssertionError(f"negative KL coefficient in P_{{{x},{y}}}: {p}")
            if p:
                col[x] = p
        return col

    def polynomial(self, x: int, y: int) -> list:
        return list(self._column(y).get(x, []))

    def value_at_one(self, x: int, y: int) -> int:
        return poly_eval1(self._column(y).get(x, ()))

    def mu(self, x: int, y: int) -> int:
        self._column(y)
        for z, m in self._mu[y]:
            if z == x:
                return m
        return 0


def kl_polynomial(table: KLTable, x: WeylElement, y: WeylElement) -> list:
    ix = table.ideal.id_of(x)
    iy = table.ideal.id_of(y)
    return table.polynomial(ix, iy)


# ---------------------------------------------------------------- characters


@dataclass
class CharacterVector:
    """Integer combination of module symbols indexed by highest weights."""

    entries: dict
    truncation: object = None
    defining_weight: AffineWeight | None = None
    words: dict = field(default_factory=dict)

    def __getitem__(self, weight):
        return self.entries.get(weight, 0)

    def items(self):
        return self.entries.items()

    def sorted_items(self):
        return sorted(
            self.entries.items(),
            key=lambda kv: (kv[0].conformal_weight, tuple(kv[0].finite.coords)),
        )

    def restrict(self, pred: Callable[[AffineWeight], bool]) -> "CharacterVector":
        return CharacterVector(
            {k: v for k, v in self.entries.items() if pred(k)},
            self.truncation,
            self.defining_weight,
            {k: v for k, v in self.words.items() if pred(k)},
        )


CONVENTIONS = ("inverse-signed", "inverse-unsigned", "direct-signed", "direct-unsigned")


@dataclass
class OrbitData:
    Lam: AffineWeight
    Omega: AffineWeight
    w: WeylElement
    sign: int
    data: IntegralWeylData
    ideal: CoxeterIdeal
    table: KLTable
    w_id: int


def _orbit(Lam: AffineWeight, energy_bound, delta_bound=None, cap=200_000) -> OrbitData:
    data = integral_data(Lam, delta_bound)
    Omega, w, sign, data = dominant_representative(Lam, data=data)
    sing = singular_simple_indices(data, Omega)
    w = coset_extremal(w, sing, longest=sign > 0)
    G = data.group
    if sign > 0:
        ideal = lower_ideal_by_energy(G, Omega, energy_bound, cap=cap)
    else:
        ideal = CoxeterIdeal(G, lower_interval_elements(w))
    table = KLTable(ideal)
    return OrbitData(Lam, Omega, w, sign, data, ideal, table, ideal.id_of(w))


def _dot_weight(orbit: OrbitData, y: int) -> AffineWeight:
    G = orbit.data.group
    return G.dot(orbit.ideal.elements[y], orbit.Omega)


def _standard(sign: int) -> str:
    return "inverse-signed" if sign > 0 else "direct-signed"


def verma_coefficients(orbit: OrbitData, convention: str | None = None) -> dict:
    """{y_id: a_y} for the simple module at w o Omega.

    ``direct`` uses ``P(1)`` itself, ``inverse`` the inverse matrix of
    ``P(1)``; ``signed`` multiplies by ``(-1)^{l(y)-l(w)}`` relative to the
    unsigned variant.  The defaults are ``inverse-signed`` (dominant) and
    ``direct-signed`` (antidominant).
    """
    if convention is None:
        convention = _standard(orbit.sign)
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    ideal, table, w = orbit.ideal, orbit.table, orbit.w_id
    Lw = ideal.lengths[w]
    inverse = convention.startswith("inverse")
    if orbit.sign > 0:
        cone = sorted((y for y in range(len(ideal)) if ideal.leq(w, y)), key=lambda y: ideal.lengths[y])
    else:
        cone = sorted(ideal.lower_interval(w), key=lambda y: -ideal.lengths[y])
    raw = {}
    if inverse:
        for y in cone:
            if y == w:
                raw[y] = 1
            elif orbit.sign > 0:
                lower = ideal.lower_interval(y)
                raw[y] = -sum(raw[z] * table.value_at_one(z, y) for z in raw if z in lower)
            else:
                raw[y] = -sum(table.value_at_one(y, z) * raw[z] for z in raw if ideal.leq(y, z))
        # raw is already the signed inverse (Q with its sign)
        signed = raw
    else:
        signed = {}
        for y in cone:
            p1 = table.value_at_one(w, y) if orbit.sign > 0 else table.value_at_one(y, w)
            signed[y] = (-1) ** abs(ideal.lengths[y] - Lw) * p1
    out = {}
    for y, v in signed.items():
        if not convention.endswith("-signed"):
            v = v * (-1) ** abs(ideal.lengths[y] - Lw)
        if v:
            out[y] = v
    return out


def simple_in_verma(Lam: AffineWeight, energy_bound, convention: str | None = None, delta_bound=None) -> CharacterVector:
    """[L_Lam] in the Verma basis, all terms of conformal weight <= energy_bound."""
    orbit = _orbit(Lam, energy_bound, delta_bound)
    coeffs = verma_coefficients(orbit, convention)
    entries: dict = {}
    words: dict = {}
    for y, a in coeffs.items():
        M = _dot_weight(orbit, y)
        if M.conformal_weight > energy_bound:
            continue
        entries[M] = entries.get(M, 0) + a
        words.setdefault(M, str(orbit.ideal.elements[y]))
    entries = {k: v for k, v in entries.items() if v}
    if entries.get(Lam) != 1:
        raise AssertionError("coefficient at the defining weight must be 1")
    return CharacterVector(entries, energy_bound, Lam, {k: words[k] for k in entries})


def parabolic_coefficients(Lam: AffineWeight, energy_bound, convention: str | None = None, delta_bound=None) -> CharacterVector:
    """c_{Lam,Omega} for all Omega in P^{0,+}_k with h_Omega <= energy_bound.

    The parabolic BGG resolution writes [V^0_M] as an alternating sum of
    Verma modules at u o M (u in the Weyl group of the Levi factor), and only
    u = e lands in P^{0,+}_k.  So c_{Lam,M} is the Verma coefficient at M.
    """
    if not in_P0plus_k(Lam):
        raise ValueError("weight is not integrable for the Levi factor")
    vec = simple_in_verma(Lam, energy_bound, convention, delta_bound)
    return vec.restrict(in_P0plus_k)


def levi_antisymmetry_defect(vec: CharacterVector) -> list:
    """Pairs where a_{u o M} != (-1)^{l(u)} a_M; empty for genuine characters."""
    bad = []
    if vec.defining_weight is None:
        return bad
    l = vec.defining_weight.rank
    U = levi_weyl_group(l)
    elems = [U.identity]
    frontier = [U.identity]
    while frontier:
        nxt = []
        for e in frontier:
            for s in range(U.ngens):
                if not U.is_right_descent(e, s):
                    f = U.mul_gen(e, s)
                    if f not in elems:
                        elems.append(f)
                        nxt.append(f)
        frontier = nxt
    for M, a in vec.items():
        if not in_P0plus_k(M):
            continue
        for u in elems[1:]:
            N = U.dot(u, M)
            if N.conformal_weight > vec.truncation:
                continue
            if vec[N] != (-1) ** u.length * a:
                bad.append((M, str(u), a, vec[N]))
    return bad


def linkage_coefficients(Lam: AffineWeight, energy_bound, delta_bound=None) -> CharacterVector:
    """Independent route through the composition multiplicities b = P(1).

    Only for regular dominant orbits: [V_{x o Omega} : L_{y o Omega}] =
    P_{x,y}(1), then the Levi BGG resolution gives [V^0_M : L_N] and a second
    inversion gives c_{Lam, N}.
    """
    orbit = _orbit(Lam, energy_bound, delta_bound)
    if orbit.sign < 0:
        raise ValueError("linkage route implemented for dominant orbits only")
    if singular_simple_indices(orbit.data, orbit.Omega):
        raise ValueError("linkage route implemented for regular orbits only")
    ideal, table = orbit.ideal, orbit.table
    weights = [_dot_weight(orbit, y) for y in range(len(ideal))]
    wid = {M: i for i, M in enumerate(weights)}
    par = [i for i, M in enumerate(weights) if in_P0plus_k(M)]
    U = levi_weyl_group(Lam.rank)
    uel = _finite_elements(U)
    # C[M][N] = [V^0_M : L_N]
    C = {}
    for m in par:
        row = {}
        for u in uel:
            N = U.dot(u, weights[m])
            src = wid.get(N)
            if src is None:
                if N.conformal_weight <= energy_bound:
                    raise AssertionError("Levi orbit left the ideal")
                continue
            sgn = (-1) ** u.length
            for n in par:
                if ideal.leq(src, n):
                    b = table.value_at_one(src, n)
                    if b < 0:
                        raise AssertionError("negative composition multiplicity")
                    if b:
                        row[n] = row.get(n, 0) + sgn * b
        C[m] = row
    for m, row in C.items():
        for v in row.values():
            if v < 0:
                raise AssertionError("negative parabolic composition multiplicity")
    start = wid[Lam]
    inv = invert_to_simples({m: C[m] for m in par}, order=lambda i: ideal.lengths[i])
    entries = {weights[n]: v for n, v in inv[start].items() if v}
    return CharacterVector(entries, energy_bound, Lam)


def _finite_elements(U: ReflectionGroup) -> list:
    elems = {U.identity.matrix: U.identity}
    frontier = [U.identity]
    while frontier:
        nxt = []
        for e in frontier:
            for s in range(U.ngens):
                f = U.mul_gen(e, s)
                if f.matrix not in elems:
                    elems[f.matrix] = f
                    nxt.append(f)
        frontier = nxt
    return list(elems.values())


def invert_to_simples(family: dict, order: Callable | None = None) -> dict:
    """Invert a unitriangular family ``{i: {j: coeff}}``.

    ``family[i][i]`` must be 1 and the support relation must be acyclic.
    Returns ``{i: {j: coeff}}`` with ``sum_j inv[i][j] * family[j] = e_i``.
    """
    keys = list(family)
    for i in keys:
        if family[i].get(i) != 1:
            raise NotUnitriangular(f"diagonal entry at {i!r} is {family[i].get(i)!r}")
        for j in family[i]:
            if j not in family:
                raise NotUnitriangular(f"entry {j!r} has no row")
    # topological order: j after i whenever family[i][j] != 0
    indeg = {i: 0 for i in keys}
    for i in keys:
        for j in family[i]:
            if j != i:
                indeg[j] += 1
    ready = deque(sorted((i for i in keys if indeg[i] == 0), key=order) if order else [i for i in keys if indeg[i] == 0])
    topo = []
    while ready:
        i = ready.popleft()
        topo.append(i)
        for j in family[i]:
            if j != i:
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
    if len(topo) != len(keys):
        raise NotUnitriangular("support relation has a cycle")
    pos = {i: n for n, i in enumerate(topo)}
    inv = {}
    for i in keys:
        # x_j for j reachable from i, processed in topological order
        row = {i: 1}
        for j in sorted({j for j in _reach(family, i)}, key=pos.get):
            if j == i:
                continue
            total = 0
            for k, v in row.items():
                if k != j:
                    total += v * family[k].get(j, 0)
            if total:
                row[j] = -total
        inv[i] = {j: v for j, v in row.items() if v}
    return inv


def _reach(family, i):
    seen = {i}
    stack = [i]
    while stack:
        a = stack.pop()
        for b in family[a]:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return seen
