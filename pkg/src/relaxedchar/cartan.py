"""Root and weight data for A_l and its untwisted affinization.

Finite weights are stored in the fundamental-weight basis, roots in the
simple-root basis.  The invariant form is normalised so that every root has
squared length 2, hence ``(omega_i | alpha_j) = delta_ij`` and the Gram matrix
of the fundamental weights is the inverse Cartan matrix.

The grading used throughout is the one induced by ``omega_l``: the degree of a
root is its ``alpha_l`` coefficient.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .numbers import (
    Number,
    as_number,
    format_number,
    is_integer,
    number_from_json,
    number_to_json,
    parse_number,
)


class RankMismatch(ValueError):
    pass


def _cartan(rank: int):
    return tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(rank))
        for i in range(rank)
    )


def _cartan_inverse(rank: int):
    # closed form for A_l: min(i,j) * (l+1-max(i,j)) / (l+1), 1-based
    n = rank + 1
    return tuple(
        tuple(Fraction(min(i, j) * (n - max(i, j)), n) for j in range(1, n))
        for i in range(1, n)
    )


@dataclass(frozen=True)
class RootSystemA:
    rank: int

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 1:
            raise ValueError(f"rank must be a positive integer, got {self.rank!r}")

    @property
    def cartan(self):
        return _cartan(self.rank)

    @property
    def cartan_inverse(self):
        return _cartan_inverse(self.rank)

    def simple_root(self, i: int) -> "FiniteRoot":
        """alpha_i for 1 <= i <= rank."""
        if not 1 <= i <= self.rank:
            raise IndexError(i)
        return FiniteRoot(tuple(1 if j == i - 1 else 0 for j in range(self.rank)))

    def fundamental_weight(self, i: int) -> "FiniteWeight":
        if not 1 <= i <= self.rank:
            raise IndexError(i)
        return FiniteWeight(tuple(Fraction(int(j == i - 1)) for j in range(self.rank)))

    def zero_weight(self) -> "FiniteWeight":
        return FiniteWeight((Fraction(0),) * self.rank)

    def zero_root(self) -> "FiniteRoot":
        return FiniteRoot((0,) * self.rank)

    def rho(self) -> "FiniteWeight":
        return FiniteWeight((Fraction(1),) * self.rank)

    def beta(self, i: int) -> "FiniteRoot":
        """beta_i = alpha_i + ... + alpha_l; beta(0) is beta_1 + ... + beta_l."""
        l = self.rank
        if i == 0:
            return FiniteRoot(tuple(j + 1 for j in range(l)))
        if not 1 <= i <= l:
            raise IndexError(i)
        return FiniteRoot(tuple(1 if j >= i - 1 else 0 for j in range(l)))

    def highest_root(self) -> "FiniteRoot":
        return FiniteRoot((1,) * self.rank)

    def positive_roots(self) -> tuple["FiniteRoot", ...]:
        return _positive_roots(self.rank)

    def roots(self) -> tuple["FiniteRoot", ...]:
        pos = self.positive_roots()
        return pos + tuple(-r for r in pos)

    def graded_roots(self, n: int) -> tuple["FiniteRoot", ...]:
        return tuple(r for r in self.roots() if grading_degree(r) == n)

    def root_to_weight(self, coords: Sequence) -> "FiniteWeight":
        C = self.cartan
        l = self.rank
        return FiniteWeight(
            tuple(sum((C[i][j] * coords[j] for j in range(l)), Fraction(0)) for i in range(l))
        )

    def weight_to_root_coords(self, lam: "FiniteWeight") -> tuple[Fraction, ...]:
        """Coordinates of a weight in the (rational) simple-root basis."""
        Ci = self.cartan_inverse
        l = self.rank
        return tuple(sum((Ci[i][j] * lam.coords[j] for j in range(l)), Fraction(0)) for i in range(l))

    def root_coords_to_weight(self, coords: Sequence) -> "FiniteWeight":
        return self.root_to_weight(coords)


@lru_cache(maxsize=None)
def _positive_roots(rank: int):
    out = []
    for i in range(rank):
        for j in range(i, rank):
            out.append(FiniteRoot(tuple(1 if i <= t <= j else 0 for t in range(rank))))
    out.sort(key=lambda r: (sum(r.coords), r.coords))
    return tuple(out)


@dataclass(frozen=True)
class FiniteWeight:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(as_number(c) for c in self.coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def _check(self, other):
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")

    def __add__(self, other):
        if isinstance(other, FiniteRoot):
            other = other.to_weight()
        if not isinstance(other, FiniteWeight):
            return NotImplemented
        self._check(other)
        return FiniteWeight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        if isinstance(other, FiniteRoot):
            other = other.to_weight()
        if not isinstance(other, FiniteWeight):
            return NotImplemented
        self._check(other)
        return FiniteWeight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return FiniteWeight(tuple(-a for a in self.coords))

    def __mul__(self, scalar):
        s = as_number(scalar)
        return FiniteWeight(tuple(s * a for a in self.coords))

    __rmul__ = __mul__

    def root_coords(self) -> tuple[Fraction, ...]:
        return RootSystemA(self.rank).weight_to_root_coords(self)

    def __str__(self):
        return "[" + ",".join(format_number(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class FiniteRoot:
    coords: tuple

    def __post_init__(self):
        cs = tuple(self.coords)
        if any(not is_integer(c) for c in cs):
            raise ValueError(f"root coordinates must be integers: {cs}")
        object.__setattr__(self, "coords", tuple(int(c) for c in cs))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_root(self) -> bool:
        return self in _root_set(self.rank)

    def is_positive(self) -> bool:
        return self.is_root() and all(c >= 0 for c in self.coords)

    def to_weight(self) -> FiniteWeight:
        return RootSystemA(self.rank).root_to_weight(self.coords)

    def __add__(self, other):
        if not isinstance(other, FiniteRoot):
            return NotImplemented
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")
        return FiniteRoot(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return FiniteRoot(tuple(-a for a in self.coords))

    def __mul__(self, n: int):
        return FiniteRoot(tuple(n * a for a in self.coords))

    __rmul__ = __mul__

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@lru_cache(maxsize=None)
def _root_set(rank: int):
    pos = _positive_roots(rank)
    return frozenset(pos) | frozenset(-r for r in pos)


@dataclass(frozen=True)
class AffineWeight:
    """``finite + level * Lambda_0 + delta_coeff * delta``."""

    finite: FiniteWeight
    level: object
    delta_coeff: object = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "level", as_number(self.level))
        object.__setattr__(self, "delta_coeff", as_number(self.delta_coeff))

    @property
    def rank(self) -> int:
        return self.finite.rank

    @property
    def conformal_weight(self):
        """h = Lambda(-D)."""
        return -self.delta_coeff

    def __add__(self, other):
        if isinstance(other, AffineRoot):
            return AffineWeight(self.finite + other.finite, self.level, self.delta_coeff + other.delta_mult)
        if not isinstance(other, AffineWeight):
            return NotImplemented
        return AffineWeight(
            self.finite + other.finite, self.level + other.level, self.delta_coeff + other.delta_coeff
        )

    def __sub__(self, other):
        if isinstance(other, AffineRoot):
            return AffineWeight(self.finite - other.finite, self.level, self.delta_coeff - other.delta_mult)
        if not isinstance(other, AffineWeight):
            return NotImplemented
        return AffineWeight(
            self.finite - other.finite, self.level - other.level, self.delta_coeff - other.delta_coeff
        )

    def __str__(self):
        return (
            f"rank={self.rank} level={format_number(self.level)} "
            f"lambda={self.finite} d={format_number(self.delta_coeff)}"
        )


@dataclass(frozen=True)
class AffineRoot:
    """``finite + delta_mult * delta``; ``finite`` may be the zero root."""

    finite: FiniteRoot
    delta_mult: int

    def __post_init__(self):
        if not is_integer(self.delta_mult):
            raise ValueError("delta multiplicity must be an integer")
        object.__setattr__(self, "delta_mult", int(self.delta_mult))

    @property
    def rank(self) -> int:
        return self.finite.rank

    def is_real(self) -> bool:
        return not self.finite.is_zero()

    def is_positive(self) -> bool:
        if self.delta_mult > 0:
            return True
        return self.delta_mult == 0 and self.finite.is_positive()

    def __neg__(self):
        return AffineRoot(-self.finite, -self.delta_mult)

    def __add__(self, other):
        if not isinstance(other, AffineRoot):
            return NotImplemented
        return AffineRoot(self.finite + other.finite, self.delta_mult + other.delta_mult)

    def __str__(self):
        return f"{self.finite}+{self.delta_mult}d"


def affine_simple_root(rs: RootSystemA, i: int) -> AffineRoot:
    """alpha_0 = delta - theta, alpha_i finite for i >= 1."""
    if i == 0:
        return AffineRoot(-rs.highest_root(), 1)
    return AffineRoot(rs.simple_root(i), 0)


def bilinear(a, b) -> Fraction:
    """Normalised invariant form on finite weights (or roots)."""
    if isinstance(a, FiniteRoot):
        a = a.to_weight()
    if isinstance(b, FiniteRoot):
        b = b.to_weight()
    if a.rank != b.rank:
        raise RankMismatch(f"rank {a.rank} vs {b.rank}")
    Ci = _cartan_inverse(a.rank)
    l = a.rank
    total = Fraction(0)
    for i in range(l):
        if a.coords[i] == 0:
            continue
        row = Ci[i]
        total += a.coords[i] * sum((row[j] * b.coords[j] for j in range(l)), Fraction(0))
    return total


def norm2(a) -> Fraction:
    return bilinear(a, a)


def affine_bilinear(a: AffineWeight, b: AffineWeight):
    """(a|b) with (Lambda_0|delta) = 1, (Lambda_0|Lambda_0) = (delta|delta) = 0."""
    return bilinear(a.finite, b.finite) + a.level * b.delta_coeff + a.delta_coeff * b.level


def pairing(lam, alpha) -> Number:
    """<lam, alpha^vee>; every root has squared length 2."""
    if isinstance(alpha, AffineRoot):
        if alpha.finite.is_zero():
            raise ValueError("imaginary root has no coroot")
        fin = lam.finite if isinstance(lam, AffineWeight) else lam
        if fin.rank != alpha.rank:
            raise RankMismatch(f"rank {fin.rank} vs {alpha.rank}")
        base = sum((c * r for c, r in zip(fin.coords, alpha.finite.coords)), Fraction(0))
        if alpha.delta_mult == 0:
            return base
        if not isinstance(lam, AffineWeight):
            raise TypeError("affine root needs an affine weight")
        return base + alpha.delta_mult * lam.level
    if isinstance(alpha, FiniteRoot):
        if alpha.is_zero():
            raise ValueError("zero root")
        fin = lam.finite if isinstance(lam, AffineWeight) else lam
        if fin.rank != alpha.rank:
            raise RankMismatch(f"rank {fin.rank} vs {alpha.rank}")
        return sum((c * r for c, r in zip(fin.coords, alpha.coords)), Fraction(0))
    raise TypeError(f"not a root: {alpha!r}")


def grading_degree(alpha: FiniteRoot) -> int:
    if not alpha.is_root():
        raise ValueError(f"not a root: {alpha}")
    return alpha.coords[-1]


@dataclass(frozen=True)
class StructureConstants:
    rank: int
    dual_coxeter: int
    dim_g: int
    dim_g0: int
    rho_bar: FiniteWeight
    rho: AffineWeight


def structure_constants(rank: int) -> StructureConstants:
    rs = RootSystemA(rank)
    h = rank + 1
    return StructureConstants(
        rank=rank,
        dual_coxeter=h,
        dim_g=rank * (rank + 2),
        dim_g0=rank * rank,
        rho_bar=rs.rho(),
        rho=AffineWeight(rs.rho(), h, 0),
    )


def in_Pbar0plus(lam: FiniteWeight) -> bool:
    return all(is_integer(c) and c >= 0 for c in lam.coords[:-1])


def in_Pbarplus(lam: FiniteWeight) -> bool:
    return all(is_integer(c) and c >= 0 for c in lam.coords)


def in_P0plus_k(Lam: AffineWeight) -> bool:
    return in_Pbar0plus(Lam.finite)


def sugawara_delta(lam: FiniteWeight, level) -> Number:
    """d = -(lam | lam + 2 rho) / (2 kappa)."""
    kappa = as_number(level) + lam.rank + 1
    if kappa == 0:
        raise ValueError("critical level")
    rho = RootSystemA(lam.rank).rho()
    return -bilinear(lam, lam + rho * 2) / (2 * kappa)


def sugawara_weight(lam, level) -> AffineWeight:
    if not isinstance(lam, FiniteWeight):
        lam = FiniteWeight(tuple(lam))
    return AffineWeight(lam, level, sugawara_delta(lam, level))


# weight literal: rank=2 level=-3/2 lambda=[0,-1/2] d=0

_FIELD_RE = re.compile(r"(\w+)\s*=\s*(\[[^\]]*\]|\S+)")


def parse_vector(text: str) -> tuple:
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"expected [a,b,...], got {text!r}")
    inner = s[1:-1].strip()
    if not inner:
        return ()
    return tuple(parse_number(p) for p in inner.split(","))


def parse_weight_literal(text: str) -> AffineWeight:
    """Parse ``rank=.. level=.. lambda=[..] [d=..]``; missing d means Sugawara."""
    fields = dict(_FIELD_RE.findall(text))
    unknown = set(fields) - {"rank", "level", "lambda", "d"}
    if unknown:
        raise ValueError(f"unknown fields {sorted(unknown)} in weight literal")
    for key in ("level", "lambda"):
        if key not in fields:
            raise ValueError(f"weight literal is missing {key}=")
    lam = parse_vector(fields["lambda"])
    if any(not isinstance(c, Fraction) for c in lam):
        raise ValueError("finite weight coordinates must be rational")
    rank = int(fields.get("rank", len(lam)))
    if rank != len(lam):
        raise ValueError(f"rank={rank} but lambda has {len(lam)} coordinates")
    level = parse_number(fields["level"])
    fw = FiniteWeight(lam)
    if "d" in fields:
        return AffineWeight(fw, level, parse_number(fields["d"]))
    return sugawara_weight(fw, level)


def weight_to_json(Lam: AffineWeight) -> dict:
    return {
        "rank": Lam.rank,
        "level": number_to_json(Lam.level),
        "lambda": [number_to_json(c) for c in Lam.finite.coords],
        "d": number_to_json(Lam.delta_coeff),
    }


def weight_from_json(obj) -> AffineWeight:
    if isinstance(obj, str):
        obj = json.loads(obj)
    lam = FiniteWeight(tuple(number_from_json(c) for c in obj["lambda"]))
    if lam.rank != obj["rank"]:
        raise ValueError("rank does not match lambda")
    return AffineWeight(lam, number_from_json(obj["level"]), number_from_json(obj["d"]))


def finite_weight(coords: Iterable) -> FiniteWeight:
    return FiniteWeight(tuple(as_number(c) for c in coords))
