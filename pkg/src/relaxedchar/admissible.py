"""Kac-Wakimoto admissibility and the relaxed spectrum at denominator-2 levels of A_2."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .cartan import (
    AffineRoot,
    AffineWeight,
    FiniteWeight,
    RootSystemA,
    bilinear,
    finite_weight,
    in_P0plus_k,
    in_Pbarplus,
    sugawara_weight,
    weight_to_json,
)
from .characters import ModuleSymbol
from .linalg import rank as exact_rank
from .numbers import as_number, format_number, is_rational, parse_number
from .weyl import CriticalLevel, integral_data


@dataclass
class AdmissibilityReport:
    weight: AffineWeight
    is_admissible: bool
    violated_root: AffineRoot | None = None
    integral_span_ok: bool = False

    def to_json(self) -> dict:
        out = {
            "weight": weight_to_json(self.weight),
            "admissible": self.is_admissible,
            "integral_span_ok": self.integral_span_ok,
        }
        if self.violated_root is not None:
            out["violated_root"] = {
                "finite": list(self.violated_root.finite.coords),
                "delta": self.violated_root.delta_mult,
            }
        return out


def _violated_root(Lam: AffineWeight):
    """A positive real coroot with nonpositive integral pairing against Lam + rho."""
    l = Lam.rank
    rs = RootSystemA(l)
    kappa = as_number(Lam.level) + l + 1
    shifted = Lam.finite + rs.rho()
    u = kappa.denominator
    for r in rs.roots():
        a = bilinear(shifted, r.to_weight())
        n0 = 0 if r.is_positive() else 1
        # the pairing a + n kappa is integral for n in one residue class mod u
        for n in range(n0, n0 + u):
            p = a + n * kappa
            if p.denominator == 1:
                if kappa < 0 or p <= 0:
                    # kappa < 0: the pairing decreases without bound along the class
                    m = n
                    if kappa < 0:
                        while a + m * kappa > 0:
                            m += u
                    return AffineRoot(r, m)
                break
    return None


def _span_ok(Lam: AffineWeight) -> bool:
    data = integral_data(Lam)
    rows = [list(g.finite.coords) + [g.delta_mult] for g in data.simple_integral_roots]
    return exact_rank([[Fraction(x) for x in r] for r in rows]) == Lam.rank + 1


def is_admissible(Lam: AffineWeight, denominator_hint: int | None = None) -> AdmissibilityReport:
    l = Lam.rank
    kappa = as_number(Lam.level) + l + 1
    if kappa == 0:
        raise CriticalLevel("critical level")
    if not is_rational(kappa) or not all(is_rational(c) for c in Lam.finite.coords):
        # irrational data: only finitely many integral roots, so the span fails
        return AdmissibilityReport(Lam, False, None, False)
    if denominator_hint is not None and as_number(Lam.level).denominator != denominator_hint:
        raise ValueError(f"level {format_number(Lam.level)} does not have denominator {denominator_hint}")
    bad = _violated_root(Lam)
    span = _span_ok(Lam)
    return AdmissibilityReport(Lam, bad is None and span, bad, span)


# ---------------------------------------------------------------- Sing data


@dataclass(frozen=True)
class SingCoset:
    """{mu : (normal | mu) - offset in Z}, a codimension-one coset family."""

    normal: FiniteWeight
    offset: Fraction

    def contains(self, mu: FiniteWeight) -> bool:
        v = bilinear(self.normal, mu) - self.offset
        return Fraction(v).denominator == 1


@dataclass(frozen=True)
class SingData:
    weight: FiniteWeight
    cosets: tuple

    def __post_init__(self):
        l = self.weight.rank
        if len(self.cosets) != l + 1:
            raise ValueError(f"Sing data needs exactly {l + 1} cosets, got {len(self.cosets)}")
        if len(set(self.cosets)) != len(self.cosets):
            raise ValueError("Sing cosets must be pairwise distinct")

    def is_singular(self, mu: FiniteWeight) -> bool:
        return any(c.contains(mu) for c in self.cosets)

    def to_json(self) -> dict:
        return {
            "weight": [format_number(c) for c in self.weight.coords],
            "cosets": [
                {"normal": [format_number(c) for c in s.normal.coords], "offset": format_number(s.offset)}
                for s in self.cosets
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "SingData":
        w = finite_weight(parse_number(str(c)) for c in obj["weight"])
        cosets = tuple(
            SingCoset(finite_weight(parse_number(str(c)) for c in s["normal"]), Fraction(parse_number(str(s["offset"]))))
            for s in obj["cosets"]
        )
        return cls(w, cosets)


def load_sing(path) -> dict:
    """Read a JSON file holding one Sing description or a list of them."""
    obj = json.loads(Path(path).read_text())
    if isinstance(obj, dict):
        obj = [obj]
    out = {}
    for item in obj:
        sd = SingData.from_json(item)
        out[sd.weight] = sd
    return out


# ---------------------------------------------------------------- enumeration


def _half_box(radius: int, den: int):
    vals = []
    for n in range(-radius * den, radius * den + 1):
        vals.append(Fraction(n, den))
    return vals


def admissible_weights(rank: int, level, radius: int, den: int | None = None) -> list:
    """All admissible weights (Sugawara d) whose coordinates lie in (1/den)Z with |coord| <= radius."""
    level = as_number(level)
    if den is None:
        den = level.denominator
    out = []
    box = _half_box(radius, den)
    for coords in itertools.product(box, repeat=rank):
        Lam = sugawara_weight(finite_weight(coords), level)
        if is_admissible(Lam).is_admissible:
            out.append(Lam)
    return out


@dataclass
class SpectrumEntry:
    symbol: ModuleSymbol
    report: AdmissibilityReport
    cosets: str
    sing: SingData | None = None

    def to_json(self) -> dict:
        d = self.report.to_json()
        d["kind"] = self.symbol.kind
        d["cosets"] = self.cosets
        if self.sing is not None:
            d["sing"] = self.sing.to_json()
        return d


def search_radius(level) -> int:
    """Box radius for the coordinate search: ceil(p) + 1 where k + 3 = p/2."""
    kappa = as_number(level) + 3
    return math.ceil(2 * kappa) + 1


def _spectrum_weights(level, radius: int) -> list:
    out = []
    for Lam in admissible_weights(2, level, radius, 2):
        if in_P0plus_k(Lam) and not in_Pbarplus(Lam.finite):
            out.append(Lam)
    return sorted(out, key=lambda L: tuple(L.finite.coords))


def enumerate_spectrum(rank: int, level, sing: dict | None = None, check_stable: bool = True) -> list:
    """Spectrum weights of relaxed modules at k = p/2 - 3, p odd >= 3.

    ``sing`` maps finite weights to :class:`SingData`; weights without an
    entry get the coset annotation ``"unresolved"``.
    """
    if rank != 2:
        raise ValueError("spectrum enumeration is implemented for rank 2 only")
    level = as_number(level)
    kappa = level + 3
    p = 2 * kappa
    if kappa.denominator != 2 or p.denominator != 1 or p < 3:
        raise ValueError("level must satisfy k + 3 = p/2 with p odd >= 3")
    R = search_radius(level)
    found = _spectrum_weights(level, R)
    if check_stable:
        wider = _spectrum_weights(level, R + 2)
        if wider != found:
            raise AssertionError("spectrum changed when the search box was enlarged")
    out = []
    for Lam in found:
        sd = (sing or {}).get(Lam.finite)
        tag = "all cosets outside Sing" if sd is not None else "unresolved"
        out.append(SpectrumEntry(ModuleSymbol("RelaxedSimple", Lam), is_admissible(Lam), tag, sd))
    return out
