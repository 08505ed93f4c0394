"""Relaxed spectrum of affine sl(3) at k = p/2 - 3 and the rank of its span.

For p = 3 the search finds one weight and for p = 5 it finds six.  The
eta-normalised strings of the p = 5 modules span a 4-dimensional space.

    python3 tutorials/rank2_spectrum.py
"""

from relaxedchar.admissible import enumerate_spectrum
from relaxedchar.characters import modular_span, relaxed_simple_string

for level in ("-3/2", "-1/2"):
    entries = enumerate_spectrum(2, level)
    print(f"k = {level}: {len(entries)} spectrum weights")
    for e in entries:
        s = relaxed_simple_string(e.symbol.weight, 5)
        print(f"  {e.symbol.weight.finite}  base {s.base}  {[int(c) for c in s.coeffs]}  ({e.cosets})")
    rep = modular_span([e.symbol.weight for e in entries], (10, 15))
    print(f"  span ranks {rep.ranks}")
