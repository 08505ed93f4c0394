"""Walk through affine sl(2) at level -1/2.

At this level the admissible weights with rational Levi part include the
vacuum, -1/2, -3/2 and 1.  The script prints the relaxed strings, the
reduced (Virasoro) characters and checks that they match after multiplying
by eta^{-2}.  It then asks the Gram-matrix oracle to confirm one string.

    python3 tutorials/rank1_half_level.py
"""

from fractions import Fraction

from relaxedchar.admissible import admissible_weights
from relaxedchar.cartan import finite_weight, sugawara_weight
from relaxedchar.characters import central, main_identity_check, relaxed_simple_string, w_ordinary_character
from relaxedchar.oracle import oracle_string_limit

K = Fraction(-1, 2)
N = 8

cd = central(1, K)
print(f"c = {cd.c_affine}, c_W = {cd.c_w}")

for Lam in admissible_weights(1, K, 3):
    s = relaxed_simple_string(Lam, N)
    w = w_ordinary_character(Lam, N)
    rep = main_identity_check(Lam, None, N)
    print(f"lambda = {Lam.finite}: relaxed {[int(c) for c in s.coeffs]} W {[int(c) for c in w.coeffs]} match={rep.ok}")

# the oracle builds the module from Gram matrices, no KL input
Lam = sugawara_weight(finite_weight([K]), K)
got = oracle_string_limit(Lam, 3)
print("oracle string for -1/2:", [int(got[i]) for i in range(4)])
