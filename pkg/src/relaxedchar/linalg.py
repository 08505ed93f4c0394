"""Exact rank by Gaussian elimination."""

from __future__ import annotations

from fractions import Fraction


def rank(rows) -> int:
    """Rank of a matrix given as a sequence of rows of exact numbers."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = max(len(r) for r in m)
    for r in m:
        r.extend([Fraction(0)] * (ncols - len(r)))
    rk = 0
    for col in range(ncols):
        piv = next((i for i in range(rk, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        p = m[rk]
        inv = 1 / Fraction(p[col]) if isinstance(p[col], (int, Fraction)) else 1 / p[col]
        for i in range(rk + 1, len(m)):
            f = m[i][col]
            if f:
                f = f * inv
                row = m[i]
                for j in range(col, ncols):
                    if p[j]:
                        row[j] = row[j] - f * p[j]
        rk += 1
        if rk == len(m):
            break
    return rk
