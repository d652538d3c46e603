"""Fraction-free (Bareiss) elimination over the integers."""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence


def _integerize(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        den = lcm(*(f.denominator for f in fr)) if fr else 1
        out.append([int(f * den) for f in fr])
    return out


def bareiss_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix; every intermediate entry stays an exact integer."""
    M = _integerize(rows)
    if not M or not M[0]:
        return 0
    nrows, ncols = len(M), len(M[0])
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pr = M[r]
        for i in range(r + 1, nrows):
            row = M[i]
            f = row[c]
            for j in range(c + 1, ncols):
                # exact division is the Bareiss invariant
                row[j] = (pr[c] * row[j] - f * pr[j]) // prev
            row[c] = 0
        prev = pr[c]
        r += 1
        if r == nrows:
            break
    return r


def bareiss_determinant(rows: Sequence[Sequence[int]]) -> int:
    M = [list(map(int, row)) for row in rows]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[-1][-1]
