"""Integer and rational lattices in row-basis form: Hermite normal form, duals, intersections."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

Matrix = Tuple[Tuple, ...]


def hnf(rows: Sequence[Sequence[int]], ncols: int) -> Tuple[Tuple[int, ...], ...]:
    """Row Hermite normal form of the lattice spanned by ``rows`` (zero rows dropped).

    Pivots are positive and entries above each pivot lie in [0, pivot).
    """
    A = [list(map(int, r)) for r in rows if any(r)]
    out: List[List[int]] = []
    pivots: List[int] = []
    for col in range(ncols):
        live = [r for r in A if r[col]]
        if not live:
            continue
        while len(live) > 1:
            piv = min(live, key=lambda r: abs(r[col]))
            for r in live:
                if r is not piv:
                    q = r[col] // piv[col]
                    for k in range(ncols):
                        r[k] -= q * piv[k]
            live = [r for r in A if r[col]]
        piv = live[0]
        A = [r for r in A if r is not piv and any(r)]
        if piv[col] < 0:
            piv = [-a for a in piv]
        out.append(piv)
        pivots.append(col)
    for i, row in enumerate(out):
        p = pivots[i]
        for j in range(i):
            q = out[j][p] // row[p]
            if q:
                out[j] = [a - q * b for a, b in zip(out[j], row)]
    return tuple(tuple(r) for r in out)


def _lcm_den(rows) -> int:
    den = 1
    for r in rows:
        for a in r:
            d = Fraction(a).denominator
            den = den * d // gcd(den, d)
    return den


def rational_hnf(rows: Sequence[Sequence[Fraction]], ncols: int) -> Tuple[Tuple[Fraction, ...], ...]:
    den = _lcm_den(rows)
    ints = [[int(Fraction(a) * den) for a in r] for r in rows]
    return tuple(tuple(Fraction(a, den) for a in r) for r in hnf(ints, ncols))


def inverse(M: Sequence[Sequence]) -> List[List[Fraction]]:
    n = len(M)
    A = [[Fraction(a) for a in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next(i for i in range(c, n) if A[i][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [a * inv for a in A[c]]
        for i in range(n):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return [row[n:] for row in A]


def transpose(M):
    return [list(col) for col in zip(*M)]


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def dual(basis: Sequence[Sequence]) -> Tuple[Tuple[Fraction, ...], ...]:
    """Dual lattice {w : w . v integral for all v} of a full-rank row basis."""
    n = len(basis)
    return rational_hnf(transpose(inverse(basis)), n)


def lattice_sum(a, b, ncols: int):
    return rational_hnf(list(a) + list(b), ncols)


def lattice_intersection(a, b, ncols: int):
    """Intersection of two full-rank lattices, through their duals."""
    return dual(lattice_sum(dual(a), dual(b), ncols))
