"""Small exact linear algebra over Q and Z (dense lists, tiny dimensions)."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def rank_q(rows: Sequence[Sequence[Fraction]]) -> int:
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / pv
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _echelon_z(rows: Matrix, ncols: int) -> tuple[Matrix, int]:
    """Integer row echelon form over the first ``ncols`` columns.

    Uses only unimodular row operations.  Returns the reduced rows and the
    number of pivot rows.
    """
    m = [list(r) for r in rows]
    prow = 0
    for col in range(ncols):
        while True:
            nz = [i for i in range(prow, len(m)) if m[i][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(m[i][col]))
            m[prow], m[piv] = m[piv], m[prow]
            done = True
            for i in range(prow + 1, len(m)):
                if m[i][col] != 0:
                    f = m[i][col] // m[prow][col]
                    m[i] = [a - f * b for a, b in zip(m[i], m[prow])]
                    if m[i][col] != 0:
                        done = False
            if done:
                break
        if any(m[i][col] != 0 for i in range(prow, len(m))):
            prow += 1
        if prow == len(m):
            break
    return m, prow


def hnf_rows(rows: Matrix) -> Matrix:
    """Canonical row Hermite normal form of the lattice spanned by ``rows``.

    Pivots are positive, entries above a pivot are reduced into
    ``[0, pivot)`` and zero rows are dropped.
    """
    if not rows:
        return []
    n = len(rows[0])
    m, _ = _echelon_z(rows, n)
    m = [r for r in m if any(r)]
    pivots = []
    for i, r in enumerate(m):
        c = next(j for j, v in enumerate(r) if v != 0)
        if r[c] < 0:
            m[i] = r = [-v for v in r]
        pivots.append(c)
    for i, c in enumerate(pivots):
        for h in range(i):
            f = m[h][c] // m[i][c]
            if f:
                m[h] = [a - f * b for a, b in zip(m[h], m[i])]
    return m


def integer_kernel(mat: Matrix, ncols: int) -> Matrix:
    """Basis of ``{x in Z^ncols : mat @ x = 0}`` (automatically saturated)."""
    if not mat:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    nrows = len(mat)
    # rows of mat^T augmented with the identity; row ops keep the identity part unimodular
    aug = [[mat[r][c] for r in range(nrows)] + [int(c == j) for j in range(ncols)] for c in range(ncols)]
    red, _ = _echelon_z(aug, nrows)
    kernel = [r[nrows:] for r in red if not any(r[:nrows])]
    return hnf_rows(kernel)


def clear_denominators(row: Sequence[Fraction]) -> list[int]:
    den = 1
    for v in row:
        den = den * v.denominator // gcd(den, v.denominator)
    return [int(v * den) for v in row]


def det_int(mat: Matrix) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(mat)
    if n == 0:
        return 1
    m = [list(r) for r in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def gcd_maximal_minors(rows: Matrix) -> int:
    """gcd of all r x r minors of an r x n integer matrix of rank r."""
    r = len(rows)
    if r == 0:
        return 1
    n = len(rows[0])
    g = 0
    for cols in combinations(range(n), r):
        g = gcd(g, det_int([[row[c] for c in cols] for row in rows]))
    return g
