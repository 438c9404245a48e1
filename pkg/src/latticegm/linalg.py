"""Exact linear algebra over the integers and rationals.

Matrices are lists of rows.  Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination.

    Every intermediate entry is a minor of the input, so the exact divisions
    below never leave the integers.
    """
    M = [list(map(int, r)) for r in rows]
    if not M:
        return 0
    n_rows, n_cols = len(M), len(M[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        if rank == n_rows:
            break
        piv = next((r for r in range(rank, n_rows) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][col]
        for r in range(rank + 1, n_rows):
            a = M[r][col]
            row_r, row_k = M[r], M[rank]
            for c in range(col + 1, n_cols):
                row_r[c] = (p * row_r[c] - a * row_k[c]) // prev
            row_r[col] = 0
        prev = p
        rank += 1
    return rank


def rref(rows: Sequence[Sequence], n_cols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    M = [[Fraction(x) for x in r] for r in rows]
    if n_cols is None:
        n_cols = len(M[0]) if M else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def nullspace(rows: Sequence[Sequence], n_cols: int) -> list[list[Fraction]]:
    """Basis of {x : rows . x = 0} over Q."""
    R, pivots = rref(rows, n_cols) if rows else ([], [])
    free = [c for c in range(n_cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """One solution of rows . x = rhs over Q, or None if inconsistent."""
    n_cols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug, n_cols + 1)
    if n_cols in pivots:
        return None
    x = [Fraction(0)] * n_cols
    for row, pc in zip(R, pivots):
        x[pc] = row[n_cols]
    return x


def independent_rows(rows: Sequence[Sequence]) -> list[int]:
    """Indices of a maximal linearly independent subset of rows (greedy, in order)."""
    n_rows = len(rows)
    if not n_rows:
        return []
    T = [[Fraction(rows[i][j]) for i in range(n_rows)] for j in range(len(rows[0]))]
    _, pivots = rref(T, n_rows)
    return pivots


def primitive(vec: Sequence[Fraction]) -> list[int]:
    """Smallest positive multiple of a rational vector with coprime integer entries."""
    den = 1
    for x in vec:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints] if g else ints


def matvec(rows: Sequence[Sequence], x: Sequence) -> list:
    return [sum((a * b for a, b in zip(r, x)), 0) for r in rows]


def transpose(rows: Sequence[Sequence]) -> list[list]:
    return [list(c) for c in zip(*rows)] if rows else []
