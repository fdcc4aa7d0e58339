"""Exact Gauss-Jordan elimination over the rationals."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence


def rref(rows: Sequence[Sequence], ncols: int, column_order: Sequence[int] | None = None):
    """Reduced row echelon form with pivots chosen in ``column_order``.

    Returns ``(reduced_rows, pivots)`` where ``pivots[k]`` is the pivot
    column of ``reduced_rows[k]``; zero rows are dropped.  Each pivot entry
    is 1 and every other row is zero in that column.
    """
    order = list(range(ncols)) if column_order is None else list(column_order)
    work = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    top = 0
    for c in order:
        if top == len(work):
            break
        p = next((k for k in range(top, len(work)) if work[k][c] != 0), None)
        if p is None:
            continue
        work[top], work[p] = work[p], work[top]
        row = work[top]
        inv = 1 / row[c]
        if inv != 1:
            row = work[top] = [x * inv for x in row]
        nz = [j for j in range(ncols) if row[j] != 0]
        for k in range(len(work)):
            if k != top:
                f = work[k][c]
                if f != 0:
                    other = work[k]
                    for j in nz:
                        other[j] -= f * row[j]
        pivots.append(c)
        top += 1
    return work[:top], pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list:
    """Basis of ``{x : rows @ x = 0}``, one vector per free column."""
    reduced, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[free]
        basis.append(v)
    return basis


def solve_right(a: Sequence[Sequence], b: Sequence[Sequence]):
    """Solve ``a @ x = b`` for square invertible ``a``; None if singular."""
    size = len(a)
    width = len(b[0]) if b else 0
    aug = [list(a[i]) + list(b[i]) for i in range(size)]
    reduced, pivots = rref(aug, size + width, column_order=range(size))
    if pivots != list(range(size)):
        return None
    return [r[size:] for r in reduced]


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def identity(size: int):
    return [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]


def is_invertible(a) -> bool:
    return rank(a, len(a)) == len(a)


def random_rational(rng: random.Random, height: int = 9, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if x != 0 or not nonzero:
            return x


def random_upper_triangular(rng: random.Random, size: int, height: int = 9):
    """Invertible upper-triangular rational matrix (entry [k][i] is zero for k > i)."""
    return [[random_rational(rng, height, nonzero=(k == i)) if k <= i else Fraction(0)
             for i in range(size)] for k in range(size)]


def random_diagonal(rng: random.Random, size: int, height: int = 9):
    return [[random_rational(rng, height, nonzero=True) if k == i else Fraction(0)
             for i in range(size)] for k in range(size)]


def random_integer_matrix(rng: random.Random, size: int, height: int = 50):
    """Uniform integer entries in [-height, height], resampled until invertible."""
    while True:
        g = [[Fraction(rng.randint(-height, height)) for _ in range(size)] for _ in range(size)]
        if is_invertible(g):
            return g
