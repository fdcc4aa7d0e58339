import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from borelhilb.linalg import (
    identity,
    is_invertible,
    matmul,
    nullspace,
    random_integer_matrix,
    random_upper_triangular,
    rank,
    rref,
    solve_right,
)
from borelhilb.polys import act, format_poly, parse_poly, pmul

small = st.integers(-6, 6)


@settings(max_examples=60)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_rank_and_nullspace_match_sympy(r, c, data):
    rows = [[Fraction(data.draw(small)) for _ in range(c)] for _ in range(r)]
    assert rank(rows, c) == sympy.Matrix(rows).rank()
    ns = nullspace(rows, c)
    assert len(ns) == c - rank(rows, c)
    for v in ns:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in rows)


def test_rref_column_order():
    rows = [[Fraction(1), Fraction(1), Fraction(0)], [Fraction(0), Fraction(1), Fraction(1)]]
    reduced, pivots = rref(rows, 3, column_order=[2, 1, 0])
    assert pivots == [2, 1]
    for row, p in zip(reduced, pivots):
        assert row[p] == 1


def test_solve_and_matrices():
    rng = random.Random(0)
    for _ in range(10):
        g = random_integer_matrix(rng, 3)
        assert is_invertible(g)
        b = [[Fraction(rng.randint(-5, 5))] for _ in range(3)]
        x = solve_right(g, b)
        assert matmul(g, x) == b
    u = random_upper_triangular(rng, 4)
    assert all(u[i][j] == 0 for i in range(4) for j in range(i))
    assert solve_right([[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]], identity(2)) is None


def test_poly_parse_format():
    p = parse_poly("x0^2 - 3/2*x1*x2 + x2^2", 3)
    assert p == {(2, 0, 0): 1, (0, 1, 1): Fraction(-3, 2), (0, 0, 2): 1}
    assert parse_poly(format_poly(p), 3) == p
    with pytest.raises(ValueError):
        parse_poly("x0 +", 3)


def test_matrix_action_matches_sympy():
    rng = random.Random(4)
    g = random_integer_matrix(rng, 3, 5)
    p = parse_poly("x0^2 + 2*x0*x1 - x2^2", 3)
    xs = sympy.symbols("x0:3")
    images = [sum(g[k][i] * xs[k] for k in range(3)) for i in range(3)]
    expr = sympy.expand(sum(c * images[0] ** a[0] * images[1] ** a[1] * images[2] ** a[2]
                            for a, c in p.items()))
    ours = act(g, p)
    poly = sympy.Poly(expr, *xs)
    assert {m: Fraction(int(c.p), int(c.q)) for m, c in zip(poly.monoms(), poly.coeffs())} == ours
    assert pmul(p, {(0, 0, 0): Fraction(2)}) == {a: 2 * c for a, c in p.items()}
