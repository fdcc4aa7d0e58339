import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from borelhilb.hilbert import (
    HilbertPolynomial,
    NotAHilbertPolynomial,
    g_polynomial,
    gotzmann_number,
    interpolate,
    macaulay_form,
)
from oracles import macaulay_expand

H = HilbertPolynomial


@pytest.mark.parametrize("coeffs,form", [
    ([3], (3,)), ([1, 2], (2, 2)), ([1, 3], (4, 3)), ([1, 1], (1, 1)), ([1], (1,)),
    ([3, 2], (4, 2)), ([2, 1], (2, 1)),
])
def test_macaulay_examples(coeffs, form):
    assert macaulay_form(H(coeffs)) == form
    assert gotzmann_number(H(coeffs)) == form[0]


@pytest.mark.parametrize("coeffs", [[0], [Fraction(1, 2)], [-1], [0, 1], [-1, 1], [1, 0, Fraction(1, 3)]])
def test_rejects_non_hilbert(coeffs):
    with pytest.raises(NotAHilbertPolynomial):
        macaulay_form(H(coeffs))


def test_twisted_cubic_style():
    # 3z+1 is the Hilbert polynomial of a twisted cubic; Gotzmann number 4
    assert macaulay_form(H.parse("1,3")) == (4, 3)


monotone = st.lists(st.integers(1, 7), min_size=1, max_size=4).map(lambda xs: sorted(xs, reverse=True))


@given(monotone)
def test_round_trip_against_sympy(m_list):
    rho = g_polynomial(m_list)
    assert list(rho.coeffs) == [Fraction(int(c.p), int(c.q)) for c in macaulay_expand(m_list)][:len(rho.coeffs)]
    assert macaulay_form(rho) == tuple(m_list)
    assert rho.is_integer_valued()


def test_parse_and_str():
    rho = H.parse("1, 2")
    assert rho(3) == 7
    assert str(rho) == "2z + 1"
    assert str(H.parse("0,0,1/2")) == "1/2z^2"
    assert H.parse("3").to_json() == ["3"]
    with pytest.raises(ValueError):
        H.parse(" , ")


def test_interpolate():
    rng = random.Random(1)
    for _ in range(20):
        coeffs = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(rng.randint(1, 4))]
        p = H(coeffs)
        pts = [(x, p(x)) for x in range(3, 3 + len(coeffs))]
        assert interpolate(pts) == p
