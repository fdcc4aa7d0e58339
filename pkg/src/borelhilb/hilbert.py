"""Hilbert polynomials, their Macaulay representation and the Gotzmann number."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence


class NotAHilbertPolynomial(ValueError):
    pass


def _trim(coeffs) -> tuple:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(p, q, scale=1) -> tuple:
    size = max(len(p), len(q))
    p = list(p) + [Fraction(0)] * (size - len(p))
    q = list(q) + [Fraction(0)] * (size - len(q))
    return _trim(x + scale * y for x, y in zip(p, q))


def _pmul(p, q) -> tuple:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return _trim(out)


@dataclass(frozen=True)
class HilbertPolynomial:
    """A polynomial in z, coefficients lowest degree first."""

    coeffs: tuple

    def __init__(self, coeffs: Sequence = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    @classmethod
    def parse(cls, text: str) -> "HilbertPolynomial":
        """Read a comma list of coefficients, lowest degree first: ``"1,2"`` is 2z+1."""
        parts = [t.strip() for t in text.split(",") if t.strip()]
        if not parts:
            raise ValueError("empty coefficient list")
        return cls(Fraction(t) for t in parts)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, z):
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * z + c
        return out

    def __sub__(self, other: "HilbertPolynomial") -> "HilbertPolynomial":
        return HilbertPolynomial(_padd(self.coeffs, other.coeffs, -1))

    def is_integer_valued(self) -> bool:
        # a degree-s polynomial is integer valued iff it is at s+1 consecutive integers
        return all(self(z).denominator == 1 for z in range(self.degree + 2))

    def to_json(self) -> list:
        return [str(c) for c in self.coeffs]

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            head = "" if (mag == 1 and i > 0) else str(mag)
            var = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            body = head + var
            terms.append(("-" if c < 0 else "+", body))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def binomial_poly(shift: int, k: int) -> tuple:
    """Coefficients of ``C(z + shift, k)`` as a polynomial in z."""
    out: tuple = (Fraction(1),)
    for j in range(k):
        out = _pmul(out, (Fraction(shift - j), Fraction(1)))
    return tuple(c / factorial(k) for c in out)


def macaulay_summand(i: int, m_i: int) -> tuple:
    """``C(z+i, i+1) - C(z+i-m_i, i+1)``."""
    return _padd(binomial_poly(i, i + 1), binomial_poly(i - m_i, i + 1), -1)


def g_polynomial(m_list: Sequence[int]) -> HilbertPolynomial:
    """Expand ``sum_i C(z+i, i+1) - C(z+i-m_i, i+1)``."""
    out: tuple = ()
    for i, m_i in enumerate(m_list):
        out = _padd(out, macaulay_summand(i, m_i))
    return HilbertPolynomial(out)


def macaulay_form(rho: HilbertPolynomial) -> tuple:
    """The unique ``(m_0 >= ... >= m_s >= 1)`` with ``g(m_0..m_s; z) = rho``.

    Peels the summands off from the top degree down; the i-th summand has
    leading coefficient ``m_i / i!``.
    """
    if rho.is_zero():
        raise NotAHilbertPolynomial("the zero polynomial (empty scheme) has no Macaulay form")
    s = rho.degree
    residual = rho.coeffs
    m_list = [0] * (s + 1)
    for i in range(s, -1, -1):
        lead = residual[i] if i < len(residual) else Fraction(0)
        if len(residual) > i + 1:
            raise NotAHilbertPolynomial(f"{rho} is not a Hilbert polynomial: residual degree rose")
        m_i = lead * factorial(i)
        if m_i.denominator != 1:
            raise NotAHilbertPolynomial(f"{rho} is not a Hilbert polynomial: m_{i} = {m_i}")
        m_i = int(m_i)
        if m_i < 1 or (i < s and m_i < m_list[i + 1]):
            raise NotAHilbertPolynomial(
                f"{rho} is not a Hilbert polynomial: m_{i} = {m_i} breaks m_0 >= ... >= m_s >= 1")
        m_list[i] = m_i
        residual = _padd(residual, macaulay_summand(i, m_i), -1)
    if residual:
        raise NotAHilbertPolynomial(f"{rho} is not a Hilbert polynomial: nonzero residual")
    return tuple(m_list)


def gotzmann_number(rho: HilbertPolynomial) -> int:
    return macaulay_form(rho)[0]


def interpolate(points: Sequence[tuple]) -> HilbertPolynomial:
    """Lagrange interpolation through ``(x, y)`` pairs, exact."""
    out: tuple = ()
    for j, (xj, yj) in enumerate(points):
        basis: tuple = (Fraction(1),)
        denom = Fraction(1)
        for k, (xk, _) in enumerate(points):
            if k != j:
                basis = _pmul(basis, (Fraction(-xk), Fraction(1)))
                denom *= xj - xk
        out = _padd(out, basis, Fraction(yj) / denom)
    return HilbertPolynomial(out)
