"""Sparse homogeneous polynomials with rational coefficients.

A polynomial is a dict mapping exponent tuples to nonzero ``Fraction``s.
Matrices act on variables by ``g(x_i) = sum_k g[k][i] x_k``, so upper
triangular matrices send each variable to a combination of earlier ones.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping, Sequence

from .monomials import add, parse_monomial


def clean(p: Mapping) -> dict:
    return {a: Fraction(c) for a, c in p.items() if c != 0}


def padd(p: Mapping, q: Mapping, scale=1) -> dict:
    out = dict(p)
    for a, c in q.items():
        v = out.get(a, 0) + scale * c
        if v:
            out[a] = v
        else:
            out.pop(a, None)
    return out


def pscale(p: Mapping, s) -> dict:
    if s == 0:
        return {}
    return {a: c * s for a, c in p.items()}


def pmul(p: Mapping, q: Mapping) -> dict:
    out: dict = {}
    for a, c in p.items():
        for b, d in q.items():
            k = add(a, b)
            v = out.get(k, 0) + c * d
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def times_monomial(p: Mapping, e: Sequence[int]) -> dict:
    return {add(a, e): c for a, c in p.items()}


def linear_form(g, i: int) -> dict:
    """``g(x_i)`` as a polynomial."""
    size = len(g)
    out = {}
    for k in range(size):
        if g[k][i] != 0:
            out[tuple(1 if j == k else 0 for j in range(size))] = Fraction(g[k][i])
    return out


class MatrixAction:
    """Caches powers of the images ``g(x_i)`` so repeated monomials are cheap."""

    def __init__(self, g):
        self.g = g
        self.size = len(g)
        self._forms = [linear_form(g, i) for i in range(self.size)]
        self._powers = [{0: {(0,) * self.size: Fraction(1)}} for _ in range(self.size)]
        self._mono: dict = {}

    def _power(self, i: int, e: int) -> dict:
        cache = self._powers[i]
        if e not in cache:
            cache[e] = pmul(self._power(i, e - 1), self._forms[i])
        return cache[e]

    def monomial(self, a: Sequence[int]) -> dict:
        a = tuple(a)
        if a not in self._mono:
            out = {(0,) * self.size: Fraction(1)}
            for i, e in enumerate(a):
                if e:
                    out = pmul(out, self._power(i, e))
            self._mono[a] = out
        return self._mono[a]

    def __call__(self, p: Mapping) -> dict:
        out: dict = {}
        for a, c in p.items():
            out = padd(out, self.monomial(a), c)
        return out


def act(g, p: Mapping) -> dict:
    return MatrixAction(g)(p)


_TERM = re.compile(r"([+-]?)\s*([^+-]+)")


def parse_poly(text: str, nvars: int) -> dict:
    """Read ``"x0^2 - 3/2*x1*x2 + x2^2"``; coefficients are optional rationals."""
    src = text.replace(" ", "")
    if not src:
        raise ValueError("empty polynomial")
    out: dict = {}
    pos = 0
    for m in _TERM.finditer(src):
        if m.start() != pos:
            raise ValueError(f"cannot read polynomial {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        factors = m.group(2).split("*")
        coeff = Fraction(1)
        if factors and re.fullmatch(r"\d+(/\d+)?", factors[0]):
            coeff = Fraction(factors.pop(0))
        a = parse_monomial("*".join(factors) if factors else "1", nvars)
        out = padd(out, {a: sign * coeff})
    if pos != len(src):
        raise ValueError(f"cannot read polynomial {text!r}")
    return out


def format_poly(p: Mapping, var: str = "x") -> str:
    from .monomials import format_monomial

    if not p:
        return "0"
    parts = []
    for a in sorted(p, reverse=True):
        c = p[a]
        mono = format_monomial(a, var)
        mag = abs(c)
        if mono == "1":
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
