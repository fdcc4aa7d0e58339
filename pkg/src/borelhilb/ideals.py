"""Borel-fixed monomial ideals and the Borel-fixed points of a Hilbert scheme.

Regularity and saturation use the closed forms available for Borel-fixed
ideals (maximum generator degree, deleting the last variable).  Hilbert
polynomials are found by interpolating the Hilbert function past the
regularity, where it is known to have stabilized.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable

from .hilbert import HilbertPolynomial, NotAHilbertPolynomial, gotzmann_number, interpolate
from .monomials import divides, max_var, monomials, unit, add
from .poset import DEFAULT_CAP, Filter, Poset, build_poset


class NotBorelFixed(ValueError):
    pass


def minimalize(gens: Iterable) -> tuple:
    """Drop generators divisible by another; sorted by degree then lex-descending."""
    uniq = sorted({tuple(g) for g in gens}, key=lambda a: (sum(a), tuple(-e for e in a)))
    keep = []
    for g in uniq:
        if not any(divides(h, g) for h in keep):
            keep.append(g)
    return tuple(keep)


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal of K[x_0..x_n] by its minimal generators."""

    n: int
    generators: tuple

    def __init__(self, n: int, generators: Iterable = ()):
        gens = minimalize(generators)
        for g in gens:
            if len(g) != n + 1 or any(e < 0 for e in g):
                raise ValueError(f"{list(g)} is not an exponent vector in {n + 1} variables")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "generators", gens)

    @classmethod
    def of_filter(cls, f: Filter) -> "MonomialIdeal":
        return cls(f.poset.n, f.members)

    def contains(self, a) -> bool:
        return any(divides(g, a) for g in self.generators)

    __contains__ = contains

    def to_json(self) -> dict:
        return {"n": self.n, "generators": [list(g) for g in self.generators]}

    @classmethod
    def from_json(cls, data: dict) -> "MonomialIdeal":
        return cls(int(data["n"]), [tuple(int(e) for e in g) for g in data["generators"]])


def _moves(g: tuple):
    """All ``(x_i / x_j) g`` with ``i < j`` and x_j dividing g."""
    for j in range(1, len(g)):
        if g[j] > 0:
            for i in range(j):
                h = list(g)
                h[i] += 1
                h[j] -= 1
                yield tuple(h)


def is_borel_fixed(ideal: MonomialIdeal) -> bool:
    return all(ideal.contains(h) for g in ideal.generators for h in _moves(g))


def borel_closure(ideal: MonomialIdeal) -> MonomialIdeal:
    """Smallest Borel-fixed ideal containing ``ideal``."""
    current = ideal
    while True:
        extra = [h for g in current.generators for h in _moves(g) if not current.contains(h)]
        if not extra:
            return current
        current = MonomialIdeal(current.n, current.generators + tuple(extra))


def _require_borel(ideal: MonomialIdeal):
    if not is_borel_fixed(ideal):
        raise NotBorelFixed("ideal is not Borel-fixed")


def delete_last_variable(ideal: MonomialIdeal) -> MonomialIdeal:
    """Set x_n = 1 in every generator and re-minimalize."""
    return MonomialIdeal(ideal.n, [g[:-1] + (0,) for g in ideal.generators])


def saturate_borel(ideal: MonomialIdeal) -> MonomialIdeal:
    _require_borel(ideal)
    return delete_last_variable(ideal)


def regularity_borel(ideal: MonomialIdeal) -> int:
    _require_borel(ideal)
    return max((sum(g) for g in ideal.generators), default=0)


def monomials_of_degree(ideal: MonomialIdeal, d: int) -> list:
    """Degree-d monomials of the ideal, lex-descending."""
    return [a for a in monomials(d, ideal.n) if ideal.contains(a)]


def truncation_filter(ideal: MonomialIdeal, m: int, cap: int = DEFAULT_CAP) -> Filter:
    p = build_poset(m, ideal.n, cap)
    return Filter(p, p.bits_of(monomials_of_degree(ideal, m)))


def monomial_in_next_degree(f: Filter, a, i: int) -> bool:
    """Decide ``x_i x^a`` in the ideal generated by ``f``, for standard ``a``.

    Uses only degree-m data: the answer is whether ``(x_i / x_max(a)) x^a``
    lies in ``f``.
    """
    a = tuple(a)
    if a in f:
        raise ValueError(f"{list(a)} lies in the filter; it must be a standard monomial")
    if f.poset.m == 0:
        raise ValueError("degree-0 filters have no standard monomial to test")
    if not 0 <= i <= f.poset.n:
        raise IndexError(f"variable index {i} out of range")
    k = max_var(a)
    b = list(a)
    b[i] += 1
    b[k] -= 1
    return tuple(b) in f


def hilbert_function(ideal: MonomialIdeal, d: int) -> int:
    """``dim (S/I)_d``."""
    if d < 0:
        return 0
    return comb(d + ideal.n, ideal.n) - len(monomials_of_degree(ideal, d))


def hilbert_polynomial(ideal: MonomialIdeal) -> HilbertPolynomial:
    """Hilbert polynomial of a saturated Borel-fixed ideal."""
    _require_borel(ideal)
    if delete_last_variable(ideal) != ideal:
        raise ValueError("ideal is not saturated")
    r = max((sum(g) for g in ideal.generators), default=0)
    n = ideal.n
    pts = [(d, hilbert_function(ideal, d)) for d in range(r, r + n + 1)]
    rho = interpolate(pts)
    for d in (r + n + 1, r + n + 2):
        if rho(d) != hilbert_function(ideal, d):
            raise ArithmeticError(f"Hilbert function not polynomial past degree {r}")
    return rho


def hilbert_point_check(v: Iterable, rho: HilbertPolynomial, n: int, m: int | None = None) -> bool:
    """Whether the span of the degree-m monomials ``v`` is a point of Hilb^rho.

    Counts the distinct products ``x_j v`` in degree m+1 against
    ``dim S_{m+1} - rho(m+1)``.  Meaningful as a membership test once m is at
    least the Gotzmann number of rho; the count equations are evaluated for
    any m so truncations at the regularity can be checked too.
    """
    v = {tuple(a) for a in v}
    if m is None:
        if not v:
            raise ValueError("degree is ambiguous for an empty set; pass m")
        m = sum(next(iter(v)))
    if any(sum(a) != m or len(a) != n + 1 for a in v):
        raise ValueError(f"all monomials must have degree {m} in {n + 1} variables")
    expected = comb(m + n, n) - rho(m)
    if len(v) != expected:
        raise ValueError(f"|V| = {len(v)} but dim S_{m} - rho({m}) = {expected}")
    products = {add(a, unit(j, n + 1)) for a in v for j in range(n + 1)}
    return len(products) == comb(m + 1 + n, n) - rho(m + 1)


def filters_of_size(p: Poset, size: int) -> list:
    """All filters of P with exactly ``size`` members, in canonical order.

    Walks down from the whole poset deleting minimal members (or up from
    the empty set adding maximal non-members, whichever is shorter),
    deduplicating each layer as bitsets.
    """
    total = len(p)
    if not 0 <= size <= total:
        return []
    if total - size <= size:
        layer = {p.full}
        for _ in range(total - size):
            layer = {bits & ~(1 << k) for bits in layer for k in p.minimal_members(bits)}
    else:
        layer = {0}
        for _ in range(size):
            layer = {bits | (1 << k) for bits in layer for k in p.maximal_outside(bits)}
    out = [Filter(p, bits) for bits in layer]
    out.sort(key=Filter.sort_key)
    return out


def enumerate_borel_points(rho: HilbertPolynomial, n: int, cap: int = DEFAULT_CAP) -> list:
    """The Borel-fixed points of Hilb^rho(P^n) as filters in the Gotzmann degree."""
    m = gotzmann_number(rho)
    if rho.degree > n:
        raise NotAHilbertPolynomial(f"{rho} has degree {rho.degree} > n = {n}")
    p = build_poset(m, n, cap)
    size = comb(m + n, n) - rho(m)
    if size < 0:
        raise NotAHilbertPolynomial(f"{rho} exceeds dim S_{m} in P^{n}")
    return [f for f in filters_of_size(p, int(size))
            if hilbert_point_check(f.members, rho, n, m)]
