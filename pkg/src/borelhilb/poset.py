"""The Borel poset P(m, n) of degree-m monomials, its filters and dualities.

Elements carry their rank in the lex-descending enumeration, so subsets are
stored as integer bitsets (bit k set means element k is a member).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable

from .monomials import (
    LEX,
    REVLEX,
    borel_move,
    compare,
    format_monomial,
    monomials,
    pretty_monomial,
)

DEFAULT_CAP = 10**6


class PosetTooLarge(ValueError):
    pass


class Poset:
    """P(m, n): degree-m monomials in x_0..x_n under iterated Borel moves."""

    def __init__(self, m: int, n: int):
        if m < 0 or n < 1:
            raise ValueError(f"P(m, n) needs m >= 0 and n >= 1, got m={m}, n={n}")
        self.m = m
        self.n = n
        self.elements = tuple(monomials(m, n))
        self.index = {a: k for k, a in enumerate(self.elements)}
        up = [[] for _ in self.elements]
        down = [[] for _ in self.elements]
        for k, a in enumerate(self.elements):
            for i in range(1, n + 1):
                b = borel_move(a, i)
                if b is not None:
                    j = self.index[b]
                    up[k].append(j)
                    down[j].append(k)
        self.up = tuple(tuple(u) for u in up)
        self.down = tuple(tuple(d) for d in down)
        self.full = (1 << len(self.elements)) - 1

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return isinstance(other, Poset) and (self.m, self.n) == (other.m, other.n)

    def __hash__(self):
        return hash((self.m, self.n))

    def __repr__(self):
        return f"Poset(m={self.m}, n={self.n})"

    def covers(self) -> list:
        """Covering pairs ``(lower, upper)`` as monomials."""
        return [(self.elements[k], self.elements[j])
                for k in range(len(self)) for j in self.up[k]]

    def bits_of(self, members: Iterable) -> int:
        bits = 0
        for a in members:
            a = tuple(a)
            k = self.index.get(a)
            if k is None:
                raise ValueError(
                    f"{list(a)} is not a degree-{self.m} monomial in {self.n + 1} variables")
            bits |= 1 << k
        return bits

    def members_of(self, bits: int) -> tuple:
        return tuple(a for k, a in enumerate(self.elements) if bits >> k & 1)

    def is_up_closed(self, bits: int) -> bool:
        for k in range(len(self)):
            if bits >> k & 1:
                for j in self.up[k]:
                    if not bits >> j & 1:
                        return False
        return True

    def is_down_closed(self, bits: int) -> bool:
        return self.is_up_closed(self.full & ~bits)

    def up_closure_bits(self, bits: int) -> int:
        stack = [k for k in range(len(self)) if bits >> k & 1]
        while stack:
            k = stack.pop()
            for j in self.up[k]:
                if not bits >> j & 1:
                    bits |= 1 << j
                    stack.append(j)
        return bits

    def down_closure_bits(self, bits: int) -> int:
        stack = [k for k in range(len(self)) if bits >> k & 1]
        while stack:
            k = stack.pop()
            for j in self.down[k]:
                if not bits >> j & 1:
                    bits |= 1 << j
                    stack.append(j)
        return bits

    def minimal_members(self, bits: int) -> list:
        """Indices in ``bits`` with no lower cover inside ``bits``."""
        return [k for k in range(len(self))
                if bits >> k & 1 and not any(bits >> j & 1 for j in self.down[k])]

    def maximal_outside(self, bits: int) -> list:
        """Indices outside ``bits`` whose upper covers all lie in ``bits``."""
        return [k for k in range(len(self))
                if not bits >> k & 1 and all(bits >> j & 1 for j in self.up[k])]

    def to_dot(self, highlight: Iterable = ()) -> str:
        marked = {tuple(a) for a in highlight}
        lines = [f'digraph "P({self.m},{self.n})" {{', "  rankdir=BT;"]
        for a in self.elements:
            attrs = f'label="{pretty_monomial(a)}"'
            if a in marked:
                attrs += ", shape=circle, style=bold"
            else:
                attrs += ", shape=plaintext"
            lines.append(f'  "{format_monomial(a)}" [{attrs}];')
        for lo, hi in self.covers():
            lines.append(f'  "{format_monomial(lo)}" -> "{format_monomial(hi)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=64)
def _cached_poset(m: int, n: int) -> Poset:
    return Poset(m, n)


def poset_size(m: int, n: int) -> int:
    return comb(m + n, n)


def build_poset(m: int, n: int, cap: int = DEFAULT_CAP) -> Poset:
    if m < 0 or n < 1:
        raise ValueError(f"P(m, n) needs m >= 0 and n >= 1, got m={m}, n={n}")
    size = poset_size(m, n)
    if size > cap:
        raise PosetTooLarge(f"P({m},{n}) has {size} elements, above the cap {cap}")
    return _cached_poset(m, n)


@dataclass(frozen=True)
class _Subset:
    poset: Poset
    bits: int

    @classmethod
    def from_members(cls, poset: Poset, members: Iterable):
        return cls(poset, poset.bits_of(members))

    @property
    def members(self) -> tuple:
        return self.poset.members_of(self.bits)

    def __len__(self):
        return bin(self.bits).count("1")

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, a):
        k = self.poset.index.get(tuple(a))
        return k is not None and bool(self.bits >> k & 1)

    def sort_key(self):
        return (self.poset.m, self.poset.n, len(self), self.poset.members_of(self.bits))

    def to_json(self) -> dict:
        return {"m": self.poset.m, "n": self.poset.n,
                "members": [list(a) for a in self.members]}


class Filter(_Subset):
    """An up-closed subset of P(m, n).

    Construction does not validate; use :meth:`is_up_closed` or
    :func:`make_filter` when the input is untrusted.
    """

    def is_up_closed(self) -> bool:
        return self.poset.is_up_closed(self.bits)

    def complement(self) -> "OrderIdeal":
        return OrderIdeal(self.poset, self.poset.full & ~self.bits)

    def standard(self) -> tuple:
        """Members of the complementary order ideal (the standard monomials)."""
        return self.poset.members_of(self.poset.full & ~self.bits)


class OrderIdeal(_Subset):
    """A down-closed subset of P(m, n)."""

    def is_down_closed(self) -> bool:
        return self.poset.is_down_closed(self.bits)

    def complement(self) -> Filter:
        return Filter(self.poset, self.poset.full & ~self.bits)


def _check_members(s: Iterable, p: Poset) -> list:
    out = []
    for a in s:
        a = tuple(a)
        if len(a) != p.n + 1 or sum(a) != p.m:
            raise ValueError(f"{list(a)} is not an element of P({p.m},{p.n})")
        out.append(a)
    return out


def is_filter(s: Iterable, p: Poset) -> bool:
    return p.is_up_closed(p.bits_of(_check_members(s, p)))


def is_order_ideal(s: Iterable, p: Poset) -> bool:
    return p.is_down_closed(p.bits_of(_check_members(s, p)))


def make_filter(s: Iterable, p: Poset) -> Filter:
    f = Filter(p, p.bits_of(_check_members(s, p)))
    if not f.is_up_closed():
        raise ValueError("set is not up-closed in the Borel order")
    return f


def up_closure(s: Iterable, p: Poset) -> Filter:
    return Filter(p, p.up_closure_bits(p.bits_of(_check_members(s, p))))


def down_closure(s: Iterable, p: Poset) -> OrderIdeal:
    return OrderIdeal(p, p.down_closure_bits(p.bits_of(_check_members(s, p))))


def flip(a) -> tuple:
    """The isomorphism P(m, n) -> P(n, m).

    Writing ``x^a = x_{al_1} ... x_{al_m}`` with ``al_1 <= ... <= al_m``, the
    image has exponents ``(n - al_m, al_m - al_{m-1}, ..., al_2 - al_1, al_1)``.
    """
    a = tuple(a)
    n = len(a) - 1
    m = sum(a)
    if m == 0:
        return (n,)
    alpha = [i for i, e in enumerate(a) for _ in range(e)]
    b = [n - alpha[m - 1]]
    for i in range(1, m):
        b.append(alpha[m - i] - alpha[m - i - 1])
    b.append(alpha[0])
    return tuple(b)


def check_lex_revlex_duality(m: int, n: int, cap: int = DEFAULT_CAP) -> bool:
    """Exhaustively test ``a1 <_Lex a2  <=>  flip(a1) <_RevLex flip(a2)`` on P(m, n)."""
    elems = build_poset(m, n, cap).elements
    images = {a: flip(a) for a in elems}
    for a1 in elems:
        for a2 in elems:
            lex_less = compare(a1, a2, LEX) < 0
            rev_less = compare(images[a1], images[a2], REVLEX) < 0
            if lex_less != rev_less:
                return False
    return True


def grid_ideal(a) -> frozenset:
    """Order ideal of the grid m x n attached to ``x^a``.

    It is generated by ``(a_0 + ... + a_{k-1}, n - k + 1)`` for k = 1..n,
    omitting generators with first coordinate 0.
    """
    n = len(a) - 1
    gens = []
    s = 0
    for k in range(1, n + 1):
        s += a[k - 1]
        if s > 0:
            gens.append((s, n - k + 1))
    return frozenset((i, j) for (s_, t) in gens
                     for i in range(1, s_ + 1) for j in range(1, t + 1))


def grid_order_ideals(m: int, n: int) -> set:
    """All order ideals of the product of chains m x n, by growing from the empty set."""
    cells = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    seen = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for ideal in frontier:
            for c in cells:
                if c in ideal:
                    continue
                i, j = c
                if (i == 1 or (i - 1, j) in ideal) and (j == 1 or (i, j - 1) in ideal):
                    bigger = ideal | {c}
                    if bigger not in seen:
                        seen.add(bigger)
                        nxt.append(bigger)
        frontier = nxt
    return seen


def reachability(p: Poset) -> list:
    """``reach[k]`` is the bitset of elements ``>= element k`` (transitive closure of covers)."""
    reach = [0] * len(p)
    # elements are lex-descending, so every upper cover has a smaller index
    for k in range(len(p)):
        bits = 1 << k
        for j in p.up[k]:
            bits |= reach[j]
        reach[k] = bits
    return reach


def j_lattice_isomorphism_check(m: int, n: int) -> bool:
    """Check that ``a -> grid_ideal(a)`` is an order isomorphism P(m, n) -> J(m x n)."""
    if m < 1 or n < 1:
        raise ValueError("the grid needs m, n >= 1")
    if m * n > 20:
        raise PosetTooLarge(f"m*n = {m * n} exceeds 20")
    p = build_poset(m, n)
    ideals = [grid_ideal(a) for a in p.elements]
    if len(set(ideals)) != len(ideals) or set(ideals) != grid_order_ideals(m, n):
        return False
    reach = reachability(p)
    for k in range(len(p)):
        for j in range(len(p)):
            if bool(reach[k] >> j & 1) != (ideals[k] <= ideals[j]):
                return False
    return True
