"""Exponent vectors, Borel moves, monomial orders and weights.

A monomial ``x_0^a_0 ... x_n^a_n`` is stored as the plain tuple
``(a_0, ..., a_n)``.  Variables are indexed from 0, and every order used
here has ``x_0 > x_1 > ... > x_n``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterator, Sequence

Monomial = tuple  # tuple[int, ...]

NEG_INF = float("-inf")
POS_INF = float("inf")


def degree(a: Sequence[int]) -> int:
    return sum(a)


def max_var(a: Sequence[int]):
    """Index of the last variable dividing ``x^a``; ``-inf`` for the constant 1."""
    for i in range(len(a) - 1, -1, -1):
        if a[i] > 0:
            return i
    return NEG_INF


def min_var(a: Sequence[int]):
    """Index of the first variable dividing ``x^a``; ``+inf`` for the constant 1."""
    for i, e in enumerate(a):
        if e > 0:
            return i
    return POS_INF


def deg_i(a: Sequence[int], i: int) -> int:
    if not 0 <= i < len(a):
        raise IndexError(f"variable index {i} out of range for {len(a)} variables")
    return a[i]


def unit(i: int, nvars: int) -> Monomial:
    return tuple(1 if k == i else 0 for k in range(nvars))


def delta(i: int, nvars: int) -> tuple:
    """The difference vector ``E_{i-1} - E_i`` (one Borel promotion of x_i)."""
    if not 1 <= i < nvars:
        raise IndexError(f"Delta_{i} undefined for {nvars} variables")
    return tuple(1 if k == i - 1 else -1 if k == i else 0 for k in range(nvars))


def add(a: Sequence[int], b: Sequence[int]) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def is_monomial(a: Sequence[int]) -> bool:
    return all(e >= 0 for e in a)


def borel_move(a: Monomial, i: int) -> Monomial | None:
    """Replace one factor x_i of ``x^a`` by x_{i-1}; None if x_i does not divide."""
    if not 1 <= i < len(a):
        raise IndexError(f"Borel move {i} undefined for {len(a)} variables")
    if a[i] == 0:
        return None
    b = list(a)
    b[i - 1] += 1
    b[i] -= 1
    return tuple(b)


def borel_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """``a <= b`` in the Borel order: every prefix sum of ``a`` is at most that of ``b``."""
    if sum(a) != sum(b):
        return False
    sa = sb = 0
    for x, y in zip(a, b):
        sa += x
        sb += y
        if sa > sb:
            return False
    return True


def weight_of(a: Sequence[int], w: Sequence[int]) -> int:
    if len(a) != len(w):
        raise ValueError(f"length mismatch: monomial has {len(a)} entries, weight {len(w)}")
    return sum(x * y for x, y in zip(a, w))


@dataclass(frozen=True)
class MonomialOrder:
    """A graded order on monomials of equal degree.

    ``kind`` is ``"lex"``, ``"revlex"`` or ``"weight"``; the weight kind
    breaks exact ties lexicographically so it is total for any ``weights``.
    """

    kind: str = "lex"
    weights: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("lex", "revlex", "weight"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if (self.kind == "weight") != (self.weights is not None):
            raise ValueError("weights are required exactly for the weight order")

    def key(self, a: Sequence[int]):
        """Sort key; larger key means larger monomial."""
        a = tuple(a)
        if self.kind == "lex":
            return a
        if self.kind == "revlex":
            return tuple(-e for e in reversed(a))
        return (weight_of(a, self.weights), a)


LEX = MonomialOrder("lex")
REVLEX = MonomialOrder("revlex")


def weight_order(w: Sequence[int]) -> MonomialOrder:
    return MonomialOrder("weight", tuple(w))


def compare(a: Sequence[int], b: Sequence[int], order: MonomialOrder = LEX) -> int:
    """Return -1, 0 or 1 as ``a`` is smaller than, equal to or larger than ``b``."""
    if len(a) != len(b):
        raise ValueError("monomials live in different rings")
    if sum(a) != sum(b):
        raise ValueError(f"cannot compare monomials of degrees {sum(a)} and {sum(b)}")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


def monomials(d: int, n: int) -> list:
    """All degree-``d`` monomials in x_0..x_n, lex-descending (x_0^d first)."""
    if d < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(n + 1), d):
        a = [0] * (n + 1)
        for i in combo:
            a[i] += 1
        out.append(tuple(a))
    out.sort(reverse=True)
    return out


def iter_monomials_upto(d: int, n: int) -> Iterator[Monomial]:
    for e in range(d + 1):
        yield from monomials(e, n)


def make_weight(n: int, d: int) -> tuple:
    """Lex-inducing weight ``w_i = (d+1)^(n-i)``, injective on degrees ``<= d``."""
    if n < 1 or d < 1:
        raise ValueError("make_weight needs n >= 1 and d >= 1")
    return tuple((d + 1) ** (n - i) for i in range(n + 1))


def distinguishes(w: Sequence[int], n: int, d: int) -> bool:
    """True iff ``w`` gives pairwise distinct weights to all degree-``d`` monomials."""
    if len(w) != n + 1:
        raise ValueError(f"weight has {len(w)} entries, expected {n + 1}")
    seen = set()
    for a in monomials(d, n):
        x = weight_of(a, w)
        if x in seen:
            return False
        seen.add(x)
    return True


def is_decreasing(w: Sequence[int]) -> bool:
    return all(w[i] > w[i + 1] for i in range(len(w) - 1))


_FACTOR = re.compile(r"^\s*([A-Za-z]+)(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_monomial(text: str, nvars: int | None = None) -> Monomial:
    """Read ``"x0^2*x1^3*x3"`` or ``"[2,3,0,1]"``.

    The text form needs ``nvars`` to know trailing zero exponents; without it
    the vector stops at the last variable that occurs.
    """
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise ValueError(f"unterminated exponent vector {text!r}")
        body = text[1:-1].strip()
        a = tuple(int(t) for t in body.split(",")) if body else ()
        if any(e < 0 for e in a):
            raise ValueError(f"negative exponent in {text!r}")
        if nvars is not None and len(a) != nvars:
            raise ValueError(f"expected {nvars} exponents in {text!r}")
        return a
    exps: dict[int, int] = {}
    if text not in ("", "1"):
        for factor in text.split("*"):
            m = _FACTOR.match(factor)
            if m is None:
                raise ValueError(f"cannot read factor {factor!r} in {text!r}")
            i = int(m.group(2))
            exps[i] = exps.get(i, 0) + int(m.group(3) or 1)
    size = max(exps, default=-1) + 1
    if nvars is not None:
        if size > nvars:
            raise ValueError(f"{text!r} uses a variable beyond x{nvars - 1}")
        size = nvars
    return tuple(exps.get(i, 0) for i in range(size))


def format_monomial(a: Sequence[int], var: str = "x") -> str:
    parts = []
    for i, e in enumerate(a):
        if e == 1:
            parts.append(f"{var}{i}")
        elif e > 1:
            parts.append(f"{var}{i}^{e}")
    return "*".join(parts) if parts else "1"


_LETTERS = "xyzw"


def pretty_monomial(a: Sequence[int]) -> str:
    """Compact label such as ``x^2yz``; letters for up to four variables."""
    if len(a) > len(_LETTERS):
        return format_monomial(a)
    out = "".join(
        _LETTERS[i] + (f"^{e}" if e > 1 else "") for i, e in enumerate(a) if e > 0
    )
    return out or "1"
