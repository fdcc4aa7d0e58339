"""Reading ideals, point sets and tangent vectors from files; stable JSON output."""

from __future__ import annotations

import json
import sys
from fractions import Fraction

from .degeneration import PolynomialIdeal
from .ideals import MonomialIdeal
from .monomials import pretty_monomial


def read_text(path: str) -> str:
    """File contents, or stdin when ``path`` is ``-``."""
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _is_monomial_list(gens) -> bool:
    return all(isinstance(g, list) and all(isinstance(e, int) for e in g) for g in gens)


def load_ideal(path: str):
    """A :class:`MonomialIdeal` when every generator is an exponent list, else a
    :class:`PolynomialIdeal`.

    Accepted shape: ``{"n": 2, "generators": [[2,0,0], "x0*x1 + 2*x2^2", ...]}``.
    """
    data = json.loads(read_text(path))
    if not isinstance(data, dict) or "n" not in data or "generators" not in data:
        raise ValueError('ideal JSON needs keys "n" and "generators"')
    if _is_monomial_list(data["generators"]):
        return MonomialIdeal.from_json(data)
    return PolynomialIdeal.from_json(data)


def parse_points(text: str) -> list:
    """One point per line, coordinates as rationals separated by commas or blanks;
    ``#`` starts a comment."""
    points = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].replace(",", " ").strip()
        if not line:
            continue
        try:
            pt = tuple(Fraction(tok) for tok in line.split())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"line {lineno}: cannot read coordinates") from None
        if not any(pt):
            raise ValueError(f"line {lineno}: the zero vector is not a point")
        points.append(pt)
    if not points:
        raise ValueError("no points given")
    if len({len(p) for p in points}) != 1:
        raise ValueError("points have different numbers of coordinates")
    return points


def load_points(path: str) -> list:
    return parse_points(read_text(path))


def dumps(obj) -> str:
    """Byte-stable JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def ideal_text(gens) -> str:
    return "(" + ", ".join(pretty_monomial(g) for g in gens) + ")"
