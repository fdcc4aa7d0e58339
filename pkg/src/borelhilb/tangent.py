"""First-order deformations of a Borel-fixed point and its torus/Borel eigenvectors.

A tangent vector at the point with degree-m filter F is a matrix
``c[A, B]`` (A in F, B standard), standing for the ideal over K[eps]
generated by ``x^A + eps * sum_B c[A, B] x^B``.  Everything is exact.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import count

from .hilbert import HilbertPolynomial
from .ideals import hilbert_point_check
from .linalg import is_invertible, nullspace, solve_right
from .monomials import add, is_monomial, sub, unit
from .poset import Filter
from .polys import MatrixAction

log = logging.getLogger(__name__)


class NotAHilbertPoint(ValueError):
    pass


class BasePointMoved(ValueError):
    pass


def _frac(x) -> Fraction:
    return Fraction(x) if not isinstance(x, str) else Fraction(x.strip())


@dataclass
class TangentVector:
    """A vector ``(c_AB)`` of Hom(I_m, S_m / I_m); zero entries are dropped."""

    base: Filter
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (a, b), c in self.entries.items():
            a, b, c = tuple(a), tuple(b), _frac(c)
            if a not in self.base:
                raise ValueError(f"{list(a)} is not in the filter")
            if b not in self.base.poset.index or b in self.base:
                raise ValueError(f"{list(b)} is not a standard monomial of the filter")
            if c != 0:
                clean[a, b] = c
        self.entries = clean

    def __eq__(self, other):
        return (isinstance(other, TangentVector) and self.base == other.base
                and self.entries == other.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def scaled(self, s) -> "TangentVector":
        return TangentVector(self.base, {k: c * s for k, c in self.entries.items()})

    def __add__(self, other: "TangentVector") -> "TangentVector":
        if other.base != self.base:
            raise ValueError("tangent vectors live at different points")
        out = dict(self.entries)
        for k, c in other.entries.items():
            out[k] = out.get(k, 0) + c
        return TangentVector(self.base, out)

    def tails(self) -> dict:
        out: dict = {}
        for (a, b), c in self.entries.items():
            out.setdefault(a, {})[b] = c
        return out

    def first_order_ideal(self) -> "FirstOrderIdeal":
        return FirstOrderIdeal(self.base, self.tails())

    def ratio_to(self, other: "TangentVector") -> Fraction | None:
        """``s`` with ``self == s * other`` (both nonzero), else None."""
        if self.base != other.base or set(self.entries) != set(other.entries) or not self.entries:
            return None
        ratios = {self.entries[k] / other.entries[k] for k in self.entries}
        return ratios.pop() if len(ratios) == 1 else None

    def to_json(self) -> dict:
        return {
            "filter": self.base.to_json(),
            "entries": [{"A": list(a), "B": list(b), "c": str(c)}
                        for (a, b), c in sorted(self.entries.items(), reverse=True)],
        }


@dataclass
class FirstOrderIdeal:
    """Generators ``x^A + eps * tail(A)`` for A in the base filter, eps^2 = 0."""

    base: Filter
    tails: dict = field(default_factory=dict)

    def tangent_vector(self) -> TangentVector:
        return TangentVector(self.base, {(a, b): c for a, t in self.tails.items()
                                         for b, c in t.items()})

    def generators(self) -> list:
        """``(A, constant part, eps part)`` for every A in the filter."""
        return [(a, {a: Fraction(1)}, dict(self.tails.get(a, {}))) for a in self.base.members]


@lru_cache(maxsize=256)
def _syzygies(f: Filter) -> tuple:
    """Pairs ``((j, A), (i, A'))`` with ``x_j x^A = x_i x^A'``, A, A' in f.

    Consecutive representations of each degree-(m+1) monomial suffice to
    generate all linear relations among the products.
    """
    n = f.poset.n
    reps: dict = {}
    for a in f.members:
        for j in range(n + 1):
            reps.setdefault(add(a, unit(j, n + 1)), []).append((j, a))
    pairs = []
    for u in sorted(reps, reverse=True):
        r = reps[u]
        pairs.extend((r[k], r[k + 1]) for k in range(len(r) - 1))
    return tuple(pairs), frozenset(reps)


def _residual(f: Filter, tails: dict) -> dict:
    """Standard-monomial parts of ``x_j tail(A) - x_i tail(A')`` over all syzygies."""
    n = f.poset.n
    pairs, ideal_next = _syzygies(f)
    out = {}
    for idx, ((j, a), (i, a2)) in enumerate(pairs):
        acc: dict = {}
        for b, c in tails.get(a, {}).items():
            u = add(b, unit(j, n + 1))
            acc[u] = acc.get(u, 0) + c
        for b, c in tails.get(a2, {}).items():
            u = add(b, unit(i, n + 1))
            acc[u] = acc.get(u, 0) - c
        for u, c in acc.items():
            if c != 0 and u not in ideal_next:
                out[idx, u] = c
    return out


def check_hilbert_point(f: Filter, rho: HilbertPolynomial):
    p = f.poset
    try:
        ok = hilbert_point_check(f.members, rho, p.n, p.m)
    except ValueError as exc:
        raise NotAHilbertPoint(str(exc)) from None
    if not ok:
        raise NotAHilbertPoint(f"filter is not a point of Hilb with polynomial {rho}")


def is_tangent(v: TangentVector, rho: HilbertPolynomial | None = None) -> bool:
    """Flatness of the degree-(m+1) piece of the first-order ideal of ``v``.

    Every monomial relation ``x_j x^A = x_i x^A'`` must lift: the eps-parts
    ``x_j tail(A) - x_i tail(A')`` have to lie in I_{m+1}.
    """
    if rho is not None:
        check_hilbert_point(v.base, rho)
    return not _residual(v.base, v.tails())


def grassmann_coordinates(f: Filter) -> list:
    """All index pairs ``(A, B)`` of the Grassmannian tangent space, in a fixed order."""
    return [(a, b) for a in f.members for b in f.standard()]


def tangent_space_basis(f: Filter, rho: HilbertPolynomial | None = None) -> list:
    """A basis of the tangent space to Hilb at f, from the syzygy constraints."""
    if rho is not None:
        check_hilbert_point(f, rho)
    coords = grassmann_coordinates(f)
    col = {k: c for c, k in enumerate(coords)}
    n = f.poset.n
    std = set(f.standard())
    pairs, ideal_next = _syzygies(f)
    rows = []
    for (j, a), (i, a2) in pairs:
        touched: dict = {}
        for b in std:
            for (k, src, sign) in ((j, a, 1), (i, a2, -1)):
                u = add(b, unit(k, n + 1))
                if u not in ideal_next:
                    touched.setdefault(u, {})
                    touched[u][col[src, b]] = touched[u].get(col[src, b], 0) + sign
        for u in sorted(touched):
            row = [0] * len(coords)
            for c, s in touched[u].items():
                row[c] += s
            if any(row):
                rows.append(row)
    basis = nullspace(rows, len(coords)) if rows else [
        [Fraction(int(i == j)) for i in range(len(coords))] for j in range(len(coords))]
    return [TangentVector(f, {coords[c]: x for c, x in enumerate(vec) if x}) for vec in basis]


def tangent_dimension(f: Filter, rho: HilbertPolynomial | None = None) -> int:
    return len(tangent_space_basis(f, rho))


@dataclass(frozen=True)
class EigenvectorType:
    """The type ``(F', F'', K)`` of a torus eigenvector; F'' is derived."""

    base: Filter
    f_prime: Filter
    K: tuple

    @property
    def moved(self) -> tuple:
        """``F \\ F'``: the generators that acquire a tail."""
        return self.base.poset.members_of(self.base.bits & ~self.f_prime.bits)

    @property
    def f_double_prime(self) -> Filter:
        p = self.base.poset
        return Filter(p, self.base.bits | p.bits_of(add(a, self.K) for a in self.moved))

    def is_valid(self) -> bool:
        return self.f_prime.is_up_closed() and self.f_double_prime.is_up_closed()

    def to_json(self) -> dict:
        return {"K": list(self.K), "moved": [list(a) for a in self.moved],
                "F_prime": [list(a) for a in self.f_prime.members],
                "F_double_prime": [list(a) for a in self.f_double_prime.members]}


def torus_eigenvector_type(v: TangentVector) -> EigenvectorType | None:
    if v.is_zero():
        raise ValueError("the zero vector has no type")
    diffs = {sub(b, a) for (a, b) in v.entries}
    if len(diffs) != 1:
        return None
    moved = {a for (a, _) in v.entries}
    p = v.base.poset
    return EigenvectorType(v.base, Filter(p, v.base.bits & ~p.bits_of(moved)), diffs.pop())


def _ratio_law_holds(coeffs: dict, K: tuple) -> bool:
    n = len(K) - 1
    for a, c in coeffs.items():
        b = add(a, K)
        for i in range(1, n + 1):
            if a[i] == 0:
                continue
            a2 = add(a, unit(i - 1, n + 1))
            a2 = sub(a2, unit(i, n + 1))
            if a2 in coeffs and coeffs[a2] * a[i] != b[i] * c:
                return False
    return True


def is_borel_eigenvector(v: TangentVector) -> bool:
    """Combinatorial test: one shift K, F' and F'' filters, and the ratio law

    ``c[A + Delta_i] = (b_i / a_i) c[A]`` with ``a_i = deg_i A``, ``b_i = deg_i (A + K)``.
    """
    if v.is_zero():
        return False
    t = torus_eigenvector_type(v)
    if t is None or not t.is_valid():
        return False
    return _ratio_law_holds({a: c for (a, _), c in v.entries.items()}, t.K)


@dataclass
class BorelEigenvector:
    """One family of Borel eigenvectors of a fixed type.

    ``components`` partitions ``F \\ F'`` into Delta-connected classes; each
    gets one scalar.  ``scalar_space_dim`` is the dimension of the admissible
    scalars (equal to the number of components unless tangency couples them),
    and ``coefficients`` is one representative with every scalar nonzero.
    """

    type: EigenvectorType
    components: tuple
    coefficients: dict
    scalar_space_dim: int
    flagged: bool = False

    def vector(self) -> TangentVector:
        K = self.type.K
        return TangentVector(self.type.base, {(a, add(a, K)): c for a, c in self.coefficients.items()})

    def to_json(self) -> dict:
        out = self.type.to_json()
        out["components"] = [[list(a) for a in comp] for comp in self.components]
        out["coefficients"] = [{"A": list(a), "c": str(self.coefficients[a])}
                               for a in sorted(self.coefficients, reverse=True)]
        out["scalar_space_dim"] = self.scalar_space_dim
        out["flagged"] = self.flagged
        return out


def _down_closed_subsets(f: Filter, allowed: set) -> list:
    """Nonempty subsets X of ``allowed`` closed downward inside f, as bitsets."""
    p = f.poset
    allowed_idx = [p.index[a] for a in allowed]
    lower = {k: [j for j in p.down[k] if f.bits >> j & 1] for k in allowed_idx}
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for bits in frontier:
            for k in allowed_idx:
                if not bits >> k & 1 and all(bits >> j & 1 for j in lower[k]):
                    b2 = bits | 1 << k
                    if b2 not in seen:
                        seen.add(b2)
                        nxt.append(b2)
        frontier = nxt
    seen.discard(0)
    return sorted(seen)


def _components(moved: list, n: int) -> list:
    """Classes of ``moved`` under ``A ~ A + Delta_i``; each sorted lex-descending."""
    mset = set(moved)
    parent = {a: a for a in moved}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in moved:
        for i in range(1, n + 1):
            if a[i]:
                a2 = sub(add(a, unit(i - 1, n + 1)), unit(i, n + 1))
                if a2 in mset:
                    parent[find(a)] = find(a2)
    groups: dict = {}
    for a in moved:
        groups.setdefault(find(a), []).append(a)
    return sorted((sorted(g, reverse=True) for g in groups.values()), key=lambda g: g[0],
                  reverse=True)


def _propagate(comp: list, K: tuple, n: int) -> dict | None:
    """Coefficients on a component forced by the ratio law, 1 at its lex-least
    Borel-minimal element; None if the law is inconsistent or forces a zero."""
    cset = set(comp)
    minimal = [a for a in comp
               if not any(sub(add(a, unit(i, n + 1)), unit(i - 1, n + 1)) in cset
                          for i in range(1, n + 1) if a[i - 1])]
    start = min(minimal)
    coeffs = {start: Fraction(1)}
    stack = [start]
    while stack:
        a = stack.pop()
        b = add(a, K)
        for i in range(1, n + 1):
            # upward neighbour a + Delta_i
            if a[i]:
                up = sub(add(a, unit(i - 1, n + 1)), unit(i, n + 1))
                if up in cset:
                    if b[i] == 0:
                        return None
                    val = coeffs[a] * Fraction(b[i], a[i])
                    if up in coeffs:
                        if coeffs[up] != val:
                            return None
                    else:
                        coeffs[up] = val
                        stack.append(up)
            # downward neighbour a - Delta_i
            if a[i - 1]:
                down = sub(add(a, unit(i, n + 1)), unit(i - 1, n + 1))
                if down in cset:
                    bd = add(down, K)
                    if bd[i] == 0:
                        return None
                    val = coeffs[a] * Fraction(down[i], bd[i])
                    if down in coeffs:
                        if coeffs[down] != val:
                            return None
                    else:
                        coeffs[down] = val
                        stack.append(down)
    return coeffs


def _admissible_scalars(f: Filter, parts: list, K: tuple):
    """Scalars ``lam`` making ``sum lam_j * parts_j`` tangent with every lam_j != 0.

    Returns ``(dim, representative)`` or None when some scalar must vanish.
    """
    res = []
    for coeffs in parts:
        tails = {a: {add(a, K): c} for a, c in coeffs.items()}
        res.append(_residual(f, tails))
    keys = sorted(set().union(*res), key=repr)
    k = len(parts)
    if not keys:
        return k, [Fraction(1)] * k
    rows = [[r.get(key, 0) for r in res] for key in keys]
    basis = nullspace(rows, k)
    if not basis or any(all(vec[j] == 0 for vec in basis) for j in range(k)):
        return None
    for s in count(1):
        lam = [sum(Fraction(s) ** t * vec[j] for t, vec in enumerate(basis)) for j in range(k)]
        if all(x != 0 for x in lam):
            return len(basis), lam
    return None  # unreachable


def enumerate_borel_eigenvectors(f: Filter, rho: HilbertPolynomial | None = None) -> list:
    """All Borel-eigenvector families in the tangent space at the point f.

    Scans shifts K = B - A and subsets ``F \\ F'`` closed downward inside F,
    keeps those where F'' is a filter and the ratio law is consistent, and
    finally intersects with the tangent space.  One family per ``(F', K)``.
    """
    if rho is not None:
        check_hilbert_point(f, rho)
    p = f.poset
    n = p.n
    std = set(f.standard())
    shifts = sorted({sub(b, a) for a in f.members for b in std}, reverse=True)
    found = []
    for K in shifts:
        allowed = {a for a in f.members if is_monomial(add(a, K)) and add(a, K) in std}
        for bits in _down_closed_subsets(f, allowed):
            moved = p.members_of(bits)
            t = EigenvectorType(f, Filter(p, f.bits & ~bits), K)
            if not t.f_double_prime.is_up_closed():
                continue
            comps = _components(list(moved), n)
            parts = [_propagate(c, K, n) for c in comps]
            if any(x is None for x in parts):
                continue
            adm = _admissible_scalars(f, parts, K)
            if adm is None:
                continue
            dim, lam = adm
            coeffs = {a: lam[j] * c for j, part in enumerate(parts) for a, c in part.items()}
            flagged = len(comps) > 1
            if flagged:
                log.warning("multi-component Borel eigenvector family K=%s moved=%s", K, moved)
            found.append(BorelEigenvector(t, tuple(tuple(c) for c in comps), coeffs, dim, flagged))
    found.sort(key=lambda e: (len(e.type.moved), tuple(-x for x in e.type.K), e.type.moved))
    return found


def act_on_first_order(g, J: FirstOrderIdeal) -> FirstOrderIdeal:
    """Apply the matrix g to J and bring the result back to the chart at J's base.

    g must fix the base point (the span of the filter's monomials), as any
    upper-triangular matrix does at a Borel-fixed point.
    """
    if not is_invertible(g):
        raise ValueError("matrix is not invertible")
    f = J.base
    fm = f.members
    std = f.standard()
    action = MatrixAction(g)
    fidx = {a: k for k, a in enumerate(fm)}
    sidx = {b: k for k, b in enumerate(std)}
    M = []
    Q = []
    for a in fm:
        image = action.monomial(a)
        row = [Fraction(0)] * len(fm)
        for u, c in image.items():
            if u not in fidx:
                raise BasePointMoved("the matrix does not fix the base point")
            row[fidx[u]] = c
        M.append(row)
        qrow = [Fraction(0)] * len(std)
        for u, c in action(J.tails.get(a, {})).items():
            if u in sidx:
                qrow[sidx[u]] += c
        Q.append(qrow)
    X = solve_right(M, Q) if std else [[] for _ in fm]
    if X is None:
        raise BasePointMoved("the matrix does not fix the base point")
    tails = {}
    for a, row in zip(fm, X):
        t = {b: c for b, c in zip(std, row) if c != 0}
        if t:
            tails[a] = t
    return FirstOrderIdeal(f, tails)


def act_on_tangent(g, v: TangentVector) -> TangentVector:
    return act_on_first_order(g, v.first_order_ideal()).tangent_vector()


def tangent_vector_from_json(data: dict) -> TangentVector:
    from .poset import build_poset, make_filter

    fd = data["filter"]
    p = build_poset(int(fd["m"]), int(fd["n"]))
    f = make_filter([tuple(a) for a in fd["members"]], p)
    entries = {(tuple(e["A"]), tuple(e["B"])): _frac(str(e["c"])) for e in data["entries"]}
    return TangentVector(f, entries)
