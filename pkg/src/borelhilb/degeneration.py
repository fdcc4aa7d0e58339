"""Weight-vector degenerations ``lambda_w(t) g I`` and their first-order direction.

The echelon basis of ``gI_m`` with respect to ``w`` gives both the limit
(its leading monomials) and the direction of arrival (the tail entries whose
weight drop ``w.(A - B)`` is smallest).  Powers of t are never formed.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .hilbert import HilbertPolynomial, gotzmann_number
from .ideals import MonomialIdeal, is_borel_fixed
from .linalg import nullspace, random_integer_matrix, rref
from .monomials import (
    add,
    distinguishes,
    is_decreasing,
    make_weight,
    monomials,
    sub,
    weight_of,
)
from .polys import MatrixAction, parse_poly, times_monomial
from .poset import Filter, build_poset
from .tangent import (
    EigenvectorType,
    NotAHilbertPoint,
    TangentVector,
    is_borel_eigenvector,
    is_tangent,
    torus_eigenvector_type,
)


class DegenerationError(ValueError):
    pass


class WeightError(DegenerationError):
    pass


class NoDirection(DegenerationError):
    """The echelon basis is already monomial: the path sits at its limit."""


class DirectionTie(WeightError):
    """Distinct shifts share the smallest weight drop: w lies on a wall."""


@dataclass
class PolynomialIdeal:
    """Homogeneous generators (possibly of mixed degrees) in K[x_0..x_n]."""

    n: int
    generators: list

    @classmethod
    def from_json(cls, data: dict) -> "PolynomialIdeal":
        n = int(data["n"])
        gens = []
        for g in data["generators"]:
            if isinstance(g, str):
                gens.append(parse_poly(g, n + 1))
            elif isinstance(g, dict):
                gens.append({tuple(int(e) for e in a): Fraction(str(c)) for c, a in g["terms"]})
            else:
                gens.append({tuple(int(e) for e in g): Fraction(1)})
        for p in gens:
            degs = {sum(a) for a in p}
            if len(degs) != 1 or any(len(a) != n + 1 for a in p):
                raise ValueError("generators must be nonzero homogeneous polynomials")
        return cls(n, gens)

    @classmethod
    def of_monomial_ideal(cls, ideal: MonomialIdeal) -> "PolynomialIdeal":
        return cls(ideal.n, [{g: Fraction(1)} for g in ideal.generators])


@dataclass
class HomogeneousIdealBasis:
    """A linear basis of ``I_m`` as sparse forms."""

    n: int
    m: int
    forms: list

    @property
    def r(self) -> int:
        return len(self.forms)


@dataclass
class EchelonBasis:
    n: int
    m: int
    weight: tuple
    forms: list
    leads: list


def _dense(forms: Sequence[dict], cols: Sequence) -> list:
    idx = {a: k for k, a in enumerate(cols)}
    rows = []
    for p in forms:
        row = [Fraction(0)] * len(cols)
        for a, c in p.items():
            row[idx[a]] = Fraction(c)
        rows.append(row)
    return rows


def _sparse(row: Sequence, cols: Sequence) -> dict:
    return {a: c for a, c in zip(cols, row) if c != 0}


def truncate_at(ideal: PolynomialIdeal, m: int) -> HomogeneousIdealBasis:
    """Linear basis of the degree-m part of the ideal."""
    degs = [sum(next(iter(p))) for p in ideal.generators]
    if degs and m < max(degs):
        raise DegenerationError(f"degree {m} is below the generator degree {max(degs)}")
    cols = monomials(m, ideal.n)
    products = [times_monomial(p, e) for p, d in zip(ideal.generators, degs)
                for e in monomials(m - d, ideal.n)]
    reduced, _ = rref(_dense(products, cols), len(cols)) if products else ([], [])
    return HomogeneousIdealBasis(ideal.n, m, [_sparse(r, cols) for r in reduced])


def ideal_of_points(points: Sequence[Sequence], m: int) -> HomogeneousIdealBasis:
    """Degree-m forms vanishing at the given points of P^n."""
    n = len(points[0]) - 1
    cols = monomials(m, n)
    rows = []
    for pt in points:
        pt = [Fraction(x) for x in pt]
        row = []
        for a in cols:
            v = Fraction(1)
            for x, e in zip(pt, a):
                v *= x ** e
            row.append(v)
        rows.append(row)
    basis = nullspace(rows, len(cols))
    reduced, _ = rref(basis, len(cols)) if basis else ([], [])
    return HomogeneousIdealBasis(n, m, [_sparse(r, cols) for r in reduced])


def intersect(a: HomogeneousIdealBasis, b: HomogeneousIdealBasis) -> HomogeneousIdealBasis:
    """The degree-m part of the intersection of two ideals given in the same degree."""
    if (a.n, a.m) != (b.n, b.m):
        raise ValueError("bases live in different rings or degrees")
    cols = monomials(a.m, a.n)
    da, db = _dense(a.forms, cols), _dense(b.forms, cols)
    # sum_i s_i a_i = sum_j t_j b_j; the kernel's s-part spans the intersection
    rows = [[da[i][k] for i in range(len(da))] + [-db[j][k] for j in range(len(db))]
            for k in range(len(cols))]
    kernel = nullspace(rows, len(da) + len(db))
    forms = [[sum(v[i] * da[i][k] for i in range(len(da))) for k in range(len(cols))]
             for v in kernel]
    reduced, _ = rref(forms, len(cols)) if forms else ([], [])
    return HomogeneousIdealBasis(a.n, a.m, [_sparse(r, cols) for r in reduced])


def random_points(seed, k: int, n: int, height: int = 20) -> list:
    rng = random.Random(seed)
    return [tuple(Fraction(rng.randint(-height, height)) or Fraction(1) for _ in range(n + 1))
            for _ in range(k)]


def generic_matrix(seed, size: int, height: int = 50):
    return random_integer_matrix(random.Random(seed), size, height)


def apply_matrix(basis: HomogeneousIdealBasis, g) -> HomogeneousIdealBasis:
    action = MatrixAction(g)
    return HomogeneousIdealBasis(basis.n, basis.m, [action(p) for p in basis.forms])


def generic_change(basis: HomogeneousIdealBasis, seed, height: int = 50, g=None):
    """Apply a seeded random integer matrix (or the override ``g``) to every form."""
    if g is None:
        g = generic_matrix(seed, basis.n + 1, height)
    return apply_matrix(basis, g)


def _check_weight(w, n: int, d: int):
    if len(w) != n + 1:
        raise WeightError(f"weight has {len(w)} entries, expected {n + 1}")
    if not distinguishes(w, n, d):
        raise WeightError(f"weight does not distinguish monomials of degree {d}")


def echelonize(basis: HomogeneousIdealBasis, w: Sequence[int]) -> EchelonBasis:
    """Gauss-Jordan with pivots on w-heaviest monomials; leads have coefficient 1."""
    w = tuple(w)
    _check_weight(w, basis.n, basis.m)
    cols = monomials(basis.m, basis.n)
    order = sorted(range(len(cols)), key=lambda k: (weight_of(cols[k], w), cols[k]), reverse=True)
    reduced, pivots = rref(_dense(basis.forms, cols), len(cols), order)
    if len(pivots) != basis.r:
        raise DegenerationError("input forms are linearly dependent")
    return EchelonBasis(basis.n, basis.m, w, [_sparse(r, cols) for r in reduced],
                        [cols[p] for p in pivots])


def _leads_filter(e: EchelonBasis) -> Filter:
    p = build_poset(e.m, e.n)
    return Filter(p, p.bits_of(e.leads))


def initial_ideal(basis: HomogeneousIdealBasis, w: Sequence[int]) -> Filter:
    """Leading monomials of the echelon basis, as a subset of P(m, n).

    Up-closed exactly when the initial ideal is Borel-fixed; check with
    ``is_up_closed``.
    """
    return _leads_filter(echelonize(basis, w))


def first_order_direction(basis, w: Sequence[int] | None = None, walls: bool = False):
    """``(K, v)``: the shift with the smallest weight drop and its tangent vector.

    K is ``B - A`` for tail monomials B of the form led by A.  Accepts either a
    basis (echelonized with ``w``) or an :class:`EchelonBasis`.

    A tie between distinct shifts raises :class:`DirectionTie`.  With
    ``walls=True`` (experimental) the tied entries are kept together and K is
    returned as None.
    """
    e = basis if isinstance(basis, EchelonBasis) else echelonize(basis, w)
    w = e.weight
    best = None
    shifts = set()
    for a, form in zip(e.leads, e.forms):
        for b, c in form.items():
            if b == a:
                continue
            drop = weight_of(sub(a, b), w)
            if drop <= 0:
                raise AssertionError("lead is not the w-heaviest term")
            if best is None or drop < best:
                best, shifts = drop, {sub(b, a)}
            elif drop == best:
                shifts.add(sub(b, a))
    if best is None:
        raise NoDirection("limit point reached, no direction")
    if len(shifts) > 1:
        if not walls:
            raise DirectionTie(f"distinct shifts {sorted(shifts)} tie at weight drop {best}")
        entries = {(a, b): c for a, form in zip(e.leads, e.forms) for b, c in form.items()
                   if b != a and weight_of(sub(a, b), w) == best}
        return None, TangentVector(_leads_filter(e), entries)
    K = shifts.pop()
    entries = {}
    for a, form in zip(e.leads, e.forms):
        c = form.get(add(a, K))
        if c:
            entries[a, add(a, K)] = c
    return K, TangentVector(_leads_filter(e), entries)


@dataclass
class DegenerationReport:
    n: int
    m: int
    r: int
    hilbert_polynomial: HilbertPolynomial
    weight: tuple
    seed: object
    limit_filter: Filter
    K: tuple | None
    tangent: TangentVector | None
    borel_fixed_limit: bool
    borel_eigenvector_tangent: bool | None
    is_tangent: bool | None
    genericity_note: str
    eigenvector_type: EigenvectorType | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        t = self.eigenvector_type
        return {
            "n": self.n,
            "m": self.m,
            "r": self.r,
            "hilbert_polynomial": self.hilbert_polynomial.to_json(),
            "weight": list(self.weight),
            "seed": self.seed,
            "limit_filter": self.limit_filter.to_json(),
            "K": list(self.K) if self.K is not None else None,
            "tangent": self.tangent.to_json()["entries"] if self.tangent is not None else None,
            "type": t.to_json() if t is not None else None,
            "borel_fixed_limit": self.borel_fixed_limit,
            "borel_eigenvector_tangent": self.borel_eigenvector_tangent,
            "is_tangent": self.is_tangent,
            "genericity_note": self.genericity_note,
        }


def _as_basis(ideal, m: int) -> HomogeneousIdealBasis:
    if isinstance(ideal, HomogeneousIdealBasis):
        if ideal.m != m:
            raise DegenerationError(f"basis is in degree {ideal.m}, the Gotzmann number is {m}")
        return ideal
    if isinstance(ideal, MonomialIdeal):
        ideal = PolynomialIdeal.of_monomial_ideal(ideal)
    return truncate_at(ideal, m)


def prepare(ideal, rho: HilbertPolynomial, w: Sequence[int] | None = None,
            relaxed: bool = False):
    """Truncate at the Gotzmann number and validate (or build) the weight.

    The weight must separate monomials of degree r*m, or only of degree m
    when ``relaxed``.
    """
    m = gotzmann_number(rho)
    basis = _as_basis(ideal, m)
    n = basis.n
    r = basis.r
    if r != comb(m + n, n) - rho(m):
        raise DegenerationError(
            f"dim I_{m} = {r}, but rho requires {comb(m + n, n) - rho(m)}")
    if w is None:
        w = make_weight(n, max(r * m, 1))
    w = tuple(int(x) for x in w)
    _check_weight(w, n, m if relaxed else max(r * m, m))
    if not is_decreasing(w):
        raise WeightError("weight must be strictly decreasing")
    return basis, w


def _report(basis, rho, w, seed, g, note, e=None, walls=False) -> DegenerationReport:
    if e is None:
        e = echelonize(generic_change(basis, seed, g=g), w)
    limit = _leads_filter(e)
    borel = limit.is_up_closed() and is_borel_fixed(MonomialIdeal.of_filter(limit))
    try:
        K, v = first_order_direction(e, walls=walls)
    except NoDirection:
        note = "; ".join(x for x in (note, "at fixed point: no direction") if x)
        return DegenerationReport(basis.n, basis.m, basis.r, rho, w, seed, limit, None, None,
                                  borel, None, None, note)
    try:
        tangent_ok = is_tangent(v, rho)
    except NotAHilbertPoint:
        tangent_ok = False
    if K is None:
        shifts = sorted({sub(b, a) for a, b in v.entries}, reverse=True)
        note = "; ".join(x for x in (note, f"wall: shifts {shifts} tie") if x)
    return DegenerationReport(basis.n, basis.m, basis.r, rho, w, seed, limit, K, v, borel,
                              is_borel_eigenvector(v), tangent_ok, note,
                              torus_eigenvector_type(v))


def degenerate_report(ideal, rho: HilbertPolynomial, w: Sequence[int] | None = None,
                      seed: int = 0, g=None, walls: bool = False) -> DegenerationReport:
    """Run truncate, generic change, echelonize, limit and direction, with verdicts.

    Without an explicit ``g`` a second, independently seeded matrix is used
    to cross-check the limit; disagreement is reported in ``genericity_note``.

    ``walls=True`` is an experimental mode: the weight need only separate
    degree-m monomials, and tied shifts are reported together (K is None)
    instead of raising.  Its verdicts are data, not guarantees.
    """
    basis, w = prepare(ideal, rho, w, relaxed=walls)
    e = echelonize(generic_change(basis, seed, g=g), w)
    if g is None:
        check = echelonize(generic_change(basis, f"{seed}/genericity"), w)
        if set(check.leads) == set(e.leads):
            note = "limit agrees across seeds"
        else:
            note = "GENERICITY FAILURE: a second seed gives a different limit"
    else:
        note = "explicit matrix; genericity not checked"
    return _report(basis, rho, w, seed, g, note, e, walls)


def sample_weight(rng: random.Random, n: int, d: int, spread: int = 1000) -> tuple:
    """Strictly decreasing positive weight distinguishing degree-d monomials."""
    while True:
        w = [rng.randint(0, spread)]
        for _ in range(n):
            w.append(w[-1] + rng.randint(1, spread))
        w = tuple(reversed(w))
        if distinguishes(w, n, d):
            return w


def _fan_trial(args):
    basis, rho, w, seed, g = args
    rep = _report(basis, rho, w, seed, g, "")
    return rep.limit_filter, rep.eigenvector_type


def first_order_fan_sample(ideal, rho: HilbertPolynomial, seed: int = 0, trials: int = 10,
                           spread: int = 1000, workers: int = 1) -> dict:
    """Map sampled weights to ``(limit filter, eigenvector type)`` for one fixed g.

    Weights are drawn up front from a seeded stream, so the result does not
    depend on ``workers``.
    """
    basis, _ = prepare(ideal, rho)
    rng = random.Random(f"{seed}/weights")
    g = generic_matrix(seed, basis.n + 1)
    d = max(basis.r * basis.m, basis.m)
    weights: list = []
    while len(weights) < trials:
        w = sample_weight(rng, basis.n, d, spread)
        if w not in weights:
            weights.append(w)
    jobs = [(basis, rho, w, seed, g) for w in weights]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_fan_trial, jobs))
    else:
        results = [_fan_trial(j) for j in jobs]
    return dict(zip(weights, results))


def fan_chambers(samples: dict) -> list:
    """Group sampled weights by the (limit, type) they produce."""
    groups: dict = {}
    for w, (limit, t) in samples.items():
        key = (limit.bits, None if t is None else (t.K, t.f_prime.bits))
        groups.setdefault(key, (limit, t, []))[2].append(w)
    return sorted(groups.values(), key=lambda x: (-len(x[2]), x[2][0]))
