import random
from fractions import Fraction

import pytest

from borelhilb.degeneration import (
    DegenerationError,
    HomogeneousIdealBasis,
    NoDirection,
    PolynomialIdeal,
    WeightError,
    degenerate_report,
    echelonize,
    fan_chambers,
    first_order_direction,
    first_order_fan_sample,
    generic_change,
    generic_matrix,
    ideal_of_points,
    initial_ideal,
    intersect,
    random_points,
    truncate_at,
)
from borelhilb.formats import dumps, parse_points
from borelhilb.hilbert import HilbertPolynomial as H
from borelhilb.ideals import MonomialIdeal, enumerate_borel_points, saturate_borel, truncation_filter
from borelhilb.linalg import identity
from borelhilb.monomials import make_weight, weight_of
from borelhilb.polys import parse_poly
from borelhilb.tangent import is_borel_eigenvector
from oracles import lex_initial_degree_part

CONIC = PolynomialIdeal(2, [parse_poly("x0^2 + 3*x0*x1 - 2*x0*x2 + x1^2 + 5*x1*x2 - 7*x2^2", 3)])
LEX3 = make_weight(2, 3)


def monomial_ideal(*gens):
    return PolynomialIdeal.of_monomial_ideal(MonomialIdeal(2, gens))


def three_points(seed):
    return ideal_of_points(random_points(seed, 3, 2), 3)


def four_points(seed):
    return ideal_of_points(random_points(seed, 4, 2), 4)


def generic_conic(seed):
    rng = random.Random(f"conic/{seed}")
    return PolynomialIdeal(2, [{a: Fraction(rng.randint(-9, 9) or 1) for a in
                                [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]}])


def conic_and_two_points(seed):
    # rho = (2z+1) + 2; Gotzmann number 4
    rng = random.Random(f"cp/{seed}")
    conic = truncate_at(generic_conic(seed), 4)
    pts = [tuple(Fraction(rng.randint(-9, 9)) for _ in range(3)) for _ in range(2)]
    return intersect(conic, ideal_of_points(pts, 4))


def test_truncate_examples():
    assert truncate_at(monomial_ideal((2, 0, 0), (1, 1, 0), (0, 2, 0)), 3).r == 7
    b = truncate_at(monomial_ideal((1, 0, 0)), 1)
    assert b.forms == [{(1, 0, 0): 1}]
    assert truncate_at(CONIC, 2).r == 1
    assert truncate_at(CONIC, 4).r == 6
    with pytest.raises(DegenerationError):
        truncate_at(CONIC, 1)


def test_ideal_of_points_and_intersection():
    pts = random_points(0, 3, 2)
    b = ideal_of_points(pts, 3)
    assert b.r == 7
    for form in b.forms:
        for p in pts:
            val = sum(c * p[0] ** a[0] * p[1] ** a[1] * p[2] ** a[2] for a, c in form.items())
            assert val == 0
    assert conic_and_two_points(0).r == 15 - (2 * 4 + 3)


def test_generic_change():
    b = truncate_at(monomial_ideal((1, 0, 0)), 1)
    assert generic_change(b, 0, g=identity(3)).forms == b.forms
    moved = generic_change(b, 0)
    assert len(moved.forms[0]) == 3
    assert generic_change(b, 0).forms == generic_change(b, 0).forms
    assert generic_change(b, 0).forms != generic_change(b, 1).forms
    g = generic_matrix(0, 3)
    assert all(-50 <= x <= 50 for row in g for x in row)


def test_echelonize_examples():
    x2, xy = (2, 0, 0), (1, 1, 0)
    b = HomogeneousIdealBasis(2, 2, [{x2: 1, xy: 1}, {xy: 1}])
    e = echelonize(b, make_weight(2, 2))
    assert e.leads == [x2, xy]
    assert e.forms == [{x2: 1}, {xy: 1}]
    single = HomogeneousIdealBasis(2, 2, [{(0, 1, 1): 4, (1, 0, 1): 2}])
    e = echelonize(single, make_weight(2, 2))
    assert e.leads == [(1, 0, 1)] and e.forms[0][(1, 0, 1)] == 1
    with pytest.raises(DegenerationError):
        echelonize(HomogeneousIdealBasis(2, 2, [{x2: 1}, {x2: 2}]), make_weight(2, 2))
    with pytest.raises(WeightError):
        echelonize(b, (2, 1, 0))


def test_echelon_leads_are_weight_maximal():
    e = echelonize(generic_change(three_points(4), 4), make_weight(2, 21))
    for a, form in zip(e.leads, e.forms):
        assert form[a] == 1
        assert all(weight_of(a, e.weight) > weight_of(b, e.weight) for b in form if b != a)
        assert all(a not in other for other in e.forms if other is not form)


def test_initial_ideal_examples():
    conic = generic_change(truncate_at(CONIC, 2), 0)
    assert initial_ideal(conic, make_weight(2, 2)).members == ((2, 0, 0),)
    mono = truncate_at(monomial_ideal((2, 0, 0), (1, 1, 0), (0, 2, 0)), 3)
    assert initial_ideal(mono, LEX3).bits == truncation_filter(
        MonomialIdeal(2, [(2, 0, 0), (1, 1, 0), (0, 2, 0)]), 3).bits
    lim = initial_ideal(generic_change(three_points(0), 0), make_weight(2, 21))
    assert lim.is_up_closed()
    assert saturate_borel(MonomialIdeal.of_filter(lim)) == MonomialIdeal(2, [(1, 0, 0), (0, 3, 0)])


@pytest.mark.parametrize("seed", range(4))
def test_initial_ideal_matches_groebner_oracle(seed):
    b = generic_change(three_points(seed), seed)
    lim = initial_ideal(b, make_weight(2, 21))
    assert set(lim.members) == lex_initial_degree_part(b.forms, 2, 3)


def test_first_order_direction_conic():
    b = generic_change(truncate_at(CONIC, 2), 7)
    e = echelonize(b, make_weight(2, 2))
    K, v = first_order_direction(e)
    assert K == (-1, 1, 0)
    assert v.entries == {((2, 0, 0), (1, 1, 0)): e.forms[0][(1, 1, 0)]}
    with pytest.raises(NoDirection):
        first_order_direction(truncate_at(monomial_ideal((2, 0, 0)), 2), make_weight(2, 2))


def test_three_points_direction_regression():
    rep = degenerate_report(three_points(0), H([3]), seed=0)
    assert rep.K == (0, -1, 1)
    assert [a for a, _ in rep.tangent.entries] == [(0, 3, 0)]
    assert is_borel_eigenvector(rep.tangent)


def test_reports_main_examples():
    rep = degenerate_report(three_points(1), H([3]), seed=1)
    assert rep.borel_fixed_limit and rep.borel_eigenvector_tangent and rep.is_tangent
    assert rep.limit_filter in enumerate_borel_points(H([3]), 2)
    rep = degenerate_report(CONIC, H([1, 2]), seed=0)
    assert rep.borel_fixed_limit and rep.borel_eigenvector_tangent and rep.is_tangent
    assert rep.K == (-1, 1, 0)
    assert list(rep.tangent.entries) == [((2, 0, 0), (1, 1, 0))]


def test_fixed_point_with_identity():
    ideal = monomial_ideal((2, 0, 0), (1, 1, 0), (0, 2, 0))
    rep = degenerate_report(ideal, H([3]), seed=0, g=identity(3))
    assert rep.borel_fixed_limit
    assert rep.K is None and rep.tangent is None
    assert "at fixed point" in rep.genericity_note


def test_weight_checks():
    with pytest.raises(WeightError, match="does not distinguish"):
        degenerate_report(three_points(0), H([3]), w=(1, 1, 0))
    with pytest.raises(WeightError, match="does not distinguish"):
        degenerate_report(three_points(0), H([3]), w=(16, 4, 1))  # fine in degree 3, not 21
    with pytest.raises(WeightError, match="decreasing"):
        degenerate_report(three_points(0), H([3]), w=(1, 22, 484))
    with pytest.raises(DegenerationError):
        degenerate_report(three_points(0), H([4]))


def test_genericity_note_across_seeds():
    a = degenerate_report(three_points(0), H([3]), seed=0)
    b = degenerate_report(three_points(0), H([3]), seed=1)
    assert a.limit_filter == b.limit_filter
    assert a.genericity_note == "limit agrees across seeds"


@pytest.mark.parametrize("make,rho", [(three_points, H([3])), (generic_conic, H([1, 2])),
                                      (four_points, H([4])), (conic_and_two_points, H([3, 2]))],
                         ids=["3pts", "conic", "4pts", "conic+2pts"])
def test_limits_and_directions_are_borel(make, rho):
    for seed in range(25):
        rep = degenerate_report(make(seed), rho, seed=seed)
        assert rep.borel_fixed_limit, seed
        assert rep.borel_eigenvector_tangent, seed
        assert rep.is_tangent, seed


def _flow(e, t):
    """Forms of lambda_w(t) applied to the echelon basis, renormalized by t^{w.A}."""
    forms = []
    for a, form in zip(e.leads, e.forms):
        forms.append({b: c * t ** weight_of(tuple(x - y for x, y in zip(a, b)), e.weight)
                      for b, c in form.items()})
    return HomogeneousIdealBasis(e.n, e.m, forms)


@pytest.mark.parametrize("seed", range(3))
def test_path_consistency(seed):
    w = make_weight(2, 21)
    e = echelonize(generic_change(three_points(seed), seed), w)
    K, v = first_order_direction(e)
    t = Fraction(1, 1000)
    e_t = echelonize(_flow(e, t), w)
    assert e_t.leads == e.leads
    K_t, v_t = first_order_direction(e_t)
    assert K_t == K
    drop = min(weight_of(tuple(x - y for x, y in zip(a, b)), w)
               for (a, b) in v.entries)
    assert v_t.ratio_to(v) == t ** drop


def test_scale_invariance():
    w = make_weight(2, 21)
    a = degenerate_report(three_points(2), H([3]), w=w, seed=2)
    b = degenerate_report(three_points(2), H([3]), w=tuple(2 * x for x in w), seed=2)
    assert (a.limit_filter, a.K, a.tangent.entries) == (b.limit_filter, b.K, b.tangent.entries)


def test_determinism():
    a = dumps(degenerate_report(three_points(5), H([3]), seed=5).to_json())
    b = dumps(degenerate_report(three_points(5), H([3]), seed=5).to_json())
    assert a == b


def test_fan_conic_single_type():
    samples = first_order_fan_sample(CONIC, H([1, 2]), seed=0, trials=100)
    assert len(samples) == 100
    types = {(f.bits, t.K, t.moved) for f, t in samples.values()}
    assert len(types) == 1
    assert next(iter(types))[1] == (-1, 1, 0)


def test_fan_sample_matches_report():
    samples = first_order_fan_sample(three_points(0), H([3]), seed=3, trials=6)
    g = generic_matrix(3, 3)
    for w, (f, t) in samples.items():
        rep = degenerate_report(three_points(0), H([3]), w=w, seed=3, g=g)
        assert rep.limit_filter == f
        assert rep.eigenvector_type == t
    groups = fan_chambers(samples)
    assert sum(len(ws) for _, _, ws in groups) == 6


def test_fan_workers_do_not_change_result():
    a = first_order_fan_sample(three_points(1), H([3]), seed=1, trials=4)
    b = first_order_fan_sample(three_points(1), H([3]), seed=1, trials=4, workers=2)
    assert a == b


def test_parse_points():
    pts = parse_points("# header\n1, 2, 3\n-1 0 5  # trailing\n\n2/3 7 1\n")
    assert pts == [(1, 2, 3), (-1, 0, 5), (Fraction(2, 3), 7, 1)]
    with pytest.raises(ValueError):
        parse_points("0 0 0\n")
    with pytest.raises(ValueError):
        parse_points("1 2\n1 2 3\n")
    with pytest.raises(ValueError):
        parse_points("# nothing\n")


def test_polynomial_ideal_json():
    i = PolynomialIdeal.from_json({"n": 2, "generators": [[1, 0, 0], "x1^2 - x0*x2",
                                                          {"terms": [["3/2", [0, 0, 1]]]}]})
    assert i.generators[1] == {(0, 2, 0): 1, (1, 0, 1): -1}
    assert i.generators[2] == {(0, 0, 1): Fraction(3, 2)}
    with pytest.raises(ValueError):
        PolynomialIdeal.from_json({"n": 2, "generators": ["x0 + x1^2"]})


def _tied_echelon_basis():
    """An echelon basis over the filter {x^2, xy} whose two tails have equal
    weight drop but different shifts, for the first weight where that happens."""
    from itertools import combinations

    from borelhilb.degeneration import EchelonBasis
    from borelhilb.monomials import distinguishes
    leads = [(2, 0, 0), (1, 1, 0)]
    std = [(1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    for w0 in range(3, 20):
        for w1 in range(1, w0):
            w = (w0, w1, 0)
            if not distinguishes(w, 2, 2):
                continue
            for b1, b2 in combinations(std, 2):
                for s1, s2 in ((b1, b2), (b2, b1)):
                    d1 = weight_of(tuple(x - y for x, y in zip(leads[0], s1)), w)
                    d2 = weight_of(tuple(x - y for x, y in zip(leads[1], s2)), w)
                    k1 = tuple(y - x for x, y in zip(leads[0], s1))
                    k2 = tuple(y - x for x, y in zip(leads[1], s2))
                    if d1 == d2 and k1 != k2:
                        forms = [{leads[0]: 1, s1: 2}, {leads[1]: 1, s2: 3}]
                        return EchelonBasis(2, 2, w, forms, leads), {(leads[0], s1), (leads[1], s2)}
    raise AssertionError("no tie found")


def test_direction_tie_raises_and_walls_mode_merges():
    from borelhilb.degeneration import DirectionTie

    e, pairs = _tied_echelon_basis()
    assert not distinguishes_2m(e)
    with pytest.raises(DirectionTie):
        first_order_direction(e)
    K, v = first_order_direction(e, walls=True)
    assert K is None
    assert set(v.entries) == pairs
    assert not is_borel_eigenvector(v)


def distinguishes_2m(e):
    from borelhilb.monomials import distinguishes
    return distinguishes(e.weight, e.n, 2 * e.m)


def test_walls_mode_relaxes_weight_check():
    w = make_weight(2, 3)                       # separates degree 3 only
    with pytest.raises(WeightError):
        degenerate_report(three_points(0), H([3]), w=w)
    rep = degenerate_report(three_points(0), H([3]), w=w, walls=True)
    assert rep.limit_filter == degenerate_report(three_points(0), H([3])).limit_filter
