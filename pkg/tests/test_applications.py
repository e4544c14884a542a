from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import TREFOIL_SEIFERT, conway_euler_oracle, seifert_alexander

from hfl.applications import (
    ApplicationError,
    LaurentPolynomial,
    Polytope,
    cube,
    dual_thurston_polytope,
    euler_polynomial,
    hfl_hull,
    minkowski_difference,
    seifert_genus,
    thurston_norm,
)

F = Fraction
H = F(1, 2)


def _pts(*ps):
    return {tuple(F(x) for x in p) for p in ps}


def test_trefoil_euler_matches_seifert_oracle(trefoil):
    oracle = {(F(k),): c for k, c in seifert_alexander(TREFOIL_SEIFERT).items()}
    assert euler_polynomial(trefoil).as_dict() == oracle == {(F(1),): 1, (F(0),): -1, (F(-1),): 1}
    assert str(euler_polynomial(trefoil)) == "T^-1 - 1 + T"


def test_mirror_and_unknot_euler(trefoil_mirror, unknot):
    assert euler_polynomial(trefoil_mirror).as_dict() == {(F(1),): 1, (F(0),): -1, (F(-1),): 1}
    assert euler_polynomial(unknot).as_dict() == {(F(0),): 1}


def test_conway_euler_matches_fox_oracle(conway):
    ours = euler_polynomial(conway).as_dict()
    oracle = conway_euler_oracle()
    assert ours in (oracle, {k: -c for k, c in oracle.items()})
    assert euler_polynomial(conway).symmetry_sign() == 1


def test_hopf_euler(hopf):
    # -(t1^1/2 - t1^-1/2)(t2^1/2 - t2^-1/2), up to the global sign of links
    expected = {(H, H): -1, (-H, -H): -1, (H, -H): 1, (-H, H): 1}
    ours = euler_polynomial(hopf).as_dict()
    assert ours in (expected, {k: -c for k, c in expected.items()})


def test_genus(unknot, trefoil, trefoil_mirror, hopf):
    assert seifert_genus(unknot) == 0
    assert seifert_genus(trefoil) == 1
    assert seifert_genus(trefoil_mirror) == 1
    with pytest.raises(ApplicationError, match="not a knot"):
        seifert_genus(hopf)


def test_conway_hull(conway):
    hull = hfl_hull(conway)
    assert set(hull.vertices) == _pts((2, 1), (1, 2), (-1, 2), (-2, 1), (-2, -1), (-1, -2), (1, -2), (2, -1))
    assert hull.dimension == 2 and hull.is_centrally_symmetric()
    for p in [(-1, 2), (-2, 1), (1, 1), (0, 0)]:
        assert hull.contains(p)
    for p in [(-2, 2), (2, -2), (3, 0)]:
        assert not hull.contains(p)


def test_conway_dual_polytope_and_norm(conway):
    P = dual_thurston_polytope(conway)
    assert set(P.vertices) == _pts((3, 1), (1, 3), (-1, 3), (-3, 1), (-3, -1), (-1, -3), (1, -3), (3, -1))
    assert set((P + cube(2)).vertices) == set(hfl_hull(conway).scaled(2).vertices)
    hull = hfl_hull(conway)
    assert thurston_norm(hull, (1, 0)) == 3 == thurston_norm(hull, (0, 1))
    # the norm is the support function of the dual polytope
    for h in [(1, 0), (0, 1), (1, 1), (2, -1), (-3, 5)]:
        assert thurston_norm(hull, h) == P.support(h)


def test_small_polytopes(trefoil, hopf, unknot):
    assert set(hfl_hull(trefoil).vertices) == _pts((-1,), (1,))
    assert set(dual_thurston_polytope(trefoil).vertices) == _pts((-1,), (1,))
    assert set(hfl_hull(hopf).vertices) == _pts((H, H), (H, -H), (-H, H), (-H, -H))
    assert set(dual_thurston_polytope(hopf).vertices) == _pts((0, 0))
    assert thurston_norm(hfl_hull(hopf), (1, 0)) == 0
    with pytest.raises(ApplicationError, match="infeasible"):
        dual_thurston_polytope(unknot)


def test_minkowski_rejects_non_summand():
    triangle = Polytope.hull([(0, 0), (4, 0), (0, 4)])
    with pytest.raises(ApplicationError, match="infeasible"):
        minkowski_difference(triangle, cube(2))


coords = st.integers(-4, 4)


@given(st.lists(st.tuples(coords, coords), min_size=3, max_size=7))
def test_minkowski_round_trip(points):
    P = Polytope.hull(points)
    big = P + cube(2)
    Q = minkowski_difference(big, cube(2))
    assert set((Q + cube(2)).vertices) == set(big.vertices)
    assert set(Q.vertices) == set(P.vertices) or P.dimension < 2


@given(st.lists(st.tuples(coords, coords), min_size=1, max_size=8))
def test_hull_contains_its_points(points):
    P = Polytope.hull(points)
    assert all(P.contains(p) for p in points)
    assert set(P.vertices) <= _pts(*points)


exps = st.integers(-3, 3)


@given(st.dictionaries(st.tuples(exps, exps), st.integers(-3, 3).filter(bool), max_size=6))
def test_laurent_symmetrisation(counts):
    half = {max((a, b), (-a, -b)): c for (a, b), c in counts.items()}
    sym = {**half, **{(-a, -b): c for (a, b), c in half.items()}}
    p = LaurentPolynomial.from_counts(sym, 2)
    assert p.symmetry_sign() == 1
    assert p.negated_exponents() == p
    assert (-p).symmetry_sign() == 1
    assert p.evaluate((1, 1)) == sum(c for _, c in p.terms)


def test_laurent_antisymmetric_and_half_integral():
    p = LaurentPolynomial.from_counts({(H,): 1, (-H,): -1}, 1)
    assert p.scale == 2 and p.symmetry_sign() == -1
    assert str(p) == "-T^(-1/2) + T^(1/2)"
    with pytest.raises(ValueError):
        p.evaluate((4,))
    assert LaurentPolynomial.from_counts({(1,): 1, (0,): 1}, 1).symmetry_sign() is None


def test_hull_needs_determined_ranks_only_where_it_matters(conway):
    # (0, 0) is undetermined but interior, so the hull is still exact
    from hfl.closure import homology_table

    t = homology_table(conway)
    assert t.total_bounds((0, 0))[0] != t.total_bounds((0, 0))[1]
    assert hfl_hull(conway).contains((0, 0))
    assert all(t.total_bounds(a)[0] == t.total_bounds(a)[1] for a in t.totals() if a != (0, 0))
