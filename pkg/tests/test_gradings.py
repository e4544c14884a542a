from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hfl.domains import connecting_domain, make_domain, periodic_basis
from hfl.generators import enumerate_generators, find_generator, generator_sign
from hfl.gradings import (
    GradingError,
    absolute_alexander,
    alexander_difference,
    maslov_gradings,
    maslov_index,
    relative_gradings,
    relative_maslov,
)
from hfl.io import BUNDLED


def _triple(bundled, data):
    d = bundled[data.draw(st.sampled_from(BUNDLED))]
    gens = enumerate_generators(d)
    return d, [data.draw(st.sampled_from(gens)) for _ in range(3)]


def _surface(d):
    """The whole surface as a domain: zero boundary, one through every basepoint."""
    return make_domain(d, [1] * len(d.regions))


@given(st.data())
def test_gradings_do_not_depend_on_the_connecting_domain(bundled, data):
    d, (x, y, _) = _triple(bundled, data)
    D = connecting_domain(d, x, y)
    gr = maslov_index(d, D, x, y) - 2 * sum(D.n_w)
    alex = tuple(z - w for z, w in zip(D.n_z, D.n_w))
    extras = periodic_basis(d) + [_surface(d)]
    ks = data.draw(st.lists(st.integers(-3, 3), min_size=len(extras), max_size=len(extras)))
    E = D
    for k, P in zip(ks, extras):
        E = E + P.scaled(k)
    assert maslov_index(d, E, x, y) - 2 * sum(E.n_w) == gr == relative_maslov(d, x, y)
    assert tuple(z - w for z, w in zip(E.n_z, E.n_w)) == alex == alexander_difference(d, x, y)


@given(st.data())
def test_maslov_index_is_additive(bundled, data):
    d, (x, y, z) = _triple(bundled, data)
    D1 = connecting_domain(d, x, y)
    D2 = connecting_domain(d, y, z)
    assert maslov_index(d, D1 + D2, x, z) == maslov_index(d, D1, x, y) + maslov_index(d, D2, y, z)


@given(st.data())
def test_relative_gradings_form_a_cocycle(bundled, data):
    d, (x, y, z) = _triple(bundled, data)
    assert relative_maslov(d, x, y) + relative_maslov(d, y, z) == relative_maslov(d, x, z)
    a = [sum(t) for t in zip(alexander_difference(d, x, y), alexander_difference(d, y, z))]
    assert tuple(a) == alexander_difference(d, x, z)


def test_maslov_parity_follows_the_generator_sign(bundled):
    for d in bundled.values():
        rel = relative_gradings(d)
        ref = generator_sign(d, rel.reference)
        for g in rel.generators:
            assert (-1) ** (rel.maslov[g] % 2) == generator_sign(d, g) * ref


def test_absolute_alexander_parity(bundled):
    for d in bundled.values():
        lk = [sum(row) for row in d.linking_matrix]
        for a in absolute_alexander(d).values():
            for ai, li in zip(a, lk):
                assert (2 * ai + li) % 2 == 0


def test_hopf_alexander_gradings_are_half_integral(hopf):
    values = set(absolute_alexander(hopf).values())
    half = Fraction(1, 2)
    assert values == {(s * half, t * half) for s in (1, -1) for t in (1, -1)}


def test_knot_maslov_grading_is_absolute(trefoil, unknot):
    assert maslov_gradings(unknot).absolute
    assert set(maslov_gradings(unknot).values.values()) == {0}
    mg = maslov_gradings(trefoil)
    alex = absolute_alexander(trefoil)
    assert mg.absolute
    assert {(alex[g][0], m) for g, m in mg.values.items()} == {(1, 0), (0, -1), (-1, -2)}


def test_link_maslov_grading_is_relative(conway):
    mg = maslov_gradings(conway)
    assert not mg.absolute and mg.values[mg.anchor] == 0


def test_conway_paper_generators_share_a_grading(conway):
    gens = enumerate_generators(conway)
    named = [find_generator(gens, p) for p in (["b5", "n1", "s3"], ["a1", "m1", "r1"], ["a2", "m2", "r1"], ["a4", "m1", "r3"])]
    alex = absolute_alexander(conway)
    assert {alex[g] for g in named} == {(1, 1)}
    x, y1, y2, x4 = named
    assert relative_maslov(conway, x, y1) == relative_maslov(conway, x, y2) == 1
    assert relative_maslov(conway, x, x4) == 0


def test_alexander_difference_needs_a_connecting_domain(conway):
    from hfl.generators import Generator

    x = find_generator(enumerate_generators(conway), ["a1", "m1", "r1"])
    bogus = Generator(x.matching, ("s1",) + x.points[1:])  # two points on beta1
    with pytest.raises(GradingError, match="no domain connects"):
        alexander_difference(conway, x, bogus)
