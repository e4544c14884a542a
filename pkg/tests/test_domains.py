from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hfl.complex import build_differential
from hfl.domains import (
    NotAdmissible,
    connecting_domain,
    connects,
    is_admissible,
    make_domain,
    periodic_basis,
    positive_domains,
)
from hfl.generators import enumerate_generators, find_generator
from hfl.io import BUNDLED


def test_conway_periodic_domains(conway):
    basis = periodic_basis(conway)
    assert len(basis) == 1
    (P,) = basis
    assert not any(P.n_w) and not any(P.n_z)
    assert any(c > 0 for c in P.coefficients) and any(c < 0 for c in P.coefficients)
    assert is_admissible(conway)


def test_bundled_diagrams_are_admissible(bundled):
    for d in bundled.values():
        assert is_admissible(d)


def test_periodic_domains_have_no_boundary(bundled):
    for d in bundled.values():
        for x in enumerate_generators(d)[:3]:
            for P in periodic_basis(d):
                assert connects(d, P, x, x)


def test_inadmissible_witness(inadmissible):
    adm = is_admissible(inadmissible)
    assert not adm
    w = adm.witness
    assert w.is_positive and not w.is_zero
    assert not any(w.n_w) and not any(w.n_z)
    x = enumerate_generators(inadmissible)[0]
    assert connects(inadmissible, w, x, x)


def test_inadmissible_diagram_refuses_to_count(inadmissible):
    x = enumerate_generators(inadmissible)[0]
    with pytest.raises(NotAdmissible):
        positive_domains(inadmissible, x, x)
    with pytest.raises(NotAdmissible, match="non-negative periodic domain"):
        build_differential(inadmissible)


def test_hexagon_targets_have_positive_domains(conway):
    gens = enumerate_generators(conway)
    x = find_generator(gens, ["b5", "n1", "s3"])
    for target in (["a1", "m1", "r1"], ["a2", "m2", "r1"]):
        y = find_generator(gens, target)
        doms = positive_domains(conway, x, y)
        assert doms and all(D.is_positive and connects(conway, D, x, y) for D in doms)


@given(st.data())
def test_connecting_domains_satisfy_the_boundary_equation(bundled, data):
    d = bundled[data.draw(st.sampled_from(BUNDLED))]
    gens = enumerate_generators(d)
    x = data.draw(st.sampled_from(gens))
    y = data.draw(st.sampled_from(gens))
    D = connecting_domain(d, x, y)
    assert D is not None
    assert connects(d, D, x, y)
    assert not any(D.n_w)
    assert connects(d, -D, y, x)


@given(st.data())
def test_positive_domains_are_exhaustive_on_small_boxes(bundled, data):
    # every non-negative vector with small entries that connects x to y is listed
    d = bundled[data.draw(st.sampled_from(["trefoil_g1", "hopf_pos"]))]
    gens = enumerate_generators(d)
    x = data.draw(st.sampled_from(gens))
    y = data.draw(st.sampled_from(gens))
    listed = {D.coefficients for D in positive_domains(d, x, y)}
    coeffs = data.draw(st.lists(st.integers(0, 2), min_size=len(d.regions), max_size=len(d.regions)))
    D = make_domain(d, coeffs)
    if not any(D.n_w) and not any(D.n_z) and connects(d, D, x, y):
        assert D.coefficients in listed
