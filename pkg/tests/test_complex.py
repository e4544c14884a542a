from __future__ import annotations

from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hfl.closure import _System, resolve
from hfl.complex import (
    ComplexError,
    GradedComplex,
    build_differential,
    check_d_squared,
    check_gradings,
    classify_domain,
    homology,
    tau,
)
from hfl.domains import positive_domains
from hfl.generators import enumerate_generators, find_generator
from hfl.gradings import maslov_index
from hfl.io import BUNDLED

SMALL = ("unknot_g1", "trefoil_g1", "hopf_pos")


@pytest.mark.parametrize("name", BUNDLED)
@pytest.mark.parametrize("w_only", [False, True])
def test_differential_respects_gradings(bundled, name, w_only):
    cx = build_differential(bundled[name], w_only=w_only)
    assert check_gradings(cx) == []


@pytest.mark.parametrize("name", SMALL)
@pytest.mark.parametrize("w_only", [False, True])
def test_small_complexes_are_certified_and_square_to_zero(bundled, name, w_only):
    cx = build_differential(bundled[name], w_only=w_only)
    assert cx.certified
    assert check_d_squared(cx)


def test_conway_certified_part_squares_to_zero(conway):
    cx = build_differential(conway)
    assert not cx.certified
    assert check_d_squared(cx)


def _flip_breaks(cx) -> bool:
    """Toggle one entry below an existing arrow and look for a d o d failure."""
    for x in cx.generators:
        for y in cx.differential[x]:
            for z in cx.generators:
                if cx.maslov[z] == cx.maslov[y] - 1:
                    diff = dict(cx.differential)
                    diff[y] = diff[y] ^ {z}
                    return not check_d_squared(replace(cx, differential=diff))
    return True


def test_flipped_entry_breaks_d_squared(trefoil):
    cx = build_differential(trefoil, w_only=True)
    assert check_d_squared(cx)
    assert _flip_breaks(cx)


def test_flipped_entry_in_conway_breaks_d_squared(conway):
    cx = build_differential(conway)
    x = find_generator(cx.generators, ["b5", "n1", "s3"])
    y = find_generator(cx.generators, ["a1", "m1", "r1"])
    assert y in cx.differential[x]
    z = next(g for g in cx.generators if cx.maslov[g] == cx.maslov[y] - 1 and (y, g) not in cx.unknown_pairs())
    diff = dict(cx.differential)
    diff[y] = diff[y] ^ {z}
    assert not any(z in diff[h] for h in diff[x] if h != y)
    assert not check_d_squared(replace(cx, differential=diff))


def test_trefoil_classifier_kinds(trefoil):
    cx = build_differential(trefoil, w_only=True)
    kinds = sorted(c.kind for classes in cx.provenance.values() for c in classes)
    assert kinds == ["bigon", "empty"]
    empty = next(c for classes in cx.provenance.values() for c in classes if c.kind == "empty")
    assert empty.count == 0 and "reflex corner" in empty.reason


def test_conway_hexagon_is_certified(conway):
    gens = enumerate_generators(conway)
    x = find_generator(gens, ["b5", "n1", "s3"])
    y = find_generator(gens, ["a1", "m1", "r1"])
    (D,) = positive_domains(conway, x, y)
    cls = classify_domain(conway, D, x, y)
    assert cls.kind == "polygon-2n" and cls.corners == 6 and cls.certified and cls.embedded
    assert str(cls) == "polygon-6"


def test_classify_domain_preconditions(conway):
    gens = enumerate_generators(conway)
    x = find_generator(gens, ["b5", "n1", "s3"])
    y = find_generator(gens, ["a1", "m1", "r1"])
    (D,) = positive_domains(conway, x, y)
    with pytest.raises(ComplexError, match="positive"):
        classify_domain(conway, -D, y, x)
    with pytest.raises(ComplexError, match="Maslov index one"):
        classify_domain(conway, D + D, x, y)


def test_small_homology_tables(bundled, trefoil_mirror):
    def table(d):
        h = homology(build_differential(d))
        return {(tuple(map(str, a)), m): r for (a, m), r in h.ranks.items() if r}

    assert table(bundled["unknot_g1"]) == {(("0",), 0): 1}
    assert table(bundled["trefoil_g1"]) == {(("1",), 0): 1, (("0",), -1): 1, (("-1",), -2): 1}
    assert table(trefoil_mirror) == {(("1",), 2): 1, (("0",), 1): 1, (("-1",), 0): 1}
    h = homology(build_differential(bundled["hopf_pos"]))
    half = Fraction(1, 2)
    assert h.totals() == {(s * half, t * half): 1 for s in (-1, 1) for t in (-1, 1)}


def test_homology_refuses_indeterminate_complex(conway):
    cx = build_differential(conway)
    with pytest.raises(ComplexError, match="indeterminate"):
        homology(cx)
    partial = homology(cx, allow_indeterminate=True)
    assert partial.status == "partial" and partial.bounds


def test_tau(bundled, trefoil_mirror):
    assert tau(bundled["unknot_g1"]) == 0
    assert tau(bundled["trefoil_g1"]) == 1
    assert tau(trefoil_mirror) == -1
    with pytest.raises(ComplexError, match="knot"):
        tau(bundled["hopf_pos"])


# --- closure by d o d = 0 --------------------------------------------------


def _toy(edges, unknown, maslov):
    gens = tuple(sorted(maslov))
    diff = {g: frozenset(b for a, b in edges if a == g) for g in gens}
    indet = [(a, b, None) for a, b in unknown]
    return GradedComplex(None, gens, {g: () for g in gens}, dict(maslov), diff, {}, indet, True)


def test_system_forces_entries():
    # a -> b known, b -> c unknown: d(d(a)) = d(b) must vanish
    cx = _toy([("a", "b")], [("b", "c")], {"a": 2, "b": 1, "c": 0})
    s = _System([cx])
    v = s.vars[("b", "c")]
    assert s.feasible([s.z3.Not(v)]) and not s.feasible([v])


def test_system_detects_inconsistency():
    cx = _toy([("a", "b"), ("b", "c")], [], {"a": 2, "b": 1, "c": 0})
    assert not _System([cx]).feasible()


@given(st.lists(st.booleans(), min_size=4, max_size=4))
def test_system_accepts_every_square_zero_completion(bits):
    # a square a -> b1, b2 -> c: entries with d o d = 0 iff an even number of paths
    e = [("a", "b1"), ("a", "b2"), ("b1", "c"), ("b2", "c")]
    known = [edge for edge, bit in zip(e, bits) if bit]
    paths = (bits[0] and bits[2]) + (bits[1] and bits[3])
    cx = _toy(known, [], {"a": 2, "b1": 1, "b2": 1, "c": 0})
    assert _System([cx]).feasible() == (paths % 2 == 0)


def test_closure_on_certified_diagram_is_plain_homology(trefoil):
    c = resolve(trefoil)
    assert c.table.status == "certified" and c.resolved and not c.forced


def test_conway_closure(conway):
    c = resolve(conway)
    t = c.table
    assert c.coupled and c.symmetric
    assert t.status == "partial"
    assert {a for a, m in t.bounds} == {(0, 0)}
    assert t.total_bounds((0, 0)) == (0, 2)
    assert t.total_bounds((1, 1)) == (2, 2)
    assert t.total_bounds((-1, 2)) == (1, 1) == t.total_bounds((-2, 1))
    assert t.total_bounds((-2, 2)) == (0, 0)


def test_conway_closure_without_symmetry(conway):
    c = resolve(conway, use_symmetry=False)
    t = c.table
    assert {a for a, m in t.bounds} == {(0, 0), (1, -1)}
    assert t.total_bounds((-1, 1)) == (2, 2)
    assert t.total_bounds((1, -1)) == (0, 2)
