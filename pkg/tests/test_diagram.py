from __future__ import annotations

from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hfl.diagram import (
    BasepointPair,
    Region,
    complement_components,
    euler_characteristic,
    intersection_table,
    validate,
)
from hfl.io import BUNDLED


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_diagrams_validate(bundled, name):
    report = validate(bundled[name])
    assert report.ok, str(report)


def test_unknot_shares_one_region_between_its_basepoints(unknot):
    report = validate(unknot)
    assert report.ok
    assert any("holds both basepoints of pair 1" in w for w in report.warnings)


def test_euler_characteristic_matches_genus(bundled):
    for d in bundled.values():
        assert euler_characteristic(d) == 2 - 2 * d.genus


def test_conway_intersection_table(conway):
    sizes = [[len(cell) for cell in row] for row in intersection_table(conway)]
    assert sizes == [[3, 0, 3], [0, 3, 2], [4, 6, 0]]
    letters = [[{p[0] for p in cell} for cell in row] for row in intersection_table(conway)]
    assert letters == [[{"s"}, set(), {"m"}], [set(), {"r"}, {"n"}], [{"a"}, {"b"}, set()]]


def test_complement_components_one_per_pair(bundled):
    for d in bundled.values():
        for kind in ("alpha", "beta"):
            comp = complement_components(d, kind)
            assert len(set(comp)) == d.num_components
            assert len({comp[w] for w in d.w_regions}) == d.num_components


def _drop_corner(d):
    r = d.regions[0]
    return replace(d, regions=(replace(r, corners=r.corners[1:]),) + d.regions[1:])


def _double_claim(d):
    r0, r1 = d.regions[0], d.regions[1]
    return replace(d, regions=(r0, replace(r1, corners=r1.corners + (r0.corners[0],))) + d.regions[2:])


def _flip_sign(d):
    p = d.points[0]
    return replace(d, points=(replace(p, sign=-p.sign),) + d.points[1:])


def _bad_genus(d):
    return replace(d, genus=d.genus + 1)


def _crowded_region(d):
    b0, b1 = d.basepoints
    return replace(d, basepoints=(b0, BasepointPair(b0.w, b1.z)))


def _asymmetric_linking(d):
    return replace(d, linking_matrix=((0, 1), (0, 0)))


@pytest.mark.parametrize(
    "mutate, fragment",
    [
        (_drop_corner, "unclaimed"),
        (_double_claim, "double-claimed"),
        (_bad_genus, "curves, expected"),
        (_crowded_region, "contains 2 basepoints"),
        (_asymmetric_linking, "not symmetric"),
    ],
)
def test_mutations_are_rejected(conway, mutate, fragment):
    report = validate(mutate(conway))
    assert not report.ok
    assert any(fragment in e for e in report.errors), report.errors


def test_sign_flip_breaks_arc_consistency(conway):
    report = validate(_flip_sign(conway))
    assert not report.ok
    assert any("does not match region" in e for e in report.errors)


def test_extra_disk_region_breaks_euler_characteristic(trefoil):
    d = replace(trefoil, regions=trefoil.regions + (Region("extra", (), 1),))
    assert any("Euler characteristic" in e for e in validate(d).errors)


@given(st.data())
def test_relabelling_points_preserves_validity(bundled, data):
    d = bundled[data.draw(st.sampled_from(BUNDLED))]
    ids = [p.id for p in d.points]
    perm = data.draw(st.permutations(ids))
    ren = dict(zip(ids, (f"p{i}_{n}" for i, n in enumerate(perm))))
    moved = replace(
        d,
        points=tuple(replace(p, id=ren[p.id]) for p in d.points),
        alpha_curves=tuple(replace(c, points=tuple(ren[q] for q in c.points)) for c in d.alpha_curves),
        beta_curves=tuple(replace(c, points=tuple(ren[q] for q in c.points)) for c in d.beta_curves),
        regions=tuple(replace(r, corners=tuple((ren[q], s) for q, s in r.corners)) for r in d.regions),
    )
    assert validate(moved).ok
