"""Multi-pointed Heegaard diagrams as combinatorial data.

A diagram is stored as curves (cyclic lists of intersection points),
signed intersection points and complementary regions.  Each region lists
its corners as ``(point, quadrant)`` pairs.  Quadrant names encode sides of
the two oriented curves through the point: N/S is left/right of the alpha
curve and E/W is left/right of the beta curve, so ``NE`` is the quadrant to
the left of both.  Cyclically ``NE, NW, SW, SE`` is counterclockwise when
the point is negative, clockwise when it is positive.

Arcs between consecutive points, and the regions on either side of them,
are derived from this data rather than stored.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

QUADRANTS = ("NE", "NW", "SW", "SE")

# quadrant -> (side of alpha, side of beta); "L"/"R" = left/right
QUADRANT_SIDES = {"NE": ("L", "L"), "NW": ("L", "R"), "SW": ("R", "R"), "SE": ("R", "L")}
SIDES_QUADRANT = {v: k for k, v in QUADRANT_SIDES.items()}

# coefficient of each quadrant in the local boundary equation at a point
QUADRANT_WEIGHT = {"NE": 1, "SW": 1, "NW": -1, "SE": -1}


def _flip(side: str) -> str:
    return "R" if side == "L" else "L"


@dataclass(frozen=True)
class IntersectionPoint:
    id: str
    alpha: str
    beta: str
    sign: int


@dataclass(frozen=True)
class Curve:
    id: str
    kind: str  # "alpha" | "beta"
    points: tuple[str, ...]  # cyclic order along the orientation


@dataclass(frozen=True)
class Region:
    id: str
    corners: tuple[tuple[str, str], ...]
    chi: int = 1

    @property
    def euler_measure_numerator(self) -> int:
        """Euler measure in quarter units: ``4*chi - #corners``."""
        return 4 * self.chi - len(self.corners)


@dataclass(frozen=True)
class BasepointPair:
    w: str  # region id
    z: str


@dataclass(frozen=True)
class LinkComponent:
    id: str
    index: int  # index of the basepoint pair


@dataclass(frozen=True)
class Arc:
    """Piece of a curve from ``start`` to ``end`` (following its orientation)."""

    curve: str
    kind: str
    start: str
    end: str
    left: int  # region index
    right: int


@dataclass(frozen=True)
class HeegaardDiagram:
    genus: int
    alpha_curves: tuple[Curve, ...]
    beta_curves: tuple[Curve, ...]
    points: tuple[IntersectionPoint, ...]
    regions: tuple[Region, ...]
    basepoints: tuple[BasepointPair, ...]
    linking_matrix: tuple[tuple[int, ...], ...] = ()
    name: str = field(default="", compare=False)

    @property
    def num_components(self) -> int:
        return len(self.basepoints)

    @property
    def components(self) -> tuple[LinkComponent, ...]:
        return tuple(LinkComponent(f"L{i + 1}", i) for i in range(len(self.basepoints)))

    @property
    def num_curves(self) -> int:
        return len(self.alpha_curves)

    # --- lookups -----------------------------------------------------------

    @cached_property
    def point_index(self) -> dict[str, int]:
        return {p.id: i for i, p in enumerate(self.points)}

    @cached_property
    def point_by_id(self) -> dict[str, IntersectionPoint]:
        return {p.id: p for p in self.points}

    @cached_property
    def region_index(self) -> dict[str, int]:
        return {r.id: i for i, r in enumerate(self.regions)}

    @cached_property
    def alpha_index(self) -> dict[str, int]:
        return {c.id: i for i, c in enumerate(self.alpha_curves)}

    @cached_property
    def beta_index(self) -> dict[str, int]:
        return {c.id: i for i, c in enumerate(self.beta_curves)}

    @cached_property
    def quadrant_claims(self) -> dict[tuple[str, str], list[int]]:
        claims: dict[tuple[str, str], list[int]] = {}
        for ri, region in enumerate(self.regions):
            for corner in region.corners:
                claims.setdefault(corner, []).append(ri)
        return claims

    @cached_property
    def quadrant_region(self) -> dict[tuple[str, str], int]:
        """(point, quadrant) -> region index, first claim wins."""
        return {k: v[0] for k, v in self.quadrant_claims.items()}

    def region_at(self, point: str, alpha_side: str, beta_side: str) -> int:
        return self.quadrant_region[(point, SIDES_QUADRANT[(alpha_side, beta_side)])]

    @cached_property
    def w_regions(self) -> tuple[int, ...]:
        return tuple(self.region_index[b.w] for b in self.basepoints)

    @cached_property
    def z_regions(self) -> tuple[int, ...]:
        return tuple(self.region_index[b.z] for b in self.basepoints)

    @cached_property
    def arcs(self) -> tuple[Arc, ...]:
        """All curve arcs with the regions to their left and right.

        Travelling forward along alpha, the arc leaving a point lies on the
        left of beta exactly when the point is negative; along beta, the arc
        leaving lies on the left of alpha exactly when the point is positive.
        """
        out = []
        for curve in self.alpha_curves + self.beta_curves:
            pts = curve.points
            for i, p in enumerate(pts):
                q = pts[(i + 1) % len(pts)]
                sign = self.point_by_id[p].sign
                if curve.kind == "alpha":
                    side = "L" if sign < 0 else "R"
                    left = self.region_at(p, "L", side)
                    right = self.region_at(p, "R", side)
                else:
                    side = "L" if sign > 0 else "R"
                    left = self.region_at(p, side, "L")
                    right = self.region_at(p, side, "R")
                out.append(Arc(curve.id, curve.kind, p, q, left, right))
        return tuple(out)

    def local_row(self, point: str) -> dict[int, int]:
        """Coefficients of the boundary equation at ``point`` (region -> weight)."""
        row: dict[int, int] = {}
        for quad in QUADRANTS:
            r = self.quadrant_region[(point, quad)]
            row[r] = row.get(r, 0) + QUADRANT_WEIGHT[quad]
        return row


@dataclass
class ValidationReport:
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        lines = [f"error: {e}" for e in self.errors] + [f"warning: {w}" for w in self.warnings]
        return "\n".join(lines) if lines else "ok"


def euler_characteristic(diagram: HeegaardDiagram) -> int:
    """F - E + V of the cell structure, with non-disk regions weighted by their chi."""
    vertices = len(diagram.points)
    edges = sum(len(c.points) for c in diagram.alpha_curves + diagram.beta_curves)
    faces = sum(r.chi for r in diagram.regions)
    return faces - edges + vertices


def intersection_table(diagram: HeegaardDiagram) -> list[list[frozenset[str]]]:
    """``table[j][i]`` is the set of points on alpha_i and beta_j."""
    table = [[set() for _ in diagram.alpha_curves] for _ in diagram.beta_curves]
    for p in diagram.points:
        table[diagram.beta_index[p.beta]][diagram.alpha_index[p.alpha]].add(p.id)
    return [[frozenset(cell) for cell in row] for row in table]


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        self.parent[self.find(a)] = self.find(b)

    def classes(self) -> list[int]:
        return [self.find(i) for i in range(len(self.parent))]


def complement_components(diagram: HeegaardDiagram, kind: str) -> list[int]:
    """Label regions by component of the complement of the ``kind`` curves.

    Regions meeting across an arc of the *other* family stay in the same
    component of the complement of ``kind``.
    """
    uf = _UnionFind(len(diagram.regions))
    other = "beta" if kind == "alpha" else "alpha"
    for arc in diagram.arcs:
        if arc.kind == other:
            uf.union(arc.left, arc.right)
    return uf.classes()


def validate(diagram: HeegaardDiagram) -> ValidationReport:
    """Check every structural invariant of a multi-pointed Heegaard diagram.

    Violations are collected, never raised; an empty report means the data
    describes a legal 2l-pointed diagram.
    """
    rep = ValidationReport()
    err = rep.errors.append
    ell = diagram.num_components
    g = diagram.genus
    if ell < 1:
        err("no basepoint pairs")
    expected = g + ell - 1
    for kind, curves in (("alpha", diagram.alpha_curves), ("beta", diagram.beta_curves)):
        if len(curves) != expected:
            err(f"{len(curves)} {kind} curves, expected genus + components - 1 = {expected}")

    ids = [p.id for p in diagram.points]
    for pid, n in Counter(ids).items():
        if n > 1:
            err(f"point {pid} declared {n} times")
    known = set(ids)

    on_alpha: dict[str, list[str]] = {}
    on_beta: dict[str, list[str]] = {}
    for curve in diagram.alpha_curves + diagram.beta_curves:
        if not curve.points:
            err(f"{curve.kind} curve {curve.id} has no intersection points")
        target = on_alpha if curve.kind == "alpha" else on_beta
        for pid in curve.points:
            if pid not in known:
                err(f"{curve.kind} curve {curve.id} lists unknown point {pid}")
            target.setdefault(pid, []).append(curve.id)
    for p in diagram.points:
        if p.sign not in (1, -1):
            err(f"point {p.id} has sign {p.sign}, expected +1 or -1")
        if on_alpha.get(p.id, []) != [p.alpha]:
            err(f"point {p.id} must lie exactly once on exactly one alpha curve, found {on_alpha.get(p.id, [])}")
        if on_beta.get(p.id, []) != [p.beta]:
            err(f"point {p.id} must lie exactly once on exactly one beta curve, found {on_beta.get(p.id, [])}")

    claims = diagram.quadrant_claims
    for (pid, quad), owners in sorted(claims.items()):
        if pid not in known:
            err(f"region corner references unknown point {pid}")
        elif quad not in QUADRANT_SIDES:
            err(f"region corner at {pid} has unknown quadrant {quad}")
        elif len(owners) > 1:
            names = ", ".join(diagram.regions[o].id for o in owners)
            err(f"quadrant double-claimed: {pid} {quad} by {names}")
    for p in diagram.points:
        for quad in QUADRANTS:
            if (p.id, quad) not in claims:
                err(f"quadrant unclaimed: {p.id} {quad}")
    corner_total = sum(len(r.corners) for r in diagram.regions)
    if corner_total != 4 * len(diagram.points):
        err(f"{corner_total} region corners for {len(diagram.points)} points, expected {4 * len(diagram.points)}")
    if rep.errors:
        return rep

    # arcs: the regions beside the arc leaving p must be those beside the arc arriving at q
    for curve in diagram.alpha_curves + diagram.beta_curves:
        pts = curve.points
        for i, p in enumerate(pts):
            q = pts[(i + 1) % len(pts)]
            sp, sq = diagram.point_by_id[p].sign, diagram.point_by_id[q].sign
            if curve.kind == "alpha":
                out_side = "L" if sp < 0 else "R"
                in_side = _flip("L" if sq < 0 else "R")
                pairs = [(diagram.region_at(p, s, out_side), diagram.region_at(q, s, in_side)) for s in "LR"]
            else:
                out_side = "L" if sp > 0 else "R"
                in_side = _flip("L" if sq > 0 else "R")
                pairs = [(diagram.region_at(p, out_side, s), diagram.region_at(q, in_side, s)) for s in "LR"]
            for a, b in pairs:
                if a != b:
                    err(
                        f"arc {p}->{q} on {curve.id}: region {diagram.regions[a].id} at {p} "
                        f"does not match region {diagram.regions[b].id} at {q}"
                    )

    chi = euler_characteristic(diagram)
    if chi != 2 - 2 * g:
        err(f"Euler characteristic {chi} does not match genus {g} (expected {2 - 2 * g})")

    for r in diagram.regions:
        if r.chi != 1:
            rep.warnings.append(f"non-disk region {r.id} (chi = {r.chi})")

    n = len(diagram.linking_matrix)
    if n != ell or any(len(row) != ell for row in diagram.linking_matrix):
        err(f"linking matrix must be {ell}x{ell}")
    else:
        for i in range(ell):
            if diagram.linking_matrix[i][i] != 0:
                err(f"linking matrix diagonal entry {i + 1} is non-zero")
            for j in range(ell):
                if diagram.linking_matrix[i][j] != diagram.linking_matrix[j][i]:
                    err(f"linking matrix not symmetric at ({i + 1},{j + 1})")

    if rep.errors:
        return rep
    _check_basepoints(diagram, rep)
    return rep


def _check_basepoints(diagram: HeegaardDiagram, rep: ValidationReport) -> None:
    err = rep.errors.append
    ell = diagram.num_components
    occupied = Counter(diagram.w_regions + diagram.z_regions)
    for r, n in occupied.items():
        pairs = {i for i, (w, z) in enumerate(zip(diagram.w_regions, diagram.z_regions)) if r in (w, z)}
        if n > 1 and len(pairs) == 1:
            # the one-region unknot diagram needs w and z together
            rep.warnings.append(f"region {diagram.regions[r].id} holds both basepoints of pair {min(pairs) + 1}")
        elif n > 1:
            err(f"region {diagram.regions[r].id} contains {n} basepoints")
    a_comp = complement_components(diagram, "alpha")
    b_comp = complement_components(diagram, "beta")
    for kind, comp in (("alpha", a_comp), ("beta", b_comp)):
        if len(set(comp)) != ell:
            err(f"complement of the {kind} curves has {len(set(comp))} components, expected {ell}")
        seen = set()
        for i, (w, z) in enumerate(zip(diagram.w_regions, diagram.z_regions)):
            if comp[w] != comp[z]:
                err(f"w{i + 1} and z{i + 1} lie in different components of the {kind} complement")
            if comp[w] in seen:
                err(f"basepoint pair {i + 1} shares a {kind}-complement component with another pair")
            seen.add(comp[w])


def point_ids(diagram: HeegaardDiagram, names: Iterable[str]) -> list[int]:
    return [diagram.point_index[n] for n in names]
