"""The hat link Floer complex over GF(2), its homology, and tau for knots.

Only domains certified as polygons are counted.  An index-one positive
domain that cannot be certified is recorded as indeterminate instead of
being guessed at.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .diagram import QUADRANTS, SIDES_QUADRANT, HeegaardDiagram, _UnionFind
from .domains import Domain, NotAdmissible, is_admissible, positive_domains
from .generators import Generator
from .gradings import GradingError, absolute_alexander, maslov_index, relative_gradings
from .linalg import gf2_basis, gf2_kernel, gf2_rank


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class DomainClass:
    kind: str  # bigon | rectangle | polygon-2n | empty | indeterminate
    corners: int = 0
    reason: str = ""
    count: int = 1  # immersed polygons realising the domain (0 for "empty")
    embedded: bool = True

    @property
    def certified(self) -> bool:
        return self.kind != "indeterminate"

    def __str__(self) -> str:
        if self.kind == "polygon-2n":
            return f"polygon-{self.corners}"
        if self.kind in ("indeterminate", "empty"):
            return f"{self.kind} ({self.reason})"
        if not self.embedded:
            return f"{self.kind} (immersed, {self.count})"
        return self.kind


def _indeterminate(reason: str) -> DomainClass:
    return DomainClass("indeterminate", 0, reason, 0)


def classify_domain(diagram: HeegaardDiagram, D: Domain, x: Generator, y: Generator) -> DomainClass:
    """Certify ``D`` as a 2n-gon with convex corners, or flag it.

    The support (coefficients in {0, 1}, disk regions only) is rebuilt as an
    abstract surface by gluing the regions along shared arcs.  It must be a
    disk whose boundary turns only at one convex corner per moving
    coordinate.  Gluing every shared arc gives the embedded reading; for
    bigons the arcs with the domain on both sides may also be left open,
    which enumerates the immersed bigons with this domain.  A bigon domain
    with no such structure is ``empty`` (it contributes zero); anything
    else that fails is indeterminate.
    """
    if not D.is_positive:
        raise ComplexError("classify_domain needs a positive domain")
    if any(D.n_w) or any(D.n_z):
        raise ComplexError("classify_domain needs n_w = n_z = 0")
    if maslov_index(diagram, D, x, y) != 1:
        raise ComplexError("classify_domain needs Maslov index one")
    return _classify(diagram, D, x, y)


MAX_OPEN_ARCS = 14


@lru_cache(maxsize=32)
def _arc_corners(diagram: HeegaardDiagram) -> tuple:
    """For each arc, the two quadrant pairs it separates at its ends."""
    out = []
    for a in diagram.arcs:
        sp = diagram.point_by_id[a.start].sign
        sq = diagram.point_by_id[a.end].sign
        if a.kind == "alpha":
            s_out = "L" if sp < 0 else "R"
            s_in = "R" if sq < 0 else "L"
            ends = (
                (a.start, SIDES_QUADRANT[("L", s_out)], SIDES_QUADRANT[("R", s_out)]),
                (a.end, SIDES_QUADRANT[("L", s_in)], SIDES_QUADRANT[("R", s_in)]),
            )
        else:
            s_out = "L" if sp > 0 else "R"
            s_in = "R" if sq > 0 else "L"
            ends = (
                (a.start, SIDES_QUADRANT[(s_out, "L")], SIDES_QUADRANT[(s_out, "R")]),
                (a.end, SIDES_QUADRANT[(s_in, "L")], SIDES_QUADRANT[(s_in, "R")]),
            )
        out.append(ends)
    return tuple(out)


def _surface(diagram: HeegaardDiagram, support: set, moving: set, open_arcs: frozenset) -> tuple[str, bool]:
    """Check the glued surface; returns (failure reason or "", embedded)."""
    arcs = diagram.arcs
    ends = _arc_corners(diagram)
    qr = diagram.quadrant_region
    nodes = [(p.id, q) for p in diagram.points for q in QUADRANTS if qr[(p.id, q)] in support]
    node_index = {n: i for i, n in enumerate(nodes)}
    faces = _UnionFind(len(diagram.regions))
    verts = _UnionFind(len(nodes))
    glued_links: dict = defaultdict(int)
    edges = 0
    for i, a in enumerate(arcs):
        inside = (a.left in support) + (a.right in support)
        if inside == 2 and i not in open_arcs:
            edges += 1
            faces.union(a.left, a.right)
            for p, q1, q2 in ends[i]:
                verts.union(node_index[(p, q1)], node_index[(p, q2)])
                glued_links[p] += 1
        else:
            edges += inside
    if len({faces.find(r) for r in support}) != 1:
        return "support is disconnected", False
    classes: dict = defaultdict(list)
    for i, (p, q) in enumerate(nodes):
        classes[verts.find(i)].append(p)
    chi = len(support) - edges + len(classes)
    corners: dict = defaultdict(int)
    per_point: dict = defaultdict(int)
    for members in classes.values():
        p = members[0]
        per_point[p] += 1
        k = len(members)
        if k == 1:
            if p not in moving:
                return f"corner at {p} is not a moving coordinate", False
            corners[p] += 1
        elif k == 3:
            return f"reflex corner at {p}", False
        elif k == 4 and glued_links[p] != 4:
            return f"boundary folds back at {p}", False
    for p in moving:
        if corners[p] != 1:
            return f"moving coordinate {p} is not a convex corner", False
    if chi != 1:
        return f"glued support has Euler characteristic {chi}", False
    embedded = not open_arcs and all(v == 1 for v in per_point.values())
    return "", embedded


def _classify(diagram: HeegaardDiagram, D: Domain, x: Generator, y: Generator) -> DomainClass:
    c = D.coefficients
    if any(v > 1 for v in c):
        return _indeterminate("multiplicity above one")
    support = {i for i, v in enumerate(c) if v}
    if not support:
        return _indeterminate("empty domain")
    for r in support:
        if diagram.regions[r].chi != 1:
            return _indeterminate(f"non-disk region {diagram.regions[r].id}")
    qr = diagram.quadrant_region
    moving = set(x.points) ^ set(y.points)
    for p in set(x.points) & set(y.points):
        if any(qr[(p, q)] in support for q in QUADRANTS):
            return _indeterminate(f"fixed coordinate {p} touches the domain")
    n = len(moving) // 2
    reason, embedded = _surface(diagram, support, moving, frozenset())
    if not reason:
        if not embedded and n > 1:
            return _indeterminate("immersed polygon with more than two corners")
        kind = "bigon" if n == 1 else "rectangle" if n == 2 else "polygon-2n"
        return DomainClass(kind, 2 * n, "", 1, embedded)
    if n > 1:
        return _indeterminate(reason)
    # a bigon may leave arcs with the domain on both sides open
    shared = [i for i, a in enumerate(diagram.arcs) if a.left in support and a.right in support]
    if len(shared) > MAX_OPEN_ARCS:
        return _indeterminate(f"{reason}; too many shared arcs to enumerate")
    count = 0
    for k in range(1, len(shared) + 1):
        for open_arcs in combinations(shared, k):
            if not _surface(diagram, support, moving, frozenset(open_arcs))[0]:
                count += 1
    if not count:
        return DomainClass("empty", 0, f"admits no immersed bigon: {reason}", 0)
    return DomainClass("bigon", 2, "", count, False)


@dataclass
class GradedComplex:
    """Generators with gradings and a GF(2) differential with provenance."""

    diagram: HeegaardDiagram
    generators: tuple[Generator, ...]
    alexander: dict  # Generator -> tuple (absolute, or relative for w-only)
    maslov: dict  # Generator -> int (relative)
    differential: dict[Generator, frozenset[Generator]]
    provenance: dict[tuple[Generator, Generator], list[DomainClass]] = field(default_factory=dict)
    indeterminate: list[tuple[Generator, Generator, Domain]] = field(default_factory=list)
    w_only: bool = False

    @property
    def certified(self) -> bool:
        return not self.indeterminate

    @property
    def completeness(self) -> str:
        return "certified" if self.certified else "indeterminate"

    def index(self) -> dict[Generator, int]:
        return {g: i for i, g in enumerate(self.generators)}

    def boundary_bits(self) -> list[int]:
        idx = self.index()
        out = []
        for g in self.generators:
            v = 0
            for h in self.differential[g]:
                v |= 1 << idx[h]
            out.append(v)
        return out

    def unknown_pairs(self) -> set[tuple[Generator, Generator]]:
        return {(a, b) for a, b, _ in self.indeterminate}


def _check_admissible(diagram: HeegaardDiagram) -> None:
    adm = is_admissible(diagram)
    if not adm:
        raise NotAdmissible(f"diagram is not admissible; non-negative periodic domain {adm.witness.coefficients}")


def build_differential(diagram: HeegaardDiagram, w_only: bool = False) -> GradedComplex:
    """Count certified index-one polygons between generators, mod 2.

    With ``w_only`` the z basepoints are ignored (the complex for HF-hat of
    the sphere, filtered by the Alexander grading).
    """
    _check_admissible(diagram)
    return _build(diagram, w_only)


@lru_cache(maxsize=16)
def _build(diagram: HeegaardDiagram, w_only: bool) -> GradedComplex:
    rel = relative_gradings(diagram)
    gens = rel.generators
    alex = rel.alexander if w_only else absolute_alexander(diagram)
    mas = rel.maslov
    by_maslov = defaultdict(list)
    for g in gens:
        by_maslov[mas[g]].append(g)
    diff: dict[Generator, set] = {g: set() for g in gens}
    prov: dict = {}
    indet = []
    for x in gens:
        for y in by_maslov[mas[x] - 1]:
            if w_only:
                if any(a < b for a, b in zip(alex[x], alex[y])):
                    continue
            elif alex[x] != alex[y]:
                continue
            doms = positive_domains(diagram, x, y, True, not w_only)
            if not doms:
                continue
            classes = []
            count = 0
            unknown = False
            for D in doms:
                if maslov_index(diagram, D, x, y) != 1:
                    continue
                cls = _classify(diagram, D, x, y)
                classes.append(cls)
                if cls.certified:
                    count += cls.count
                else:
                    unknown = True
                    indet.append((x, y, D))
            if classes:
                prov[(x, y)] = classes
            if count % 2 and not unknown:
                diff[x].add(y)
    return GradedComplex(
        diagram, gens, dict(alex), dict(mas), {g: frozenset(v) for g, v in diff.items()}, prov, indet, w_only
    )


def check_d_squared(cx: GradedComplex) -> bool:
    for x in cx.generators:
        acc: set = set()
        for y in cx.differential[x]:
            acc ^= set(cx.differential[y])
        if acc:
            return False
    return True


def check_gradings(cx: GradedComplex) -> list[str]:
    """Every differential entry must drop Maslov by one and keep Alexander."""
    bad = []
    for x in cx.generators:
        for y in cx.differential[x]:
            if cx.maslov[x] - cx.maslov[y] != 1:
                bad.append(f"{x} -> {y} changes Maslov grading by {cx.maslov[x] - cx.maslov[y]}")
            if not cx.w_only and cx.alexander[x] != cx.alexander[y]:
                bad.append(f"{x} -> {y} changes Alexander grading")
    return bad


@dataclass
class HomologyTable:
    """Ranks of HFL-hat per (Alexander grading, Maslov grading)."""

    ranks: dict  # (alexander tuple, maslov) -> rank
    chain_ranks: dict  # same keys -> number of generators
    certified: bool = True
    bounds: dict = field(default_factory=dict)  # key -> (lo, hi) when not certified
    maslov_absolute: bool = False
    status: str = "certified"  # certified | resolved (by d o d = 0) | partial

    @property
    def exact(self) -> bool:
        return self.status != "partial"

    def total_bounds(self, grading) -> tuple[int, int]:
        g = tuple(grading)
        lo = hi = 0
        for (a, m), r in self.ranks.items():
            if a == g:
                b = self.bounds.get((a, m), (r, r))
                lo, hi = lo + b[0], hi + b[1]
        return lo, hi

    def total(self, grading) -> int:
        g = tuple(grading)
        return sum(r for (a, m), r in self.ranks.items() if a == g)

    def totals(self) -> dict:
        out: dict = defaultdict(int)
        for (a, m), r in self.ranks.items():
            out[a] += r
        return dict(sorted(out.items()))

    def euler(self) -> dict:
        out: dict = defaultdict(int)
        for (a, m), r in self.ranks.items():
            out[a] += (-1) ** (m % 2) * r
        return {a: v for a, v in sorted(out.items()) if v}

    def support(self) -> list:
        return [a for a, r in self.totals().items() if r]


def _buckets(cx: GradedComplex, key) -> dict:
    out = defaultdict(list)
    for g in cx.generators:
        out[key(g)].append(g)
    return out


def _rank_bounds(rows: list[int], unknown_rows: int) -> tuple[int, int, int]:
    r = gf2_rank(rows)
    return r, max(0, r - unknown_rows), r + unknown_rows


def homology(cx: GradedComplex, allow_indeterminate: bool = False) -> HomologyTable:
    """Ranks over GF(2) by Gaussian elimination in each grading bucket.

    For an indeterminate complex this raises unless ``allow_indeterminate``,
    in which case uncertain entries get (lo, hi) bounds.
    """
    if not cx.certified and not allow_indeterminate:
        raise ComplexError(
            f"indeterminate complex: {len(cx.indeterminate)} index-one domains could not be certified"
        )
    idx = cx.index()
    unknown = cx.unknown_pairs()
    akey = (lambda g: ()) if cx.w_only else (lambda g: cx.alexander[g])
    groups = _buckets(cx, lambda g: (akey(g), cx.maslov[g]))
    ranks, chain, bounds = {}, {}, {}

    def drank(key):
        gens = groups.get(key, [])
        rows, unk = [], set()
        for g in gens:
            v = 0
            for h in cx.differential[g]:
                v |= 1 << idx[h]
            rows.append(v)
            if any((g, h) in unknown for h in cx.generators):
                unk.add(g)
        return _rank_bounds(rows, len(unk))

    for key in sorted(groups, key=lambda k: (k[0], k[1])):
        a, m = key
        n = len(groups[key])
        r_out, lo_out, hi_out = drank(key)
        r_in, lo_in, hi_in = drank((a, m + 1))
        ranks[key] = n - r_out - r_in
        chain[key] = n
        if not cx.certified:
            lo = max(0, n - min(hi_out, n) - min(hi_in, n))
            hi = n - lo_out - lo_in
            if lo != hi:
                bounds[key] = (lo, hi)
    maslov_abs = False
    if not cx.w_only and cx.diagram.num_components == 1:
        from .gradings import maslov_gradings

        mg = maslov_gradings(cx.diagram)
        if mg.absolute:
            shift = cx.maslov[cx.generators[0]] - mg.values[cx.generators[0]]
            ranks = {(a, m - shift): r for (a, m), r in ranks.items()}
            chain = {(a, m - shift): r for (a, m), r in chain.items()}
            bounds = {(a, m - shift): r for (a, m), r in bounds.items()}
            maslov_abs = True
    return HomologyTable(ranks, chain, cx.certified, bounds, maslov_abs, "certified" if cx.certified else "partial")


def w_only_homology_degree(diagram: HeegaardDiagram) -> int:
    """Relative Maslov degree of the single class of the w-only homology."""
    cx = build_differential(diagram, w_only=True)
    if not cx.certified:
        raise GradingError("w-only complex is indeterminate; cannot normalise Maslov grading")
    h = homology(cx)
    live = {m: r for (_, m), r in h.ranks.items() if r}
    if sum(live.values()) != 1:
        raise GradingError(f"w-only homology has rank {sum(live.values())}, expected 1")
    return next(iter(live))


def tau(diagram: HeegaardDiagram) -> int:
    """Minimal Alexander level i with H(F_i) -> H(total) non-zero.

    F_i is spanned by generators of Alexander grading at most i in the
    complex that only avoids w.
    """
    if diagram.num_components != 1:
        raise ComplexError("tau needs a knot (one component)")
    cx = build_differential(diagram, w_only=True)
    if not cx.certified:
        raise ComplexError("indeterminate: some index-one domains of the w-only complex are not polygons")
    alex = absolute_alexander(diagram)
    gens = cx.generators
    images = cx.boundary_bits()
    boundaries = gf2_basis(images)
    rb = len(boundaries)
    for level in sorted({alex[g][0] for g in gens}):
        sub = [i for i, g in enumerate(gens) if alex[g][0] <= level]
        cycles = gf2_kernel([images[i] for i in sub], len(sub))
        # re-express kernel vectors over the full generator index
        full = []
        for comb in cycles:
            v = 0
            for k, i in enumerate(sub):
                if comb >> k & 1:
                    v |= 1 << i
            full.append(v)
        if gf2_rank(boundaries + full) > rb:
            return int(level)
    raise ComplexError("w-only homology vanishes; diagram is not of the sphere")
