"""Geometric construction of multi-pointed Heegaard diagrams from plat closures.

Development tool only (needs shapely); the package never imports it.

A link is drawn in bridge position: ``k`` columns of punctures
``P_i = (2i - 1/2, 0)`` and ``Q_i = (2i + 1/2, 0)``, upper arcs (caps)
``Q_i -> P_{i+1}`` plus one big cap ``P_0 -> Q_{k-1}``, and lower arcs (cups)
with the same pairing twisted by half-turns about the column centres.
Bigons between cups and caps are removed so that arcs meet minimally.

A Heegaard diagram on the sphere with tubes is then read off: alpha curves
are boundaries of thin neighbourhoods of chosen caps, beta curves are either
boundaries of neighbourhoods of cups or cups run through a tube joining the
two feet of that cup.  Faces are traced with shapely's polygonizer and
glued across the tubes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from shapely.geometry import LineString, Point, Polygon
from shapely.geometry.polygon import orient
from shapely.ops import polygonize_full, substring, unary_union

from hfl.diagram import (
    SIDES_QUADRANT,
    BasepointPair,
    Curve,
    HeegaardDiagram,
    IntersectionPoint,
    Region,
    _UnionFind,
)

REROUTE = 0.02  # distance at which a cup is pushed across a cap
D_ALPHA = 0.006  # neighbourhood widths
D_BETA = 0.004
FOOT = 0.002  # radius of the tube feet
PROBE = 2e-4


def _subdiv(pts, h):
    out = [pts[0]]
    for a, b in zip(pts, pts[1:]):
        n = max(1, int(math.dist(a, b) / h))
        for k in range(1, n + 1):
            t = k / n
            out.append((a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t))
    return out


def _twist(pts, c, ang, rin=0.55, rout=0.95):
    out = []
    for x, y in pts:
        dx, dy = x - c[0], y - c[1]
        r = math.hypot(dx, dy)
        f = 1.0 if r <= rin else (rout - r) / (rout - rin) if r < rout else 0.0
        a = ang * f
        ca, sa = math.cos(a), math.sin(a)
        out.append((c[0] + ca * dx - sa * dy, c[1] + sa * dx + ca * dy))
    return out


def punctures(k):
    return [(2 * i - 0.5, 0.0) for i in range(k)], [(2 * i + 0.5, 0.0) for i in range(k)]


def plat(twists):
    """Caps and twisted cups for half-twist counts ``twists`` (one per column)."""
    k = len(twists)
    P, Q = punctures(k)
    caps, cups = [], []
    for i in range(k - 1):
        caps.append([Q[i], (2 * i + 1, 0.4), P[i + 1]])
        cups.append([Q[i], (2 * i + 1, -0.4), P[i + 1]])
    right = 2 * k - 0.7
    caps.append([P[0], (-1.3, 0.3), (-1.3, 1.3), (right, 1.3), (right, 0.3), Q[-1]])
    cups.append([P[0], (-1.3, -0.3), (-1.3, -1.3), (right, -1.3), (right, -0.3), Q[-1]])
    caps = [_subdiv(c, 0.01) for c in caps]
    cups = [_subdiv(c, 0.005) for c in cups]
    for i, p in enumerate(twists):
        cups = [_twist(c, (2 * i, 0.0), p * math.pi) for c in cups]
    # snap twisted endpoints back onto the punctures
    allp = P + Q
    cups = [[min(allp, key=lambda q: math.dist(q, c[0]))] + c[1:-1] + [min(allp, key=lambda q: math.dist(q, c[-1]))] for c in cups]
    return caps, cups


# --- bigon removal ---------------------------------------------------------


def _crossings(C, K):
    lc, lk = LineString(C), LineString(K)
    g = lc.intersection(lk)
    out = []
    if g.is_empty:
        return out
    for p in getattr(g, "geoms", [g]):
        if p.geom_type != "Point":
            raise RuntimeError("curves overlap")
        out.append((lc.project(p), lk.project(p), (p.x, p.y)))
    return out


def _find_bigon(C, K, punct, others):
    lc, lk = LineString(C), LineString(K)
    ends = []
    for e in (C[0], C[-1]):
        if math.dist(e, K[0]) < 1e-9 or math.dist(e, K[-1]) < 1e-9:
            ends.append((lc.project(Point(e)), lk.project(Point(e)), e))
    X = [x for x in _crossings(C, K) if all(math.dist(x[2], e[2]) > 1e-7 for e in ends)]
    if not X:
        return None
    allp = X + ends
    byC = sorted(allp, key=lambda t: t[0])
    for a, b in zip(byC, byC[1:]):
        if a in ends and b in ends:
            continue
        lo, hi = sorted((a[1], b[1]))
        if any(lo < t[1] < hi for t in allp):
            continue
        segC = substring(lc, a[0], b[0])
        segK = substring(lk, lo, hi)
        kc = list(segK.coords)
        if abs(lk.project(Point(segC.coords[-1])) - hi) < 1e-6:
            kc = kc[::-1]
        poly = Polygon(list(segC.coords) + kc)
        if not poly.is_valid:
            poly = poly.buffer(0)
        shared = [e[2] for e in ends]
        if any(poly.contains(Point(p)) for p in punct if all(math.dist(p, s) > 1e-9 for s in shared)):
            continue
        if any(not LineString(o).intersection(segK).is_empty for o in others):
            continue
        return a, b, poly, segK
    return None


def _offset(pts, d):
    pts = [p for i, p in enumerate(pts) if i == 0 or math.dist(p, pts[i - 1]) > 1e-12]
    out = []
    n = len(pts)
    for i in range(n):
        a, b = pts[max(i - 1, 0)], pts[min(i + 1, n - 1)]
        tx, ty = b[0] - a[0], b[1] - a[1]
        L = math.hypot(tx, ty)
        out.append((pts[i][0] - ty / L * d, pts[i][1] + tx / L * d))
    return out


def _reroute(C, a, b, poly, segK):
    lc = LineString(C)
    for d in (REROUTE, -REROUTE):
        oc = _offset(list(segK.coords), d)
        if not poly.contains(LineString(oc).interpolate(0.5, normalized=True)):
            break
    if math.dist(oc[0], a[2]) > math.dist(oc[-1], a[2]):
        oc = oc[::-1]
    s0, s1 = a[0], b[0]
    head = [C[0]] if s0 <= 1e-12 else list(substring(lc, 0, max(s0 - 2 * REROUTE, 0)).coords)
    tail = [C[-1]] if s1 >= lc.length - 1e-12 else list(substring(lc, min(s1 + 2 * REROUTE, lc.length), lc.length).coords)
    return head + oc + tail


def tighten(caps, cups, punct):
    cups = [list(c) for c in cups]
    changed = True
    while changed:
        changed = False
        for i in range(len(cups)):
            others = [cups[j] for j in range(len(cups)) if j != i]
            for K in caps:
                hit = _find_bigon(cups[i], K, punct, others)
                if hit:
                    new = _reroute(cups[i], *hit)
                    ls = LineString(new)
                    if not ls.is_simple or any(ls.intersects(LineString(o)) for o in others):
                        raise RuntimeError("bigon removal produced a singular cup")
                    cups[i] = _subdiv(new, 0.005)
                    changed = True
                    break
            if changed:
                break
    return cups


def crossing_matrix(caps, cups):
    return [[len(_crossings(c, k)) for c in cups] for k in caps]


# --- Heegaard diagram extraction -------------------------------------------


@dataclass
class PlatDiagram:
    """Which arcs of a plat become which curves."""

    twists: list
    alpha_caps: list  # cap index per alpha curve
    betas: list  # ("arc", cup) through a tube, or ("loop", cup)
    basepoints: list  # per component: (w puncture, z puncture) as (x, y)
    linking: list


def _tangent(line: LineString, s: float, ring: bool):
    h = 1e-5
    L = line.length
    if ring:
        a, b = line.interpolate((s - h) % L), line.interpolate((s + h) % L)
    else:
        a, b = line.interpolate(max(s - h, 0)), line.interpolate(min(s + h, L))
    dx, dy = b.x - a.x, b.y - a.y
    n = math.hypot(dx, dy)
    return dx / n, dy / n


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def heegaard(pd: PlatDiagram, check_separation=True):
    """Build the combinatorial diagram plus geometric data for inspection."""
    k = len(pd.twists)
    P, Q = punctures(k)
    punct = P + Q
    caps, cups = plat(pd.twists)
    cups = tighten(caps, cups, punct)

    if check_separation:
        _check_separation(caps, cups, punct)

    alpha_lines = []
    for ci in pd.alpha_caps:
        ring = orient(LineString(caps[ci]).buffer(D_ALPHA, quad_segs=16), 1.0).exterior
        alpha_lines.append(LineString(ring.coords))
    feet = []
    beta_lines, beta_ring = [], []
    for kind, ci in pd.betas:
        if kind == "loop":
            ring = orient(LineString(cups[ci]).buffer(D_BETA, quad_segs=16), 1.0).exterior
            beta_lines.append(LineString(ring.coords))
            beta_ring.append(True)
        else:
            a, b = cups[ci][0], cups[ci][-1]
            arc = LineString(cups[ci])
            ends = []
            for c in (a, b):
                hit = arc.intersection(Point(c).buffer(FOOT, quad_segs=64).exterior)
                if hit.geom_type != "Point":
                    raise RuntimeError(f"cup {ci} meets a tube foot more than once")
                ends.append((hit.x, hit.y))
            for other in punct:
                if other not in (a, b) and arc.distance(Point(other)) < 2 * FOOT:
                    raise RuntimeError(f"cup {ci} passes through a tube foot")
            beta_lines.append(arc)
            beta_ring.append(False)
            feet.append((a, b, ends[0], ends[1]))
    foot_rings = []
    for a, b, ea, eb in feet:
        for c in (a, b):
            foot_rings.append(LineString(Point(c).buffer(FOOT, quad_segs=64).exterior.coords))

    # intersection points
    raw_points = []  # (alpha idx, beta idx, (x, y), s_alpha, s_beta, sign, ua, ub)
    for ai, al in enumerate(alpha_lines):
        for bi, bl in enumerate(beta_lines):
            g = al.intersection(bl)
            if g.is_empty:
                continue
            for p in getattr(g, "geoms", [g]):
                if p.geom_type != "Point":
                    raise RuntimeError("alpha and beta overlap")
                sa, sb = al.project(p), bl.project(p)
                ua = _tangent(al, sa, True)
                ub = _tangent(bl, sb, beta_ring[bi])
                cr = _cross(ua, ub)
                if abs(cr) < 1e-3:
                    raise RuntimeError("nearly tangent intersection")
                raw_points.append((ai, bi, (p.x, p.y), sa, sb, 1 if cr > 0 else -1, ua, ub))

    everything = unary_union(alpha_lines + beta_lines + foot_rings)
    polys, cuts, dangles, invalid = polygonize_full(everything)
    foot_centres = [c for a, b, _, _ in feet for c in (a, b)]
    # the only dangling edges allowed are the stubs of tube arcs inside the feet
    stray = [d for d in getattr(dangles, "geoms", []) if not any(Point(c).buffer(1.5 * FOOT).contains(d) for c in foot_centres)]
    # cut edges (same face on both sides) can only be pieces of tube arcs
    arcs = unary_union([bl for bl, r in zip(beta_lines, beta_ring) if not r]).buffer(1e-9)
    stray += [c for c in getattr(cuts, "geoms", []) if not arcs.contains(c)]
    if stray or not invalid.is_empty:
        raise RuntimeError(f"arrangement has dangling or cut edges: {[s.wkt[:120] for s in stray]} {cuts.wkt[:300]} {invalid.wkt[:200]}")
    faces = [f for f in polys.geoms]
    foot_face = {i for i, f in enumerate(faces) if any(f.contains(Point(c)) for c in foot_centres)}
    outer = len(faces)

    def locate(xy):
        pt = Point(xy)
        hits = [i for i, f in enumerate(faces) if f.contains(pt)]
        if len(hits) > 1:
            raise RuntimeError("point in two faces")
        return hits[0] if hits else outer

    n_faces = len(faces) + 1
    # a foot hole is joined to the outside of its face by the tube arc, so it
    # does not reduce the Euler characteristic of the (slit) face
    def holes(f):
        return sum(1 for ring in f.interiors if not any(Polygon(ring).contains(Point(c)) for c in foot_centres))

    chi = [1 - holes(f) for f in faces] + [_outer_chi(faces, foot_centres)]
    uf = _UnionFind(n_faces)
    glued = 0
    for a, b, ea, eb in feet:
        fa = locate(_away(a, ea))
        fb = locate(_away(b, eb))
        if uf.find(fa) == uf.find(fb):
            raise RuntimeError("tube joins a face to itself")
        uf.union(fa, fb)
        glued += 1

    corners = {}
    for idx, (ai, bi, xy, sa, sb, sign, ua, ub) in enumerate(raw_points):
        for da in (1, -1):
            for db in (1, -1):
                v = (da * ua[0] + db * ub[0], da * ua[1] + db * ub[1])
                n = math.hypot(*v)
                probe = (xy[0] + PROBE * v[0] / n, xy[1] + PROBE * v[1] / n)
                f = locate(probe)
                if f in foot_face:
                    raise RuntimeError("corner inside a tube foot")
                aside = "L" if _cross(ua, v) > 0 else "R"
                bside = "L" if _cross(ub, v) > 0 else "R"
                corners[(idx, SIDES_QUADRANT[(aside, bside)])] = f

    classes = {}
    for f in range(n_faces):
        if f in foot_face:
            continue
        classes.setdefault(uf.find(f), []).append(f)
    return {
        "caps": caps,
        "cups": cups,
        "alpha_lines": alpha_lines,
        "beta_lines": beta_lines,
        "beta_ring": beta_ring,
        "points": raw_points,
        "faces": faces,
        "outer": outer,
        "chi": chi,
        "classes": classes,
        "corners": corners,
        "locate": locate,
        "find": uf.find,
        "pd": pd,
    }


def _away(centre, end):
    """A point just outside a foot circle, opposite the curve ending on it."""
    dx, dy = centre[0] - end[0], centre[1] - end[1]
    n = math.hypot(dx, dy)
    r = FOOT + 3 * PROBE
    return centre[0] + r * dx / n, centre[1] + r * dy / n


def _outer_chi(faces, foot_centres):
    u = unary_union(faces)
    parts = list(getattr(u, "geoms", [u]))
    if any(p.interiors for p in parts):
        raise RuntimeError("unexpected hole in the arrangement")
    # a lone foot disk is slit open by its tube arc
    lone = [p for p in parts if p.area < 4 * FOOT * FOOT and any(p.contains(Point(c)) for c in foot_centres)]
    return 2 - len(parts) + len(lone)


def _check_separation(caps, cups, punct):
    lines = [LineString(c) for c in cups]
    need = 2 * max(D_ALPHA, D_BETA) + 2 * FOOT
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            if lines[i].distance(lines[j]) < need:
                raise RuntimeError(f"cups {i},{j} too close: {lines[i].distance(lines[j])}")
    for group in (caps, cups):
        for c in group:
            line = LineString(c)
            for p in punct:
                if math.dist(p, c[0]) < 1e-9 or math.dist(p, c[-1]) < 1e-9:
                    continue
                if line.distance(Point(p)) < need:
                    raise RuntimeError(f"arc passes {line.distance(Point(p))} from puncture {p}")


def to_diagram(geo, name="", point_names=None, region_prefix="R"):
    """Assemble a HeegaardDiagram from the output of :func:`heegaard`."""
    pd = geo["pd"]
    pts = geo["points"]
    n_alpha, n_beta = len(pd.alpha_caps), len(pd.betas)
    if point_names is None:
        point_names = [f"x{i}" for i in range(len(pts))]
    alpha_ids = [f"alpha{i + 1}" for i in range(n_alpha)]
    beta_ids = [f"beta{j + 1}" for j in range(n_beta)]
    alpha_curves = []
    for ai in range(n_alpha):
        on = sorted((p[3], i) for i, p in enumerate(pts) if p[0] == ai)
        alpha_curves.append(Curve(alpha_ids[ai], "alpha", tuple(point_names[i] for _, i in on)))
    beta_curves = []
    for bi in range(n_beta):
        on = sorted((p[4], i) for i, p in enumerate(pts) if p[1] == bi)
        beta_curves.append(Curve(beta_ids[bi], "beta", tuple(point_names[i] for _, i in on)))
    points = tuple(
        sorted(
            (IntersectionPoint(point_names[i], alpha_ids[p[0]], beta_ids[p[1]], p[5]) for i, p in enumerate(pts)),
            key=lambda q: q.id,
        )
    )

    # regions: order by the smallest probe location for determinism
    find = geo["find"]
    region_of_face = {}
    region_corners = {}
    for (idx, quad), f in sorted(geo["corners"].items(), key=lambda kv: (point_names[kv[0][0]], kv[0][1])):
        region_corners.setdefault(find(f), []).append((point_names[idx], quad))
    roots = sorted(geo["classes"], key=lambda r: min(region_corners.get(r, [("~", "")])))
    for n, r in enumerate(roots):
        region_of_face[r] = f"{region_prefix}{n + 1}"
    regions = []
    for r in roots:
        chi = sum(geo["chi"][f] for f in geo["classes"][r]) - (len(geo["classes"][r]) - 1)
        regions.append(Region(region_of_face[r], tuple(region_corners.get(r, [])), chi))

    locate = geo["locate"]
    bps = []
    for w, z in pd.basepoints:
        bps.append(BasepointPair(region_of_face[find(locate(w))], region_of_face[find(locate(z))]))
    return HeegaardDiagram(
        genus=n_alpha - len(pd.basepoints) + 1,
        alpha_curves=tuple(alpha_curves),
        beta_curves=tuple(beta_curves),
        points=points,
        regions=tuple(regions),
        basepoints=tuple(bps),
        linking_matrix=tuple(tuple(r) for r in pd.linking),
        name=name,
    )
