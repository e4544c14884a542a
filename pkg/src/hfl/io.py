"""Reading and writing the ``hfdiag 1`` text format, plus the bundled corpus.

One declaration per line, ``#`` starts a comment::

    hfdiag 1
    surface genus <g> components <l>
    alpha <id>: <pt> <pt> ...          # cyclic order along the curve
    beta <id>: <pt> <pt> ...
    point <id> sign <+1|-1>
    region <id>: (<pt> <NE|NW|SW|SE>) ... [chi <k>]
    basepoint w<i> <region>
    basepoint z<i> <region>
    linking <i> <j> <n>

``chi`` defaults to 1 (a disk).  Missing linking entries are zero.
"""

from __future__ import annotations

import os
import re
from importlib import resources
from pathlib import Path

from .diagram import (
    QUADRANTS,
    BasepointPair,
    Curve,
    HeegaardDiagram,
    IntersectionPoint,
    Region,
    validate,
)

FORMAT_VERSION = "1"
BUNDLED = ("unknot_g1", "trefoil_g1", "hopf_pos", "conway_l10n59")
CORPUS_ENV = "HFL_CORPUS_DIR"

_ID = r"[A-Za-z_][A-Za-z0-9_.']*"
_CURVE_RE = re.compile(rf"^(alpha|beta)\s+({_ID})\s*:\s*(.*)$")
_POINT_RE = re.compile(rf"^point\s+({_ID})\s+sign\s+([+-]?1)$")
_REGION_RE = re.compile(rf"^region\s+({_ID})\s*:\s*(.*?)(?:\s+chi\s+(-?\d+))?$")
_CORNER_RE = re.compile(rf"\(\s*({_ID})\s+([A-Z]+)\s*\)")
_BASE_RE = re.compile(rf"^basepoint\s+([wz])(\d+)\s+({_ID})$")
_LINK_RE = re.compile(r"^linking\s+(\d+)\s+(\d+)\s+(-?\d+)$")
_SURFACE_RE = re.compile(r"^surface\s+genus\s+(\d+)\s+components\s+(\d+)$")


class DiagramParseError(ValueError):
    """Malformed or inconsistent diagram text; carries a 1-based location."""

    def __init__(self, kind: str, message: str, line: int, column: int = 1) -> None:
        self.kind = kind
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {kind} error: {message}")


def parse(text: str, name: str = "") -> HeegaardDiagram:
    header_seen = False
    surface = None
    curves: list[tuple[str, str, list[tuple[str, int]], int]] = []
    points: dict[str, tuple[int, int]] = {}
    regions: list[tuple[str, list[tuple[str, str, int]], int, int]] = []
    bases: dict[tuple[str, int], tuple[str, int, int]] = {}
    links: dict[tuple[int, int], tuple[int, int]] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        col = raw.index(line[0]) + 1
        if not header_seen:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "hfdiag":
                raise DiagramParseError("syntax", "expected header 'hfdiag 1'", lineno, col)
            if parts[1] != FORMAT_VERSION:
                raise DiagramParseError("syntax", f"unsupported format version {parts[1]!r}", lineno, col)
            header_seen = True
            continue
        keyword = line.split()[0]
        if keyword == "surface":
            m = _SURFACE_RE.match(line)
            if not m or surface is not None:
                raise DiagramParseError("syntax", "malformed or repeated surface line", lineno, col)
            surface = (int(m.group(1)), int(m.group(2)))
        elif keyword in ("alpha", "beta"):
            m = _CURVE_RE.match(line)
            if not m:
                raise DiagramParseError("syntax", f"malformed {keyword} line", lineno, col)
            toks = [(t.group(0), col + m.start(3) + t.start()) for t in re.finditer(r"\S+", m.group(3))]
            for tok, tcol in toks:
                if not re.fullmatch(_ID, tok):
                    raise DiagramParseError("syntax", f"bad point id {tok!r}", lineno, tcol)
            curves.append((keyword, m.group(2), toks, lineno))
        elif keyword == "point":
            m = _POINT_RE.match(line)
            if not m:
                raise DiagramParseError("syntax", "malformed point line", lineno, col)
            if m.group(1) in points:
                raise DiagramParseError("reference", f"point {m.group(1)} declared twice", lineno, col)
            points[m.group(1)] = (int(m.group(2)), lineno)
        elif keyword == "region":
            m = _REGION_RE.match(line)
            if not m:
                raise DiagramParseError("syntax", "malformed region line", lineno, col)
            body = m.group(2)
            corners = []
            pos = 0
            for cm in _CORNER_RE.finditer(body):
                if body[pos:cm.start()].strip():
                    raise DiagramParseError("syntax", "junk between corners", lineno, col + m.start(2) + pos)
                if cm.group(2) not in QUADRANTS:
                    raise DiagramParseError(
                        "syntax", f"unknown quadrant {cm.group(2)!r}", lineno, col + m.start(2) + cm.start(2)
                    )
                corners.append((cm.group(1), cm.group(2), col + m.start(2) + cm.start(1)))
                pos = cm.end()
            if body[pos:].strip():
                raise DiagramParseError("syntax", "junk after corners", lineno, col + m.start(2) + pos)
            chi = int(m.group(3)) if m.group(3) is not None else 1
            regions.append((m.group(1), corners, chi, lineno))
        elif keyword == "basepoint":
            m = _BASE_RE.match(line)
            if not m:
                raise DiagramParseError("syntax", "malformed basepoint line", lineno, col)
            key = (m.group(1), int(m.group(2)))
            if key in bases:
                raise DiagramParseError("reference", f"basepoint {key[0]}{key[1]} declared twice", lineno, col)
            bases[key] = (m.group(3), lineno, col + m.start(3))
        elif keyword == "linking":
            m = _LINK_RE.match(line)
            if not m:
                raise DiagramParseError("syntax", "malformed linking line", lineno, col)
            links[(int(m.group(1)), int(m.group(2)))] = (int(m.group(3)), lineno)
        else:
            raise DiagramParseError("syntax", f"unknown declaration {keyword!r}", lineno, col)

    last = len(text.splitlines()) or 1
    if not header_seen:
        raise DiagramParseError("syntax", "missing header 'hfdiag 1'", 1)
    if surface is None:
        raise DiagramParseError("syntax", "missing surface line", last)
    genus, ell = surface

    alphas = [c for c in curves if c[0] == "alpha"]
    betas = [c for c in curves if c[0] == "beta"]
    for kind, group in (("alpha", alphas), ("beta", betas)):
        if len(group) != genus + ell - 1:
            where = group[-1][3] if group else last
            raise DiagramParseError(
                "arity", f"{len(group)} {kind} curves but genus {genus} and {ell} components need {genus + ell - 1}", where
            )
    names = [c[1] for c in curves]
    for kind, cid, _, ln in curves:
        if names.count(cid) > 1:
            raise DiagramParseError("reference", f"curve id {cid} used twice", ln)

    membership: dict[str, dict[str, str]] = {"alpha": {}, "beta": {}}
    for kind, cid, toks, ln in curves:
        for tok, tcol in toks:
            if tok not in points:
                raise DiagramParseError("reference", f"undeclared point {tok}", ln, tcol)
            if tok in membership[kind]:
                raise DiagramParseError("reference", f"point {tok} appears twice on {kind} curves", ln, tcol)
            membership[kind][tok] = cid
    for pid, (_, ln) in points.items():
        for kind in ("alpha", "beta"):
            if pid not in membership[kind]:
                raise DiagramParseError("reference", f"point {pid} lies on no {kind} curve", ln)

    region_ids = [r[0] for r in regions]
    for rid, corners, _, ln in regions:
        if region_ids.count(rid) > 1:
            raise DiagramParseError("reference", f"region id {rid} used twice", ln)
        for pid, _, ccol in corners:
            if pid not in points:
                raise DiagramParseError("reference", f"undeclared point {pid}", ln, ccol)

    pairs = []
    for i in range(1, ell + 1):
        got = []
        for letter in "wz":
            if (letter, i) not in bases:
                raise DiagramParseError("reference", f"missing basepoint {letter}{i}", last)
            rid, ln, rcol = bases[(letter, i)]
            if rid not in region_ids:
                raise DiagramParseError("reference", f"unknown region {rid}", ln, rcol)
            got.append(rid)
        pairs.append(BasepointPair(*got))
    for (letter, i), (_, ln, _) in bases.items():
        if not 1 <= i <= ell:
            raise DiagramParseError("reference", f"basepoint {letter}{i} out of range for {ell} components", ln)

    lk = [[0] * ell for _ in range(ell)]
    for (i, j), (v, ln) in links.items():
        if not (1 <= i <= ell and 1 <= j <= ell) or i == j:
            raise DiagramParseError("reference", f"linking entry ({i},{j}) out of range", ln)
        lk[i - 1][j - 1] = lk[j - 1][i - 1] = v

    pts = tuple(
        IntersectionPoint(pid, membership["alpha"][pid], membership["beta"][pid], points[pid][0])
        for pid in sorted(points)
    )
    return HeegaardDiagram(
        genus=genus,
        alpha_curves=tuple(Curve(cid, "alpha", tuple(t for t, _ in toks)) for _, cid, toks, _ in alphas),
        beta_curves=tuple(Curve(cid, "beta", tuple(t for t, _ in toks)) for _, cid, toks, _ in betas),
        points=pts,
        regions=tuple(Region(rid, tuple((p, q) for p, q, _ in corners), chi) for rid, corners, chi, _ in regions),
        basepoints=tuple(pairs),
        linking_matrix=tuple(tuple(row) for row in lk),
        name=name,
    )


def serialize(diagram: HeegaardDiagram) -> str:
    ell = diagram.num_components
    out = [f"hfdiag {FORMAT_VERSION}", f"surface genus {diagram.genus} components {ell}"]
    for c in diagram.alpha_curves + diagram.beta_curves:
        out.append(f"{c.kind} {c.id}: {' '.join(c.points)}")
    for p in sorted(diagram.points, key=lambda p: p.id):
        out.append(f"point {p.id} sign {'+1' if p.sign > 0 else '-1'}")
    for r in diagram.regions:
        corners = " ".join(f"({p} {q})" for p, q in r.corners)
        suffix = f" chi {r.chi}" if r.chi != 1 else ""
        out.append(f"region {r.id}: {corners}{suffix}")
    for i, b in enumerate(diagram.basepoints, start=1):
        out.append(f"basepoint w{i} {b.w}")
        out.append(f"basepoint z{i} {b.z}")
    for i in range(ell):
        for j in range(i + 1, ell):
            out.append(f"linking {i + 1} {j + 1} {diagram.linking_matrix[i][j]}")
    return "\n".join(out) + "\n"


def load(path: str | os.PathLike) -> HeegaardDiagram:
    path = Path(path)
    return parse(path.read_text(encoding="utf-8"), name=path.stem)


def corpus_dir() -> Path:
    override = os.environ.get(CORPUS_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("hfl") / "corpus"))


def load_bundled(name: str) -> HeegaardDiagram:
    """Load and validate one of the bundled diagrams."""
    path = corpus_dir() / f"{name}.hfdiag"
    if name not in BUNDLED and not path.exists():
        raise KeyError(f"unknown bundled diagram {name!r}; choose from {', '.join(BUNDLED)}")
    diagram = load(path)
    report = validate(diagram)
    if not report.ok:
        raise ValueError(f"bundled diagram {name} is invalid:\n{report}")
    return diagram

ParseError = DiagramParseError
