"""Invariants read off from the link Floer groups.

Euler characteristic (Alexander) polynomial, Seifert genus, the convex hull
of the support of HFL-hat and the dual Thurston polytope.  All geometry is
done with Fractions.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .closure import homology_table
from .complex import ComplexError
from .diagram import HeegaardDiagram
from .generators import enumerate_generators
from .gradings import GradingError, absolute_alexander, maslov_gradings, relative_gradings
from .linalg import feasible_point, hyperplane_normal, solve_rational

Vector = tuple[Fraction, ...]


class ApplicationError(ValueError):
    pass


# --- Laurent polynomials -----------------------------------------------------


@dataclass(frozen=True)
class LaurentPolynomial:
    """Finitely supported map from exponent vectors to integer coefficients.

    Exponents live in the affine lattice H and may be half-integral; they
    are stored doubled (``scale = 2``) in that case so keys stay integers.
    """

    terms: tuple[tuple[tuple[int, ...], int], ...]
    scale: int = 1
    nvars: int = 1

    @classmethod
    def from_counts(cls, counts: dict, nvars: int) -> LaurentPolynomial:
        scale = 2 if any(Fraction(e).denominator != 1 for k in counts for e in k) else 1
        terms = defaultdict(int)
        for k, c in counts.items():
            terms[tuple(int(Fraction(e) * scale) for e in k)] += c
        return cls(tuple(sorted((k, c) for k, c in terms.items() if c)), scale, nvars)

    def as_dict(self) -> dict[Vector, int]:
        return {tuple(Fraction(e, self.scale) for e in k): c for k, c in self.terms}

    def negated_exponents(self) -> LaurentPolynomial:
        return LaurentPolynomial.from_counts({tuple(-e for e in k): c for k, c in self.as_dict().items()}, self.nvars)

    def __neg__(self) -> LaurentPolynomial:
        return LaurentPolynomial(tuple((k, -c) for k, c in self.terms), self.scale, self.nvars)

    def symmetry_sign(self) -> int | None:
        """+1 or -1 if p(T^-1) = +-p(T), else None (0 counts as symmetric)."""
        d = self.as_dict()
        flipped = self.negated_exponents().as_dict()
        if d == flipped:
            return 1
        if d == {k: -c for k, c in flipped.items()}:
            return -1
        return None

    def evaluate(self, values) -> Fraction:
        """Value at a point; half-integral exponents need perfect squares."""
        total = Fraction(0)
        for k, c in self.as_dict().items():
            term = Fraction(c)
            for v, e in zip(values, k):
                if e.denominator != 1:
                    raise ValueError("half-integral exponent; substitute squared variables first")
                term *= Fraction(v) ** int(e)
            total += term
        return total

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = ["T"] if self.nvars == 1 else [f"t{i + 1}" for i in range(self.nvars)]
        parts = []
        for k, c in sorted(self.as_dict().items()):
            mono = []
            for name, e in zip(names, k):
                if e == 0:
                    continue
                if e == 1:
                    mono.append(name)
                elif e.denominator == 1:
                    mono.append(f"{name}^{e}")
                else:
                    mono.append(f"{name}^({e})")
            body = "*".join(mono)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


def euler_polynomial(diagram: HeegaardDiagram) -> LaurentPolynomial:
    """Sum over generators of (-1)^gr * T^A, a chain-level computation.

    For a knot the absolute Maslov grading is used, so the result is the
    symmetrised Alexander polynomial on the nose.  For links the Maslov
    grading is only relative and the result is fixed up to one global sign.
    """
    alex = absolute_alexander(diagram)
    try:
        mas = maslov_gradings(diagram).values
    except GradingError:
        mas = relative_gradings(diagram).maslov
    counts: dict = defaultdict(int)
    for g in enumerate_generators(diagram):
        counts[alex[g]] += -1 if mas[g] % 2 else 1
    return LaurentPolynomial.from_counts(counts, diagram.num_components)


# --- homology-derived invariants ------------------------------------------


def _support_bounds(diagram: HeegaardDiagram) -> tuple[list, list]:
    """(gradings surely in the support, gradings possibly in it).

    Uses the certified complex, or the d o d = 0 closure when some domains
    are indeterminate; the two lists agree when the homology is exact.
    """
    table = homology_table(diagram)
    sure, maybe = [], []
    for a in table.totals():
        lo, hi = table.total_bounds(a)
        if lo:
            sure.append(a)
        if hi:
            maybe.append(a)
    return sure, maybe


def seifert_genus(diagram: HeegaardDiagram) -> int:
    """Top Alexander grading carrying knot Floer homology."""
    if diagram.num_components != 1:
        raise ApplicationError("not a knot: Seifert genus needs one component")
    sure, maybe = _support_bounds(diagram)
    if not sure or max(sure) != max(maybe):
        raise ComplexError("indeterminate homology: the top Alexander grading is not determined")
    return int(max(sure)[0])


# --- exact polytopes ------------------------------------------------------


def _dot(u, v) -> Fraction:
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


def _separates(p: Vector, others) -> bool:
    """Is there h with <h, p - q> >= 1 for every q in ``others``?"""
    others = [q for q in others if tuple(q) != tuple(p)]
    if not others:
        return True
    ineqs = [(tuple(Fraction(qi) - Fraction(pi) for pi, qi in zip(p, q)), Fraction(-1)) for q in others]
    return feasible_point(ineqs, len(p)) is not None


def extreme_points(points) -> list[Vector]:
    pts = sorted({tuple(Fraction(x) for x in p) for p in points})
    return [p for p in pts if _separates(p, pts)]


def _affine_dimension(points) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    rows = [[Fraction(a) - Fraction(b) for a, b in zip(p, base)] for p in points[1:]]
    rank = 0
    ncols = len(base)
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class Polytope:
    """Convex polytope given by its vertices (extreme points only)."""

    vertices: tuple[Vector, ...]
    dimension: int
    ambient: int

    @classmethod
    def hull(cls, points, ambient: int | None = None) -> Polytope:
        pts = [tuple(Fraction(x) for x in p) for p in points]
        if not pts:
            raise ApplicationError("hull of an empty set")
        verts = tuple(extreme_points(pts))
        return cls(verts, _affine_dimension(list(verts)), ambient if ambient is not None else len(pts[0]))

    def support(self, h) -> Fraction:
        return max(_dot(h, v) for v in self.vertices)

    def contains(self, p) -> bool:
        p = tuple(Fraction(x) for x in p)
        if p in self.vertices:
            return True
        return not _separates(p, self.vertices)

    def scaled(self, k) -> Polytope:
        k = Fraction(k)
        return Polytope(tuple(sorted(tuple(k * x for x in v) for v in self.vertices)), self.dimension, self.ambient)

    def __add__(self, other: Polytope) -> Polytope:
        sums = [tuple(a + b for a, b in zip(u, v)) for u in self.vertices for v in other.vertices]
        return Polytope.hull(sums, self.ambient)

    def is_centrally_symmetric(self) -> bool:
        return set(self.vertices) == {tuple(-x for x in v) for v in self.vertices}

    def facet_normals(self) -> list[Vector]:
        """Primitive outward normals of the facets (full-dimensional only)."""
        d = self.ambient
        if self.dimension != d:
            raise ApplicationError("facets need a full-dimensional polytope")
        if d == 1:
            return [(Fraction(-1),), (Fraction(1),)]
        normals = set()
        for subset in combinations(self.vertices, d):
            n = hyperplane_normal(list(subset))
            if n is None:
                continue
            level = _dot(n, subset[0])
            vals = [_dot(n, v) for v in self.vertices]
            if all(v <= level for v in vals):
                normals.add(tuple(n))
            elif all(v >= level for v in vals):
                normals.add(tuple(-x for x in n))
        return sorted(normals)


def cube(ell: int) -> Polytope:
    return Polytope(tuple(sorted(tuple(Fraction(s) for s in signs) for signs in product((-1, 1), repeat=ell))), ell, ell)


def hfl_hull(diagram: HeegaardDiagram) -> Polytope:
    """Convex hull of the Alexander gradings where HFL-hat is non-zero."""
    sure, maybe = _support_bounds(diagram)
    if not sure:
        raise ComplexError("indeterminate homology: no grading is known to carry homology")
    hull = Polytope.hull(sure, diagram.num_components)
    if not all(hull.contains(a) for a in maybe):
        raise ComplexError("indeterminate homology: the hull depends on undetermined ranks")
    return hull


def minkowski_difference(big: Polytope, small: Polytope) -> Polytope:
    """The polytope P with P + small = big, or ApplicationError if none."""
    d = big.ambient
    if big.dimension != d:
        raise ApplicationError("Minkowski difference infeasible: the hull is not full-dimensional")
    halfspaces = [(n, big.support(n) - small.support(n)) for n in big.facet_normals()]
    candidates = []
    for subset in combinations(halfspaces, d):
        x = solve_rational([list(n) for n, _ in subset], [b for _, b in subset])
        if x is None:
            continue
        if all(_dot(n, x) <= b for n, b in halfspaces):
            candidates.append(tuple(x))
    if not candidates:
        raise ApplicationError("Minkowski difference infeasible: the constraints are empty")
    P = Polytope.hull(candidates, d)
    if set((P + small).vertices) != set(big.vertices):
        raise ApplicationError("Minkowski difference infeasible: P + hypercube does not recover the hull")
    return P


def dual_thurston_polytope(diagram: HeegaardDiagram) -> Polytope:
    """P with P + [-1, 1]^l = 2 * hull (exact).

    The caller asserts that the link has no trivial component; a failed
    Minkowski identity (for instance the unknot, whose hull is a point) is
    reported as infeasible.
    """
    two_hull = hfl_hull(diagram).scaled(2)
    return minkowski_difference(two_hull, cube(diagram.num_components))


def thurston_norm(hull: Polytope, h) -> Fraction:
    """x(h) = 2 max_{s in hull} <h, s> - sum_i |h_i|."""
    return 2 * hull.support(h) - sum(abs(Fraction(x)) for x in h)
