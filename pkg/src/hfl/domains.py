"""Domains (two-chains) connecting generators, periodic domains, admissibility.

The boundary condition for a domain ``D`` from ``x`` to ``y`` is one linear
equation per intersection point ``p``::

    c_NE + c_SW - c_NW - c_SE = sign(p) * ([p in y] - [p in x])

where ``c_Q`` is the coefficient of the region in quadrant ``Q`` at ``p``.
It says that the alpha part of the boundary of ``D`` runs from ``x`` to
``y`` (and then the beta part runs back from ``y`` to ``x``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .diagram import HeegaardDiagram
from .generators import Generator
from .linalg import IntegerSolver, feasible_point, lattice_points, lll_reduce


class NotAdmissible(ValueError):
    pass


@dataclass(frozen=True)
class Domain:
    coefficients: tuple[int, ...]
    n_w: tuple[int, ...]
    n_z: tuple[int, ...]

    def __add__(self, other: Domain) -> Domain:
        return Domain(
            tuple(a + b for a, b in zip(self.coefficients, other.coefficients)),
            tuple(a + b for a, b in zip(self.n_w, other.n_w)),
            tuple(a + b for a, b in zip(self.n_z, other.n_z)),
        )

    def __neg__(self) -> Domain:
        return Domain(
            tuple(-a for a in self.coefficients), tuple(-a for a in self.n_w), tuple(-a for a in self.n_z)
        )

    def __sub__(self, other: Domain) -> Domain:
        return self + (-other)

    def scaled(self, k: int) -> Domain:
        return Domain(
            tuple(k * a for a in self.coefficients), tuple(k * a for a in self.n_w), tuple(k * a for a in self.n_z)
        )

    @property
    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.coefficients)

    @property
    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coefficients) if c]


def make_domain(diagram: HeegaardDiagram, coefficients) -> Domain:
    c = tuple(int(v) for v in coefficients)
    return Domain(c, tuple(c[r] for r in diagram.w_regions), tuple(c[r] for r in diagram.z_regions))


def zero_domain(diagram: HeegaardDiagram) -> Domain:
    return make_domain(diagram, [0] * len(diagram.regions))


# --- the linear system -----------------------------------------------------


@lru_cache(maxsize=32)
def boundary_matrix(diagram: HeegaardDiagram) -> tuple[tuple[int, ...], ...]:
    """One row per intersection point (in ``diagram.points`` order)."""
    R = len(diagram.regions)
    rows = []
    for p in diagram.points:
        row = [0] * R
        for r, w in diagram.local_row(p.id).items():
            row[r] += w
        rows.append(tuple(row))
    return tuple(rows)


def boundary_rhs(diagram: HeegaardDiagram, x: Generator, y: Generator) -> list[int]:
    xs, ys = set(x.points), set(y.points)
    return [p.sign * ((p.id in ys) - (p.id in xs)) for p in diagram.points]


def connects(diagram: HeegaardDiagram, D: Domain, x: Generator, y: Generator) -> bool:
    """Does ``D`` satisfy the boundary condition for a domain from x to y?"""
    A = boundary_matrix(diagram)
    b = boundary_rhs(diagram, x, y)
    return all(sum(a * c for a, c in zip(row, D.coefficients)) == bb for row, bb in zip(A, b))


def _indicator_rows(diagram: HeegaardDiagram, regions) -> list[tuple[int, ...]]:
    R = len(diagram.regions)
    return [tuple(int(i == r) for i in range(R)) for r in regions]


@lru_cache(maxsize=128)
def _system(diagram: HeegaardDiagram, fix_w: bool, fix_z: bool):
    rows = list(boundary_matrix(diagram))
    if fix_w:
        rows += _indicator_rows(diagram, diagram.w_regions)
    if fix_z:
        rows += _indicator_rows(diagram, diagram.z_regions)
    solver = IntegerSolver(rows, len(diagram.regions))
    basis = lll_reduce(solver.kernel())
    basis = [v for v in basis if any(v)]
    basis.sort()
    return solver, tuple(tuple(v) for v in basis)


def _solve(diagram: HeegaardDiagram, x: Generator, y: Generator, fix_w: bool, fix_z: bool):
    solver, basis = _system(diagram, fix_w, fix_z)
    extra = (len(diagram.w_regions) if fix_w else 0) + (len(diagram.z_regions) if fix_z else 0)
    sol = solver.solve(boundary_rhs(diagram, x, y) + [0] * extra)
    return sol, basis


def _l1_reduce(v: list[int], basis) -> list[int]:
    """Greedy L1 descent along +-basis vectors (deterministic)."""
    improved = True
    while improved:
        improved = False
        for b in basis:
            for s in (1, -1):
                cand = [a + s * c for a, c in zip(v, b)]
                if sum(map(abs, cand)) < sum(map(abs, v)):
                    v = cand
                    improved = True
    return v


def connecting_domain(diagram: HeegaardDiagram, x: Generator, y: Generator) -> Domain | None:
    """A domain from ``x`` to ``y`` with ``n_w = 0``, or None if none exists.

    The representative is reduced to small L1 norm modulo periodic domains.
    """
    sol, basis = _solve(diagram, x, y, True, False)
    if sol is None:
        return None
    return make_domain(diagram, _l1_reduce(sol, basis))


def periodic_basis(diagram: HeegaardDiagram) -> list[Domain]:
    """Basis of the periodic domains (zero boundary point-wise, no basepoints)."""
    _, basis = _system(diagram, True, True)
    return [make_domain(diagram, v) for v in basis]


def _nonnegative_element(diagram: HeegaardDiagram, basis) -> Domain | None:
    """A non-zero element of the span of ``basis`` with no negative coefficient."""
    r = len(basis)
    if r == 0:
        return None
    R = len(diagram.regions)
    ineqs = []
    for i in range(R):
        ineqs.append((tuple(-Fraction(b[i]) for b in basis), Fraction(0)))
    ineqs.append((tuple(-Fraction(sum(b)) for b in basis), Fraction(-1)))
    k = feasible_point(ineqs, r)
    if k is None:
        return None
    den = 1
    for v in k:
        den = lcm(den, v.denominator)
    ks = [int(v * den) for v in k]
    coeffs = [sum(kk * b[i] for kk, b in zip(ks, basis)) for i in range(R)]
    return make_domain(diagram, coeffs)


@lru_cache(maxsize=128)
def _lattice_admissible(diagram: HeegaardDiagram, fix_w: bool, fix_z: bool) -> bool:
    _, basis = _system(diagram, fix_w, fix_z)
    return _nonnegative_element(diagram, basis) is None


@dataclass(frozen=True)
class Admissibility:
    admissible: bool
    witness: Domain | None = None

    def __bool__(self) -> bool:
        return self.admissible


def is_admissible(diagram: HeegaardDiagram) -> Admissibility:
    """Every non-zero periodic domain must have coefficients of both signs.

    Decided exactly: look for a rational non-negative combination with
    positive total weight.  On failure the witness is such a domain.
    """
    _, basis = _system(diagram, True, True)
    w = _nonnegative_element(diagram, basis)
    return Admissibility(w is None, w)


def positive_domains(
    diagram: HeegaardDiagram,
    x: Generator,
    y: Generator,
    require_nw_zero: bool = True,
    require_nz_zero: bool = True,
) -> list[Domain]:
    """Every domain from x to y with non-negative coefficients.

    Raises NotAdmissible when the relevant lattice contains a non-negative
    element, since the search would then be unbounded.
    """
    if not _lattice_admissible(diagram, require_nw_zero, require_nz_zero):
        raise NotAdmissible("diagram is not admissible for this basepoint constraint")
    sol, basis = _solve(diagram, x, y, require_nw_zero, require_nz_zero)
    if sol is None:
        return []
    R = len(diagram.regions)
    r = len(basis)
    ineqs = [(tuple(-Fraction(b[i]) for b in basis), Fraction(sol[i])) for i in range(R)]
    out = []
    for ks in lattice_points(ineqs, r):
        coeffs = [sol[i] + sum(k * b[i] for k, b in zip(ks, basis)) for i in range(R)]
        out.append(make_domain(diagram, coeffs))
    out.sort(key=lambda d: d.coefficients)
    return out
