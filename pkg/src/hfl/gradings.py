"""Maslov index of domains, relative gradings and the absolute Alexander grading."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .diagram import QUADRANTS, HeegaardDiagram
from .domains import Domain, connecting_domain
from .generators import Generator, enumerate_generators, generator_sign


class GradingError(ValueError):
    pass


def point_multiplicity4(diagram: HeegaardDiagram, D: Domain, point: str) -> int:
    """Four times the average multiplicity of ``D`` around ``point``."""
    qr = diagram.quadrant_region
    return sum(D.coefficients[qr[(point, q)]] for q in QUADRANTS)


def euler_measure4(diagram: HeegaardDiagram, D: Domain) -> int:
    """Four times the Euler measure of ``D``."""
    return sum(c * r.euler_measure_numerator for c, r in zip(D.coefficients, diagram.regions) if c)


def maslov_index(diagram: HeegaardDiagram, D: Domain, x: Generator, y: Generator) -> int:
    """mu(D) = e(D) + n_x(D) + n_y(D) (Lipshitz's combinatorial formula)."""
    total = euler_measure4(diagram, D)
    for p in x.points + y.points:
        total += point_multiplicity4(diagram, D, p)
    if total % 4:
        raise GradingError(f"non-integral Maslov index {Fraction(total, 4)}; domain does not connect x to y")
    return total // 4


def _connecting(diagram: HeegaardDiagram, x: Generator, y: Generator) -> Domain:
    D = connecting_domain(diagram, x, y)
    if D is None:
        raise GradingError(f"no domain connects {x} to {y}")
    return D


def alexander_difference(diagram: HeegaardDiagram, x: Generator, y: Generator) -> tuple[int, ...]:
    """F(x) - F(y) = n_z - n_w of any domain from x to y."""
    D = _connecting(diagram, x, y)
    return tuple(z - w for z, w in zip(D.n_z, D.n_w))


def relative_maslov(diagram: HeegaardDiagram, x: Generator, y: Generator) -> int:
    """gr(x) - gr(y) = mu(D) - 2 * sum(n_w) for any domain from x to y."""
    D = _connecting(diagram, x, y)
    return maslov_index(diagram, D, x, y) - 2 * sum(D.n_w)


@dataclass(frozen=True)
class RelativeGradings:
    """Gradings of every generator relative to ``reference``."""

    generators: tuple[Generator, ...]
    reference: Generator
    alexander: dict  # Generator -> tuple[int]
    maslov: dict  # Generator -> int


@lru_cache(maxsize=16)
def relative_gradings(diagram: HeegaardDiagram) -> RelativeGradings:
    gens = tuple(enumerate_generators(diagram))
    if not gens:
        raise GradingError("diagram has no generators")
    ref = gens[0]
    alex, mas = {}, {}
    for g in gens:
        D = _connecting(diagram, g, ref)
        alex[g] = tuple(z - w for z, w in zip(D.n_z, D.n_w))
        mas[g] = maslov_index(diagram, D, g, ref) - 2 * sum(D.n_w)
    return RelativeGradings(gens, ref, alex, mas)


def linking_sums(diagram: HeegaardDiagram) -> list[int]:
    """lk(L_i, L - L_i) for each component."""
    lk = diagram.linking_matrix
    return [sum(lk[i][j] for j in range(len(lk)) if j != i) for i in range(len(lk))]


@lru_cache(maxsize=16)
def absolute_alexander(diagram: HeegaardDiagram) -> dict:
    """Generator -> Alexander multi-grading (tuple of Fractions) in H.

    The translation is fixed by asking that the signed count of generators
    per grading be centrally symmetric (up to one global sign).  If that
    signed count vanishes identically the plain generator count is used.
    """
    rel = relative_gradings(diagram)
    ell = diagram.num_components
    chi: Counter = Counter()
    for g in rel.generators:
        chi[rel.alexander[g]] += generator_sign(diagram, g)
    support = [h for h, c in chi.items() if c]
    if not support:
        chi = Counter(rel.alexander[g] for g in rel.generators)
        support = list(chi)
    centre = tuple(
        Fraction(min(h[i] for h in support) + max(h[i] for h in support), 2) for i in range(ell)
    )
    shifted = {tuple(Fraction(v) - c for v, c in zip(h, centre)): n for h, n in chi.items() if n}
    eps = None
    for h, n in shifted.items():
        m = shifted.get(tuple(-v for v in h), 0)
        ratio = 1 if m == n else -1 if m == -n else 0
        if ratio == 0 or (eps is not None and ratio != eps):
            raise GradingError("asymmetric Euler distribution: no translation makes it symmetric")
        eps = ratio
    out = {g: tuple(Fraction(v) - c for v, c in zip(rel.alexander[g], centre)) for g in rel.generators}
    # differences are integral, so checking one generator checks them all
    lks = linking_sums(diagram)
    a = out[rel.reference]
    for i in range(ell):
        if (2 * a[i] + lks[i]) % 2 != 0:
            raise GradingError(f"parity mismatch: 2*A_{i + 1} + lk = {2 * a[i] + lks[i]} is not an even integer")
    return out


@dataclass(frozen=True)
class MaslovGrading:
    values: dict  # Generator -> int
    absolute: bool
    anchor: Generator | None  # generator pinned to 0 when only relative


@lru_cache(maxsize=16)
def maslov_gradings(diagram: HeegaardDiagram) -> MaslovGrading:
    """Maslov gradings: absolute for knots, relative to an anchor for links.

    For a knot the homology of the complex that only avoids ``w`` is one
    dimensional (it computes HF-hat of the sphere); its class is put in
    degree zero.
    """
    rel = relative_gradings(diagram)
    if diagram.num_components == 1:
        from .complex import w_only_homology_degree

        shift = w_only_homology_degree(diagram)
        return MaslovGrading({g: m - shift for g, m in rel.maslov.items()}, True, None)
    return MaslovGrading(dict(rel.maslov), False, rel.reference)
