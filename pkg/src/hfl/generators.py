"""Generators of the chain complex: points of T_alpha intersected with T_beta."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .diagram import HeegaardDiagram, intersection_table


@dataclass(frozen=True, order=True)
class Generator:
    """One intersection point on each alpha curve, matched to distinct betas.

    ``matching[i]`` is the beta index paired with alpha ``i`` and
    ``points[i]`` the chosen point on ``alpha_i``.
    """

    matching: tuple[int, ...]
    points: tuple[str, ...]

    @property
    def label(self) -> str:
        return "x".join(self.points) if len(self.points) > 1 else self.points[0]

    def __str__(self) -> str:
        return "(" + ", ".join(self.points) + ")"


def permutation_sign(perm: tuple[int, ...]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def enumerate_generators(diagram: HeegaardDiagram) -> list[Generator]:
    """All generators, ordered by matching and then by point ids."""
    table = intersection_table(diagram)
    n = diagram.num_curves
    cells = [[sorted(table[j][i]) for j in range(n)] for i in range(n)]  # [alpha][beta]
    out: list[Generator] = []

    def rec(i: int, used: int, perm: list[int], pts: list[str]) -> None:
        if i == n:
            out.append(Generator(tuple(perm), tuple(pts)))
            return
        for j in range(n):
            if used >> j & 1 or not cells[i][j]:
                continue
            perm.append(j)
            for p in cells[i][j]:
                pts.append(p)
                rec(i + 1, used | 1 << j, perm, pts)
                pts.pop()
            perm.pop()

    rec(0, 0, [], [])
    out.sort()
    return out


def count_by_type(diagram: HeegaardDiagram) -> dict[tuple[int, ...], int]:
    return dict(sorted(Counter(g.matching for g in enumerate_generators(diagram)).items()))


def generator_sign(diagram: HeegaardDiagram, gen: Generator) -> int:
    """sign(matching) times the product of the local intersection signs."""
    s = permutation_sign(gen.matching)
    for p in gen.points:
        s *= diagram.point_by_id[p].sign
    return s


def find_generator(gens: list[Generator], points) -> Generator:
    """Look up a generator by its set of points (order-insensitive)."""
    want = frozenset(points)
    for g in gens:
        if frozenset(g.points) == want:
            return g
    raise KeyError(f"no generator with points {sorted(want)}")


def permanent(matrix: list[list[int]]) -> int:
    """Brute-force permanent, used as an independent count check."""
    from itertools import permutations

    n = len(matrix)
    total = 0
    for perm in permutations(range(n)):
        prod = 1
        for i, j in enumerate(perm):
            prod *= matrix[i][j]
            if not prod:
                break
        total += prod
    return total
