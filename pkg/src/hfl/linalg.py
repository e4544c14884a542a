"""Exact linear algebra: integer systems, rational inequalities, GF(2) ranks.

Everything here works on plain Python ints and Fractions so that no float
ever reaches a domain coefficient or a grading.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterator, Sequence

Matrix = list[list[int]]


class IntegerSolver:
    """Solve ``M x = b`` over the integers for a fixed matrix ``M``.

    Column operations reduce ``M`` to a lower echelon form ``H = M U`` with
    ``U`` unimodular.  The trailing columns of ``U`` span the integer kernel
    and each right-hand side is solved by forward substitution.
    """

    def __init__(self, rows: Sequence[Sequence[int]], ncols: int) -> None:
        self.nrows = len(rows)
        self.ncols = ncols
        H = [list(r) for r in rows]
        U = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
        pivots: list[tuple[int, int]] = []  # (row, column) of each pivot
        col = 0
        for r in range(self.nrows):
            if col == ncols:
                break
            # gcd-reduce entries H[r][col:] into column ``col``
            while True:
                nz = [c for c in range(col, ncols) if H[r][c] != 0]
                if not nz:
                    break
                c_min = min(nz, key=lambda c: abs(H[r][c]))
                if c_min != col:
                    _swap_cols(H, U, col, c_min)
                done = True
                for c in range(col + 1, ncols):
                    if H[r][c]:
                        q = H[r][c] // H[r][col]
                        _add_col(H, U, c, col, -q)
                        if H[r][c]:
                            done = False
                if done:
                    break
            if H[r][col] != 0:
                if H[r][col] < 0:
                    _neg_col(H, U, col)
                pivots.append((r, col))
                col += 1
        self.H = H
        self.U = U
        self.pivots = pivots
        self.rank = len(pivots)

    def kernel(self) -> list[list[int]]:
        """Integer basis of ``{x : M x = 0}``."""
        return [[self.U[i][c] for i in range(self.ncols)] for c in range(self.rank, self.ncols)]

    def solve(self, b: Sequence[int]) -> list[int] | None:
        """One integer solution, or None if there is none."""
        y = [0] * self.ncols
        residual = list(b)
        pivot_rows = {r for r, _ in self.pivots}
        k = 0
        for r in range(self.nrows):
            if k < self.rank and self.pivots[k][0] == r:
                c = self.pivots[k][1]
                if residual[r] % self.H[r][c]:
                    return None
                y[c] = residual[r] // self.H[r][c]
                if y[c]:
                    for rr in range(r, self.nrows):
                        residual[rr] -= self.H[rr][c] * y[c]
                k += 1
            elif r not in pivot_rows and residual[r] != 0:
                return None
        return [sum(self.U[i][c] * y[c] for c in range(self.ncols)) for i in range(self.ncols)]


def _swap_cols(H: Matrix, U: Matrix, a: int, b: int) -> None:
    for M in (H, U):
        for row in M:
            row[a], row[b] = row[b], row[a]


def _add_col(H: Matrix, U: Matrix, dst: int, src: int, q: int) -> None:
    for M in (H, U):
        for row in M:
            row[dst] += q * row[src]


def _neg_col(H: Matrix, U: Matrix, c: int) -> None:
    for M in (H, U):
        for row in M:
            row[c] = -row[c]


def lll_reduce(basis: list[list[int]]) -> list[list[int]]:
    """Cheap size reduction of a lattice basis (pairwise, until stable).

    Not full LLL; it only keeps coefficients small so that lattice searches
    stay readable.
    """
    basis = [list(v) for v in basis]
    changed = True
    while changed:
        changed = False
        basis.sort(key=lambda v: sum(x * x for x in v))
        for i in range(len(basis)):
            for j in range(len(basis)):
                if i == j:
                    continue
                u, v = basis[i], basis[j]
                uu = sum(x * x for x in u)
                if uu == 0:
                    continue
                q = round(Fraction(sum(a * b for a, b in zip(u, v)), uu))
                if q:
                    cand = [b - q * a for a, b in zip(u, v)]
                    if sum(x * x for x in cand) < sum(x * x for x in v):
                        basis[j] = cand
                        changed = True
    return basis


# --- rational inequalities (Fourier-Motzkin) -------------------------------

Ineq = tuple[tuple[Fraction, ...], Fraction]  # sum a_i k_i <= b


def _eliminate(ineqs: list[Ineq], var: int) -> list[Ineq]:
    pos, neg, rest = [], [], []
    for a, b in ineqs:
        (pos if a[var] > 0 else neg if a[var] < 0 else rest).append((a, b))
    out = list(rest)
    for ap, bp in pos:
        for an, bn in neg:
            lp, ln = -an[var], ap[var]
            a = tuple(lp * x + ln * y for x, y in zip(ap, an))
            out.append((a, lp * bp + ln * bn))
    return _dedupe(out)


def _dedupe(ineqs: list[Ineq]) -> list[Ineq]:
    seen: dict[tuple[Fraction, ...], Fraction] = {}
    for a, b in ineqs:
        scale = next((abs(x) for x in a if x != 0), None)
        if scale is None:
            key = a
            seen[key] = min(seen.get(key, b), b)
            continue
        key = tuple(x / scale for x in a)
        seen[key] = min(seen.get(key, b / scale), b / scale)
    return [(a, b) for a, b in seen.items()]


def feasible_point(ineqs: Sequence[Ineq], nvars: int) -> list[Fraction] | None:
    """A rational point with ``A k <= b``, or None if the system is empty."""
    ineqs = [(tuple(Fraction(x) for x in a), Fraction(b)) for a, b in ineqs]
    stages = [ineqs]
    for v in range(nvars - 1, -1, -1):
        stages.append(_eliminate(stages[-1], v))
    if any(b < 0 for a, b in stages[-1]):
        return None
    point = [Fraction(0)] * nvars
    for v in range(nvars):
        lo, hi = _bounds(stages[nvars - 1 - v], v, point)
        if lo is not None and hi is not None and lo > hi:
            return None
        point[v] = lo if lo is not None else hi if hi is not None else Fraction(0)
        if lo is not None and hi is not None:
            point[v] = (lo + hi) / 2
    return point


def _bounds(ineqs: Sequence[Ineq], var: int, point: Sequence[Fraction]):
    lo = hi = None
    for a, b in ineqs:
        rhs = b - sum(a[i] * point[i] for i in range(var))
        if a[var] > 0:
            v = rhs / a[var]
            hi = v if hi is None else min(hi, v)
        elif a[var] < 0:
            v = rhs / a[var]
            lo = v if lo is None else max(lo, v)
        elif rhs < 0:
            return Fraction(1), Fraction(0)  # empty
    return lo, hi


def lattice_points(ineqs: Sequence[Ineq], nvars: int) -> Iterator[list[int]]:
    """All integer points of a bounded rational polyhedron ``A k <= b``.

    Raises ValueError if some coordinate is unbounded.
    """
    ineqs = [(tuple(Fraction(x) for x in a), Fraction(b)) for a, b in ineqs]
    stages = [ineqs]
    for v in range(nvars - 1, -1, -1):
        stages.append(_eliminate(stages[-1], v))
    if any(b < 0 for a, b in stages[-1]):
        return

    def rec(v: int, point: list[int]) -> Iterator[list[int]]:
        if v == nvars:
            yield list(point)
            return
        lo, hi = _bounds(stages[nvars - 1 - v], v, [Fraction(p) for p in point] + [Fraction(0)] * (nvars - v))
        if lo is None or hi is None:
            raise ValueError("unbounded lattice search")
        for k in range(_ceil(lo), _floor(hi) + 1):
            point.append(k)
            yield from rec(v + 1, point)
            point.pop()

    if nvars == 0:
        yield []
        return
    yield from rec(0, [])


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


# --- small exact geometry helpers -----------------------------------------


def solve_rational(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction] | None:
    """Unique solution of a square system, or None if singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(bb)] for row, bb in zip(A, b)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return None
        M[c], M[p] = M[p], M[c]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c] / M[c][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [M[i][n] / M[i][i] for i in range(n)]


def hyperplane_normal(points: Sequence[Sequence[Fraction]]) -> list[Fraction] | None:
    """Normal of the hyperplane through ``d`` points in dimension ``d``."""
    d = len(points[0])
    if d == 1:
        return [Fraction(1)]
    rows = [[Fraction(p[i]) - Fraction(points[0][i]) for i in range(d)] for p in points[1:]]
    # nullspace of a (d-1) x d matrix via reduced row echelon form
    M = [list(r) for r in rows]
    piv_cols = []
    r = 0
    for c in range(d):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        M[r] = [x / M[r][c] for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                M[i] = [x - M[i][c] * y for x, y in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    free = [c for c in range(d) if c not in piv_cols]
    if len(free) != 1:
        return None
    f = free[0]
    n = [Fraction(0)] * d
    n[f] = Fraction(1)
    for i, c in enumerate(piv_cols):
        n[c] = -M[i][f]
    return _primitive(n)


def _primitive(v: Sequence[Fraction]) -> list[Fraction]:
    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [Fraction(x // g) for x in ints] if g else [Fraction(x) for x in ints]


# --- GF(2) -----------------------------------------------------------------


def gf2_rank(rows: Sequence[int]) -> int:
    """Rank of a set of GF(2) vectors stored as int bitsets."""
    return len(gf2_basis(rows))


def gf2_basis(rows: Sequence[int]) -> list[int]:
    basis: dict[int, int] = {}  # leading bit -> vector
    for v in rows:
        while v:
            lead = v.bit_length() - 1
            if lead in basis:
                v ^= basis[lead]
            else:
                basis[lead] = v
                break
    return list(basis.values())


def gf2_kernel(columns: Sequence[int], n: int) -> list[int]:
    """Kernel of the map sending basis vector ``i`` to ``columns[i]``.

    Returns bitsets over the ``n`` domain indices.
    """
    basis: dict[int, tuple[int, int]] = {}  # lead bit -> (image, combination)
    kernel = []
    for i in range(n):
        v, comb = columns[i], 1 << i
        while v:
            lead = v.bit_length() - 1
            if lead in basis:
                bv, bc = basis[lead]
                v ^= bv
                comb ^= bc
            else:
                basis[lead] = (v, comb)
                break
        if not v:
            kernel.append(comb)
    return kernel
