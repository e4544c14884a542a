"""Pin down undetermined differential entries with the relation d o d = 0.

When some index-one domains cannot be certified, the corresponding matrix
entries of the differential are unknown bits.  The true differential of
every complex built from the diagram squares to zero, so the unknowns must
satisfy a system of quadratic equations over GF(2).  The equations come from
the complex that only avoids ``w``.  That complex contains every entry of
the hat complex (for a pair in one Alexander grading every domain has
``n_z = 0``) plus the entries that cross ``z``, which couple the Alexander
blocks to each other.

For each Alexander block all assignments of its unknowns that extend to a
solution of the full system are enumerated with an SMT solver.  A rank is
*resolved* when it takes the same value for every such assignment.
Optionally the symmetry of HFL-hat under negating the Alexander grading is
imposed on the totals.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache

from .complex import ComplexError, GradedComplex, HomologyTable, build_differential, homology
from .diagram import HeegaardDiagram
from .domains import NotAdmissible
from .gradings import GradingError
from .linalg import gf2_rank

MAX_BLOCK_UNKNOWNS = 16


@dataclass
class Closure:
    """Outcome of resolving a complex with indeterminate entries."""

    table: HomologyTable
    options: dict  # Alexander grading -> sorted list of feasible ((maslov, rank), ...) tuples
    forced: dict = field(default_factory=dict)  # (x, y) -> bool for unknown hat entries fixed by d o d = 0
    consistent: bool = True  # some completion squares to zero
    coupled: bool = True  # whether the w-only complex supplied constraints
    symmetric: bool = False  # whether symmetry was imposed

    @property
    def resolved(self) -> bool:
        return self.table.status in ("certified", "resolved")


def _block_ranks(cx: GradedComplex, gens, diff) -> tuple:
    idx = {g: i for i, g in enumerate(gens)}
    by_m = defaultdict(list)
    for g in gens:
        by_m[cx.maslov[g]].append(g)

    def rk(m):
        return gf2_rank([sum(1 << idx[h] for h in diff[g]) for g in by_m.get(m, [])])

    return tuple((m, len(by_m[m]) - rk(m) - rk(m + 1)) for m in sorted(by_m))


class _System:
    """Quadratic GF(2) equations for the unknown entries (z3 booleans)."""

    def __init__(self, complexes):
        import z3

        self.z3 = z3
        self.vars: dict = {}
        self.unknown: dict = {}
        self.solver = z3.Solver()
        for cx in complexes:
            self._add_d_squared(cx)

    def entry(self, cx: GradedComplex, x, y):
        if id(cx) not in self.unknown:
            self.unknown[id(cx)] = cx.unknown_pairs()
        if (x, y) in self.unknown[id(cx)]:
            if (x, y) not in self.vars:
                self.vars[(x, y)] = self.z3.Bool(f"d[{x}->{y}]")
            return self.vars[(x, y)]
        return y in cx.differential[x]

    def _add_d_squared(self, cx: GradedComplex) -> None:
        z3 = self.z3
        by_m = defaultdict(list)
        for g in cx.generators:
            by_m[cx.maslov[g]].append(g)
        for x in cx.generators:
            mids = by_m.get(cx.maslov[x] - 1, [])
            for z in by_m.get(cx.maslov[x] - 2, []):
                parity, terms = False, []
                for y in mids:
                    a, b = self.entry(cx, x, y), self.entry(cx, y, z)
                    if a is False or b is False:
                        continue
                    if a is True and b is True:
                        parity = not parity
                    elif a is True or b is True:
                        terms.append(b if a is True else a)
                    else:
                        terms.append(z3.And(a, b))
                if not terms:
                    if parity:
                        self.solver.add(z3.BoolVal(False))
                    continue
                acc = terms[0]
                for t in terms[1:]:
                    acc = z3.Xor(acc, t)
                self.solver.add(acc == z3.BoolVal(parity))

    def feasible(self, assumptions=()) -> bool:
        return self.solver.check(*assumptions) == self.z3.sat

    def projections(self, keys, limit: int):
        """Every assignment of ``keys`` that extends to a full solution."""
        z3 = self.z3
        for k in keys:
            if k not in self.vars:  # an entry that no equation mentions is free
                self.vars[k] = z3.Bool(f"d[{k[0]}->{k[1]}]")
        vs = [self.vars[k] for k in keys]
        if not vs:
            yield {}
            return
        self.solver.push()
        try:
            seen = 0
            while self.solver.check() == z3.sat:
                m = self.solver.model()
                vals = {k: z3.is_true(m.eval(self.vars[k], model_completion=True)) for k in keys}
                yield vals
                seen += 1
                if seen > limit:
                    raise ComplexError("too many feasible assignments in one Alexander block")
                self.solver.add(z3.Or([v != z3.BoolVal(vals[k]) for k, v in zip(keys, vs)]))
        finally:
            self.solver.pop()


def _neg(a) -> tuple:
    return tuple(-v for v in a)


@lru_cache(maxsize=8)
def resolve(diagram: HeegaardDiagram, use_symmetry: bool = True) -> Closure:
    """Homology of the hat complex with unknown entries pinned by d o d = 0.

    Ranks that agree across all feasible completions are reported exactly;
    the rest get (lo, hi) bounds in ``table.bounds`` and ``lo`` in ``ranks``.
    """
    cx = build_differential(diagram)
    if cx.certified:
        return Closure(homology(cx), {}, {}, True, False, False)
    complexes = [cx]
    coupled = True
    try:
        complexes.append(build_differential(diagram, w_only=True))
    except NotAdmissible:
        coupled = False
    system = _System(complexes)
    if not system.feasible():
        raise ComplexError("no completion of the indeterminate entries squares to zero")

    blocks = defaultdict(list)
    for g in cx.generators:
        blocks[cx.alexander[g]].append(g)
    unknown = sorted(cx.unknown_pairs(), key=lambda p: (str(p[0]), str(p[1])))
    options: dict = {}
    for a, gens in blocks.items():
        keys = [p for p in unknown if cx.alexander[p[0]] == a]
        if len(keys) > MAX_BLOCK_UNKNOWNS:
            raise ComplexError(f"{len(keys)} unknown entries in Alexander grading {a}; too many to enumerate")
        found = set()
        for vals in system.projections(keys, 1 << len(keys)):
            diff = {g: set(cx.differential[g]) for g in gens}
            for (x, y), v in vals.items():
                if v:
                    diff[x].add(y)
            found.add(_block_ranks(cx, gens, diff))
        options[a] = found

    if use_symmetry:
        for a in list(options):
            b = _neg(a)
            if b not in options:
                continue
            common = {sum(r for _, r in o) for o in options[a]} & {sum(r for _, r in o) for o in options[b]}
            options[a] = {o for o in options[a] if sum(r for _, r in o) in common}
        if any(not o for o in options.values()):
            raise ComplexError("no completion is symmetric under negating the Alexander grading")

    forced = {}
    for k in unknown:
        v = system.vars.get(k)
        if v is None:
            continue
        can_true = system.feasible([v])
        can_false = system.feasible([system.z3.Not(v)])
        if can_true != can_false:
            forced[k] = can_true

    ranks, chain, bounds = {}, {}, {}
    for a, opts in options.items():
        for g in blocks[a]:
            chain[(a, cx.maslov[g])] = chain.get((a, cx.maslov[g]), 0) + 1
        per_m = defaultdict(set)
        for o in opts:
            for m, r in o:
                per_m[m].add(r)
        for m, rs in per_m.items():
            ranks[(a, m)] = min(rs)
            if len(rs) > 1:
                bounds[(a, m)] = (min(rs), max(rs))
    status = "partial" if bounds else "resolved"
    table = HomologyTable(ranks, chain, False, bounds, False, status)
    table = _absolute(cx, table)
    return Closure(table, {a: sorted(o) for a, o in sorted(options.items())}, forced, True, coupled, use_symmetry)


def _absolute(cx: GradedComplex, table: HomologyTable) -> HomologyTable:
    """Shift to absolute Maslov gradings for knots when that is available."""
    if cx.diagram.num_components != 1:
        return table
    from .gradings import maslov_gradings

    try:
        mg = maslov_gradings(cx.diagram)
    except GradingError:
        return table
    g0 = cx.generators[0]
    shift = cx.maslov[g0] - mg.values[g0]

    def sh(d):
        return {(a, m - shift): v for (a, m), v in d.items()}

    return HomologyTable(sh(table.ranks), sh(table.chain_ranks), table.certified, sh(table.bounds), True, table.status)


def homology_table(diagram: HeegaardDiagram, use_symmetry: bool = True) -> HomologyTable:
    """Certified homology when possible, otherwise the d o d = 0 closure."""
    return resolve(diagram, use_symmetry).table
