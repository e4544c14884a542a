"""Command-line front end: ``hfl <command> (PATH | --bundled NAME)``.

Exit codes: 0 success, 1 a mathematical precondition failed (invalid or
inadmissible diagram, indeterminate complex), 2 usage or parse error.
Output is deterministic; the JSON layout is described in docs/json_schema.md.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .applications import (
    ApplicationError,
    dual_thurston_polytope,
    euler_polynomial,
    hfl_hull,
    seifert_genus,
    thurston_norm,
)
from .closure import resolve
from .complex import ComplexError, build_differential, tau
from .diagram import validate
from .domains import NotAdmissible
from .generators import count_by_type, enumerate_generators, generator_sign
from .gradings import GradingError, absolute_alexander, maslov_gradings
from .io import BUNDLED, DiagramParseError, load, load_bundled

SCHEMA = "hfl-report/1"
COMMANDS = ("validate", "generators", "gradings", "homology", "alexander", "genus", "tau", "polytope")


class UsageError(Exception):
    pass


def _num(x):
    """Exact JSON number: int when integral, else the string "p/q"."""
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _vec(v) -> list:
    return [_num(x) for x in v]


def _fmt(v) -> str:
    return "(" + ", ".join(str(_num(x)) for x in v) + ")"


# --- command implementations: each returns (payload, text lines, csv rows) ---


def cmd_validate(d, args):
    rep = validate(d)
    payload = {"ok": rep.ok, "errors": rep.errors, "warnings": rep.warnings}
    text = [f"{d.name or 'diagram'}: {'valid' if rep.ok else 'INVALID'}"] + [
        f"  error: {e}" for e in rep.errors
    ] + [f"  warning: {w}" for w in rep.warnings]
    rows = [["kind", "message"]] + [["error", e] for e in rep.errors] + [["warning", w] for w in rep.warnings]
    return payload, text, rows, 0 if rep.ok else 1


def _require_valid(d) -> None:
    rep = validate(d)
    if not rep.ok:
        raise GradingError("invalid diagram: " + "; ".join(rep.errors))


def cmd_generators(d, args):
    _require_valid(d)
    gens = enumerate_generators(d)
    types = count_by_type(d)
    split = " + ".join(str(n) for n in types.values())
    payload = {
        "count": len(gens),
        "by_type": [{"matching": list(m), "count": n} for m, n in types.items()],
        "generators": [{"points": list(g.points), "sign": generator_sign(d, g)} for g in gens],
    }
    text = [f"{len(gens)} generators ({split} by type)"]
    if args.verbose:
        text += [f"  {g}  sign {generator_sign(d, g):+d}" for g in gens]
    rows = [["points", "matching", "sign"]] + [
        [" ".join(g.points), " ".join(map(str, g.matching)), generator_sign(d, g)] for g in gens
    ]
    return payload, text, rows, 0


def cmd_gradings(d, args):
    _require_valid(d)
    alex = absolute_alexander(d)
    mg = maslov_gradings(d)
    gens = enumerate_generators(d)
    payload = {
        "maslov_absolute": mg.absolute,
        "maslov_anchor": list(mg.anchor.points) if mg.anchor else None,
        "generators": [{"points": list(g.points), "alexander": _vec(alex[g]), "maslov": mg.values[g]} for g in gens],
    }
    kind = "absolute" if mg.absolute else f"relative to {mg.anchor}"
    text = [f"Maslov grading {kind}"] + [f"  {g}  A = {_fmt(alex[g])}  M = {mg.values[g]}" for g in gens]
    rows = [["points", "alexander", "maslov"]] + [
        [" ".join(g.points), " ".join(str(_num(x)) for x in alex[g]), mg.values[g]] for g in gens
    ]
    return payload, text, rows, 0


def _homology(d, args):
    _require_valid(d)
    cx = build_differential(d)
    closure = resolve(d)
    h = closure.table
    if not h.exact and not args.allow_indeterminate:
        open_keys = ", ".join(f"A={_fmt(a)} M={m}" for a, m in sorted(h.bounds))
        raise ComplexError(
            f"indeterminate homology: {len(cx.indeterminate)} index-one domains are not certified and "
            f"d o d = 0 leaves {open_keys} undetermined (rerun with --allow-indeterminate for bounds)"
        )
    return cx, closure, h


def cmd_homology(d, args):
    cx, closure, h = _homology(d, args)
    entries = []
    for (a, m), r in sorted(h.ranks.items()):
        lo, hi = h.bounds.get((a, m), (r, r))
        if hi:
            e = {"grading": _vec(a), "maslov": m, "rank": r}
            if lo != hi:
                e["bounds"] = [lo, hi]
            entries.append(e)
    totals = []
    for a in h.totals():
        lo, hi = h.total_bounds(a)
        if hi:
            e = {"grading": _vec(a), "rank": lo}
            if lo != hi:
                e["bounds"] = [lo, hi]
            totals.append(e)
    payload = {
        "status": h.status,
        "maslov_absolute": h.maslov_absolute,
        "totals": totals,
        "entries": entries,
        "indeterminate_domains": len(cx.indeterminate),
    }
    notes = {
        "certified": "every index-one domain certified",
        "resolved": "uncertified entries pinned down by d o d = 0",
        "partial": "PARTIAL: some ranks only bounded",
    }
    text = [f"HFL-hat ({notes[h.status]})"]
    for a in h.totals():
        lo, hi = h.total_bounds(a)
        if hi:
            per = ", ".join(
                f"M={m}:{rr}" if (aa, m) not in h.bounds else f"M={m}:{h.bounds[(aa, m)][0]}..{h.bounds[(aa, m)][1]}"
                for (aa, m), rr in sorted(h.ranks.items())
                if aa == a and (rr or (aa, m) in h.bounds)
            )
            rank = str(lo) if lo == hi else f"{lo}..{hi}"
            text.append(f"  A = {_fmt(a)}  rank {rank}  [{per}]")
    if args.verbose:
        text.append("differential:")
        for (x, y), classes in sorted(cx.provenance.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1]))):
            text.append(f"  {x} -> {y}: " + ", ".join(str(c) for c in classes))
        for (x, y), v in sorted(closure.forced.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1]))):
            text.append(f"  forced by d o d = 0: {x} -> {y} is {int(v)}")
    rows = [["alexander", "maslov", "rank", "lower", "upper"]]
    for (a, m), r in sorted(h.ranks.items()):
        lo, hi = h.bounds.get((a, m), (r, r))
        if hi:
            rows.append([" ".join(str(_num(x)) for x in a), m, r, lo, hi])
    if args.figure:
        _rank_figure(h, args.figure, d.num_components)
    return payload, text, rows, 0


def _rank_figure(h, path: str, ell: int) -> None:
    """Rank grid of HFL-hat by Alexander grading (no diagrams are drawn)."""
    if ell > 2:
        raise UsageError("--figure supports one or two components")
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    totals = {a: h.total_bounds(a) for a in h.totals() if h.total_bounds(a)[1]}
    fig, ax = plt.subplots(figsize=(4, 4))
    for a, r in totals.items():
        x = float(a[0])
        y = float(a[1]) if ell == 2 else 0.0
        label = str(r[0]) if r[0] == r[1] else f"{r[0]}-{r[1]}"
        ax.text(x, y, label, ha="center", va="center", fontsize=12)
    xs = [float(a[0]) for a in totals] or [0.0]
    ys = [float(a[1]) for a in totals] if ell == 2 else [0.0]
    ax.set_xlim(min(xs) - 1, max(xs) + 1)
    ax.set_ylim(min(ys) - 1, max(ys) + 1)
    ax.set_xlabel("A1" if ell == 2 else "A")
    if ell == 2:
        ax.set_ylabel("A2")
    ax.grid(True, linestyle=":")
    ax.set_aspect("equal")
    fig.savefig(path, metadata={"Software": None} if path.endswith(".png") else None)
    plt.close(fig)


def cmd_alexander(d, args):
    _require_valid(d)
    p = euler_polynomial(d)
    terms = [{"exponent": _vec(k), "coefficient": c} for k, c in sorted(p.as_dict().items())]
    payload = {"polynomial": str(p), "terms": terms, "symmetry_sign": p.symmetry_sign()}
    rows = [["exponent", "coefficient"]] + [[" ".join(str(_num(x)) for x in k), c] for k, c in sorted(p.as_dict().items())]
    return payload, [str(p)], rows, 0


def cmd_genus(d, args):
    _require_valid(d)
    g = seifert_genus(d)
    return {"genus": g}, [str(g)], [["genus"], [g]], 0


def cmd_tau(d, args):
    _require_valid(d)
    t = tau(d)
    return {"tau": t}, [str(t)], [["tau"], [t]], 0


def cmd_polytope(d, args):
    _require_valid(d)
    hull = hfl_hull(d)
    dual = dual_thurston_polytope(d)
    ell = d.num_components
    basis = [tuple(int(i == j) for j in range(ell)) for i in range(ell)]
    norms = [{"class": list(h), "norm": _num(thurston_norm(hull, h))} for h in basis]
    payload = {
        "hull": [_vec(v) for v in hull.vertices],
        "dual_thurston": [_vec(v) for v in dual.vertices],
        "norms": norms,
    }
    text = ["HFL hull vertices: " + " ".join(_fmt(v) for v in hull.vertices)]
    text.append("dual Thurston polytope vertices: " + " ".join(_fmt(v) for v in dual.vertices))
    text += [f"  x{_fmt(n['class'])} = {n['norm']}" for n in norms]
    rows = [["polytope", "vertex"]] + [["hull", " ".join(str(_num(x)) for x in v)] for v in hull.vertices]
    rows += [["dual_thurston", " ".join(str(_num(x)) for x in v)] for v in dual.vertices]
    return payload, text, rows, 0


HANDLERS = {
    "validate": cmd_validate,
    "generators": cmd_generators,
    "gradings": cmd_gradings,
    "homology": cmd_homology,
    "alexander": cmd_alexander,
    "genus": cmd_genus,
    "tau": cmd_tau,
    "polytope": cmd_polytope,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hfl", description="Hat link Floer homology from multi-pointed Heegaard diagrams.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    helps = {
        "validate": "check the diagram invariants",
        "generators": "count and list generators",
        "gradings": "Alexander and Maslov grading of every generator",
        "homology": "ranks of HFL-hat per grading",
        "alexander": "Euler characteristic (Alexander) polynomial",
        "genus": "Seifert genus of a knot",
        "tau": "tau invariant of a knot (GF(2) version)",
        "polytope": "HFL hull and dual Thurston polytope",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("path", nargs="?", help="diagram file (.hfdiag)")
        src.add_argument("--bundled", choices=BUNDLED, help="use a bundled diagram")
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("-v", "--verbose", action="store_true", help="more detail in text output")
        p.add_argument("--allow-indeterminate", action="store_true", help="emit partial homology with bounds")
        if name == "homology":
            p.add_argument("--figure", metavar="PATH", help="write a rank grid image (matplotlib)")
        else:
            p.set_defaults(figure=None)
    return parser


def _emit(args, d, payload, text, rows, out) -> None:
    if args.format == "json":
        doc = {"schema": SCHEMA, "command": args.command, "diagram": d.name, **payload}
        out.write(json.dumps(doc, indent=2, sort_keys=False) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        out.write(buf.getvalue())
    else:
        out.write("\n".join(text) + "\n")


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        d = load_bundled(args.bundled) if args.bundled else load(args.path)
    except DiagramParseError as exc:
        err.write(f"hfl: parse error: {exc}\n")
        return 2
    except (OSError, KeyError) as exc:
        err.write(f"hfl: cannot read diagram: {exc}\n")
        return 2
    try:
        payload, text, rows, code = HANDLERS[args.command](d, args)
    except UsageError as exc:
        err.write(f"hfl: {exc}\n")
        return 2
    except (NotAdmissible, ComplexError, GradingError, ApplicationError) as exc:
        err.write(f"hfl: {exc}\n")
        return 1
    _emit(args, d, payload, text, rows, out)
    return code


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
