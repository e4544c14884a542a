"""Regenerate the bundled corpus and the extra test diagrams from plat data.

Run from the repository root: ``python3 tools/build_corpus.py``.  Needs
shapely.  The output is deterministic; the files are checked in.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from plat import PlatDiagram, heegaard, punctures, to_diagram  # noqa: E402

from hfl.diagram import validate  # noqa: E402
from hfl.io import parse, serialize  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "src" / "hfl" / "corpus"
TESTDATA = ROOT / "tests" / "data"

# Conway link point names.  Four generators are named in the text (b5 n1 s3,
# a1 m1 r1, a2 m2 r1, a4 m1 r3); the labels they pin down are fixed by
# matching gradings and domains, the rest are numbered in order of the raw
# construction index.
CONWAY_NAMES = {
    0: "s1", 1: "s2", 2: "s3",
    3: "a2", 4: "a4", 5: "a3", 6: "a1",
    7: "r2", 8: "r3", 9: "r1",
    10: "b1", 11: "b5", 12: "b2", 13: "b3", 14: "b4", 15: "b6",
    16: "m1", 17: "m3", 18: "m2",
    19: "n2", 20: "n1",
}


def two_bridge(twists, betas, basepoints, linking, name):
    return to_diagram(heegaard(PlatDiagram(twists, [0], betas, basepoints, linking)), name)


def build() -> dict:
    P2, Q2 = punctures(2)
    P4, _ = punctures(4)
    conway = PlatDiagram(
        [2, -3, -2, 3],
        [0, 2, 1],
        [("arc", 0), ("arc", 2), ("loop", 3)],
        [(P4[1], P4[2]), (P4[3], P4[0])],
        [[0, 0], [0, 0]],
    )
    names = [CONWAY_NAMES[i] for i in range(len(CONWAY_NAMES))]
    return {
        CORPUS / "unknot_g1.hfdiag": two_bridge([1, 0], [("arc", 0)], [(Q2[0], Q2[1])], [[0]], "unknot_g1"),
        CORPUS / "trefoil_g1.hfdiag": two_bridge([-3, 0], [("arc", 0)], [(Q2[0], Q2[1])], [[0]], "trefoil_g1"),
        CORPUS / "hopf_pos.hfdiag": two_bridge(
            [2, 0], [("loop", 0)], [(Q2[0], P2[1]), (P2[0], Q2[1])], [[0, 1], [1, 0]], "hopf_pos"
        ),
        CORPUS / "conway_l10n59.hfdiag": to_diagram(heegaard(conway), "conway_l10n59", names),
        TESTDATA / "trefoil_mirror.hfdiag": two_bridge(
            [3, 0], [("arc", 0)], [(Q2[0], Q2[1])], [[0]], "trefoil_mirror"
        ),
    }


HEADERS = {
    "unknot_g1": "unknot: plat closure of one half twist",
    "trefoil_g1": "right-handed trefoil (tau = 1): 2-bridge plat with twists (-3, 0)",
    "hopf_pos": "positive Hopf link: 2-bridge plat with twists (2, 0), linking number 1",
    "conway_l10n59": "Conway link L10n59, the (2,-3,-2,3) pretzel link, as a 4-plat",
    "trefoil_mirror": "left-handed trefoil (tau = -1): 2-bridge plat with twists (3, 0)",
}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--check", action="store_true", help="fail if a checked-in file differs")
    args = ap.parse_args(argv)
    stale = []
    for path, d in build().items():
        report = validate(d)
        if not report.ok:
            raise SystemExit(f"{path.name}: {report}")
        text = f"# {HEADERS[d.name]}\n" + serialize(d)
        assert parse(text, d.name) == d
        if args.check:
            if not path.exists() or path.read_text() != text:
                stale.append(path.name)
            continue
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        print(f"wrote {path.relative_to(ROOT)}")
    if stale:
        print("stale: " + ", ".join(stale))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
