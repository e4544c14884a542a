"""Freeze CLI JSON output for every bundled diagram into tests/golden.

Run from the repository root after an intended change of output:
``python3 tools/regen_golden.py``.  Review the diff before committing; the
values themselves are checked independently in the test suite.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from pathlib import Path

from hfl.cli import COMMANDS, main
from hfl.io import BUNDLED

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def cases():
    for name in BUNDLED:
        for cmd in COMMANDS:
            yield name, cmd, ["--allow-indeterminate"] if cmd == "homology" else []


def run(name: str, cmd: str, extra: list) -> dict:
    out, err = io.StringIO(), io.StringIO()
    code = main([cmd, "--bundled", name, "--format", "json", *extra], out, err)
    doc = json.loads(out.getvalue()) if out.getvalue() else None
    return {"argv": [cmd, "--bundled", name, *extra], "exit": code, "stdout": doc, "stderr": err.getvalue()}


def main_regen(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.parse_args(argv)
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, cmd, extra in cases():
        path = GOLDEN / f"{name}.{cmd}.json"
        path.write_text(json.dumps(run(name, cmd, extra), indent=2) + "\n")
        print(f"wrote {path.name}")
    return 0


if __name__ == "__main__":
    sys.exit(main_regen())
