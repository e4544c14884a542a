from __future__ import annotations

import csv
import io
import json
import sys

import pytest
from conftest import DATA, GOLDEN

from hfl.cli import COMMANDS, SCHEMA, main
from hfl.io import BUNDLED

sys.path.insert(0, str(GOLDEN.parent.parent / "tools"))
from regen_golden import cases, run  # noqa: E402


def hfl(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name,cmd,extra", list(cases()))
def test_golden_json(name, cmd, extra):
    frozen = json.loads((GOLDEN / f"{name}.{cmd}.json").read_text())
    assert run(name, cmd, extra) == frozen


def test_golden_files_cover_every_case():
    assert {p.name for p in GOLDEN.glob("*.json")} == {f"{n}.{c}.json" for n, c, _ in cases()}


def test_generator_count_text():
    code, out, _ = hfl("generators", "--bundled", "conway_l10n59")
    assert code == 0 and out == "72 generators (36 + 36 by type)\n"


def test_json_envelope():
    code, out, _ = hfl("alexander", "--bundled", "trefoil_g1", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["schema"] == SCHEMA and doc["command"] == "alexander" and doc["diagram"] == "trefoil_g1"
    assert doc["polynomial"] == "T^-1 - 1 + T"


def test_fractions_are_strings():
    _, out, _ = hfl("gradings", "--bundled", "hopf_pos", "--format", "json")
    gradings = {tuple(g["alexander"]) for g in json.loads(out)["generators"]}
    assert ("1/2", "1/2") in gradings or ("-1/2", "1/2") in gradings


def test_indeterminate_homology_is_gated():
    code, out, err = hfl("homology", "--bundled", "conway_l10n59", "--format", "json")
    assert code == 1 and out == ""
    assert "indeterminate homology" in err and "--allow-indeterminate" in err
    code, out, _ = hfl("homology", "--bundled", "conway_l10n59", "--format", "json", "--allow-indeterminate")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "partial"
    assert {"grading": [1, 1], "rank": 2} in doc["totals"]
    assert {"grading": [0, 0], "rank": 0, "bounds": [0, 2]} in doc["totals"]


def test_certified_homology_needs_no_flag():
    code, out, _ = hfl("homology", "--bundled", "trefoil_g1")
    assert code == 0 and "every index-one domain certified" in out


def test_polytope_text():
    code, out, _ = hfl("polytope", "--bundled", "conway_l10n59")
    assert code == 0
    assert "x(1, 0) = 3" in out and "x(0, 1) = 3" in out


def test_csv_output():
    code, out, _ = hfl("homology", "--bundled", "trefoil_g1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["alexander", "maslov", "rank", "lower", "upper"]
    assert ["1", "0", "1", "1", "1"] in rows


def test_verbose_lists_provenance():
    code, out, _ = hfl("homology", "--bundled", "trefoil_g1", "-v")
    assert code == 0 and "differential:" in out


@pytest.mark.parametrize(
    "argv,code",
    [
        (["tau", "--bundled", "trefoil_g1"], 0),
        (["genus", "--bundled", "hopf_pos"], 1),
        (["polytope", "--bundled", "unknot_g1"], 1),
        (["homology", str(DATA / "inadmissible_torus.hfdiag")], 1),
        (["validate", "--bundled", "nope"], 2),
        (["frobnicate"], 2),
        (["genus"], 2),
        (["genus", "/no/such/file.hfdiag"], 2),
    ],
)
def test_exit_codes(argv, code):
    assert hfl(*argv)[0] == code


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.hfdiag"
    bad.write_text("hfdiag 1\nsurface genus x components 1\n")
    code, _, err = hfl("validate", str(bad))
    assert code == 2 and "parse error" in err and "line 2" in err


def test_file_path_matches_bundled():
    from hfl.io import corpus_dir

    for name in BUNDLED:
        a = hfl("alexander", str(corpus_dir() / f"{name}.hfdiag"), "--format", "json")
        b = hfl("alexander", "--bundled", name, "--format", "json")
        assert a[0] == b[0] and json.loads(a[1])["terms"] == json.loads(b[1])["terms"]


def test_output_is_deterministic():
    for cmd in COMMANDS:
        assert hfl(cmd, "--bundled", "hopf_pos", "--format", "json") == hfl(cmd, "--bundled", "hopf_pos", "--format", "json")


def test_rank_figure(tmp_path):
    pytest.importorskip("matplotlib")
    png = tmp_path / "ranks.png"
    code, _, _ = hfl("homology", "--bundled", "conway_l10n59", "--allow-indeterminate", "--figure", str(png))
    assert code == 0 and png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    code, _, err = hfl("homology", "--bundled", "trefoil_g1", "--figure", str(tmp_path / "t.png"))
    assert code == 0


def test_corpus_dir_override(tmp_path, monkeypatch):
    from hfl.io import corpus_dir

    (tmp_path / "trefoil_g1.hfdiag").write_text((corpus_dir() / "unknot_g1.hfdiag").read_text())
    monkeypatch.setenv("HFL_CORPUS_DIR", str(tmp_path))
    code, out, _ = hfl("genus", "--bundled", "trefoil_g1")
    assert code == 0 and out == "0\n"
