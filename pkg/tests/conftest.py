from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from hfl.io import BUNDLED, load, load_bundled

TESTS = Path(__file__).resolve().parent
DATA = TESTS / "data"
GOLDEN = TESTS / "golden"
sys.path.insert(0, str(TESTS))  # oracles.py

settings.register_profile(
    "hfl", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture]
)
settings.load_profile("hfl")


@pytest.fixture(scope="session")
def bundled():
    return {name: load_bundled(name) for name in BUNDLED}


@pytest.fixture(scope="session")
def conway(bundled):
    return bundled["conway_l10n59"]


@pytest.fixture(scope="session")
def trefoil(bundled):
    return bundled["trefoil_g1"]


@pytest.fixture(scope="session")
def unknot(bundled):
    return bundled["unknot_g1"]


@pytest.fixture(scope="session")
def hopf(bundled):
    return bundled["hopf_pos"]


@pytest.fixture(scope="session")
def trefoil_mirror():
    return load(DATA / "trefoil_mirror.hfdiag")


@pytest.fixture(scope="session")
def inadmissible():
    return load(DATA / "inadmissible_torus.hfdiag")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, line = RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {line}")
