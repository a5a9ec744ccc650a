from pathlib import Path

import pytest

from omlcat.oml import boolean_lattice, chain2, mo_lattice, o6_lattice, trivial_lattice

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def corpus():
    return {"0": trivial_lattice(), "2": chain2(), "B2": boolean_lattice(2), "B3": boolean_lattice(3),
            "MO2": mo_lattice(2), "MO3": mo_lattice(3)}


@pytest.fixture(scope="session")
def small(corpus):
    return {k: corpus[k] for k in ("2", "B2", "MO2")}


@pytest.fixture(scope="session")
def o6():
    return o6_lattice()


# acceptance results, printed once at the end of the run
RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS):
            terminalreporter.write_line(line)
