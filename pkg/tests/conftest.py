import sys
from pathlib import Path

import pytest

from hypercover.generators import random_instances
from hypercover.hypergraph import Hypergraph
from hypercover.permutation import Permutation
from hypercover.voltage import VoltageAssignment

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).resolve().parent.parent / "data"
T12 = Permutation.from_cycles(2, (1, 2))


def fixture_a():
    return Hypergraph(3, ["1", "2", "3", "4"], [["1", "2", "3"], ["2", "3", "4"]])


def fixture_b():
    return Hypergraph(
        4, ["1", "2", "3", "4", "5", "6"], [["1", "2", "3", "4"], ["3", "4", "5", "6"], ["5", "6", "1", "2"]]
    )


def phi_a(H=None):
    return VoltageAssignment(2, H or fixture_a(), {(0, "2"): T12})


def phi_b(H=None):
    return VoltageAssignment(2, H or fixture_b(), {(0, "3"): T12, (0, "4"): T12})


@pytest.fixture
def A():
    return fixture_a()


@pytest.fixture
def B():
    return fixture_b()


@pytest.fixture
def phiA():
    return phi_a()


@pytest.fixture
def phiB():
    return phi_b()


@pytest.fixture(scope="session")
def random_suite():
    """200 seeded instances with connected covers (n <= 7, m in {3,4,5}, k in {2,3})."""
    return random_instances(200, base_seed=1000)


@pytest.fixture(scope="session")
def random_suite_any():
    """200 seeded instances whose covers may be disconnected."""
    return random_instances(200, base_seed=5000, connected_cover=False)


# criterion number -> (title, passed), filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}")
