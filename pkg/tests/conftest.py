import os

os.environ.setdefault("GALCORE_CHECK", "1")

import pytest

from galcore.context import FormalContext
from galcore.galois import GaloisConnection
from galcore.poset import Poset

DATA = os.path.join(os.path.dirname(__file__), "data")


def chain(n):
    return Poset.chain(n, [str(i + 1) for i in range(n)])


def chain_example():
    """Two connections between a 3-chain and a 4-chain, labelled 1.. from the bottom."""
    P, Q = chain(3), chain(4)
    gc1 = GaloisConnection(P, Q, [3, 1, 1], [2, 2, 0, 0])
    gc2 = GaloisConnection(P, Q, [3, 2, 0], [2, 1, 1, 0])
    return gc1, gc2


def diamond_example():
    """Two perfect connections on the diamond: f fixes a and b, f' swaps them."""
    D = Poset.diamond()
    return GaloisConnection(D, D, [3, 1, 2, 0], [3, 1, 2, 0]), GaloisConnection(D, D, [3, 2, 1, 0], [3, 2, 1, 0])


def k1():
    return FormalContext.from_pairs(3, 3, [(0, 0), (0, 1), (1, 1), (2, 2)])


@pytest.fixture
def chain_pair():
    return chain_example()


@pytest.fixture
def diamond_pair():
    return diamond_example()


@pytest.fixture
def ctx_k1():
    return k1()


@pytest.fixture
def data_dir():
    return DATA


# one summary line per acceptance criterion

_criteria: dict[int, tuple[str, str, float]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    name = item.name
    if "test_acceptance" not in item.nodeid or not name.startswith("test_criterion_"):
        return
    num = int(name.split("_")[2])
    if report.when == "call" or (report.when == "setup" and report.failed):
        status = "PASS" if report.passed else "FAIL"
        _criteria[num] = (item.function.__doc__ or name).strip().splitlines()[0], status, report.duration


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        text, status, secs = _criteria[num]
        terminalreporter.write_line(f"criterion {num:2d}: {status}  ({secs:6.2f}s)  {text}")
