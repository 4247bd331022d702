import random

import pytest

from kacfpga import backend
from kacfpga.pairing import BnGroup, MockGroup

ACCEPTANCE_RESULTS = []


def record(criterion, passed, detail=""):
    ACCEPTANCE_RESULTS.append((criterion, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in sorted(ACCEPTANCE_RESULTS):
        status = {True: "PASS", False: "FAIL", None: "SKIP"}[passed]
        terminalreporter.write_line(f"{status} {criterion}: {detail}")


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


@pytest.fixture
def bn():
    return BnGroup()


@pytest.fixture
def mock():
    return MockGroup(101)


@pytest.fixture(params=["mock", "bn-real"])
def group(request):
    return MockGroup(101) if request.param == "mock" else BnGroup()


@pytest.fixture(params=backend.available())
def each_backend(request):
    with backend.using(request.param) as core:
        yield core
