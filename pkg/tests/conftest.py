import random

import pytest

from jumploci import models
from jumploci.artinian import standard_rings

RING_NAMES = tuple(standard_rings())


@pytest.fixture(scope="session")
def rings():
    return standard_rings()


@pytest.fixture(scope="session")
def pairs():
    return {name: models.bundled_pair(name) for name in models.BUILDERS}


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
