import random

import pytest
from hypothesis import settings

from g2contact.algebra.ratfunc import rf_var
from g2contact.contact import catalog

settings.register_profile("g2contact", max_examples=40, deadline=None)
settings.load_profile("g2contact")


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def standard():
    return catalog("standard")


@pytest.fixture(scope="session")
def noth1():
    return catalog("noth1")


@pytest.fixture(scope="session")
def noth2():
    return catalog("noth2")


@pytest.fixture
def r():
    return rf_var("r")


@pytest.fixture
def t():
    return rf_var("t")


_ACCEPTANCE = pytest.StashKey()


@pytest.fixture
def acceptance_log(request):
    """Collects one verdict line per acceptance criterion for the terminal summary."""
    return request.config.stash.setdefault(_ACCEPTANCE, [])


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
