from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from idiom.fixtures import b2, c2, c3, default_corpus, m3, n5

settings.register_profile(
    "repo", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def corpus():
    return default_corpus()


@pytest.fixture
def C2():
    return c2()


@pytest.fixture
def C3():
    return c3()


@pytest.fixture
def B2():
    return b2()


@pytest.fixture
def M3():
    return m3()


@pytest.fixture
def N5():
    return n5()


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
