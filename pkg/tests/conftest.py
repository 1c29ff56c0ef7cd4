import pytest
from hypothesis import HealthCheck, settings

from sfcat.suites import make_category

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# criterion number -> (passed, note); filled by test_acceptance.py
ACCEPTANCE: dict = {}


@pytest.fixture(scope="session")
def cat1():
    return make_category(1)[0]


@pytest.fixture(scope="session")
def zoo1(cat1):
    return cat1.zoo()


@pytest.fixture(scope="session")
def cat2():
    return make_category(2)[0]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, note = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {note}")
