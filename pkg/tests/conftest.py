import pytest
from hypothesis import HealthCheck, settings

from wittlab import QuotientRing

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS, key=lambda k: [int(t) if t.isdigit() else t for t in str(k).replace("+", ".+").split(".")]):
        ok, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {str(k):>5}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def ex1():
    return QuotientRing(2, "xyz", ["x^3+y^3+z^3"])


@pytest.fixture(scope="session")
def ex2():
    return QuotientRing(2, "xyz", ["z^4+x^5+y^8"])


@pytest.fixture(scope="session")
def f2xy():
    return QuotientRing(2, "xy")


@pytest.fixture(scope="session")
def f3xy():
    return QuotientRing(3, "xy")
