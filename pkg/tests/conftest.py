import pytest

from monomial_codes.field import build_field

# (criterion number, verdict, detail) rows filled in by test_acceptance.py
ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def f35():
    return build_field(3, 5)


@pytest.fixture(scope="session")
def f36():
    return build_field(3, 6)


@pytest.fixture(scope="session")
def f39():
    return build_field(3, 9)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number, verdict, detail in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"criterion {number:2d}: {verdict}  {detail}")
