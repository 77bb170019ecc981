import pytest

from heckesign.forms_data import delta_expansion, weight16_expansion


@pytest.fixture(scope="session")
def tau_table():
    return delta_expansion(10**4)


@pytest.fixture(scope="session")
def w16_table():
    return weight16_expansion(10**4)


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion."""

    def record(number, ok, detail):
        ACCEPTANCE_LINES.append(f"AC{number:<2} {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
