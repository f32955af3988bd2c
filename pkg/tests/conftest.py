import pytest

from orbvar.analysis import Lab

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def lab():
    return Lab()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
