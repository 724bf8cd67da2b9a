import pytest

from instances import ACCEPTANCE_LINES, line


@pytest.fixture
def line3():
    return line(0, 1, 3)


@pytest.fixture
def line4():
    return line(0, 1, 1.5, 3)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for text in ACCEPTANCE_LINES:
            terminalreporter.write_line(text)
