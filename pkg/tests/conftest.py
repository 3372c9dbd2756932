import pytest

ACCEPTANCE_LINES: list = []


@pytest.fixture
def acceptance_log():
    """Record one summary line per acceptance criterion."""

    def log(line: str):
        print(line)
        ACCEPTANCE_LINES.append(line)

    return log


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
