import pytest

CRITERIA = []


@pytest.fixture
def record_criterion():
    def record(number, passed, summary):
        CRITERIA.append(f"CRITERION {number}: {'PASS' if passed is True else passed if passed else 'FAIL'}  {summary}")
    return record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA):
            terminalreporter.write_line(line)
