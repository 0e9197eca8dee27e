import pytest

from rangesub.graph import fixture_g5

import helpers


@pytest.fixture
def g5():
    return fixture_g5()


def pytest_terminal_summary(terminalreporter):
    if not helpers.ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(helpers.ACCEPTANCE):
        status, title, detail = helpers.ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num} {status}: {title} ({detail})")
