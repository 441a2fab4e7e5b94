import pytest

from ecot.config import EXAMPLE_CURVE, example_config
from ecot.oracle.table import enumerate_group


@pytest.fixture(scope="session")
def curve23():
    return EXAMPLE_CURVE


@pytest.fixture(scope="session")
def table23():
    return enumerate_group(EXAMPLE_CURVE)


@pytest.fixture(scope="session")
def cfg23():
    return example_config()


# lines recorded by the acceptance suite, repeated at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
