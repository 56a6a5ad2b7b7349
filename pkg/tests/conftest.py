import pytest

from ubqp_lp import golden as G
from ubqp_lp.instance import UbqpInstance


@pytest.fixture
def lp3_instance():
    return UbqpInstance.from_lists(G.LP3_Q, G.LP3_B)


@pytest.fixture
def ex5_instance():
    return UbqpInstance.from_lists(G.EX5_Q, G.EX5_B)


@pytest.fixture(scope="session")
def acceptance_log(request):
    """Criterion number -> one-line verdict, printed after the run."""
    if not hasattr(request.config, "_acceptance_lines"):
        request.config._acceptance_lines = {}
    return request.config._acceptance_lines


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for k in sorted(lines):
            terminalreporter.write_line(lines[k])
