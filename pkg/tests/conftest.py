import pytest

from blackwell import reference
from blackwell.channel import DecisionProblem, Prior, make_channel


@pytest.fixture
def nested_kappa():
    return make_channel(reference.nested_kappa())


@pytest.fixture
def nested_mu():
    return make_channel(reference.nested_mu())


@pytest.fixture
def penalty_problem():
    return DecisionProblem(Prior.uniform(3), reference.penalty_reward())


# one summary line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
