import pytest

from dickmanlab.dickman import build_rho_table

# One line per acceptance criterion, echoed in the terminal summary so the
# pass/fail record survives pytest's output capture.
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def table():
    return build_rho_table(x_max=30.0, step=1e-3)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
