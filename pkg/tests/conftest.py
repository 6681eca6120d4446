import pytest

from misminer.dataset import parse_fimi, parse_mis

# example dataset with A=1, B=2, C=3, D=4
EXAMPLE = "1 2 4\n1 3 4\n1 2 3 4\n2 3\n1 2 3\n"
EXAMPLE_MIS = "1 4\n2 3\n3 3\n4 1\n"


@pytest.fixture
def D():
    return parse_fimi(EXAMPLE)


@pytest.fixture
def S(D):
    return parse_mis(EXAMPLE_MIS, D)


@pytest.fixture
def idx(D):
    """Dense index of each letter item."""
    return {name: D.index_of(label) for name, label in zip("ABCD", (1, 2, 3, 4))}


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
