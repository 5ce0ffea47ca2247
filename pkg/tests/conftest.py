import pytest

from udmkit.linalg import MatrixGF
from udmkit.udm import UdmFamily
from udmkit.gf import field_new

# The L=4, N=K=3 family over GF(3), typed in by hand.
EX22 = [
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[0, 0, 1], [0, 1, 0], [1, 0, 0]],
    [[1, 1, 1], [0, 1, 2], [0, 0, 1]],
    [[1, 2, 1], [0, 1, 1], [0, 0, 1]],
]

SMALL_FIELDS = [2, 3, 4, 5, 7, 8, 9]


@pytest.fixture
def gf3():
    return field_new(3)


@pytest.fixture
def ex22():
    F = field_new(3)
    return UdmFamily(F, tuple(MatrixGF(F, m) for m in EX22))


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[num])
