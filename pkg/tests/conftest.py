import pytest

from excmut.quiver import Quiver, d4, linear_a, triangle_quiver
from excmut.repcat import injective, projective, simple


def std(q):
    """``{"P1": ..., "S1": ..., "I1": ...}`` with 1-based names."""
    out = {}
    for i in range(q.n):
        out[f"P{i + 1}"] = projective(q, i)
        out[f"I{i + 1}"] = injective(q, i)
        out[f"S{i + 1}"] = simple(q, i)
    return out


@pytest.fixture
def a2():
    return linear_a(2)


@pytest.fixture
def a3():
    return linear_a(3)


@pytest.fixture
def tri():
    return triangle_quiver()


# the Dynkin quivers used by the exhaustive suites
DYNKIN = {
    "A2": linear_a(2),
    "A3": linear_a(3),
    "A3alt": Quiver.from_one_based(3, [(1, 2), (3, 2)]),
    "D4": d4(),
}


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
