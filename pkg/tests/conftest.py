import numpy as np
import pytest

from cubecoset.coords import get_tables
from cubecoset.pruning import get_phase1, get_phase2
from cubecoset.setgraph import SetGraph
from cubecoset.twophase import get_solver


@pytest.fixture(scope="session")
def tables():
    return get_tables()


@pytest.fixture(scope="session")
def phase1(tables):
    return get_phase1()


@pytest.fixture(scope="session")
def phase2(tables):
    return get_phase2()


@pytest.fixture(scope="session")
def solver(phase1, phase2):
    return get_solver()


@pytest.fixture(scope="session")
def graph(tables):
    return SetGraph(tables)


@pytest.fixture
def rng():
    return np.random.default_rng(20080325)


_VERDICTS: list[str] = []


@pytest.fixture
def criterion():
    """Print one pass/fail line for an acceptance criterion, then assert it."""
    def record(n, ok, detail=""):
        """ok=None marks the criterion as skipped."""
        word = "SKIP" if ok is None else "PASS" if ok else "FAIL"
        line = f"criterion {n}: {word}  {detail}".rstrip()
        print(line)
        _VERDICTS.append(line)
        if ok is None:
            pytest.skip(detail)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in _VERDICTS:
            terminalreporter.write_line(line)
