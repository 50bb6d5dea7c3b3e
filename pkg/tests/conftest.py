import numpy as np
import pytest
from hypothesis import settings

from hypercube_decomp import CubeSpec, RepresentedCycle, SplitDecomposition

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def b(s: str) -> int:
    return int(s, 2)


def bits(text: str) -> list[int]:
    return [b(t) for t in text.replace(",", " ").split()]


PAIR_C = [
    bits("0000 0100 0101 0001 0011 0111 0110 1110 1100 1000 1001 1101 1111 1011 1010 0010"),
    bits("0000 0001 1001 1011 0011 0010 0110 0100 1100 1101 0101 0111 1111 1110 1010 1000"),
]
PAIR_S = [
    bits("0000 0101 0011 0110 1100 1001 1111 1010"),
    bits("0001 1011 0010 0100 1101 0111 1110 1000"),
]
QUAD_C = [
    bits("0000 0100 0101 1101 1111 1011 1010 0010"),
    bits("1100 1000 1001 0001 0011 0111 0110 1110"),
    bits("0100 1100 1101 1001 1011 0011 0010 0110"),
    bits("1000 0000 0001 0101 0111 1111 1110 1010"),
]
QUAD_S = [
    bits("0000 0101 1111 1010"),
    bits("1100 1001 0011 0110"),
    bits("0100 1101 1011 0010"),
    bits("1000 0001 0111 1110"),
]


def certificate(cycles, rep_sets, set_of, a, subset_of, b_) -> SplitDecomposition:
    reps = [RepresentedCycle.from_vertices(c, s).representing for c, s in zip(cycles, rep_sets)]
    return SplitDecomposition(CubeSpec(4), np.array(cycles), np.array(reps), set_of, a, subset_of, b_, dr=True)


@pytest.fixture
def q4_pair() -> SplitDecomposition:
    return certificate(PAIR_C, PAIR_S, [0, 0], 2, [0, 1], 1)


@pytest.fixture
def q4_quad() -> SplitDecomposition:
    return certificate(QUAD_C, QUAD_S, [0, 0, 0, 0], 4, [0, 0, 1, 1], 2)


@pytest.fixture(autouse=True)
def isolated_store(tmp_path, monkeypatch):
    monkeypatch.setenv("HCDECOMP_BASE_DIR", str(tmp_path / "bases"))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
