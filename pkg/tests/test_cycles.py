import numpy as np
import pytest
from hypothesis import given, strategies as st

from hypercube_decomp import (
    CubeSpec,
    Cycle,
    ParameterError,
    RepresentedCycle,
    is_distance_regular,
    representing_gaps,
    split_cycle_into_paths,
    validate_cycle_in_cube,
)
from hypercube_decomp.cycles import canonical_rotation
from conftest import PAIR_C, PAIR_S


def test_validate_examples():
    assert validate_cycle_in_cube(CubeSpec(2), Cycle((0, 1, 3, 2))) is None
    assert validate_cycle_in_cube(CubeSpec(4), PAIR_C[0]) is None
    bad = validate_cycle_in_cube(CubeSpec(2), (0b00, 0b11, 0b01, 0b10))
    assert bad.index == 0 and "adjacent" in bad.reason
    rep = validate_cycle_in_cube(CubeSpec(2), (0, 1, 0, 1))
    assert rep.index == 2 and "repeats" in rep.reason
    assert "outside" in validate_cycle_in_cube(CubeSpec(2), (0, 4)).reason


def test_gaps_examples():
    assert representing_gaps(RepresentedCycle.full((0, 1, 3, 2))) == [1, 1, 1, 1]
    q4_pair = RepresentedCycle.from_vertices(PAIR_C[0], PAIR_S[0])
    assert representing_gaps(q4_pair) == [2] * 8 and is_distance_regular(q4_pair)
    uneven = RepresentedCycle(Cycle(tuple(range(10))), (0, 1, 4, 5, 6, 8))
    assert representing_gaps(uneven) == [1, 3, 1, 1, 2, 2]
    assert not is_distance_regular(uneven)
    with pytest.raises(ParameterError):
        representing_gaps(RepresentedCycle(Cycle((0, 1, 3, 2))))


@given(st.integers(3, 40), st.data())
def test_gaps_sum_to_length(length, data):
    pos = data.draw(st.sets(st.integers(0, length - 1), min_size=1))
    rc = RepresentedCycle(Cycle(tuple(range(length))), tuple(pos))
    assert sum(representing_gaps(rc)) == length


def test_representing_validation():
    with pytest.raises(ParameterError):
        RepresentedCycle(Cycle((0, 1, 3, 2)), (0, 0))
    with pytest.raises(ParameterError):
        RepresentedCycle(Cycle((0, 1, 3, 2)), (4,))
    with pytest.raises(ParameterError):
        RepresentedCycle.from_vertices((0, 1, 3, 2), (7,))


def test_split_examples():
    assert split_cycle_into_paths(Cycle((0, 1, 3, 2)), 2).tolist() == [[0, 1, 3], [3, 2, 0]]
    assert split_cycle_into_paths(PAIR_C[0], 4).shape == (4, 5)
    for ell in (0, 3, 16):
        with pytest.raises(ParameterError):
            split_cycle_into_paths(PAIR_C[0], ell)


@given(st.sampled_from([1, 2, 4, 8]), st.integers(0, 15))
def test_split_preserves_edges(ell, shift):
    cyc = np.roll(np.array(PAIR_C[1]), shift)
    paths = split_cycle_into_paths(cyc, ell)
    cut = sorted(frozenset(p[i:i + 2]) for p in paths.tolist() for i in range(ell))
    whole = sorted(frozenset((cyc[i], cyc[(i + 1) % 16])) for i in range(16))
    assert cut == whole


def test_canonical_rotation_keeps_reps():
    cyc = np.array([np.roll(PAIR_C[0], 5)[::-1]])
    rep = np.array([sorted(np.flatnonzero(np.isin(cyc[0], PAIR_S[0])))])
    out, new = canonical_rotation(cyc, rep)
    assert out[0, 0] == 0 and out[0, 1] < out[0, -1]
    assert set(out[0, new[0]].tolist()) == set(PAIR_S[0])
    assert sorted(out[0].tolist()) == sorted(PAIR_C[0])
