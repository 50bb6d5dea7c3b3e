from collections import Counter

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from hypercube_decomp import (
    Cycle,
    ParameterError,
    RepresentedCycle,
    SubdividedTorus,
    WiggleParams,
    allows_k_wiggle,
    anchored_product,
    k_wiggle_subdivided,
    k_wiggle_torus,
    underlying_torus,
)
from hypercube_decomp.cycles import representing_gaps
from hypercube_decomp.torus_wiggle import (
    repsets_kwiggle,
    repsets_scaled,
    repsets_subdivided,
    scaled_positions,
    wiggle_edge_ids,
)


def rc(length, reps):
    return RepresentedCycle(Cycle(tuple(range(length))), tuple(reps))


def torus_edge(a, b, n, m):
    (i1, j1), (i2, j2) = a, b
    if j1 == j2:
        return ("V", i1 if (i1 + 1) % n == i2 else i2, j1)
    assert i1 == i2
    return ("H", i1, j1 if (j1 + 1) % m == j2 else j2)


@st.composite
def wiggle_shapes(draw, limit=12):
    k = draw(st.integers(2, 5))
    n = k * draw(st.integers(1, max(1, limit // k)))
    m = k + 2 * draw(st.integers(0, 4))
    return n, m, k


@pytest.mark.parametrize(
    "k, n, m, ok", [(2, 12, 12, True), (3, 12, 11, True), (3, 12, 12, False), (2, 5, 4, False), (4, 8, 2, False)]
)
def test_allows(k, n, m, ok):
    assert allows_k_wiggle(WiggleParams(k, n, m)) is ok


@pytest.mark.parametrize("n, m, k, length", [(12, 12, 2, 144), (12, 11, 3, 88), (4, 4, 2, 16)])
def test_wiggle_examples(n, m, k, length):
    cycles = k_wiggle_torus(n, m, k)
    assert [len(c) for c in cycles] == [length] * k
    edges = [torus_edge(c.vertices[i], c.vertices[(i + 1) % len(c)], n, m) for c in cycles for i in range(len(c))]
    assert len(set(edges)) == len(edges) == 2 * n * m


def test_wiggle_rejects_parity():
    with pytest.raises(ParameterError):
        k_wiggle_torus(12, 12, 3)


@given(wiggle_shapes())
def test_wiggle_partition_and_translation(shape):
    n, m, k = shape
    ids = wiggle_edge_ids(n, m, k)
    assert sorted(ids.ravel().tolist()) == list(range(2 * n * m))
    cycles = k_wiggle_torus(n, m, k)
    visits = Counter(v for c in cycles for v in c.vertices)
    assert set(visits.values()) == {2} and len(visits) == n * m
    for t, c in enumerate(cycles):
        assert len(set(c.vertices)) == len(c)
        shifted = {((i + t) % n, j) for i, j in cycles[0].vertices}
        assert shifted == set(c.vertices)


def test_anchored_product_small():
    t = anchored_product(rc(4, (0, 1)), rc(10, (0, 1, 4, 5, 6, 8)))
    assert t.edge_count == 44 == len(set(t.edges()))
    assert t.underlying_shape == (2, 6)
    for i in range(4):
        for j in range(10):
            deg = t.degree(i, j)
            assert (deg == 4) == (i in (0, 1) and j in (0, 1, 4, 5, 6, 8))
    assert len(t.vertices()) == 2 * 10 + 6 * 4 - 2 * 6


def test_anchored_full_is_torus():
    t = anchored_product(RepresentedCycle.full(range(4)), RepresentedCycle.full(range(4)))
    assert t.edge_count == 32 and all(t.degree(i, j) == 4 for i in range(4) for j in range(4))
    with pytest.raises(ParameterError):
        anchored_product(rc(4, ()), rc(4, (0,)))


def test_underlying_maps():
    t = anchored_product(rc(4, (0, 1)), rc(10, (0, 1, 4, 5, 6, 8)))
    u = underlying_torus(t)
    assert (u.rows, u.cols) == (2, 6)
    expanded = [e for key in u.vertical_paths for e in u.expand(("V",) + key)]
    expanded += [e for key in u.horizontal_paths for e in u.expand(("H",) + key)]
    assert sorted(expanded) == sorted(t.edges())
    full = underlying_torus(anchored_product(RepresentedCycle.full(range(3)), RepresentedCycle.full(range(3))))
    assert all(len(p) == 1 for p in full.vertical_paths.values())


def test_subdivided_wiggle_8_by_10():
    t = anchored_product(rc(8, (0, 2, 4, 6)), rc(10, (0, 2, 3, 4, 5, 7, 8, 9)))
    assert t.underlying_shape == (4, 8)
    cycles = k_wiggle_subdivided(t, 2)
    assert [len(c) for c in cycles] == [52, 52]
    sets = repsets_subdivided(t, 2)
    covered = Counter(cycles[c].vertices[p] for c, pos in enumerate(sets.positions) for p in pos)
    assert len(covered) == 8 * 8 and set(covered.values()) == {1}


def test_unequal_subdivision_gives_unequal_lengths():
    t = anchored_product(rc(5, (0, 2)), rc(4, (0, 1, 2, 3)))
    assert sorted(len(c) for c in k_wiggle_subdivided(t, 2)) == [13, 15]


@given(wiggle_shapes(limit=8), st.integers(0, 3), st.integers(0, 3), st.data())
def test_subdivided_partition(shape, extra_rows, extra_cols, data):
    n_u, m_u, k = shape
    n_len, m_len = n_u + extra_rows, m_u + extra_cols
    assume(n_len >= 3 and m_len >= 3)
    s = sorted(data.draw(st.sets(st.integers(0, n_len - 1), min_size=n_u, max_size=n_u)))
    s2 = sorted(data.draw(st.sets(st.integers(0, m_len - 1), min_size=m_u, max_size=m_u)))
    t = anchored_product(rc(n_len, s), rc(m_len, s2))
    cycles = k_wiggle_subdivided(t, k)
    coords = [[divmod(v, m_len) for v in c.vertices] for c in cycles]
    edges = [torus_edge(c[i], c[(i + 1) % len(c)], n_len, m_len) for c in coords for i in range(len(c))]
    assert sorted(edges) == sorted(t.edges())


@given(wiggle_shapes(limit=8), st.integers(1, 3), st.data())
def test_subdivided_sets_partition(shape, gap, data):
    n_u, m_u, k = shape
    n_len = n_u * gap
    m_len = m_u + data.draw(st.integers(0, 3))
    s2 = sorted(data.draw(st.sets(st.integers(0, m_len - 1), min_size=m_u, max_size=m_u)))
    t = anchored_product(rc(n_len, range(0, n_len, gap)), rc(m_len, s2))
    cycles = k_wiggle_subdivided(t, k)
    sets = repsets_subdivided(t, k)
    got = sorted(divmod(cycles[c].vertices[p], m_len) for c, pos in enumerate(sets.positions) for p in pos)
    assert got == sorted((i, j) for i in range(n_len) for j in s2)


def test_subdivided_needs_dr():
    t = anchored_product(rc(5, (0, 2)), rc(4, (0, 1, 2, 3)))
    with pytest.raises(ParameterError):
        repsets_subdivided(t, 2)


def test_wiggle_repset_modes():
    cycles = k_wiggle_torus(4, 4, 2)
    alt = repsets_kwiggle(cycles)
    got = Counter(cycles[c].vertices[p] for c in range(2) for p in alt.positions[c])
    assert len(got) == 16 and set(got.values()) == {1}
    full = repsets_kwiggle(k_wiggle_torus(4, 4, 4), "full")
    assert full.groups == [[0, 2], [1, 3]]
    with pytest.raises(ParameterError):
        repsets_kwiggle(k_wiggle_torus(6, 5, 3), "full")


def test_scaled_repsets_6_by_15():
    cycles = k_wiggle_torus(6, 15, 3)
    sets = repsets_scaled(cycles, 6, 15, (3, 8, 13))
    for c, pos in zip(cycles, sets.positions):
        assert representing_gaps(RepresentedCycle(c, pos)) == [10] * 6
    got = Counter(cycles[c].vertices[p] for c in range(3) for p in sets.positions[c])
    assert sorted(got) == sorted((i, j) for i in range(6) for j in (3, 8, 13))
    assert scaled_positions(6, 15, 3, (3, 8, 13)).tolist() == [6, 16, 26, 36, 46, 56]
    with pytest.raises(ParameterError):
        repsets_scaled(cycles, 6, 15, (0, 1, 5))
