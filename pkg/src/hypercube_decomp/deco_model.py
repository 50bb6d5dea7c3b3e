"""Splittable decomposition certificates.

A certificate groups equal-length cycles into splitting sets of ``a`` cycles
whose representing sets partition the vertex set.  With ``b`` given, each
splitting set further splits into subsets of ``b`` vertex-disjoint cycles
that span the vertices.  The ``dr`` flag claims every representing set cuts
its cycle into equal gaps.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .cube_graph import CubeSpec
from .cycles import Cycle, RepresentedCycle, canonical_rotation, gaps_array


@dataclass(frozen=True)
class TorusSpec:
    """C_n x C_m with vertex (i, j) labelled ``i * m + j``."""

    n_len: int
    m_len: int

    @property
    def vertex_count(self) -> int:
        return self.n_len * self.m_len

    @property
    def edge_count(self) -> int:
        return 2 * self.n_len * self.m_len


@dataclass
class SplitDecomposition:
    ambient: CubeSpec | TorusSpec
    cycles: np.ndarray
    reps: np.ndarray
    set_of: np.ndarray
    a: int
    subset_of: np.ndarray | None = None
    b: int | None = None
    dr: bool = False
    trace: tuple = field(default=())

    def __post_init__(self) -> None:
        self.cycles = np.atleast_2d(np.asarray(self.cycles, dtype=np.int64))
        self.reps = np.atleast_2d(np.asarray(self.reps, dtype=np.int64))
        self.set_of = np.asarray(self.set_of, dtype=np.int64)
        if self.subset_of is not None:
            self.subset_of = np.asarray(self.subset_of, dtype=np.int64)

    @property
    def count(self) -> int:
        return self.cycles.shape[0]

    @property
    def length(self) -> int:
        return self.cycles.shape[1]

    @property
    def num_sets(self) -> int:
        return int(self.set_of.max()) + 1 if self.set_of.size else 0

    def represented(self, i: int) -> RepresentedCycle:
        verts = tuple(int(v) for v in self.cycles[i])
        return RepresentedCycle(Cycle(verts), tuple(int(p) for p in self.reps[i]))

    def rep_labels(self) -> np.ndarray:
        return np.take_along_axis(self.cycles, self.reps, axis=1)

    def canonical(self) -> "SplitDecomposition":
        cyc, reps = canonical_rotation(self.cycles, self.reps)
        return replace(self, cycles=cyc, reps=reps)

    def with_trace(self, step: str) -> "SplitDecomposition":
        return replace(self, trace=self.trace + (step,))


def normalize_ids(ids: np.ndarray) -> np.ndarray:
    """Relabel ids to 0..m-1 in order of first appearance."""
    _, first, inv = np.unique(ids, return_index=True, return_inverse=True)
    order = np.argsort(np.argsort(first))
    return order[inv]


def _grouped_cover(labels: np.ndarray, groups: np.ndarray, size: int, total: int, what: str) -> list[str]:
    """Each group must hold ``size`` rows whose labels are exactly 0..total-1."""
    out: list[str] = []
    counts = np.bincount(groups)
    bad = np.flatnonzero(counts != size)
    if bad.size:
        g = int(bad[0])
        out.append(f"{what} {g} has {int(counts[g])} cycles, expected {size}")
        return out
    order = np.argsort(groups, kind="stable")
    block = labels[order].reshape(counts.size, -1)
    if block.shape[1] != total:
        out.append(f"{what} covers {block.shape[1]} vertices, expected {total}")
        return out
    block = np.sort(block, axis=1)
    wrong = np.flatnonzero(np.any(block != np.arange(total)[None, :], axis=1))
    if wrong.size:
        g = int(wrong[0])
        row = block[g]
        dup = np.flatnonzero(row[1:] == row[:-1])
        detail = f"vertex {int(row[dup[0]])} repeats" if dup.size else "vertices missing"
        out.append(f"{what} {g} does not partition the vertices: {detail}")
    return out


def check_structure(d: SplitDecomposition) -> list[str]:
    """All certificate axioms; an empty list means the certificate holds."""
    v_total = d.ambient.vertex_count
    c, length = d.cycles.shape
    out: list[str] = []
    if c * length != d.ambient.edge_count:
        out.append(f"{c} cycles of length {length} do not cover {d.ambient.edge_count} edges")
    if d.reps.shape[0] != c or d.set_of.shape != (c,):
        out.append("bookkeeping arrays do not match the cycle count")
        return out
    r = d.reps.shape[1]
    if r < 2:
        out.append(f"representing sets have {r} vertices, need at least 2")
    if np.any(d.reps < 0) or np.any(d.reps >= length):
        out.append("representing position outside its cycle")
        return out
    if r > 1 and np.any(np.diff(d.reps, axis=1) <= 0):
        i = int(np.flatnonzero(np.any(np.diff(d.reps, axis=1) <= 0, axis=1))[0])
        out.append(f"representing positions of cycle {i} not strictly increasing")
        return out
    if np.any(d.set_of < 0):
        out.append("negative splitting set id")
        return out
    out += _grouped_cover(d.rep_labels(), d.set_of, d.a, v_total, "splitting set")
    if d.b is not None:
        if d.subset_of is None or d.subset_of.shape != (c,):
            out.append("splitting subsets missing")
        else:
            sub = d.subset_of
            parent = np.full(int(sub.max()) + 1, -1)
            parent[sub] = d.set_of
            if np.any(parent[sub] != d.set_of):
                i = int(np.flatnonzero(parent[sub] != d.set_of)[0])
                out.append(f"splitting subset {int(sub[i])} straddles splitting sets")
            out += _grouped_cover(d.cycles, sub, d.b, v_total, "splitting subset")
    if d.dr:
        bad = check_dr(d)
        if bad:
            out.append(f"cycles {bad[:5]} are not distance regular")
    return out


def check_dr(d: SplitDecomposition) -> list[int]:
    """Indices of cycles whose representing gaps are not all equal."""
    gaps = gaps_array(d.reps, d.length)
    return np.flatnonzero(np.any(gaps != gaps[:, :1], axis=1)).tolist()
