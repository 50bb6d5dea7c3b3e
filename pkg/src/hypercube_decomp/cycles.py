"""Cycles as explicit vertex sequences, representing sets and path splitting."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cube_graph import CubeSpec
from .errors import ParameterError


@dataclass(frozen=True)
class Violation:
    index: int
    reason: str

    def __str__(self) -> str:
        return f"{self.reason} at index {self.index}"


@dataclass(frozen=True)
class Cycle:
    """Closed vertex sequence; the closing edge is implicit."""

    vertices: tuple

    def __post_init__(self) -> None:
        if len(self.vertices) < 2:
            raise ParameterError("a cycle needs at least two vertices")

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[tuple]:
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]


@dataclass(frozen=True)
class RepresentedCycle:
    """A cycle with a representing set given as sorted positions along it."""

    cycle: Cycle
    representing: tuple = field(default=())

    def __post_init__(self) -> None:
        pos = tuple(sorted(int(p) for p in self.representing))
        if len(set(pos)) != len(pos):
            raise ParameterError("representing positions repeat")
        if pos and (pos[0] < 0 or pos[-1] >= len(self.cycle)):
            raise ParameterError("representing position outside the cycle")
        object.__setattr__(self, "representing", pos)

    @classmethod
    def from_vertices(cls, vertices: Sequence, rep_vertices: Sequence) -> "RepresentedCycle":
        where = {v: i for i, v in enumerate(vertices)}
        missing = [v for v in rep_vertices if v not in where]
        if missing:
            raise ParameterError(f"representing vertex {missing[0]} is not on the cycle")
        return cls(Cycle(tuple(vertices)), tuple(where[v] for v in rep_vertices))

    @classmethod
    def full(cls, vertices: Sequence) -> "RepresentedCycle":
        return cls(Cycle(tuple(vertices)), tuple(range(len(vertices))))

    @property
    def rep_vertices(self) -> tuple:
        return tuple(self.cycle.vertices[p] for p in self.representing)


def validate_cycle_in_cube(spec: CubeSpec, cycle: Cycle | Sequence[int]) -> Violation | None:
    """None when ``cycle`` is a simple closed walk in Q_n, else the first problem."""
    verts = cycle.vertices if isinstance(cycle, Cycle) else tuple(cycle)
    limit = spec.vertex_count
    seen: dict[int, int] = {}
    for i, v in enumerate(verts):
        if not 0 <= v < limit:
            return Violation(i, f"label {v} outside Q_{spec.n}")
        if v in seen:
            return Violation(i, f"vertex {v} repeats index {seen[v]}")
        seen[v] = i
    for i, v in enumerate(verts):
        diff = v ^ verts[(i + 1) % len(verts)]
        if diff & (diff - 1) or not diff:
            return Violation(i, "consecutive vertices not adjacent")
    return None


def representing_gaps(rc: RepresentedCycle) -> list[int]:
    pos = rc.representing
    if not pos:
        raise ParameterError("representing set is empty")
    length = len(rc.cycle)
    return [(pos[(i + 1) % len(pos)] - pos[i]) % length or length for i in range(len(pos))]


def is_distance_regular(rc: RepresentedCycle) -> bool:
    return len(set(representing_gaps(rc))) == 1


def gaps_array(reps: np.ndarray, length: int) -> np.ndarray:
    """Row-wise gaps of sorted position arrays on cycles of ``length``."""
    reps = np.asarray(reps, dtype=np.int64)
    nxt = np.roll(reps, -1, axis=1)
    gaps = (nxt - reps) % length
    gaps[gaps == 0] = length
    return gaps


def split_cycle_into_paths(cycle: Cycle | Sequence[int] | np.ndarray, ell: int) -> np.ndarray:
    """Cut a cycle into consecutive paths of ``ell`` edges starting at position 0.

    Accepts one cycle or a 2-D array of cycles; returns rows of ``ell + 1``
    vertices.
    """
    verts = cycle.vertices if isinstance(cycle, Cycle) else cycle
    arr = np.asarray(verts, dtype=np.int64)
    if arr.ndim == 1:
        arr = arr[None, :]
    length = arr.shape[1]
    if ell < 1 or ell >= length:
        raise ParameterError(f"path length {ell} must lie in [1, {length})")
    if length % ell:
        raise ParameterError(f"path length {ell} does not divide cycle length {length}")
    pieces = length // ell
    closed = np.concatenate([arr, arr[:, :1]], axis=1)
    starts = np.arange(pieces) * ell
    cols = starts[:, None] + np.arange(ell + 1)[None, :]
    return closed[:, cols].reshape(-1, ell + 1)


def canonical_rotation(cycles: np.ndarray, reps: np.ndarray | None = None):
    """Rotate each row to start at its minimum label, heading to the smaller neighbour.

    Representing positions are remapped and re-sorted alongside.
    """
    cyc = np.asarray(cycles, dtype=np.int64)
    rows, length = cyc.shape
    start = np.argmin(cyc, axis=1)
    r = np.arange(rows)
    nxt = cyc[r, (start + 1) % length]
    prv = cyc[r, (start - 1) % length]
    forward = nxt <= prv
    step = np.where(forward, 1, -1)
    idx = (start[:, None] + step[:, None] * np.arange(length)[None, :]) % length
    out = np.take_along_axis(cyc, idx, axis=1)
    if reps is None:
        return out, None
    reps = np.asarray(reps, dtype=np.int64)
    new = np.where(forward[:, None], reps - start[:, None], start[:, None] - reps) % length
    new.sort(axis=1)
    return out, new
