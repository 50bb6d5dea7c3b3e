"""Tori, anchored products and the k-wiggle decomposition.

A torus C x C' is drawn with C vertical (row index ``i``) and C' horizontal
(column index ``j``).  A vertical edge ``V(i, j)`` joins ``(i, j)`` and
``(i+1, j)``; a horizontal edge ``H(i, j)`` joins ``(i, j)`` and ``(i, j+1)``.
Keeping edges as ids rather than vertex pairs lets the same code handle
factors of length 2, where parallel edges appear.

Wiggle cycle ``t`` (0 <= t < k) starts at ``(t, 0)`` and climbs ``k`` rows per
band of ``2 * m_len`` steps.  Its vertical rungs sit in rows congruent to
``t`` modulo ``k``, and cycle ``t`` is the vertical translate of cycle 0 by
``t``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cycles import Cycle, RepresentedCycle, gaps_array, is_distance_regular
from .errors import ParameterError, StructureError

UP, DOWN, RIGHT = 0, 1, 2


@dataclass(frozen=True)
class WiggleParams:
    k: int
    n_len: int
    m_len: int


def allows_k_wiggle(p: WiggleParams | "SubdividedTorus", k: int | None = None) -> bool:
    if isinstance(p, SubdividedTorus):
        n_len, m_len = p.underlying_shape
        p = WiggleParams(k, n_len, m_len)
    return (
        p.k >= 2
        and p.n_len >= 1
        and p.n_len % p.k == 0
        and p.m_len >= p.k
        and (p.m_len - p.k) % 2 == 0
    )


def _require(p: WiggleParams) -> None:
    if not allows_k_wiggle(p):
        raise ParameterError(
            f"torus {p.n_len}x{p.m_len} does not allow the {p.k}-wiggle: need k | rows, "
            "columns >= k and columns = k mod 2"
        )


def _band(m_len: int, k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Row offsets, columns and step kinds of one band (2 * m_len steps)."""
    s2 = m_len - k
    di, cols, kinds = [], [], []
    for j in range(s2):
        if j % 2 == 0:
            di += [0, 1]
            kinds += [UP, RIGHT]
        else:
            di += [1, 0]
            kinds += [DOWN, RIGHT]
        cols += [j, j]
    for p in range(k):
        di += [p, p + 1]
        kinds += [UP, RIGHT]
        cols += [s2 + p, s2 + p]
    return np.array(di), np.array(cols), np.array(kinds)


def wiggle_steps(n_len: int, m_len: int, k: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Start row, start column and kind of every step, each of shape (k, 2*n*m/k)."""
    _require(WiggleParams(k, n_len, m_len))
    di, cols, kinds = _band(m_len, k)
    bands = n_len // k
    base = np.arange(k)[:, None] + (np.arange(bands) * k)[None, :]
    rows = (base[:, :, None] + di[None, None, :]) % n_len
    steps = bands * di.size
    return (
        rows.reshape(k, steps),
        np.broadcast_to(np.tile(cols, bands), (k, steps)).copy(),
        np.broadcast_to(np.tile(kinds, bands), (k, steps)).copy(),
    )


def step_edge_ids(rows: np.ndarray, cols: np.ndarray, kinds: np.ndarray, n_len: int, m_len: int) -> np.ndarray:
    """Edge ids of torus steps: ``V(i,j) -> i*m + j`` and ``H(i,j) -> n*m + i*m + j``."""
    vrow = np.where(kinds == DOWN, (rows - 1) % n_len, rows)
    vert = vrow * m_len + cols
    horiz = n_len * m_len + rows * m_len + cols
    return np.where(kinds == RIGHT, horiz, vert)


def wiggle_edge_ids(n_len: int, m_len: int, k: int) -> np.ndarray:
    return step_edge_ids(*wiggle_steps(n_len, m_len, k), n_len, m_len)


def k_wiggle_torus(n_len: int, m_len: int, k: int) -> list[Cycle]:
    """The k wiggle cycles of C_n x C_m as sequences of (row, column) pairs."""
    rows, cols, _ = wiggle_steps(n_len, m_len, k)
    return [Cycle(tuple(zip(rows[t].tolist(), cols[t].tolist()))) for t in range(k)]


@dataclass(frozen=True)
class SubdividedTorus:
    """Anchored product (C, S) with (C', S'); C is the vertical factor.

    ``shift`` fixes the label map ``C[i] << shift | C'[j]``.  Without it,
    coordinate pairs are labelled ``i * len(C') + j``.
    """

    vertical: RepresentedCycle
    horizontal: RepresentedCycle
    shift: int | None = None

    @property
    def underlying_shape(self) -> tuple[int, int]:
        return len(self.vertical.representing), len(self.horizontal.representing)

    def label(self, i: int, j: int) -> int:
        if self.shift is None:
            return i * len(self.horizontal.cycle) + j
        return (self.vertical.cycle.vertices[i] << self.shift) | self.horizontal.cycle.vertices[j]

    def vertices(self) -> set[tuple[int, int]]:
        n, m = len(self.vertical.cycle), len(self.horizontal.cycle)
        s, s2 = set(self.vertical.representing), set(self.horizontal.representing)
        return {(i, j) for i in range(n) for j in range(m) if i in s or j in s2}

    def edges(self) -> list[tuple[str, int, int]]:
        """Edges as ``('V', i, j)`` / ``('H', i, j)`` in coordinates of C x C'."""
        n, m = len(self.vertical.cycle), len(self.horizontal.cycle)
        out = [("V", i, j) for j in self.horizontal.representing for i in range(n)]
        out += [("H", i, j) for i in self.vertical.representing for j in range(m)]
        return out

    @property
    def edge_count(self) -> int:
        n, m = len(self.vertical.cycle), len(self.horizontal.cycle)
        return len(self.horizontal.representing) * n + len(self.vertical.representing) * m

    def degree(self, i: int, j: int) -> int:
        in_s = i in self.vertical.representing
        in_s2 = j in self.horizontal.representing
        return 2 * in_s + 2 * in_s2


def anchored_product(left: RepresentedCycle, right: RepresentedCycle, shift: int | None = None) -> SubdividedTorus:
    if not left.representing or not right.representing:
        raise ParameterError("anchored product needs nonempty representing sets")
    return SubdividedTorus(left, right, shift)


@dataclass(frozen=True)
class UnderlyingTorus:
    rows: int
    cols: int
    vertical_paths: dict
    horizontal_paths: dict

    def expand(self, edge: tuple[str, int, int]) -> list[tuple[str, int, int]]:
        kind, a, b = edge
        table = self.vertical_paths if kind == "V" else self.horizontal_paths
        return table[(a, b)]


def underlying_torus(t: SubdividedTorus) -> UnderlyingTorus:
    """Contract degree-2 vertices; maps each underlying edge to its path in ``t``."""
    s, s2 = t.vertical.representing, t.horizontal.representing
    n, m = len(t.vertical.cycle), len(t.horizontal.cycle)
    vp, hp = {}, {}
    for a in range(len(s)):
        lo = s[a]
        gap = (s[(a + 1) % len(s)] - lo) % n or n
        for b in range(len(s2)):
            vp[(a, b)] = [("V", (lo + o) % n, s2[b]) for o in range(gap)]
    for b in range(len(s2)):
        lo = s2[b]
        gap = (s2[(b + 1) % len(s2)] - lo) % m or m
        for a in range(len(s)):
            hp[(a, b)] = [("H", s[a], (lo + o) % m) for o in range(gap)]
    return UnderlyingTorus(len(s), len(s2), vp, hp)


@dataclass
class LiftedWiggle:
    """Lifted wiggle cycles of a batch of subdivided tori.

    ``cycles`` has shape (tori * k, length) when all lengths agree; otherwise
    it is a list of 1-D arrays.  ``reps`` holds the subdivided representing
    positions when requested.
    """

    cycles: np.ndarray | list
    lengths: np.ndarray
    reps: np.ndarray | list | None = None


def lift_wiggle(
    vert_cycles: np.ndarray,
    vert_reps: np.ndarray,
    horiz_cycles: np.ndarray,
    horiz_reps: np.ndarray,
    k: int,
    shift: int | None,
    with_reps: bool = False,
) -> LiftedWiggle:
    """k-wiggle every subdivided torus (row p of each input) and lift to labels.

    Output cycle ``p * k + t`` is wiggle cycle ``t`` of torus ``p``.
    """
    vc = np.atleast_2d(np.asarray(vert_cycles, dtype=np.int64))
    vr = np.atleast_2d(np.asarray(vert_reps, dtype=np.int64))
    hc = np.atleast_2d(np.asarray(horiz_cycles, dtype=np.int64))
    hr = np.atleast_2d(np.asarray(horiz_reps, dtype=np.int64))
    tori, n_len = vr.shape
    m_len = hr.shape[1]
    big_l, big_l2 = vc.shape[1], hc.shape[1]
    rows, cols, kinds = wiggle_steps(n_len, m_len, k)
    steps = rows.shape[1]

    gv = gaps_array(vr, big_l)
    gh = gaps_array(hr, big_l2)
    vrow = np.where(kinds == DOWN, (rows - 1) % n_len, rows)
    cnt = np.where(kinds == RIGHT, gh[:, cols], gv[:, vrow])
    r0 = vr[:, rows]
    c0 = hr[:, cols]

    flat = cnt.ravel()
    total = int(flat.sum())
    owner = np.repeat(np.arange(flat.size), flat)
    first = np.cumsum(flat) - flat
    off = np.arange(total) - first[owner]
    step_kind = np.broadcast_to(kinds, cnt.shape).ravel()[owner]
    sign = np.where(step_kind == UP, 1, np.where(step_kind == DOWN, -1, 0))
    rowpos = (r0.ravel()[owner] + sign * off) % big_l
    colpos = (c0.ravel()[owner] + np.where(step_kind == RIGHT, off, 0)) % big_l2
    torus = owner // (k * steps)
    if shift is None:
        labels = rowpos * big_l2 + colpos
    else:
        labels = (vc[torus, rowpos] << shift) | hc[torus, colpos]

    lengths = cnt.sum(axis=2).ravel()
    equal = bool(np.all(lengths == lengths[0]))
    cycle_of = owner // steps
    reps = None
    if with_reps:
        local = np.arange(total) - (np.cumsum(lengths) - lengths)[cycle_of]
        mask = ((off == 0) & ((owner % steps) % 2 == 0)) | ((off > 0) & (step_kind != RIGHT))
        pos, who = local[mask], cycle_of[mask]
        sizes = np.bincount(who, minlength=lengths.size)
        if equal and np.all(sizes == sizes[0]):
            reps = pos.reshape(lengths.size, -1)
        else:
            reps = np.split(pos, np.cumsum(sizes)[:-1])
    if equal:
        out = labels.reshape(lengths.size, -1)
    else:
        out = np.split(labels, np.cumsum(lengths)[:-1])
    return LiftedWiggle(out, lengths, reps)


def _torus_arrays(t: SubdividedTorus):
    v, h = t.vertical, t.horizontal
    if t.shift is None:
        vc = np.arange(len(v.cycle))
        hc = np.arange(len(h.cycle))
    else:
        vc = np.asarray(v.cycle.vertices, dtype=np.int64)
        hc = np.asarray(h.cycle.vertices, dtype=np.int64)
    return vc, np.asarray(v.representing), hc, np.asarray(h.representing)


def k_wiggle_subdivided(t: SubdividedTorus, k: int) -> list[Cycle]:
    """Lift the k-wiggle of the underlying torus by subdividing each edge."""
    n_len, m_len = t.underlying_shape
    _require(WiggleParams(k, n_len, m_len))
    vc, vr, hc, hr = _torus_arrays(t)
    lifted = lift_wiggle(vc, vr, hc, hr, k, t.shift)
    return [Cycle(tuple(int(x) for x in row)) for row in lifted.cycles]


@dataclass(frozen=True)
class RepSets:
    """Representing positions per wiggle cycle and the splitting-set grouping."""

    positions: list[tuple[int, ...]]
    groups: list[list[int]]


def repsets_kwiggle(cycles: Sequence[Cycle], mode: str = "alternate") -> RepSets:
    """Representing sets for the wiggle of an unsubdivided torus.

    ``alternate``: every other vertex from position 0, one splitting set.
    ``full``: whole vertex sets, cycles grouped by index parity.
    """
    k = len(cycles)
    length = len(cycles[0])
    if mode == "alternate":
        pos = tuple(range(0, length, 2))
        return RepSets([pos] * k, [list(range(k))])
    if mode == "full":
        if k % 2:
            raise ParameterError(f"full mode needs an even number of cycles, got {k}")
        pos = tuple(range(length))
        return RepSets([pos] * k, [list(range(0, k, 2)), list(range(1, k, 2))])
    raise ParameterError(f"unknown mode {mode!r}")


def scaled_positions(n_len: int, m_len: int, k: int, s_prime: Sequence[int]) -> np.ndarray:
    """Positions ``b * 2m + 2j`` for band ``b`` and column ``j`` in S'."""
    cols = np.asarray(sorted(s_prime), dtype=np.int64)
    bands = np.arange(n_len // k, dtype=np.int64) * (2 * m_len)
    return (bands[:, None] + 2 * cols[None, :]).ravel()


def repsets_scaled(cycles: Sequence[Cycle], n_len: int, m_len: int, s_prime: Sequence[int]) -> RepSets:
    """Sets partitioning V(C) x S' with gaps twice those of S' in C'."""
    k = len(cycles)
    sp = RepresentedCycle(Cycle(tuple(range(m_len))), tuple(s_prime))
    if not sp.representing or not is_distance_regular(sp):
        raise ParameterError("S' must be a distance regular representing set of C'")
    pos = tuple(int(p) for p in scaled_positions(n_len, m_len, k, sp.representing))
    return RepSets([pos] * k, [list(range(k))])


def repsets_subdivided(t: SubdividedTorus, k: int) -> RepSets:
    """Sets partitioning V(C) x S' for the lifted wiggle cycles of ``t``.

    Underlying vertices alternate along each cycle; interior vertices of
    subdivided vertical paths stay with the one cycle through them.
    """
    if not is_distance_regular(t.vertical):
        raise ParameterError("(C, S) must be distance regular")
    n_len, m_len = t.underlying_shape
    _require(WiggleParams(k, n_len, m_len))
    vc, vr, hc, hr = _torus_arrays(t)
    lifted = lift_wiggle(vc, vr, hc, hr, k, t.shift, with_reps=True)
    if isinstance(lifted.reps, list):
        raise StructureError("representing sets came out unequal")
    return RepSets([tuple(int(x) for x in row) for row in lifted.reps], [list(range(k))])
