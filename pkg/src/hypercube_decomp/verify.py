"""Exact checks of cycle and path decompositions of Q_n, plus small brute-force oracles."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cube_graph import CubeSpec, edge_index, edges_of_walk
from .deco_model import SplitDecomposition, check_structure
from .errors import BudgetExceeded, ParameterError


@dataclass(frozen=True)
class Report:
    ok: bool
    n: int
    pieces: int = 0
    length: int = 0
    reason: str = ""
    detail: str = ""

    def __str__(self) -> str:
        if self.ok:
            return f"OK n={self.n} pieces={self.pieces} length={self.length}"
        return f"FAIL {self.reason} {self.detail}".rstrip()

    def __bool__(self) -> bool:
        return self.ok


def _fmt(v: int, n: int) -> str:
    return format(int(v), f"0{n}b")


def _edge_str(ep: int, d: int, n: int) -> str:
    return f"{_fmt(ep, n)}-{_fmt(int(ep) ^ (1 << int(d)), n)}"


def _as_array(pieces) -> np.ndarray | None:
    if isinstance(pieces, np.ndarray):
        return np.atleast_2d(pieces).astype(np.int64, copy=False)
    rows = [list(p) for p in pieces]
    if not rows or len({len(r) for r in rows}) != 1:
        return None
    return np.array(rows, dtype=np.int64)


def verify_decomposition(
    spec: CubeSpec | int,
    pieces: np.ndarray | Sequence[Sequence[int]],
    kind: str = "cycles",
    threads: int = 1,
) -> Report:
    """Check that ``pieces`` are simple cycles (or paths) of one length partitioning E(Q_n)."""
    spec = spec if isinstance(spec, CubeSpec) else CubeSpec(spec)
    n = spec.n
    if kind not in ("cycles", "paths"):
        raise ParameterError(f"unknown kind {kind!r}")
    arr = _as_array(pieces)
    if arr is None:
        lens = sorted({len(p) for p in pieces}) if len(pieces) else []
        return Report(False, n, reason="unequal-length", detail=f"piece sizes {lens[:4]}")
    closed = kind == "cycles"
    count, cols = arr.shape
    length = cols if closed else cols - 1
    if cols < (3 if closed else 2):
        return Report(False, n, reason="bad-shape", detail=f"pieces of {cols} vertices")
    if arr.min() < 0 or arr.max() >= spec.vertex_count:
        i, j = np.argwhere((arr < 0) | (arr >= spec.vertex_count))[0]
        return Report(False, n, reason="label-range", detail=f"piece={i} index={j} label={arr[i, j]}")

    bounds = np.linspace(0, count, max(1, threads) + 1).astype(int)
    chunks = [(bounds[t], bounds[t + 1]) for t in range(len(bounds) - 1) if bounds[t] < bounds[t + 1]]

    def work(span: tuple[int, int]):
        lo, hi = span
        block = arr[lo:hi]
        ep, dim, ok = edges_of_walk(block, closed=closed)
        if not ok.all():
            i, j = np.argwhere(~ok)[0]
            nxt = block[i, (j + 1) % cols]
            return ("nonadjacent", f"piece={lo + i} index={j} {_fmt(block[i, j], n)}->{_fmt(nxt, n)}")
        srt = np.sort(block, axis=1)
        rep = srt[:, 1:] == srt[:, :-1]
        if rep.any():
            i, j = np.argwhere(rep)[0]
            return ("repeated-vertex", f"piece={lo + i} vertex={_fmt(srt[i, j], n)}")
        return edge_index(ep, dim, n).ravel()

    if len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            results = list(pool.map(work, chunks))
    else:
        results = [work(c) for c in chunks]
    for res in results:
        if isinstance(res, tuple):
            return Report(False, n, reason=res[0], detail=res[1])

    total = spec.edge_count
    seen = np.zeros(total, dtype=bool)
    used = 0
    for idx in results:
        seen[idx] = True
        used += idx.size
    covered = int(np.count_nonzero(seen))
    if covered < used:
        return _overlap(arr, closed, n)
    if covered < total:
        miss = int(np.flatnonzero(~seen)[0])
        d, rank = divmod(miss, 1 << (n - 1))
        low = rank & ((1 << d) - 1)
        ep = ((rank >> d) << (d + 1)) | low
        return Report(False, n, reason="coverage", detail=f"missing={total - covered} first={_edge_str(ep, d, n)}")
    return Report(True, n, pieces=count, length=length)


def _overlap(arr: np.ndarray, closed: bool, n: int) -> Report:
    ep, dim, _ = edges_of_walk(arr, closed=closed)
    idx = edge_index(ep, dim, n)
    flat = idx.ravel()
    order = np.argsort(flat, kind="stable")
    dup = np.flatnonzero(flat[order][1:] == flat[order][:-1])[0]
    a, b = order[dup], order[dup + 1]
    per = idx.shape[1]
    pa, pb = divmod(int(a), per)[0], divmod(int(b), per)[0]
    e = _edge_str(ep.ravel()[a], dim.ravel()[a], n)
    return Report(False, n, reason="overlap", detail=f"edge={e} pieces={pa},{pb}")


def verify_certificate(d: SplitDecomposition, threads: int = 1) -> list[str]:
    """Graph-level and structure-level checks together; empty means valid."""
    out = []
    if isinstance(d.ambient, CubeSpec):
        rep = verify_decomposition(d.ambient, d.cycles, threads=threads)
        if not rep.ok:
            out.append(str(rep))
    return out + check_structure(d)


def _hamiltonian_pair_q4(budget: int) -> list[list[int]]:
    """Enumerate Hamiltonian cycles of Q_4 through 0 and test each complement."""
    n, size = 4, 16
    nodes = 0

    def complement_is_cycle(cyc: list[int]) -> bool:
        used = {frozenset((cyc[i], cyc[(i + 1) % size])) for i in range(size)}
        adj = {v: [v ^ (1 << d) for d in range(n) if frozenset((v, v ^ (1 << d))) not in used] for v in range(size)}
        if any(len(a) != 2 for a in adj.values()):
            return False
        prev, cur, steps = None, 0, 0
        while True:
            nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
            prev, cur = cur, nxt
            steps += 1
            if cur == 0:
                return steps == size

    path = [0]
    on = [False] * size
    on[0] = True

    def rec():
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded("hamiltonian-pair-Q4 search exceeded its budget")
        v = path[-1]
        if len(path) == size:
            if (v ^ 0).bit_count() == 1 and complement_is_cycle(path):
                return list(path)
            return None
        for d in range(n):
            w = v ^ (1 << d)
            if not on[w]:
                on[w] = True
                path.append(w)
                got = rec()
                if got:
                    return got
                path.pop()
                on[w] = False
        return None

    first = rec()
    if first is None:
        return []
    used = {frozenset((first[i], first[(i + 1) % size])) for i in range(size)}
    second, prev, cur = [0], None, 0
    while True:
        nxt = [cur ^ (1 << d) for d in range(n) if frozenset((cur, cur ^ (1 << d))) not in used and cur ^ (1 << d) != prev][0]
        if nxt == 0:
            break
        second.append(nxt)
        prev, cur = cur, nxt
    return [first, second]


def wiggle_classes(n_len: int, m_len: int, k: int) -> list[set[tuple[str, int, int]]]:
    """Edge sets of the k wiggle cycles written out class by class.

    Cycle ``l`` (1 <= l <= k) owns vertical rungs ``(i,j)(i+1,j)`` with
    ``j < m-k`` and ``i = l mod k``; staircase rungs at ``j = m-k+p`` with
    ``i = l+p``; horizontal edges ``(i,j)(i,j+1)`` for ``j < m-k`` in row
    ``l`` when ``j`` is odd and row ``l+1`` when ``j`` is even; staircase
    horizontals at ``j = m-k+p`` in row ``l+p+1``.
    """
    if k < 2 or n_len % k or m_len < k or (m_len - k) % 2:
        raise ParameterError("parameters do not allow the wiggle")
    out = []
    for ell in range(1, k + 1):
        edges = set()
        for i in range(n_len):
            for j in range(m_len - k):
                if i % k == ell % k:
                    edges.add(("V", i, j))
                    if j % 2 == 1:
                        edges.add(("H", i, j))
                if i % k == (ell + 1) % k and j % 2 == 0:
                    edges.add(("H", i, j))
            for p in range(k):
                j = m_len - k + p
                if i % k == (ell + p) % k:
                    edges.add(("V", i, j))
                if i % k == (ell + p + 1) % k:
                    edges.add(("H", i, j))
        out.append(edges)
    return out


def brute_force_small_oracle(task: str, budget: int = 10_000_000, **params):
    """Independent answers for tiny instances.

    ``hamiltonian-pair-Q4`` returns two edge-disjoint Hamiltonian cycles of
    Q_4 found by exhaustive backtracking.  ``wiggle-equivalence`` takes
    ``n_len``, ``m_len`` and ``k`` and returns whether the class-by-class
    edge sets match the traversal used by the construction.
    """
    if task == "hamiltonian-pair-Q4":
        return _hamiltonian_pair_q4(budget)
    if task == "wiggle-equivalence":
        from .torus_wiggle import wiggle_edge_ids

        n_len, m_len, k = params["n_len"], params["m_len"], params["k"]
        if n_len * m_len * k > budget:
            raise BudgetExceeded("wiggle instance too large for the oracle")
        expected = wiggle_classes(n_len, m_len, k)
        ids = wiggle_edge_ids(n_len, m_len, k)
        nm = n_len * m_len
        for t in range(k):
            got = {("V", e // m_len, e % m_len) if e < nm else ("H", (e - nm) // m_len, (e - nm) % m_len) for e in ids[t].tolist()}
            if len(got) != ids.shape[1] or got != expected[_slot(t, k)]:
                return False
        return True
    raise ParameterError(f"unknown oracle task {task!r}")


def _slot(t: int, k: int) -> int:
    """Position in ``wiggle_classes`` of traversal cycle ``t`` (l = t mod k, l in 1..k)."""
    return (t if t else k) - 1
