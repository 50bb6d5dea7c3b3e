"""Sources of Hamiltonian decompositions of Q_{2x} into x cycles."""
from __future__ import annotations

import os
import random
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import BaseUnavailable, BudgetExceeded, ParameterError

DEFAULT_SEARCH_BUDGET = 2_000_000
STORE_ENV = "HCDECOMP_BASE_DIR"


def store_dir() -> Path:
    env = os.environ.get(STORE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "hypercube_decomp"


def store_path(x: int) -> Path:
    return store_dir() / f"base_x{x}.hcd"


@dataclass(frozen=True)
class BaseProvider:
    """``trivial`` serves x = 1; ``search`` backtracks up to ``scope``;
    ``imported`` reads verified files from the store.  ``auto`` tries them
    in that order."""

    kind: str = "auto"
    scope: int = 3
    budget: int = DEFAULT_SEARCH_BUDGET
    seed: int = 0

    def supports(self, x: int) -> bool:
        if x == 1:
            return True
        if self.kind in ("auto", "imported") and store_path(x).exists():
            return True
        return self.kind in ("auto", "search") and x <= self.scope

    def cycles(self, x: int) -> np.ndarray:
        if x < 1 or x % 2 == 0:
            raise ParameterError(f"base factor x must be odd and positive, got {x}")
        if x == 1:
            return np.array([[0, 1, 3, 2]], dtype=np.int64)
        if self.kind in ("auto", "imported") and store_path(x).exists():
            return load_base(x)
        if self.kind in ("auto", "search") and x <= self.scope:
            return _cached_search(x, self.budget, self.seed)
        raise BaseUnavailable(
            f"no Hamiltonian decomposition of Q_{2 * x} available; run base-search or base-import"
        )


_SEARCH_CACHE: dict[tuple[int, int, int], np.ndarray] = {}


def _cached_search(x: int, budget: int, seed: int) -> np.ndarray:
    key = (x, budget, seed)
    if key not in _SEARCH_CACHE:
        _SEARCH_CACHE[key] = search_hamiltonian_decomposition(x, budget=budget, seed=seed)
    return _SEARCH_CACHE[key]


class _Budget:
    def __init__(self, limit: int) -> None:
        self.left = limit

    def tick(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise BudgetExceeded("search node budget exhausted")


def _hamiltonian_cycle(adj: list[set], rng: random.Random, budget: _Budget, cap: int) -> list[int] | None:
    """Randomised DFS with a fewest-exits-first rule; gives up after ``cap`` nodes."""
    size = len(adj)
    path = [0]
    on = [False] * size
    on[0] = True
    local = [cap]

    def free(z: int, end: int) -> int:
        return sum(1 for y in adj[z] if not on[y] or y == end or y == 0)

    def rec() -> bool:
        budget.tick()
        local[0] -= 1
        if local[0] < 0:
            return False
        v = path[-1]
        if len(path) == size:
            return 0 in adj[v]
        cand = [w for w in adj[v] if not on[w]]
        rng.shuffle(cand)
        cand.sort(key=lambda w: sum(1 for z in adj[w] if not on[z]))
        for w in cand:
            on[w] = True
            path.append(w)
            if all(on[z] or free(z, w) >= 2 for z in adj[w]) and rec():
                return True
            path.pop()
            on[w] = False
        return False

    return path if rec() else None


def _remove(adj: list[set], cycle: list[int]) -> list[set]:
    out = [set(s) for s in adj]
    for i, a in enumerate(cycle):
        b = cycle[(i + 1) % len(cycle)]
        out[a].discard(b)
        out[b].discard(a)
    return out


def _trace_cycle(adj: list[set]) -> list[int] | None:
    """Walk a 2-regular graph from 0; None unless it is one spanning cycle."""
    if any(len(s) != 2 for s in adj):
        return None
    walk, prev, cur = [0], -1, 0
    while True:
        nxt = min(w for w in adj[cur] if w != prev) if prev != -1 else min(adj[cur])
        if nxt == 0:
            break
        walk.append(nxt)
        prev, cur = cur, nxt
        if len(walk) > len(adj):
            return None
    return walk if len(walk) == len(adj) else None


def search_hamiltonian_decomposition(x: int, budget: int = DEFAULT_SEARCH_BUDGET, seed: int = 0) -> np.ndarray:
    """Find x edge-disjoint Hamiltonian cycles of Q_{2x} by restarted backtracking.

    Cycles are peeled one at a time; the last one must be whatever 2-regular
    graph remains, so it is accepted only if connected.
    """
    if x < 1 or x % 2 == 0:
        raise ParameterError(f"x must be odd and positive, got {x}")
    dim = 2 * x
    size = 1 << dim
    full = [{v ^ (1 << d) for d in range(dim)} for v in range(size)]
    rng = random.Random(seed)
    counter = _Budget(budget)
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * size + 100))
    cap = 20 * size

    def peel(adj: list[set], left: int) -> list[list[int]] | None:
        if left == 1:
            last = _trace_cycle(adj)
            return [last] if last else None
        for _ in range(8):
            cyc = _hamiltonian_cycle(adj, rng, counter, cap)
            if cyc is None:
                continue
            rest = peel(_remove(adj, cyc), left - 1)
            if rest is not None:
                return [cyc] + rest
        return None

    while True:
        found = peel(full, x)
        if found is not None:
            return np.array(found, dtype=np.int64)


def save_base(x: int, cycles: np.ndarray) -> Path:
    from .fileformat import write_decomposition
    from .verify import verify_decomposition
    from .cube_graph import CubeSpec

    cycles = np.asarray(cycles, dtype=np.int64)
    report = verify_decomposition(CubeSpec(2 * x), cycles)
    if not report.ok or cycles.shape != (x, 1 << (2 * x)):
        raise ParameterError(f"not a Hamiltonian decomposition of Q_{2 * x}: {report}")
    path = store_path(x)
    path.parent.mkdir(parents=True, exist_ok=True)
    write_decomposition(path, 2 * x, "cycles", cycles)
    return path


def load_base(x: int, path: Path | None = None) -> np.ndarray:
    from .fileformat import read_decomposition
    from .verify import verify_decomposition
    from .cube_graph import CubeSpec

    doc = read_decomposition(path or store_path(x))
    report = verify_decomposition(CubeSpec(2 * x), doc.pieces)
    if doc.n != 2 * x or doc.pieces.shape != (x, 1 << (2 * x)) or not report.ok:
        raise BaseUnavailable(f"stored base for x={x} is not a Hamiltonian decomposition: {report}")
    return doc.pieces
