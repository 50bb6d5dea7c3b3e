"""Top-level constructions: power-of-two cubes, the general schedules, paths and tables."""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .base import BaseProvider
from .compose import combine_splittable, self_product_copy, self_product_grid
from .cube_graph import CubeSpec
from .cycles import split_cycle_into_paths
from .deco_model import SplitDecomposition, check_structure
from .errors import BudgetExceeded, ParameterError, StructureError
from .torus_wiggle import lift_wiggle, scaled_positions

log = logging.getLogger(__name__)

EDGE_BUDGET_ENV = "HCDECOMP_EDGE_BUDGET"
DEFAULT_EDGE_BUDGET = 20_000_000


def edge_budget() -> int:
    raw = os.environ.get(EDGE_BUDGET_ENV)
    return int(float(raw)) if raw else DEFAULT_EDGE_BUDGET


def _check_budget(dim: int) -> None:
    edges = dim << (dim - 1)
    if edges > edge_budget():
        raise BudgetExceeded(
            f"Q_{dim} has {edges} edges, over the materialisation budget of {edge_budget()} "
            f"(set {EDGE_BUDGET_ENV} to raise it)"
        )


def odd_part(n: int) -> tuple[int, int]:
    """Return (odd, v) with n = odd * 2^v."""
    if n < 1:
        raise ParameterError(f"expected a positive integer, got {n}")
    v = (n & -n).bit_length() - 1
    return n >> v, v


def binary_bits(y: int) -> tuple[int, ...]:
    """Exponents of the binary expansion of y, largest first."""
    return tuple(i for i in range(y.bit_length() - 1, -1, -1) if y >> i & 1)


def _divisors(m: int) -> list[int]:
    """Divisors built prime by prime, each prime's powers appended in turn."""
    out, p, rest = [1], 2, m
    while rest > 1:
        if p * p > rest:
            p = rest
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        if e:
            out = [d * p**i for i in range(e + 1) for d in out]
        p += 1
    return out


# ---------------------------------------------------------------- Q_{x 2^n}


def _base(x: int, provider: BaseProvider) -> SplitDecomposition:
    cycles = provider.cycles(x)
    count, length = cycles.shape
    return SplitDecomposition(
        ambient=CubeSpec(2 * x),
        cycles=cycles,
        reps=np.tile(np.arange(length), (count, 1)),
        set_of=np.arange(count),
        a=1,
        subset_of=np.arange(count),
        b=1,
        dr=True,
        trace=(f"base Hamiltonian Q_{2 * x}",),
    )


def base_hamiltonian(x: int, provider: BaseProvider | None = None) -> SplitDecomposition:
    """x Hamiltonian cycles of Q_{2x}, each representing all its vertices."""
    return _base(x, provider or BaseProvider())


def power_cube_range(x: int, n: int, ell: int) -> range:
    """Admissible m for cycles of length 2^ell in Q_{x 2^n}; empty when ell is out of range."""
    big = x << n
    if n < 1 or x < 1 or x % 2 == 0 or not 2 * x <= ell <= big:
        return range(0)
    return range(big - ell, min(big - 1, big - 1 + n - ell) + 1)


def power_cube_count(x: int, n: int, ell: int) -> int:
    return x << ((x << n) + n - 1 - ell)


def _hamiltonian_level(x: int, ell: int) -> int:
    n = 1
    while (x << n) < ell:
        n += 1
    return n


def _pcd_rule(x: int, n: int, ell: int, m: int) -> tuple[str, tuple[int, int, int, int] | None]:
    """Which operation builds (x, n, ell, m) and from which smaller tuple."""
    big = x << n
    if n == 1:
        return "base", None
    if n == _hamiltonian_level(x, ell):
        sub = m - (big - ell + 1)
        return ("wiggle-full" if sub < 0 else "wiggle-scaled"), (x, n - 1, x << (n - 1), max(sub, 0))
    lower = n - 1
    if lower < ell and m == big - 1 + n - ell:
        return "grid", (x, lower, ell, (x << lower) - 1 + lower - ell)
    return "copy", (x, lower, ell, m - (x << lower))


@lru_cache(maxsize=64)
def _pcd(x: int, n: int, ell: int, m: int, provider: BaseProvider) -> SplitDecomposition:
    op, child = _pcd_rule(x, n, ell, m)
    if op == "base":
        return _base(x, provider)
    if op.startswith("wiggle"):
        return _claim(x, n, ell, m, provider)
    inner = _pcd(*child, provider)
    if op == "copy":
        return self_product_copy(inner)
    try:
        return self_product_grid(inner)
    except ParameterError as exc:
        raise StructureError(
            f"two-colour product hypothesis fails at x={x} n={n} ell={ell} m={m}: {exc}"
        ) from exc


def _claim(x: int, n: int, ell: int, m: int, provider: BaseProvider) -> SplitDecomposition:
    """Wiggle every torus C x C over a Hamiltonian decomposition one level down."""
    big = x << n
    log_k = big - ell + 1
    k = 1 << log_k
    sub = m - log_k
    ham = _pcd(x, n - 1, x << (n - 1), max(sub, 0), provider)
    tori, length = ham.cycles.shape
    full = np.tile(np.arange(length), (tori, 1))
    lifted = lift_wiggle(ham.cycles, full, ham.cycles, full, k, x << (n - 1))
    cycles = lifted.cycles
    torus = np.repeat(np.arange(tori), k)
    parity = np.tile(np.arange(k) % 2, tori)
    halves = 2 * torus + parity
    if sub < 0:
        reps = np.tile(np.arange(cycles.shape[1]), (cycles.shape[0], 1))
        return SplitDecomposition(
            CubeSpec(big), cycles, reps, halves, k // 2, halves, k // 2, True,
            ham.trace + (f"{k}-wiggle of C x C",),
        )
    reps = np.stack([scaled_positions(length, length, k, ham.reps[p]) for p in range(tori)])
    return SplitDecomposition(
        CubeSpec(big), cycles, np.repeat(reps, k, axis=0), ham.set_of[torus], k * ham.a,
        halves, k // 2, True, ham.trace + (f"{k}-wiggle of C x C, scaled sets",),
    )


def power_cube_decomposition(
    x: int, n: int, ell: int, m: int, provider: BaseProvider | None = None
) -> SplitDecomposition:
    """(2^m, 2^{x2^n - ell})-DR-splittable decomposition of Q_{x 2^n} into 2^ell-cycles."""
    if m not in power_cube_range(x, n, ell):
        raise ParameterError(
            f"(x={x}, n={n}, ell={ell}, m={m}) outside the admissible range"
            f" {list(power_cube_range(x, n, ell))[:1] or 'empty'}"
        )
    _check_budget(x << n)
    d = _pcd(x, n, ell, m, provider or BaseProvider())
    expected = power_cube_count(x, n, ell)
    if d.count != expected:
        raise StructureError(f"built {d.count} cycles, expected {expected}")
    return d.canonical()


def pcd_operations(x: int, n: int, ell: int, m: int) -> list[str]:
    """Operations applied when building (x, n, ell, m), innermost last; nothing is built."""
    ops, args = [], (x, n, ell, m)
    while args is not None:
        op, args = _pcd_rule(*args)
        ops.append(op)
    return ops


def clear_cache() -> None:
    _pcd.cache_clear()


# ---------------------------------------------------------------- schedules


@dataclass(frozen=True)
class Step:
    kind: str  # "base" or "combine"
    level: int
    ell: int
    m: int
    q: int


@dataclass(frozen=True)
class ConstructionPlan:
    n: int
    x: int
    y: int
    alpha: int
    bits: tuple[int, ...]
    q: int
    mode: str = "main"
    schedule: tuple[Step, ...] = field(default=())

    @property
    def j(self) -> int:
        return len(self.bits)

    @property
    def count(self) -> int:
        return self.x << (self.bits[0] + self.alpha + self.j - 2 + self.q)

    @property
    def length(self) -> int:
        return (self.n << (self.n - 1)) // self.count

    @property
    def splittable(self) -> int:
        return 1 << (self.j - 1 + self.q)

    @property
    def edges(self) -> int:
        return self.n << (self.n - 1)

    def describe(self) -> str:
        return f"n={self.n} count={self.count} length={self.length} splittable={self.splittable}"


def _q_max(n: int, i1: int, j: int, x: int, mode: str) -> int:
    return n - i1 - (2 * x * j if mode == "main" else j)


def _schedule(levels: tuple[int, ...], q: int, x: int, alpha: int, mode: str) -> tuple[Step, ...]:
    top = levels[0]
    if len(levels) == 1:
        return (Step("base", top, (x << top) - q, q, q),)
    rest = levels[1:]
    z = top - rest[0]
    rest_dim = x * sum(1 << lv for lv in rest)
    q_rest = min(q, _q_max(rest_dim, rest[0] - alpha, len(rest), x, mode))
    ell = (x << top) - (q - q_rest)
    floor = 2 * x + z if mode == "main" else z + 1
    if ell < floor:
        raise ParameterError(f"q={q} needs cycle length 2^{ell} below the floor 2^{floor}")
    step = Step("combine", top, ell, (x << top) - ell + z, q)
    return (step,) + _schedule(rest, q_rest, x, alpha, mode)


def plan_main(n: int, q: int = 0, x: int | None = None, y: int | None = None) -> ConstructionPlan:
    """Main-recursion plan for n = x y 2^alpha with x, y odd and alpha >= 1."""
    if n < 2 or n % 2:
        raise ParameterError(f"n must be even and at least 2, got {n}")
    odd, alpha = odd_part(n)
    if x is None:
        x = odd // y if y else 1
    if y is None:
        y = odd // x if x and odd % x == 0 else 0
    if x < 1 or y < 1 or x % 2 == 0 or y % 2 == 0 or x * y != odd:
        raise ParameterError(f"x={x}, y={y} must be odd with x*y = {odd}")
    bits = binary_bits(y)
    top = _q_max(n, bits[0], len(bits), x, "main")
    if not 0 <= q <= top:
        raise ParameterError(f"q={q} outside [0, {top}] for n={n}, x={x}")
    sched = _schedule(tuple(b + alpha for b in bits), q, x, alpha, "main")
    return ConstructionPlan(n, x, y, alpha, bits, q, "main", sched)


def plan_cbgen(n: int, q: int = 0) -> ConstructionPlan:
    """Plan over the binary expansion of n itself, needing only the 4-cycle base."""
    if n < 2 or n % 2:
        raise ParameterError(f"n must be even and at least 2, got {n}")
    bits = binary_bits(n)
    top = _q_max(n, bits[0], len(bits), 1, "cbgen")
    if not 0 <= q <= top:
        raise ParameterError(f"q={q} outside [0, {top}] for n={n}")
    sched = _schedule(bits, q, 1, 0, "cbgen")
    return ConstructionPlan(n, 1, odd_part(n)[0], 0, bits, q, "cbgen", sched)


def _run(plan: ConstructionPlan, steps: tuple[Step, ...], provider: BaseProvider) -> SplitDecomposition:
    step = steps[0]
    g = _pcd(plan.x, step.level, step.ell, step.m, provider)
    if step.kind == "base":
        return g
    return combine_splittable(g, _run(plan, steps[1:], provider))


def plan_operations(plan: ConstructionPlan) -> set[str]:
    """Every operation the plan would run, computed without materialising."""
    ops = {"combine"} if len(plan.schedule) > 1 else set()
    for step in plan.schedule:
        ops.update(pcd_operations(plan.x, step.level, step.ell, step.m))
    return ops


def materialize(plan: ConstructionPlan, provider: BaseProvider | None = None, check: bool = False) -> SplitDecomposition:
    """Build the plan; with ``check`` the certificate is validated and problems logged."""
    _check_budget(plan.n)
    provider = provider or BaseProvider()
    d = _run(plan, plan.schedule, provider)
    if d.count != plan.count or d.length != plan.length:
        raise StructureError(f"built {d.count} x {d.length}, plan says {plan.count} x {plan.length}")
    d = d.canonical()
    if check:
        problems = check_structure(d)
        if problems:
            log.warning("certificate for %s failed: %s", plan.describe(), "; ".join(problems[:3]))
    return d


def general_decomposition(plan: ConstructionPlan, provider: BaseProvider | None = None, check: bool = False) -> SplitDecomposition:
    if plan.mode != "main":
        raise ParameterError("general_decomposition takes a main-mode plan")
    return materialize(plan, provider, check)


def binary_decomposition(n: int, q: int = 0, check: bool = False) -> SplitDecomposition:
    return materialize(plan_cbgen(n, q), BaseProvider(kind="trivial"), check)


def longest_cycle_decomposition(n: int, y: int, provider: BaseProvider | None = None) -> SplitDecomposition:
    """q = 0 of the main plan: the longest cycles available for this odd factor y."""
    return general_decomposition(plan_main(n, 0, y=y), provider)


# ---------------------------------------------------------------- paths


def _path_candidates(n: int, provider: BaseProvider):
    odd, _ = odd_part(n)
    xs = [1] + [x for x in _divisors(odd) if x != 1]
    for x in xs[:1]:
        yield from _main_plans(n, x)
    top = _q_max(n, binary_bits(n)[0], len(binary_bits(n)), 1, "cbgen")
    for q in range(top + 1):
        yield plan_cbgen(n, q)
    for x in xs[1:]:
        if provider.supports(x):
            yield from _main_plans(n, x)


def _main_plans(n: int, x: int):
    odd, _ = odd_part(n)
    bits = binary_bits(odd // x)
    for q in range(_q_max(n, bits[0], len(bits), x, "main") + 1):
        yield plan_main(n, q, x=x)


def plan_paths(n: int, ell: int, provider: BaseProvider | None = None) -> ConstructionPlan:
    """Pick the first constructible cycle length that ell divides, x = 1 rows first."""
    if n < 2 or n % 2:
        raise ParameterError(f"n must be even and at least 2, got {n}")
    edges = n << (n - 1)
    if ell < 1 or edges % ell:
        raise ParameterError(f"path length {ell} does not divide {edges}")
    if ell * n > 1 << n:
        raise ParameterError(f"path length {ell} exceeds 2^n/n = {(1 << n) / n:.2f}")
    provider = provider or BaseProvider()
    for plan in _path_candidates(n, provider):
        if plan.length % ell == 0 and plan.length > ell:
            return plan
    raise ParameterError(f"no constructible cycle length of Q_{n} is a multiple of {ell}")


def path_decomposition(n: int, ell: int, provider: BaseProvider | None = None) -> np.ndarray:
    """Paths of ell edges partitioning E(Q_n), one row of ell + 1 labels each."""
    plan = plan_paths(n, ell, provider)
    d = materialize(plan, provider)
    return split_cycle_into_paths(d.cycles, ell)


# ---------------------------------------------------------------- tables


@dataclass(frozen=True)
class TableRow:
    n: int
    mode: str
    alpha: int
    x: int
    y: int
    i1: int
    j: int
    slack: int
    count_coef: int
    q_lo: int
    q_hi: int
    length_coef: int
    m_lo: int
    m_hi: int
    constructible: bool

    @property
    def counts(self) -> list[int]:
        return [self.count_coef << q for q in range(self.q_lo, self.q_hi + 1)]

    @property
    def lengths(self) -> list[int]:
        return [self.length_coef << m for m in range(self.m_lo, self.m_hi + 1)]

    def cells(self) -> tuple[str, ...]:
        def coef(c: int) -> str:
            return "" if c == 1 else f"{c}*"

        counts = f"{{{coef(self.count_coef)}2^q : {self.q_lo} <= q <= {self.q_hi}}}"
        if self.m_lo == self.m_hi:
            lengths = f"{{{coef(self.length_coef)}2^{self.m_lo}}}"
        else:
            lengths = f"{{{coef(self.length_coef)}2^m : {self.m_lo} <= m <= {self.m_hi}}}"
        if self.mode == "cbgen":
            head = (self.n, self.i1, self.j, self.slack)
        else:
            head = (self.n, self.alpha, self.x, self.y, self.i1, self.j, self.slack)
        return tuple(str(v) for v in head) + (counts, lengths)


def enumerate_parameters(n: int, mode: str = "main", provider: BaseProvider | None = None) -> list[TableRow]:
    """Counts and lengths reachable for Q_n, one row per odd factor x (or one row for cbgen)."""
    if n < 2 or n % 2:
        raise ParameterError(f"n must be even and at least 2, got {n}")
    provider = provider or BaseProvider()
    edges = n << (n - 1)
    rows = []
    if mode == "cbgen":
        bits = binary_bits(n)
        i1, j = bits[0], len(bits)
        slack = _q_max(n, i1, j, 1, "cbgen")
        if slack >= 0:
            lo = i1 + j - 2
            lc, m_hi = odd_part(edges >> lo)
            rows.append(TableRow(n, mode, 0, 1, n, i1, j, slack, 1, lo, lo + slack, lc, m_hi - slack, m_hi, True))
        return rows
    if mode != "main":
        raise ParameterError(f"unknown mode {mode!r}")
    odd, alpha = odd_part(n)
    for x in _divisors(odd):
        y = odd // x
        bits = binary_bits(y)
        i1, j = bits[0], len(bits)
        slack = _q_max(n, i1, j, x, "main")
        if slack < 0:
            continue
        lo = i1 + alpha + j - 2
        lc, m_hi = odd_part(edges // (x << lo))
        ok = x == 1 or provider.supports(x)
        rows.append(TableRow(n, mode, alpha, x, y, i1, j, slack, x, lo, lo + slack, lc, m_hi - slack, m_hi, ok))
    return rows
