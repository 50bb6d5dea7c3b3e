"""Bit-labelled hypercube Q_n.

Vertex ``v`` of Q_n is an ``n``-bit integer; bit ``d`` is coordinate ``d`` and
bit 0 is least significant.  An edge is stored as ``(endpoint, dimension)``
with bit ``dimension`` of ``endpoint`` clear.

Products Q_p x Q_r are identified with Q_{p+r} by placing the left factor in
the high bits: ``concat_label(u, v, r) == u << r | v``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class CubeSpec:
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ParameterError(f"cube dimension must be positive, got {self.n}")

    @property
    def vertex_count(self) -> int:
        return 1 << self.n

    @property
    def edge_count(self) -> int:
        return self.n << (self.n - 1)


class CubeEdge(NamedTuple):
    endpoint: int
    dimension: int

    @classmethod
    def between(cls, u: int, v: int) -> "CubeEdge":
        diff = u ^ v
        if diff == 0 or diff & (diff - 1):
            raise ValueError(f"{u:b} and {v:b} are not adjacent")
        d = diff.bit_length() - 1
        return cls(min(u, v), d)

    @property
    def other(self) -> int:
        return self.endpoint ^ (1 << self.dimension)


def edge_count(spec: CubeSpec | int) -> int:
    n = spec.n if isinstance(spec, CubeSpec) else spec
    if n < 1:
        raise ParameterError(f"cube dimension must be positive, got {n}")
    return n << (n - 1)


def concat_label(left: int, right: int, r: int, p: int | None = None) -> int:
    """Label in Q_{p+r} of the product vertex (left, right)."""
    if right < 0 or right >> r:
        raise ParameterError(f"right label {right} does not fit in {r} bits")
    if left < 0 or (p is not None and left >> p):
        raise ParameterError(f"left label {left} does not fit in {p} bits")
    return (left << r) | right


def split_label(label: int, r: int) -> tuple[int, int]:
    return label >> r, label & ((1 << r) - 1)


def enumerate_edges(spec: CubeSpec | int) -> Iterator[CubeEdge]:
    """All edges, dimension-major then endpoint ascending."""
    n = spec.n if isinstance(spec, CubeSpec) else spec
    for d in range(n):
        bit = 1 << d
        for v in range(1 << n):
            if not v & bit:
                yield CubeEdge(v, d)


def edge_index(endpoint, dimension, n: int):
    """Perfect index of a canonical edge in ``range(edge_count(n))``.

    ``d * 2**(n-1)`` plus the rank of the endpoint among vertices with bit
    ``d`` clear.  Works elementwise on numpy arrays.
    """
    endpoint = np.asarray(endpoint, dtype=np.int64)
    dimension = np.asarray(dimension, dtype=np.int64)
    low = endpoint & ((np.int64(1) << dimension) - 1)
    high = (endpoint >> (dimension + 1)) << dimension
    return (dimension << (n - 1)) + (high | low)


def edges_of_walk(vertices: np.ndarray, closed: bool = True) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split consecutive vertex pairs of each row into (endpoint, dimension, ok).

    ``vertices`` has shape (pieces, length).  ``ok`` marks pairs that differ in
    exactly one bit; for other pairs the dimension value is meaningless.
    """
    v = np.asarray(vertices, dtype=np.int64)
    if v.ndim == 1:
        v = v[None, :]
    nxt = np.roll(v, -1, axis=1) if closed else v[:, 1:]
    cur = v if closed else v[:, :-1]
    diff = cur ^ nxt
    ok = (diff != 0) & ((diff & (diff - 1)) == 0)
    safe = np.where(ok, diff, 1)
    dim = np.zeros(safe.shape, dtype=np.int64)
    # integer log2 of a power of two
    tmp = safe.copy()
    for shift in (32, 16, 8, 4, 2, 1):
        big = tmp >= (np.int64(1) << shift)
        dim += np.where(big, shift, 0)
        tmp = np.where(big, tmp >> shift, tmp)
    endpoint = np.minimum(cur, nxt)
    return endpoint, dim, ok
