"""Product operators on splittable decompositions of hypercubes.

All products use ``concat_label``: the left factor lands in the high bits,
so a vertex (u, v) of Q_p x Q_r is ``u << r | v``.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .cube_graph import CubeSpec, edges_of_walk
from .deco_model import SplitDecomposition, check_structure, normalize_ids
from .errors import ParameterError, StructureError
from .torus_wiggle import SubdividedTorus, anchored_product, lift_wiggle


def _edges_of(cycles: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    ep, dim, ok = edges_of_walk(cycles)
    if not ok.all():
        raise StructureError("input cycles contain a non-edge")
    return ep.ravel(), dim.ravel()


def product_by_spanning(
    left: Sequence[np.ndarray], right: Sequence[np.ndarray], p: int, r: int
) -> list[tuple[np.ndarray, np.ndarray]]:
    """Edge sets of G_i x G'_i for paired spanning subgraphs given as cycle arrays.

    Returns canonical (endpoint, dimension) arrays in Q_{p+r}.
    """
    if len(left) != len(right):
        raise ParameterError(f"{len(left)} left parts but {len(right)} right parts")
    out = []
    rv = np.arange(1 << r, dtype=np.int64)
    lv = np.arange(1 << p, dtype=np.int64)
    for g, h in zip(left, right):
        ge, gd = _edges_of(np.atleast_2d(g))
        he, hd = _edges_of(np.atleast_2d(h))
        vert_ep = ((ge[:, None] << r) | rv[None, :]).ravel()
        vert_d = np.repeat(gd + r, rv.size)
        horiz_ep = ((lv[:, None] << r) | he[None, :]).ravel()
        horiz_d = np.tile(hd, lv.size)
        out.append((np.concatenate([vert_ep, horiz_ep]), np.concatenate([vert_d, horiz_d])))
    return out


def product_by_anchoring(left: SplitDecomposition, right: SplitDecomposition) -> list[SubdividedTorus]:
    """Anchored products of every left cycle with every right cycle.

    Both inputs must be a single splitting set, so the tori partition the
    edges of the product.
    """
    for name, d in (("left", left), ("right", right)):
        problems = check_structure(d) if d.num_sets == 1 else [f"{d.num_sets} splitting sets"]
        if problems:
            raise StructureError(f"{name} input: {problems[0]}")
    r = right.ambient.n
    return [
        anchored_product(left.represented(s), right.represented(t), shift=r)
        for s in range(left.count)
        for t in range(right.count)
    ]


def combine_splittable(g: SplitDecomposition, gp: SplitDecomposition) -> SplitDecomposition:
    """2-wiggle every anchored product C_s x C'_t with s, t in matching splitting sets.

    ``g`` is (a, b)-DR-splittable with even cycle length, ``gp`` is
    c-splittable, both with even representing sets and the same number of
    splitting sets.  The result is 2bc-splittable on Q_{p+r}.
    """
    if g.b is None or g.subset_of is None or not g.dr:
        raise ParameterError("left factor must be (a, b)-DR-splittable")
    if g.length % 2:
        raise ParameterError(f"left cycle length {g.length} is odd")
    if g.reps.shape[1] % 2 or gp.reps.shape[1] % 2:
        raise ParameterError("representing sets must have even size")
    sets_g, sets_h = normalize_ids(g.set_of), normalize_ids(gp.set_of)
    m = int(sets_g.max()) + 1
    if m != int(sets_h.max()) + 1:
        raise ParameterError(f"{m} splitting sets on the left, {int(sets_h.max()) + 1} on the right")
    subsets = normalize_ids(g.subset_of)
    c = gp.a

    right_by_set = np.argsort(sets_h, kind="stable").reshape(m, c)
    order = np.lexsort((np.arange(g.count), subsets, sets_g))
    ps = np.repeat(order, c)
    pt = right_by_set[sets_g[order]].ravel()

    r = gp.ambient.n
    lifted = lift_wiggle(g.cycles[ps], g.reps[ps], gp.cycles[pt], gp.reps[pt], 2, r, with_reps=True)
    if isinstance(lifted.cycles, list) or isinstance(lifted.reps, list):
        raise StructureError("wiggle cycles came out with unequal lengths")
    set_of = np.repeat(subsets[ps], 2)
    return SplitDecomposition(
        ambient=CubeSpec(g.ambient.n + r),
        cycles=lifted.cycles,
        reps=lifted.reps,
        set_of=normalize_ids(set_of),
        a=2 * g.b * c,
        trace=(f"combine Q_{g.ambient.n} x Q_{r}",),
    )


def _copies(d: SplitDecomposition) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Horizontal copies (u, C) then vertical copies (C, u), u ascending."""
    p = d.ambient.n
    verts = np.arange(1 << p, dtype=np.int64)
    horiz = (verts[:, None, None] << p) | d.cycles[None, :, :]
    vert = (d.cycles[None, :, :] << p) | verts[:, None, None]
    cycles = np.concatenate([horiz, vert]).reshape(-1, d.length)
    src = np.tile(np.arange(d.count), 2 * verts.size)
    anchor = np.tile(np.repeat(verts, d.count), 2)
    return cycles, src, anchor


def self_product_copy(d: SplitDecomposition) -> SplitDecomposition:
    """Copy the decomposition into every row and column of G x G."""
    if d.b is None or d.subset_of is None:
        raise ParameterError("input must carry splitting subsets")
    cycles, src, _ = _copies(d)
    half = src.size // 2
    vertical = np.arange(src.size) >= half
    sets = normalize_ids(d.set_of)
    subs = normalize_ids(d.subset_of)
    nv = d.ambient.vertex_count
    return SplitDecomposition(
        ambient=CubeSpec(2 * d.ambient.n),
        cycles=cycles,
        reps=d.reps[src],
        set_of=sets[src] + vertical * (int(sets.max()) + 1),
        subset_of=subs[src] + vertical * (int(subs.max()) + 1),
        a=d.a * nv,
        b=d.b * nv,
        dr=d.dr,
        trace=d.trace + ("row and column copies",),
    )


def self_product_grid(d: SplitDecomposition) -> SplitDecomposition:
    """Row and column copies grouped per splitting set, reps from a 2-colouring.

    Needs |V(G)|/a even and greater than two; the gaps double.
    """
    nv = d.ambient.vertex_count
    ratio = nv // d.a if nv % d.a == 0 else None
    if ratio is None or ratio % 2 or ratio <= 2:
        raise ParameterError(f"|V(G)|/a = {nv}/{d.a} must be an even integer greater than two")
    if d.b is None or d.subset_of is None or not d.dr:
        raise ParameterError("input must be (a, b)-DR-splittable")
    sets = normalize_ids(d.set_of)
    subs = normalize_ids(d.subset_of)
    r = d.reps.shape[1]
    rank = np.full((int(sets.max()) + 1, nv), -1, dtype=np.int64)
    rank[np.repeat(sets, r), d.rep_labels().ravel()] = np.tile(np.arange(r), d.count)
    if np.any(rank < 0):
        raise StructureError("representing sets do not cover the vertices")

    cycles, src, anchor = _copies(d)
    half = src.size // 2
    vertical = np.arange(src.size) >= half
    parity = (rank[sets[src], anchor] + vertical) % 2
    cols = parity[:, None] + 2 * np.arange(r // 2)[None, :]
    reps = np.take_along_axis(d.reps[src], cols, axis=1)
    return SplitDecomposition(
        ambient=CubeSpec(2 * d.ambient.n),
        cycles=cycles,
        reps=reps,
        set_of=sets[src],
        subset_of=subs[src] + vertical * (int(subs.max()) + 1),
        a=2 * d.a * nv,
        b=d.b * nv,
        dr=True,
        trace=d.trace + ("two-coloured row and column copies",),
    )

