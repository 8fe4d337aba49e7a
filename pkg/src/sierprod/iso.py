"""Automorphism groups and isomorphism witnesses by pruned backtracking.

Vertices are first coloured by degree and distance profile, the colouring is
refined to an equitable one, and the backtracking then only tries images of
the same colour whose distances to every already-placed vertex agree.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import _kernels
from .config import limits
from .errors import SearchOverflow
from .graph import Graph
from .groups import PermGroup
from .metrics import distance_matrix


def _initial_signature(g: Graph, d: np.ndarray) -> list[tuple]:
    n = g.order
    out = []
    for v in range(n):
        row = d[v]
        hist = np.bincount(row[row >= 0], minlength=1)
        out.append((int(g.degrees[v]), int((row < 0).sum()), tuple(hist.tolist())))
    return out


def refine_colors(graphs: Sequence[Graph]) -> list[np.ndarray]:
    """Joint equitable colouring of several graphs.

    Colour ids are canonical across the inputs: vertices of different graphs
    get the same colour only if no refinement step can tell them apart.
    """
    sigs = []
    for g in graphs:
        sigs.append(_initial_signature(g, distance_matrix(g)))
    palette = {s: k for k, s in enumerate(sorted({s for ss in sigs for s in ss}))}
    colors = [np.array([palette[s] for s in ss], dtype=np.int64) for ss in sigs]
    ncolors = len(palette)
    while True:
        new_sigs = []
        for g, c in zip(graphs, colors):
            new_sigs.append([
                (int(c[v]), tuple(sorted(int(c[w]) for w in g.neighbors(v))))
                for v in range(g.order)
            ])
        palette = {s: k for k, s in enumerate(sorted({s for ss in new_sigs for s in ss}))}
        colors = [np.array([palette[s] for s in ss], dtype=np.int64) for ss in new_sigs]
        if len(palette) == ncolors:
            return colors
        ncolors = len(palette)


def search_order(d: np.ndarray, colors: np.ndarray) -> np.ndarray:
    """Greedy vertex order: always place a vertex from the smallest current cell.

    Cells are the classes of (colour, distances to already-placed vertices),
    which any automorphism must preserve.
    """
    n = len(colors)
    keys = colors[:, None].copy()
    placed = np.zeros(n, dtype=bool)
    order = []
    for _ in range(n):
        _, inv, counts = np.unique(keys, axis=0, return_inverse=True, return_counts=True)
        size = counts[inv.ravel()].astype(np.int64)
        size[placed] = n + 1
        v = int(np.argmin(size))
        order.append(v)
        placed[v] = True
        keys = np.concatenate([keys, d[:, v:v + 1].astype(np.int64)], axis=1)
    return np.array(order, dtype=np.int64)


def _check_size(*graphs: Graph) -> None:
    cap = limits().max_aut_vertices
    for g in graphs:
        if g.order > cap:
            raise SearchOverflow("vertex count for automorphism search", cap, g.order)


def automorphisms(g: Graph, max_order: int | None = None) -> PermGroup:
    """Full automorphism group, elements in lexicographic order.

    Raises ``SearchOverflow`` when the graph is larger than the configured
    vertex limit or the group exceeds ``max_order`` elements.
    """
    _check_size(g)
    if g.order == 0:
        return PermGroup(np.zeros((1, 0), np.int64), g.labels)
    cap = limits().max_group_order if max_order is None else max_order
    d = distance_matrix(g)
    (c,) = refine_colors([g])
    order = search_order(d, c)
    rows = _kernels.iso_search(d, c, d, c, order, cap + 1)
    if rows.shape[0] > cap:
        raise SearchOverflow("automorphism group order", cap)
    return PermGroup(rows, g.labels)


def isomorphism(a: Graph, b: Graph) -> dict[str, str] | None:
    """A label bijection ``a -> b`` preserving edges, or ``None``."""
    _check_size(a, b)
    if a.order != b.order or a.size != b.size:
        return None
    if sorted(a.degrees.tolist()) != sorted(b.degrees.tolist()):
        return None
    if a.order == 0:
        return {}
    ca, cb = refine_colors([a, b])
    if sorted(ca.tolist()) != sorted(cb.tolist()):
        return None
    da, db = distance_matrix(a), distance_matrix(b)
    rows = _kernels.iso_search(da, ca, db, cb, search_order(da, ca), 1)
    if rows.shape[0] == 0:
        return None
    return {a.labels[i]: b.labels[int(j)] for i, j in enumerate(rows[0])}


is_isomorphic = isomorphism
