"""Connectivity, distances, diameter and girth.

Unreachable distances, the diameter of a disconnected graph and the girth of
a forest are all reported as ``math.inf``.
"""

from __future__ import annotations

import math
from collections import deque
from functools import lru_cache

import numpy as np

from . import _kernels
from .graph import Graph


@lru_cache(maxsize=256)
def _dist_cached(g: Graph) -> np.ndarray:
    d = _kernels.all_pairs_distances(g)
    d.flags.writeable = False
    return d


def distance_matrix(g: Graph) -> np.ndarray:
    """``int32`` matrix of BFS distances, ``-1`` where unreachable (read-only)."""
    return _dist_cached(g)


def is_connected(g: Graph) -> bool:
    if g.order == 0:
        return True
    return bool((distance_matrix(g)[0] >= 0).all())


def components(g: Graph) -> list[list[str]]:
    seen = np.zeros(g.order, dtype=bool)
    d = distance_matrix(g)
    out = []
    for v in range(g.order):
        if not seen[v]:
            members = np.flatnonzero(d[v] >= 0)
            seen[members] = True
            out.append([g.labels[i] for i in members])
    return out


def distance(g: Graph, u, v) -> float:
    i, j = g.index(u), g.index(v)
    d = int(distance_matrix(g)[i, j])
    return math.inf if d < 0 else d


def eccentricities(g: Graph) -> np.ndarray:
    d = distance_matrix(g)
    if (d < 0).any():
        return np.full(g.order, np.inf)
    return d.max(axis=1)


def diameter(g: Graph) -> float:
    if g.order == 0:
        return 0
    d = distance_matrix(g)
    if (d < 0).any():
        return math.inf
    return int(d.max())


def girth(g: Graph) -> float:
    c = _kernels.girth(g)
    return math.inf if c == 0 else c


def shortest_cycle_through_edge(g: Graph, i: int, j: int) -> float:
    """Length of a shortest cycle using edge ``{i, j}``; inf if the edge is a bridge."""
    g.edge_index(i, j)
    dist = {i: 0}
    queue = deque([i])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w in dist or (u == i and w == j):
                continue
            dist[w] = dist[u] + 1
            if w == j:
                return dist[w] + 1
            queue.append(w)
    return math.inf


def bridges(g: Graph) -> list[tuple[int, int]]:
    return [e for e in g.edges if shortest_cycle_through_edge(g, *e) == math.inf]


def is_biconnected(g: Graph) -> bool:
    """2-connected: at least 3 vertices, connected, and no cut vertex."""
    if g.order < 3 or not is_connected(g):
        return False
    for v in g.labels:
        rest = [x for x in g.labels if x != v]
        if not is_connected(g.induced(rest)):
            return False
    return True
