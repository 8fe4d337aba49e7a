"""Small graphs up to isomorphism, by canonical augmentation.

Canonical forms are computed by brute force over all vertex orders, which
is fine up to seven vertices (5040 orders) and is what the scan needs.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .graph import Graph
from .metrics import is_biconnected, is_connected

MAX_CANONICAL = 8


@lru_cache(maxsize=None)
def _perms(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)


@lru_cache(maxsize=None)
def _upper(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n, 1)


def canonical_form(g: Graph) -> tuple[int, bytes]:
    """Lexicographically largest upper-triangle bit string over all relabellings."""
    n = g.order
    if n > MAX_CANONICAL:
        raise ValueError(f"canonical form limited to {MAX_CANONICAL} vertices")
    if n < 2:
        return n, b""
    a = g.adjacency
    p = _perms(n)
    iu, ju = _upper(n)
    bits = a[p[:, iu], p[:, ju]]  # (n!, n(n-1)/2)
    packed = np.packbits(bits, axis=1)
    best = max(bytes(row) for row in packed)
    return n, best


def _from_form(n: int, form: bytes) -> Graph:
    iu, ju = _upper(n)
    bits = np.unpackbits(np.frombuffer(form, dtype=np.uint8))[: len(iu)]
    edges = [(int(i), int(j)) for i, j, b in zip(iu, ju, bits) if b]
    return Graph([str(k + 1) for k in range(n)], edges)


@lru_cache(maxsize=None)
def _all_forms(n: int) -> tuple:
    if n == 0:
        return ((0, b""),)
    if n == 1:
        return ((1, b""),)
    out = set()
    for prev in _all_forms(n - 1):
        base = _from_form(*prev)
        new = str(n)
        for r in range(n):
            for nbrs in combinations(base.labels, r):
                out.add(canonical_form(base.with_vertex(new, nbrs)))
    return tuple(sorted(out, key=lambda x: (_edge_count(x), x[1])))


def _edge_count(form) -> int:
    return sum(bin(b).count("1") for b in form[1])


def graphs(n: int) -> list[Graph]:
    """One representative per isomorphism class on ``n`` vertices, labelled 1..n,
    ordered by edge count and then canonical code."""
    return [_from_form(*f) for f in _all_forms(n)]


def connected_graphs(n: int) -> list[Graph]:
    return [g for g in graphs(n) if is_connected(g)]


def biconnected_graphs(n: int) -> list[Graph]:
    """2-connected graphs; these need at least three vertices."""
    if n < 3:
        return []
    return [g for g in graphs(n) if is_biconnected(g)]
