"""Finite simple undirected graphs with stable string labels."""

from __future__ import annotations

import re
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import GraphError, UnknownEdgeError, UnknownVertexError


class Graph:
    """Immutable simple graph.

    Vertices are identified by their labels; ``index(label)`` gives the
    internal position used by numeric kernels.  Edges are stored as sorted
    index pairs ``(i, j)`` with ``i < j``.
    """

    def __init__(self, labels: Sequence, edges: Iterable[tuple[int, int]] = ()):
        labels = tuple(str(x) for x in labels)
        index = {lab: i for i, lab in enumerate(labels)}
        if len(index) != len(labels):
            seen = set()
            dup = next(x for x in labels if x in seen or seen.add(x))
            raise GraphError(f"duplicate vertex label {dup!r}")
        n = len(labels)
        adj: list[set[int]] = [set() for _ in range(n)]
        for i, j in edges:
            i, j = int(i), int(j)
            if not (0 <= i < n and 0 <= j < n):
                raise GraphError(f"edge ({i}, {j}) out of range for {n} vertices")
            if i == j:
                raise GraphError(f"loop at vertex {labels[i]!r}")
            adj[i].add(j)
            adj[j].add(i)
        self.labels = labels
        self._index = index
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self.edges = tuple((i, j) for i in range(n) for j in self._adj[i] if i < j)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edges(cls, pairs: Iterable[tuple], vertices: Iterable = ()) -> "Graph":
        """Build from label pairs.  ``vertices`` fixes order and adds isolated vertices."""
        labels: list[str] = []
        seen: dict[str, int] = {}

        def idx(x) -> int:
            x = str(x)
            if x not in seen:
                seen[x] = len(labels)
                labels.append(x)
            return seen[x]

        for v in vertices:
            idx(v)
        edges = [(idx(a), idx(b)) for a, b in pairs]
        return cls(labels, edges)

    def relabel(self, mapping) -> "Graph":
        """Return a copy with labels replaced by ``mapping[label]`` (dict or callable)."""
        f = mapping if callable(mapping) else mapping.__getitem__
        return Graph([f(x) for x in self.labels], self.edges)

    def induced(self, labels: Iterable) -> "Graph":
        keep = [self.index(x) for x in labels]
        pos = {v: k for k, v in enumerate(keep)}
        edges = [(pos[i], pos[j]) for i, j in self.edges if i in pos and j in pos]
        return Graph([self.labels[v] for v in keep], edges)

    def without_edge(self, i: int, j: int) -> "Graph":
        e = (min(i, j), max(i, j))
        return Graph(self.labels, [x for x in self.edges if x != e])

    def with_vertex(self, label, neighbors: Iterable) -> "Graph":
        label = str(label)
        if label in self._index:
            raise GraphError(f"vertex {label!r} already present")
        n = self.order
        extra = {(self.index(x), n) for x in neighbors}
        return Graph(self.labels + (label,), list(self.edges) + sorted(extra))

    # -- basic queries ------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def size(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {label!r}") from None

    def __contains__(self, label) -> bool:
        return str(label) in self._index

    def neighbors(self, i: int) -> tuple[int, ...]:
        return self._adj[i]

    def neighbor_labels(self, label) -> tuple[str, ...]:
        return tuple(self.labels[j] for j in self._adj[self.index(label)])

    def degree(self, i: int) -> int:
        return len(self._adj[i])

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self._adj], dtype=np.int64)

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.order else 0

    def has_edge(self, i: int, j: int) -> bool:
        return j in self._edge_lookup[i]

    def edge_index(self, i: int, j: int) -> int:
        try:
            return self._edge_pos[(min(i, j), max(i, j))]
        except KeyError:
            raise UnknownEdgeError(
                f"no edge {{{self.labels[i]}, {self.labels[j]}}}"
            ) from None

    @cached_property
    def _edge_lookup(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(a) for a in self._adj)

    @cached_property
    def _edge_pos(self) -> dict:
        return {e: k for k, e in enumerate(self.edges)}

    def edge_labels(self) -> list[tuple[str, str]]:
        return [(self.labels[i], self.labels[j]) for i, j in self.edges]

    # -- array views for kernels -------------------------------------------

    @cached_property
    def adjacency(self) -> np.ndarray:
        n = self.order
        a = np.zeros((n, n), dtype=np.bool_)
        if self.edges:
            e = np.asarray(self.edges, dtype=np.int64)
            a[e[:, 0], e[:, 1]] = True
            a[e[:, 1], e[:, 0]] = True
        a.flags.writeable = False
        return a

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        indptr = np.zeros(self.order + 1, dtype=np.int64)
        indptr[1:] = np.cumsum(self.degrees) if self.order else []
        indices = np.fromiter(
            (j for a in self._adj for j in a), dtype=np.int64, count=2 * self.size
        )
        return indptr, indices

    # -- comparison -----------------------------------------------------------

    def same_as(self, other: "Graph") -> bool:
        """Equal labelled graphs (same label set, same labelled edges)."""
        if set(self.labels) != set(other.labels):
            return False
        return _label_edge_set(self) == _label_edge_set(other)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.labels == other.labels and self.edges == other.edges

    def __hash__(self):
        return hash((self.labels, self.edges))

    def __repr__(self):
        return f"Graph(order={self.order}, size={self.size})"


def _label_edge_set(g: Graph) -> set:
    return {frozenset(e) for e in g.edge_labels()}


def disjoint_union(a: Graph, b: Graph, tags=("a", "b")) -> Graph:
    labels = [f"{tags[0]}:{x}" for x in a.labels] + [f"{tags[1]}:{x}" for x in b.labels]
    off = a.order
    edges = list(a.edges) + [(i + off, j + off) for i, j in b.edges]
    return Graph(labels, edges)


# -- named graphs -------------------------------------------------------------


def complete(n: int, start: int = 1) -> Graph:
    return Graph(range(start, start + n), [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle(n: int, start: int = 1) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(range(start, start + n), [(i, (i + 1) % n) for i in range(n)])


def path(n: int, start: int = 1) -> Graph:
    return Graph(range(start, start + n), [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int, start: int = 1) -> Graph:
    """Parts are ``start .. start+a-1`` and the following ``b`` labels."""
    return Graph(
        range(start, start + a + b), [(i, a + j) for i in range(a) for j in range(b)]
    )


def house(start: int = 1) -> Graph:
    """Square 1-2-3-4 with roof vertex 5 on top of edge 1-4."""
    s = start
    return Graph.from_edges(
        [(s, s + 1), (s + 1, s + 2), (s + 2, s + 3), (s + 3, s), (s, s + 4), (s + 3, s + 4)],
        vertices=range(s, s + 5),
    )


def two_triangles_edge(start: int = 1) -> Graph:
    """``2K3+e``: triangles {1,2,6} and {3,4,5} joined by the edge 5-6."""
    s = start - 1
    return Graph.from_edges(
        [(1 + s, 2 + s), (2 + s, 6 + s), (6 + s, 1 + s),
         (3 + s, 4 + s), (4 + s, 5 + s), (5 + s, 3 + s), (5 + s, 6 + s)],
        vertices=range(start, start + 6),
    )


def empty(n: int = 0, start: int = 1) -> Graph:
    return Graph(range(start, start + n))


def named(spec: str, start: int = 1) -> Graph:
    """Parse names such as ``K4``, ``C5``, ``P3``, ``K2,3``, ``house``, ``2K3+e``."""
    s = spec.strip().replace("_", "").replace("{", "").replace("}", "")
    if s.lower() == "house":
        return house(start)
    if s in ("2K3+e", "2k3+e"):
        return two_triangles_edge(start)
    m = re.fullmatch(r"[Kk](\d+),(\d+)", s)
    if m:
        return complete_bipartite(int(m.group(1)), int(m.group(2)), start)
    m = re.fullmatch(r"([KCPE])(\d+)", s, flags=re.IGNORECASE)
    if m:
        kind, n = m.group(1).upper(), int(m.group(2))
        return {"K": complete, "C": cycle, "P": path, "E": empty}[kind](n, start)
    raise GraphError(f"unknown named graph {spec!r}")
