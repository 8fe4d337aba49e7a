"""Planarity, outerplanarity and rotation systems.

The planarity decision itself is networkx's left-right test; every planar
answer is re-checked here by tracing the faces of the returned rotation
system against Euler's formula.  Exhaustive rotation-system search (used for
embedding constraints) runs through the kernels in ``_kernels``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from math import prod
from typing import Sequence

import networkx as nx
import numpy as np

from . import _kernels
from .config import limits
from .errors import GraphError, SearchOverflow
from .graph import Graph
from .metrics import components


def to_networkx(g: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(g.labels)
    out.add_edges_from(g.edge_labels())
    return out


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic neighbour order around every vertex of a simple graph."""

    rotation: dict

    def faces(self) -> list[list[tuple[str, str]]]:
        """Faces as lists of directed edges.  An isolated vertex is one empty face."""
        nxt = {}
        for v, nbrs in self.rotation.items():
            k = len(nbrs)
            for t, w in enumerate(nbrs):
                nxt[(v, w)] = nbrs[(t + 1) % k]
        seen = set()
        faces = []
        for dart in sorted(nxt):
            if dart in seen:
                continue
            face = []
            d = dart
            while d not in seen:
                seen.add(d)
                face.append(d)
                u, v = d
                d = (v, nxt[(v, u)])
            faces.append(face)
        faces.extend([] for v, nbrs in self.rotation.items() if not nbrs)
        return faces

    def is_planar_for(self, g: Graph) -> bool:
        """Consistent with ``g`` and of genus 0 on every component."""
        if set(self.rotation) != set(g.labels):
            return False
        for v in g.labels:
            if sorted(self.rotation[v]) != sorted(g.neighbor_labels(v)):
                return False
        face_of = {}
        for k, face in enumerate(self.faces()):
            for d in face:
                face_of[d] = k
        for comp in components(g):
            members = set(comp)
            sub_edges = sum(len(self.rotation[v]) for v in comp) // 2
            sub_faces = {face_of[(v, w)] for v in comp for w in self.rotation[v]}
            nf = len(sub_faces) if sub_edges else 1
            if len(members) - sub_edges + nf != 2:
                return False
        return True

    def to_dict(self) -> dict:
        return {v: list(n) for v, n in self.rotation.items()}


@dataclass
class PlanarityVerdict:
    planar: bool
    embedding: RotationSystem | None = None
    kuratowski: list | None = None
    kuratowski_kind: str | None = None
    conditions: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"planar": self.planar, "conditions": self.conditions}
        if self.embedding is not None:
            out["embedding"] = self.embedding.to_dict()
        if self.kuratowski is not None:
            out["kuratowski"] = {"kind": self.kuratowski_kind,
                                 "edges": [list(e) for e in self.kuratowski]}
        return out


def _kuratowski_kind(edges: Sequence[tuple[str, str]]) -> str:
    deg: dict[str, int] = {}
    for a, b in edges:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    branch = [v for v, d in deg.items() if d >= 3]
    return "K5" if len(branch) == 5 else "K3,3"


def is_planar(g: Graph) -> PlanarityVerdict:
    ok, cert = nx.check_planarity(to_networkx(g), counterexample=True)
    if ok:
        rot = RotationSystem({v: tuple(cert.neighbors_cw_order(v)) for v in g.labels})
        if not rot.is_planar_for(g):
            raise AssertionError("planarity engine returned an invalid embedding")
        return PlanarityVerdict(True, embedding=rot)
    edges = sorted(tuple(sorted(e)) for e in cert.edges())
    return PlanarityVerdict(False, kuratowski=edges, kuratowski_kind=_kuratowski_kind(edges))


def _fresh_label(g: Graph, base: str) -> str:
    label = base
    while label in g:
        label += "'"
    return label


def is_outerplanar(g: Graph) -> bool:
    """Planar after adding one vertex adjacent to every vertex."""
    apex = _fresh_label(g, "apex")
    return is_planar(g.with_vertex(apex, g.labels)).planar


def apex_extension(h: Graph, g: Graph, f, vertex) -> Graph:
    """``H + g``: H plus a new vertex adjacent to ``f(N(g))`` (as a set)."""
    nbrs = {f(x) for x in g.neighbor_labels(vertex)}
    return h.with_vertex(_fresh_label(h, f"{vertex}_H"), sorted(nbrs, key=h.index))


# -- exhaustive rotation-system search ----------------------------------------------


def cyclic_orders(items: Sequence) -> list[tuple]:
    """All cyclic orders of ``items``, each listed once, starting at ``items[0]``."""
    items = list(items)
    if len(items) <= 1:
        return [tuple(items)]
    first, rest = items[0], items[1:]
    return [(first,) + p for p in permutations(rest)]


def find_planar_rotation(n: int, edges: Sequence[tuple[int, int]],
                         allowed: dict | None = None,
                         max_tries: int | None = None) -> dict | None:
    """Search all rotation systems of a connected multigraph for a planar one.

    ``edges`` may repeat pairs.  Dart ``2e`` leaves ``edges[e][0]`` and dart
    ``2e + 1`` leaves ``edges[e][1]``.  ``allowed[v]`` optionally restricts
    vertex ``v`` to the listed cyclic dart orders.  Returns the chosen dart
    order per vertex, or ``None`` when no planar rotation system exists.
    """
    allowed = allowed or {}
    m = len(edges)
    if m == 0:
        if n > 1:
            raise GraphError("rotation search needs a connected graph")
        return {v: () for v in range(n)}
    out: list[list[int]] = [[] for _ in range(n)]
    for e, (a, b) in enumerate(edges):
        out[a].append(2 * e)
        out[b].append(2 * e + 1)
    rows: list[list[tuple]] = []
    for v in range(n):
        if v in allowed:
            opts = [tuple(r) for r in allowed[v]]
            for r in opts:
                if sorted(r) != sorted(out[v]):
                    raise GraphError(f"allowed rotation at {v} does not match its darts")
        else:
            opts = cyclic_orders(out[v])
        if not opts:
            return None
        rows.append(opts)
    cap = limits().max_rotation_systems if max_tries is None else max_tries
    total = prod(len(r) for r in rows)
    if total > cap:
        raise SearchOverflow("rotation systems to enumerate", cap, total)
    width = max(len(out[v]) for v in range(n))
    flat = [r for opts in rows for r in opts]
    tab = np.full((len(flat), max(width, 1)), -1, np.int64)
    for k, r in enumerate(flat):
        tab[k, :len(r)] = r
    ptr = np.zeros(n + 1, np.int64)
    ptr[1:] = np.cumsum([len(r) for r in rows])
    deg = np.array([len(o) for o in out], np.int64)
    target = 2 - n + m
    choice = _kernels.rotation_search(tab, ptr, deg, 2 * m, target, total)
    if choice[0] < 0:
        return None
    return {v: rows[v][int(choice[v])] for v in range(n)}
