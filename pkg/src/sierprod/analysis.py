"""Planarity of products, metric bounds and cycle lengths through connecting edges."""

from __future__ import annotations

import logging
import math
from itertools import combinations
from math import prod
from typing import Sequence

from .config import limits
from .errors import GraphError, SearchOverflow
from .graph import Graph, complete
from .iso import isomorphism
from .metrics import girth, is_connected, shortest_cycle_through_edge
from .planarity import (
    PlanarityVerdict,
    apex_extension,
    cyclic_orders,
    find_planar_rotation,
    is_outerplanar,
    is_planar,
)
from .product import ProductResult, VertexMap, sierpinski_product

log = logging.getLogger(__name__)


def _is_identity_map(g: Graph, h: Graph, f: VertexMap) -> bool:
    return g.same_as(h) and all(f(x) == x for x in g.labels)


def product_planarity(g: Graph, h: Graph, f: VertexMap,
                      check_embedding: bool = False) -> PlanarityVerdict:
    """Planarity of ``G ⊗_f H`` decided on the product itself, with a report
    of the factor-level conditions that characterise it.

    ``conditions`` holds ``G_planar``, ``apex_planar`` per vertex of G, and the
    two shortcuts ``equal_identity`` (G = H, f = id: planar iff G outerplanar
    or K4) and ``low_degree`` (G planar, Δ(G) ≤ 3, H outerplanar: planar).
    ``consistent`` is False if the direct verdict contradicts any of them.
    """
    if not (is_connected(g) and is_connected(h)):
        raise GraphError("product planarity assumes connected factors")
    prod_graph = sierpinski_product(g, h, f).graph
    verdict = is_planar(prod_graph)
    g_planar = is_planar(g).planar
    apex = {x: is_planar(apex_extension(h, g, f, x)).planar for x in g.labels}
    necessary = g_planar and all(apex.values())
    cond: dict = {
        "G_planar": g_planar,
        "apex_planar": apex,
        "necessary_conditions_hold": necessary,
    }
    consistent = necessary or not verdict.planar

    if _is_identity_map(g, h, f):
        outer = is_outerplanar(g)
        is_k4 = isomorphism(g, complete(4)) is not None
        cond["equal_identity"] = {"applies": True, "G_outerplanar": outer, "G_is_K4": is_k4,
                                  "predicts_planar": outer or is_k4}
        consistent &= verdict.planar == (outer or is_k4)
    else:
        cond["equal_identity"] = {"applies": False}

    h_outer = is_outerplanar(h)
    low = g_planar and g.max_degree <= 3 and h_outer
    cond["low_degree"] = {"applies": low, "max_degree_G": g.max_degree, "H_outerplanar": h_outer}
    if low:
        consistent &= verdict.planar

    if check_embedding:
        try:
            emb = embedding_condition_check(g, h, f)
        except SearchOverflow as exc:
            cond["embedding_condition"] = {"evaluated": False, "reason": str(exc)}
        else:
            cond["embedding_condition"] = {"evaluated": True, "holds": emb}
            consistent &= emb == verdict.planar

    cond["consistent"] = consistent
    if not consistent:
        log.warning("planarity report inconsistent for product of %r and %r", g, h)
    verdict.conditions = cond
    return verdict


def _apex_multigraph(h: Graph, g: Graph, f: VertexMap, vertex: str):
    """``H + g`` keeping one edge per neighbour of g (parallel edges allowed).

    Returns (n, edges, apex index, dart at the apex for each neighbour).
    """
    n = h.order + 1
    apex = h.order
    edges = list(h.edges)
    apex_dart = {}
    for nb in g.neighbor_labels(vertex):
        apex_dart[nb] = 2 * len(edges)
        edges.append((apex, h.index(f(nb))))
    return n, edges, apex, apex_dart


def embedding_condition_report(g: Graph, h: Graph, f: VertexMap,
                               limit: int | None = None) -> dict:
    """Exhaustive search for a plane embedding of G whose local rotations can
    each be realised, reversed, around the extra vertex of ``H + g``.

    For every vertex and every cyclic order of its neighbours the report says
    whether ``H + g`` admits it reversed and whether it admits it unreversed.
    The two always coincide because mirror images of planar rotation systems
    are planar; both are kept so the report shows it.
    """
    limit = limits().max_embedding_vertices if limit is None else limit
    if not (is_connected(g) and is_connected(h)):
        raise GraphError("the embedding condition assumes connected factors")
    if g.order > limit or h.order + 1 > limit:
        raise SearchOverflow("vertices for embedding enumeration", limit,
                             max(g.order, h.order + 1))
    if g.order == 1:
        planar = is_planar(h).planar
        return {"holds": planar, "vertices": {}, "G_rotation": {}}

    per_vertex = {}
    allowed_g = {}
    g_out = {v: [] for v in range(g.order)}
    for e, (a, b) in enumerate(g.edges):
        g_out[a].append((2 * e, b))
        g_out[b].append((2 * e + 1, a))
    for a, label in enumerate(g.labels):
        n, edges, apex, apex_dart = _apex_multigraph(h, g, f, label)
        nbrs = list(g.neighbor_labels(label))
        results = []
        ok_rows = []
        for order in cyclic_orders(nbrs):
            rev = tuple(apex_dart[x] for x in reversed(order))
            fwd = tuple(apex_dart[x] for x in order)
            reversed_ok = find_planar_rotation(n, edges, {apex: [rev]}) is not None
            direct_ok = find_planar_rotation(n, edges, {apex: [fwd]}) is not None
            results.append({"order": list(order), "reversed": reversed_ok, "direct": direct_ok})
            if reversed_ok:
                dart_of = {nb: d for d, nb in g_out[a]}
                ok_rows.append(tuple(dart_of[g.index(x)] for x in order))
        per_vertex[label] = results
        allowed_g[a] = ok_rows
    found = find_planar_rotation(g.order, list(g.edges), allowed_g)
    rotation = {}
    if found is not None:
        for a, darts in found.items():
            rotation[g.labels[a]] = [
                g.labels[g.edges[d // 2][1 - d % 2]] for d in darts
            ]
    return {"holds": found is not None, "vertices": per_vertex, "G_rotation": rotation}


def embedding_condition_check(g: Graph, h: Graph, f: VertexMap,
                              limit: int | None = None) -> bool:
    return embedding_condition_report(g, h, f, limit)["holds"]


def genus_lower_bound(gamma_g: int, order_g: int, gamma_h: int) -> int:
    """γ(G) + |G|·γ(H)."""
    for name, v in (("gamma_g", gamma_g), ("order_g", order_g), ("gamma_h", gamma_h)):
        if v < 0:
            raise ValueError(f"{name} must be nonnegative")
    return gamma_g + order_g * gamma_h


def diameter_recursion(diams: Sequence[int]) -> int:
    """a_1 = d_1, a_m = (d_m + 1)·a_{m-1} + d_m, with ``diams`` given as d_1..d_m."""
    if not diams:
        raise ValueError("need at least one diameter")
    a = diams[0]
    for d in diams[1:]:
        a = (d + 1) * a + d
    return a


def diameter_subset_sum(diams: Sequence[int]) -> int:
    """Sum over non-empty index subsets of the product of the chosen diameters."""
    m = len(diams)
    if m > 22:
        # the subset sum factors as prod(1 + d) - 1
        return prod(1 + d for d in diams) - 1
    return sum(prod(c) for r in range(1, m + 1) for c in combinations(diams, r))


def diameter_bound(diams: Sequence[int]) -> int:
    """Upper bound on the diameter of a chain product from its factors' diameters.

    ``diams`` lists d_1 (innermost factor) first; the bound is symmetric, so
    the order only matters for the recursion's intermediate values.
    """
    if any(math.isinf(d) for d in diams):
        return math.inf
    rec = diameter_recursion(diams)
    closed = diameter_subset_sum(diams)
    if rec != closed:
        raise AssertionError(f"recursion {rec} != closed form {closed}")
    return rec


def connecting_edge_cycle_check(p: ProductResult) -> dict:
    """Shortest cycle through each connecting edge, against the lower bounds
    derived from the corresponding edge of G.

    For G-edge e whose shortest cycle in G has length c_e: the product cycle is
    absent when c_e is, at least c_e otherwise, and at least 2·c_e when the
    map is locally injective.
    """
    if p.outer is None:
        return {"edges": [], "locally_injective": None, "girth_G": None, "holds": True}
    g, k = p.outer, p.graph
    li = p.vmap.is_locally_injective()
    rows = []
    holds = True
    for i, j in sorted(p.connecting_edges):
        a, _ = p.split(i)
        b, _ = p.split(j)
        c_g = shortest_cycle_through_edge(g, a, b)
        c_k = shortest_cycle_through_edge(k, i, j)
        if math.isinf(c_g):
            ok = math.isinf(c_k)
        else:
            ok = c_k >= c_g and (not li or c_k >= 2 * c_g)
        holds &= ok
        rows.append({
            "G_edge": [g.labels[a], g.labels[b]],
            "product_edge": [k.labels[i], k.labels[j]],
            "shortest_cycle_G": None if math.isinf(c_g) else c_g,
            "shortest_cycle_product": None if math.isinf(c_k) else c_k,
            "holds": ok,
        })
    gg = girth(g)
    return {
        "edges": rows,
        "locally_injective": li,
        "girth_G": None if math.isinf(gg) else gg,
        "holds": holds,
    }
