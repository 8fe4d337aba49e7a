"""Exhaustive small-instance search for counterexamples to two structural claims
about automorphisms of Sierpiński products.

``edge_partition``: for 2-connected G and H and any f, every automorphism of
G ⊗_f H preserves the inner/connecting edge split.

``semidirect``: for connected G, H of equal order and bijective f, the
partition-respecting group is the semidirect product of the diagonal lifts
and the per-copy group.

Maps are taken up to the action of Aut(G) × Aut(H) (f ↦ β∘f∘α), which sends
products to isomorphic products and preserves both properties.
"""

from __future__ import annotations

import hashlib
from itertools import permutations, product as iproduct
from typing import Callable, Iterable

import numpy as np

from .enumerate import biconnected_graphs, connected_graphs
from .errors import SearchOverflow
from .graph import Graph, cycle, two_triangles_edge
from .groups import Permutation, PermGroup
from .io import emit_graph6
from .iso import automorphisms
from .metrics import is_biconnected
from .product import ProductResult, VertexMap, sierpinski_product
from .symmetry import bar_a, hat_b, non_respecting_witness, respecting_mask

MAX_EXHAUSTIVE = 10 ** 4
ORBIT_WORK_LIMIT = 5 * 10 ** 6


def _describe(g: Graph) -> dict:
    return {"graph6": emit_graph6(g), "edges": [list(e) for e in g.edge_labels()]}


def _pair_seed(seed: int, *parts) -> int:
    text = ":".join(str(p) for p in (seed, *parts)).encode()
    return int.from_bytes(hashlib.sha256(text).digest()[:8], "little")


def locally_injective_maps(g: Graph, h: Graph, cap: int) -> tuple[list[tuple], bool]:
    """Backtracking enumeration of maps injective on every neighbourhood.

    Returns the maps (as index tuples) and whether the cap cut the search short.
    """
    n, m = g.order, h.order
    nbrs = [set(g.neighbors(v)) for v in range(n)]
    out: list[tuple] = []
    cur = [-1] * n

    def ok(v: int, x: int) -> bool:
        # v and any vertex sharing a neighbour with v must get different images
        for w in nbrs[v]:
            for u in nbrs[w]:
                if u != v and cur[u] == x:
                    return False
        return True

    def rec(v: int) -> bool:
        if v == n:
            out.append(tuple(cur))
            return len(out) < cap
        for x in range(m):
            if ok(v, x):
                cur[v] = x
                if not rec(v + 1):
                    cur[v] = -1
                    return False
                cur[v] = -1
        return True

    finished = rec(0)
    return out, not finished


def _orbit_representatives(maps: np.ndarray, ag: np.ndarray, ah: np.ndarray,
                           m: int) -> np.ndarray:
    """Keep one map per Aut(G) × Aut(H) orbit (the one with the smallest code)."""
    if maps.shape[0] == 0:
        return maps
    weights = m ** np.arange(maps.shape[1] - 1, -1, -1, dtype=np.int64)
    best = maps @ weights
    for alpha in ag:
        pre = maps[:, alpha]
        for beta in ah:
            best = np.minimum(best, beta[pre] @ weights)
    _, first = np.unique(best, return_index=True)
    return maps[np.sort(first)]


def candidate_maps(g: Graph, h: Graph, *, bijective: bool, seed: int,
                   sample_size: int, max_locally_injective: int) -> dict:
    """Maps to test for one pair, with a record of how they were chosen."""
    n, m = g.order, h.order
    if bijective:
        maps = np.array(list(permutations(range(m))), dtype=np.int64).reshape(-1, n)
        mode = "all_bijections"
        truncated = False
    elif m ** n <= MAX_EXHAUSTIVE:
        maps = np.array(list(iproduct(range(m), repeat=n)), dtype=np.int64).reshape(-1, n)
        mode = "all_maps"
        truncated = False
    else:
        rng = np.random.default_rng(seed)
        sampled = rng.integers(0, m, size=(sample_size, n))
        li, truncated = locally_injective_maps(g, h, max_locally_injective)
        rows = [tuple(r) for r in sampled.tolist()] + li
        maps = np.array(sorted(set(rows)), dtype=np.int64).reshape(-1, n)
        mode = "sampled_plus_locally_injective"
    total = int(maps.shape[0])
    ag, ah = automorphisms(g).array, automorphisms(h).array
    if len(ag) * len(ah) * total <= ORBIT_WORK_LIMIT:
        maps = _orbit_representatives(maps, ag, ah, m)
        reduced = True
    else:
        reduced = False
    return {"maps": maps, "mode": mode, "candidates": total,
            "orbit_reduced": reduced, "truncated": truncated}


def _map_record(p: ProductResult) -> dict:
    return dict(p.vmap.table)


def check_edge_partition(p: ProductResult) -> dict | None:
    """Counterexample certificate if some automorphism breaks the edge split."""
    wit = non_respecting_witness(p)
    if wit is None:
        return None
    return {"map": _map_record(p), **wit}


def check_semidirect(p: ProductResult) -> tuple[dict | None, dict]:
    """Compare the partition-respecting group with diagonal lifts times per-copy maps."""
    full = automorphisms(p.graph)
    tilde_rows = full.array[respecting_mask(full.array, p)]
    tilde = PermGroup(tilde_rows, p.graph.labels)
    hb = hat_b(p)
    ba = bar_a(p)
    checks = {
        "hat_b_normal": hb.is_normal_in(tilde),
        "intersection_trivial": hb.intersection(ba).order == 1,
        "order_product": ba.order * hb.order == tilde.order,
    }
    orders = {"full": full.order, "tilde": tilde.order, "hat_b": hb.order, "bar_a": ba.order}
    if all(checks.values()):
        return None, orders
    missing = None
    if not checks["order_product"]:
        for row in tilde.array:
            t = Permutation(tuple(int(x) for x in row), p.graph.labels)
            if not _factorises(t, ba, hb):
                missing = t.cycle_notation()
                break
    cert = {"map": _map_record(p), "f_is_isomorphism": _is_isomorphism(p),
            "orders": orders, "checks": checks, "unfactored_element": missing}
    return cert, orders


def _is_isomorphism(p: ProductResult) -> bool:
    f = p.vmap.indices
    return all(p.inner.has_edge(int(f[a]), int(f[b])) for a, b in p.outer.edges) \
        and p.outer.size == p.inner.size


def _factorises(t: Permutation, ba, hb) -> bool:
    return any((a.inverse() * t) in hb for a in ba)


def _scan_pairs(pairs: Iterable[tuple[Graph, Graph]], *, bijective: bool, seed: int,
                sample_size: int, max_locally_injective: int,
                check: Callable, tag: str, progress: Callable | None) -> dict:
    counterexamples, overflows, instances = [], [], []
    maps_checked = 0
    bar_a_orders: dict[int, int] = {}
    for k, (g, h) in enumerate(pairs):
        gi, hi = emit_graph6(g), emit_graph6(h)
        try:
            cand = candidate_maps(g, h, bijective=bijective,
                                  seed=_pair_seed(seed, tag, gi, hi),
                                  sample_size=sample_size,
                                  max_locally_injective=max_locally_injective)
        except SearchOverflow as exc:
            overflows.append({"G": gi, "H": hi, "reason": str(exc)})
            continue
        found = 0
        for row in cand["maps"]:
            f = VertexMap.from_indices(g, h, row)
            try:
                p = sierpinski_product(g, h, f, separator=".")
                result = check(p)
            except SearchOverflow as exc:
                overflows.append({"G": gi, "H": hi, "map": dict(f.table), "reason": str(exc)})
                continue
            if isinstance(result, tuple):
                result, orders = result
                bar_a_orders[orders["bar_a"]] = bar_a_orders.get(orders["bar_a"], 0) + 1
            maps_checked += 1
            if result is not None:
                found += 1
                counterexamples.append({"G": _describe(g), "H": _describe(h), **result})
        instances.append({"G": gi, "H": hi, "mode": cand["mode"],
                          "candidates": cand["candidates"],
                          "checked": int(cand["maps"].shape[0]),
                          "orbit_reduced": cand["orbit_reduced"],
                          "truncated": cand["truncated"],
                          "counterexamples": found})
        if progress is not None:
            progress(tag, k, g, h)
    out = {"pairs": len(instances), "maps_checked": maps_checked,
           "counterexamples": counterexamples, "overflows": overflows,
           "instances": instances}
    if bar_a_orders:
        out["bar_a_order_histogram"] = {str(k): v for k, v in sorted(bar_a_orders.items())}
    return out


def _sanity_case() -> dict:
    g, h = cycle(4), two_triangles_edge()
    p = sierpinski_product(g, h, VertexMap.identity(g, h), separator=".")
    wit = non_respecting_witness(p)
    return {
        "G": "C4", "H": "2K3+e", "map": "id",
        "H_biconnected": is_biconnected(h),
        "in_scope": is_biconnected(g) and is_biconnected(h),
        "tilde_equals_full": wit is None,
        "witness": wit,
    }


def conjecture_scan(max_n: int = 6, seed: int = 0, *, sample_size: int = 200,
                    max_locally_injective: int = 2000, min_n: int = 1,
                    progress: Callable | None = None) -> dict:
    """Scan all factor pairs up to ``max_n`` vertices for counterexamples.

    The result is a plain JSON-ready dict whose content depends only on the
    arguments.  ``counterexamples`` lists are expected to be empty.
    """
    if max_n < 1:
        raise ValueError("max_n must be positive")
    bic = [g for n in range(max(min_n, 3), max_n + 1) for g in biconnected_graphs(n)]
    conn = {n: connected_graphs(n) for n in range(min_n, max_n + 1)}
    pairs1 = [(g, h) for g in bic for h in bic]
    pairs2 = [(g, h) for n in conn for g in conn[n] for h in conn[n]]
    common = dict(seed=seed, sample_size=sample_size,
                  max_locally_injective=max_locally_injective, progress=progress)
    edge = _scan_pairs(pairs1, bijective=False, check=check_edge_partition,
                       tag="edge_partition", **common)
    semi = _scan_pairs(pairs2, bijective=True, check=check_semidirect,
                       tag="semidirect", **common)
    return {
        "parameters": {"max_n": max_n, "min_n": min_n, "seed": seed,
                       "sample_size": sample_size,
                       "max_locally_injective": max_locally_injective,
                       "max_exhaustive_maps": MAX_EXHAUSTIVE},
        "edge_partition": edge,
        "semidirect": semi,
        "sanity": _sanity_case(),
        "counterexample_count": len(edge["counterexamples"]) + len(semi["counterexamples"]),
    }
