"""Acceptance suite.  Each test carries ``criterion(n)``; the run ends with one
PASS/FAIL line per criterion.  Two criteria cannot hold as stated and are
marked as strict expected failures (details in the reasons below)."""

import json
import random
import time
from itertools import permutations
from pathlib import Path

import networkx as nx
import pytest

from conftest import random_graph, random_map
from sierprod.analysis import diameter_bound, diameter_recursion, diameter_subset_sum, product_planarity
from sierprod.enumerate import connected_graphs
from sierprod.graph import Graph, complete, complete_bipartite, cycle, path, two_triangles_edge
from sierprod.groups import Permutation
from sierprod.iso import automorphisms, isomorphism
from sierprod.io import parse_map_text
from sierprod.metrics import diameter, is_connected
from sierprod.planarity import is_outerplanar, is_planar
from sierprod.product import (
    ChainSpec,
    VertexMap,
    binary_counts,
    chain_product,
    generalized_sierpinski,
    predicted_counts,
    sierpinski_product,
)
from sierprod.scan import conjecture_scan
from sierprod.symmetry import LiftSpec, make_psi, respects_partition, tilde_a, verify_decomposition

DATA = Path(__file__).resolve().parents[1] / "data"


def crit(n):
    return pytest.mark.criterion(n)


def nx_aut_count(g: Graph) -> int:
    k = nx.Graph()
    k.add_nodes_from(g.labels)
    k.add_edges_from(g.edge_labels())
    return sum(1 for _ in nx.algorithms.isomorphism.GraphMatcher(k, k).isomorphisms_iter())


@pytest.fixture(scope="module")
def corpus():
    rng = random.Random(2024)
    pairs = []
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 8), rng.random())
        h = random_graph(rng, rng.randint(1, 8), rng.random())
        pairs.append((g, h, random_map(rng, g, h)))
    chains = []
    for _ in range(100):
        fs = [random_graph(rng, rng.randint(1, 5), rng.random()) for _ in range(3)]
        ms = [random_map(rng, a, b) for a, b in zip(fs, fs[1:])]
        chains.append(ChainSpec(tuple(fs), tuple(ms)))
    return pairs, chains


@crit(1)
def test_counting(corpus):
    pairs, chains = corpus
    t0 = time.perf_counter()
    for g, h, f in pairs:
        k = sierpinski_product(g, h, f).graph
        assert (k.order, k.size) == (g.order * h.order, h.size * g.order + g.size)
        assert (k.order, k.size) == binary_counts(g, h)
    for spec in chains:
        k = chain_product(spec).graph
        g3, g2, g1 = spec.factors
        order = g3.order * g2.order * g1.order
        size = g3.order * g2.order * g1.size + g3.order * g2.size + g3.size
        assert (k.order, k.size) == (order, size) == predicted_counts(spec)
    assert time.perf_counter() - t0 < 10


@crit(2)
def test_connectivity_iff(corpus):
    pairs, _ = corpus
    exceptions = [
        (g, h) for g, h, f in pairs
        if is_connected(sierpinski_product(g, h, f).graph) != (is_connected(g) and is_connected(h))
    ]
    assert exceptions == []


@crit(3)
def test_planarity_named_cases():
    k23, k4 = complete_bipartite(2, 3), complete(4)
    assert not product_planarity(k23, k23, VertexMap.identity(k23, k23)).planar
    assert product_planarity(k4, k4, VertexMap.identity(k4, k4)).planar


@crit(3)
@pytest.mark.xfail(strict=True, reason=(
    "G = K4 plus a pendant edge (and four other 6-vertex graphs with a cut vertex) give a "
    "planar G x G although G is neither outerplanar nor K4; the statement holds for "
    "2-connected G"))
def test_planarity_equal_identity_exhaustive():
    t0 = time.perf_counter()
    exceptions = []
    for n in range(1, 7):
        for g in connected_graphs(n):
            v = product_planarity(g, g, VertexMap.identity(g, g))
            expect = is_outerplanar(g) or isomorphism(g, complete(4)) is not None
            if v.planar != expect:
                exceptions.append(g.edge_labels())
    assert time.perf_counter() - t0 < 60
    assert exceptions == [], exceptions


@crit(4)
def test_low_degree_sufficient_condition():
    rng = random.Random(11)
    done = 0
    while done < 50:
        g = random_graph(rng, rng.randint(1, 7), rng.uniform(0.1, 0.5), connected=True)
        if g.max_degree > 3 or not is_planar(g).planar:
            continue
        h = random_graph(rng, rng.randint(1, 7), rng.uniform(0.2, 0.8), connected=True)
        if not is_outerplanar(h):
            continue
        p = sierpinski_product(g, h, random_map(rng, g, h))
        v = is_planar(p.graph)
        assert v.planar and v.embedding.is_planar_for(p.graph)
        done += 1


@crit(5)
def test_diameters(backend):
    t0 = time.perf_counter()
    p5, p6 = path(5), path(6)
    f = VertexMap(p5, p6, parse_map_text((DATA / "ex45.map").read_text()))
    assert diameter(sierpinski_product(p5, p6, f).graph) == 29
    for n in range(1, 5):
        assert diameter(generalized_sierpinski(complete(3), n).graph) == 2 ** n - 1

    rng = random.Random(5)
    for _ in range(100):
        m = rng.randint(2, 3)
        fs = [random_graph(rng, rng.randint(1, 6), 0.5, connected=True) for _ in range(m)]
        ms = [random_map(rng, a, b) for a, b in zip(fs, fs[1:])]
        k = chain_product(ChainSpec(tuple(fs), tuple(ms))).graph
        assert diameter(k) <= diameter_bound([diameter(x) for x in reversed(fs)])

    for _ in range(1000):
        ds = [rng.randint(0, 12) for _ in range(rng.randint(1, 10))]
        assert diameter_recursion(ds) == diameter_subset_sum(ds)
    assert time.perf_counter() - t0 < 30


@crit(6)
def test_symmetry_orders():
    t0 = time.perf_counter()
    s32 = generalized_sierpinski(complete(3), 2).graph
    edges = {frozenset(e) for e in s32.edges}
    brute = sum(1 for p in permutations(range(9))
                if all(frozenset((p[a], p[b])) in edges for a, b in s32.edges))
    assert automorphisms(s32).order == brute == 6

    c4 = cycle(4)
    p = sierpinski_product(c4, c4, VertexMap.identity(c4, c4))
    parts = tilde_a(p)
    assert parts.full.order == nx_aut_count(p.graph) == 128
    assert (parts.bar_a.order, parts.hat_b.order, parts.tilde.order) == (8, 16, 128)
    rep = verify_decomposition(c4, VertexMap.identity(c4, c4))
    assert rep["pass"] and all(rep["checks"].values())

    k3, k4 = complete(3), complete(4)
    q = sierpinski_product(k3, k4, VertexMap.identity(k3, k4))
    parts = tilde_a(q)
    assert parts.tilde.order == parts.full.order == nx_aut_count(q.graph)
    assert time.perf_counter() - t0 < 120


@crit(7)
def test_inner_edge_mapped_to_connecting_edge():
    g, h = cycle(4), two_triangles_edge()
    p = sierpinski_product(g, h, VertexMap.identity(g, h), separator="")
    k = p.graph
    assert p.classify_edge("16", "15") == "inner"
    assert p.classify_edge("14", "41") == "connecting"
    i, j = k.index("16"), k.index("15")
    target = {k.index("14"), k.index("41")}
    hits = [row for row in automorphisms(k).array if {int(row[i]), int(row[j])} == target]
    assert hits
    sigma = Permutation(tuple(int(x) for x in hits[0]), k.labels)
    assert not respects_partition(sigma, p)


@crit(8)
def test_explicit_lifts():
    k3 = complete(3)
    k33 = Graph([str(i) for i in range(1, 7)], [(i, j) for i in range(0, 6, 2) for j in range(1, 6, 2)])
    p = sierpinski_product(k3, k33, VertexMap(k3, k33, {"1": "1", "2": "3", "3": "5"}), separator="")
    c = lambda t, lab: Permutation.from_cycles(t, lab)
    spec = LiftSpec(c("(1 2 3)", k3.labels), {"1": c("(1 3 5)(2 4 6)", k33.labels),
                                              "2": c("(1 3 5)(2 6 4)", k33.labels),
                                              "3": c("(1 3 5)", k33.labels)})
    psi = make_psi(spec, p)
    assert psi == c("(11 23 35)(12 24 32)(13 25 31)(14 26 34)(15 21 33)(16 22 36)", p.graph.labels)
    assert respects_partition(psi, p)

    star = Graph(["1", "2", "3", "4"], [(0, 1), (1, 2), (1, 3)])
    p = sierpinski_product(star, star, VertexMap(star, star, {"1": "2", "2": "3", "3": "4", "4": "1"}),
                           separator="")
    psi = make_psi(LiftSpec(c("(3 4)", star.labels), c("(1 4)", star.labels)), p)
    assert psi == c("(11 14)(21 24)(31 44)(32 42)(33 43)(34 41)", p.graph.labels)
    assert respects_partition(psi, p)

    c4 = cycle(4)
    p = sierpinski_product(c4, star, VertexMap(c4, star, {"1": "2", "2": "2", "3": "4", "4": "3"}),
                           separator="")
    psi = make_psi(LiftSpec(c("(1 2)(3 4)", c4.labels), c("(3 4)", star.labels)), p)
    assert psi == c("(11 21)(12 22)(13 24)(14 23)(31 41)(32 42)(33 44)(34 43)", p.graph.labels)
    assert respects_partition(psi, p)


@crit(9)
def test_non_unique_factorisation():
    c4, h = cycle(4), two_triangles_edge()
    a = sierpinski_product(c4, h, VertexMap.identity(c4, h)).graph
    c8, c3 = cycle(8), cycle(3)
    fp = VertexMap(c8, c3, parse_map_text((DATA / "c8_c3.map").read_text()))
    b = sierpinski_product(c8, c3, fp).graph
    w = isomorphism(a, b)
    assert w is not None and len(set(w.values())) == a.order
    image = {frozenset((w[x], w[y])) for x, y in a.edge_labels()}
    assert image == {frozenset(e) for e in b.edge_labels()}


@pytest.fixture(scope="module")
def scan4():
    return conjecture_scan(max_n=4, seed=0)


@crit(10)
def test_scan_edge_partition_and_stability(scan4):
    assert scan4["edge_partition"]["counterexamples"] == []
    assert scan4["edge_partition"]["overflows"] == []
    again = conjecture_scan(max_n=4, seed=0)
    assert json.dumps(again, sort_keys=True).encode() == json.dumps(scan4, sort_keys=True).encode()


@crit(10)
@pytest.mark.xfail(strict=True, reason=(
    "C4 with a bijection that is not an isomorphism (and one C4/P4 pair) gives a "
    "partition-respecting group that is not diagonal lifts times per-copy maps"))
def test_scan_semidirect(scan4):
    assert scan4["semidirect"]["counterexamples"] == []
