import math
import random
from collections import deque

import numpy as np
import pytest
from hypothesis import given

from conftest import graphs, random_graph
from sierprod import _kernels
from sierprod.errors import UnknownVertexError
from sierprod.graph import Graph, complete, complete_bipartite, cycle, disjoint_union, path
from sierprod.metrics import (
    bridges,
    components,
    diameter,
    distance,
    distance_matrix,
    eccentricities,
    girth,
    is_biconnected,
    is_connected,
    shortest_cycle_through_edge,
)
from sierprod.planarity import find_planar_rotation
from sierprod.product import generalized_sierpinski


def bfs_oracle(g: Graph, s: int) -> list[float]:
    dist = [math.inf] * g.order
    dist[s] = 0
    q = deque([s])
    while q:
        u = q.popleft()
        for w in g.neighbors(u):
            if dist[w] == math.inf:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def girth_oracle(g: Graph) -> float:
    """min over edges of 1 + distance between its ends once it is removed."""
    best = math.inf
    for i, j in g.edges:
        d = bfs_oracle(g.without_edge(i, j), i)[j]
        best = min(best, 1 + d)
    return best


class TestBasics:
    def test_connectivity_examples(self):
        assert is_connected(complete(3))
        assert not is_connected(disjoint_union(complete(3), complete(3)))
        assert is_connected(path(5))
        assert is_connected(Graph([]))

    def test_distance_examples(self):
        c4 = cycle(4)
        assert distance(c4, "1", "3") == 2
        assert diameter(generalized_sierpinski(complete(3), 2).graph) == 3
        two = disjoint_union(complete(2), complete(2))
        assert distance(two, "a:1", "b:1") == math.inf
        assert diameter(two) == math.inf
        with pytest.raises(UnknownVertexError):
            distance(c4, "1", "x")

    def test_girth_examples(self):
        assert girth(complete(4)) == 3
        assert girth(cycle(5)) == 5
        assert girth(path(4)) == math.inf

    def test_components_and_bridges(self):
        g = disjoint_union(path(3), complete(3))
        assert sorted(len(c) for c in components(g)) == [3, 3]
        assert len(bridges(path(4))) == 3
        assert bridges(cycle(5)) == []

    def test_biconnected(self):
        assert is_biconnected(cycle(4))
        assert not is_biconnected(path(3))
        assert not is_biconnected(complete(2))

    def test_shortest_cycle_through_edge(self):
        g = complete_bipartite(2, 3)
        assert shortest_cycle_through_edge(g, 0, 2) == 4
        assert shortest_cycle_through_edge(path(3), 0, 1) == math.inf

    def test_eccentricities(self):
        assert eccentricities(path(5)).tolist() == [4, 3, 2, 3, 4]


class TestOracles:
    @given(graphs(min_n=1, max_n=9))
    def test_distances_match_bfs(self, g):
        d = distance_matrix(g)
        for s in range(g.order):
            ref = bfs_oracle(g, s)
            got = [math.inf if x < 0 else int(x) for x in d[s]]
            assert got == ref

    @given(graphs(min_n=1, max_n=9))
    def test_girth_matches_edge_removal_formula(self, g):
        assert girth(g) == girth_oracle(g)

    @given(graphs(min_n=2, max_n=8, connected=True))
    def test_metric_axioms(self, g):
        d = distance_matrix(g).astype(int)
        assert (d == d.T).all()
        assert (np.diag(d) == 0).all()
        n = g.order
        assert (d[:, :, None] <= d[:, None, :].transpose(0, 2, 1) * 0 + d[:, :, None]).all()
        for k in range(n):
            assert (d <= d[:, [k]] + d[[k], :]).all()


class TestKernelParity:
    """The numba and numpy kernels must agree exactly."""

    @pytest.mark.parametrize("seed", range(12))
    def test_distances_and_girth(self, seed, monkeypatch):
        rng = random.Random(seed)
        g = random_graph(rng, rng.randint(1, 14), rng.choice([0.15, 0.3, 0.6]))
        monkeypatch.delenv("SIERP_NO_NUMBA", raising=False)
        d1, g1 = _kernels.all_pairs_distances(g), _kernels.girth(g)
        monkeypatch.setenv("SIERP_NO_NUMBA", "1")
        assert not _kernels.use_numba()
        d2, g2 = _kernels.all_pairs_distances(g), _kernels.girth(g)
        assert np.array_equal(d1, d2)
        assert g1 == g2

    @pytest.mark.parametrize("seed", range(8))
    def test_iso_search(self, seed, monkeypatch):
        from sierprod.iso import refine_colors, search_order

        rng = random.Random(100 + seed)
        g = random_graph(rng, rng.randint(1, 8), 0.4)
        d = distance_matrix(g)
        (c,) = refine_colors([g])
        order = search_order(d, c)
        monkeypatch.delenv("SIERP_NO_NUMBA", raising=False)
        a = _kernels.iso_search(d, c, d, c, order, 10**5)
        monkeypatch.setenv("SIERP_NO_NUMBA", "1")
        b = _kernels.iso_search(d, c, d, c, order, 10**5)
        key = lambda rows: sorted(map(tuple, rows.tolist()))
        assert key(a) == key(b)

    @pytest.mark.parametrize("g", [complete(4), complete(5), complete_bipartite(3, 3),
                                   cycle(5), complete_bipartite(2, 3)])
    def test_rotation_search(self, g, monkeypatch):
        monkeypatch.delenv("SIERP_NO_NUMBA", raising=False)
        a = find_planar_rotation(g.order, list(g.edges))
        monkeypatch.setenv("SIERP_NO_NUMBA", "1")
        b = find_planar_rotation(g.order, list(g.edges))
        assert (a is None) == (b is None)
        assert (a is None) == (g.size > 3 * g.order - 6 or g.order == 6 and g.size == 9)

    def test_flag_values(self, monkeypatch):
        for v in ("1", "true", "YES", "on"):
            monkeypatch.setenv("SIERP_NO_NUMBA", v)
            assert not _kernels.use_numba()
        monkeypatch.setenv("SIERP_NO_NUMBA", "0")
        assert _kernels.use_numba() == _kernels.HAVE_NUMBA
