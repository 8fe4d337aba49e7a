import os
import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from sierprod.graph import Graph
from sierprod.product import VertexMap

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def graphs(draw, min_n=1, max_n=7, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, b in zip(pairs, mask) if b]
    if connected:
        # add a random spanning tree
        for v in range(1, n):
            u = draw(st.integers(0, v - 1))
            edges.append((u, v))
    return Graph([str(i + 1) for i in range(n)], sorted(set(edges)))


@st.composite
def maps(draw, g, h):
    idx = draw(st.lists(st.integers(0, h.order - 1), min_size=g.order, max_size=g.order))
    return VertexMap.from_indices(g, h, idx)


def random_graph(rng: random.Random, n: int, p: float = 0.5, connected: bool = False) -> Graph:
    edges = {(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p}
    if connected:
        for v in range(1, n):
            edges.add((rng.randrange(v), v))
    return Graph([str(i + 1) for i in range(n)], sorted(edges))


def random_map(rng: random.Random, g: Graph, h: Graph) -> VertexMap:
    return VertexMap.from_indices(g, h, [rng.randrange(h.order) for _ in range(g.order)])


@pytest.fixture(params=["numba", "numpy"])
def backend(request, monkeypatch):
    if request.param == "numpy":
        monkeypatch.setenv("SIERP_NO_NUMBA", "1")
    else:
        monkeypatch.delenv("SIERP_NO_NUMBA", raising=False)
    return request.param


# -- acceptance summary ------------------------------------------------------------------
# Tests marked ``criterion(n)`` are tallied and one line per criterion is printed
# at the end of the run.  An expected failure counts as FAIL.

_criteria: dict[int, list[str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n = mark.args[0]
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        status = "xfail" if hasattr(rep, "wasxfail") else rep.outcome
        _criteria.setdefault(n, []).append(status)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        results = _criteria[n]
        ok = all(r == "passed" for r in results)
        note = "" if ok else f"  ({', '.join(sorted(set(results)))})"
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}{note}")
