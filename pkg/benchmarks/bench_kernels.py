"""Compare the numba kernels with their pure-numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Each workload runs on both backends (the backend is picked per call from
SIERP_NO_NUMBA), results are checked for equality, and median wall times
are printed.  The first numba call per kernel is a warm-up and not timed.
"""

from __future__ import annotations

import argparse
import json
import os
import statistics
import time

import numpy as np

from sierprod import _kernels
from sierprod.graph import complete, cycle, two_triangles_edge
from sierprod.iso import refine_colors, search_order
from sierprod.metrics import distance_matrix
from sierprod.planarity import find_planar_rotation
from sierprod.product import VertexMap, generalized_sierpinski, sierpinski_product


def _backend(numba: bool) -> None:
    if numba:
        os.environ.pop("SIERP_NO_NUMBA", None)
    else:
        os.environ["SIERP_NO_NUMBA"] = "1"


def _time(fn, repeat: int) -> tuple[float, object]:
    out = fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), out


def workloads():
    s4 = generalized_sierpinski(complete(3), 5).graph  # 243 vertices
    c = cycle(6)
    c66 = sierpinski_product(c, c, VertexMap.identity(c, c)).graph  # 36 vertices
    d = distance_matrix(c66)
    (col,) = refine_colors([c66])
    order = search_order(d, col)
    h = two_triangles_edge()
    k4h = sierpinski_product(cycle(4), h, VertexMap.identity(cycle(4), h)).graph

    yield "all_pairs_distances S_K3^5", lambda: _kernels.all_pairs_distances(s4)
    yield "girth S_K3^5", lambda: _kernels.girth(s4)
    yield "automorphisms C6 x C6", lambda: _kernels.iso_search(d, col, d, col, order, 10**6)
    yield "girth C4 x (2K3+e)", lambda: _kernels.girth(k4h)
    k = complete(4)
    edges = list(k.edges) + [(4, 0), (4, 1), (4, 2)]
    yield "rotation search K4 + apex", lambda: find_planar_rotation(5, edges)
    edges6 = list(complete(5).edges)
    yield "rotation search K5 (none)", lambda: find_planar_rotation(5, edges6)


def _same(a, b) -> bool:
    if isinstance(a, np.ndarray):
        return np.array_equal(np.asarray(a), np.asarray(b))
    return a == b


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", metavar="PATH")
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        print("numba is not importable; only the numpy path can run")
    rows = []
    print(f"{'workload':32s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}  agree")
    for name, fn in workloads():
        _backend(True)
        t_nb, r_nb = _time(fn, args.repeat)
        _backend(False)
        t_np, r_np = _time(fn, args.repeat)
        _backend(True)
        agree = _same(r_nb, r_np)
        rows.append({"workload": name, "numba_s": t_nb, "numpy_s": t_np,
                     "speedup": t_np / t_nb if t_nb else None, "agree": agree})
        print(f"{name:32s} {t_nb:10.5f} {t_np:10.5f} {t_np / t_nb:8.1f}  {agree}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
