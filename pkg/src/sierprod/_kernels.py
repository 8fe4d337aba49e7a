"""Numeric inner loops.

Each kernel exists twice: a numba ``@njit`` version and a pure-numpy version
that reaches the same answer by a different route.  ``use_numba()`` picks one
at call time, so ``SIERP_NO_NUMBA=1`` can be flipped inside a running process
(the tests and the benchmark rely on this).

Conventions shared by all kernels:

* distance matrices are ``int32`` with ``-1`` for unreachable pairs;
* girth is returned as ``0`` for acyclic graphs;
* isomorphism search returns an ``(k, n)`` array of images, one row per
  bijection found, in the candidate order of the backtracking.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap if not (args and callable(args[0])) else args[0]


def use_numba() -> bool:
    flag = os.environ.get("SIERP_NO_NUMBA", "").strip().lower()
    return HAVE_NUMBA and flag not in ("1", "true", "yes", "on")


# -- all-pairs BFS --------------------------------------------------------------


@njit(cache=True)
def _apsp_nb(indptr, indices, n):
    dist = np.full((n, n), -1, np.int32)
    queue = np.empty(max(n, 1), np.int64)
    for s in range(n):
        dist[s, s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[s, u]
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                if dist[s, w] < 0:
                    dist[s, w] = du + 1
                    queue[tail] = w
                    tail += 1
    return dist


def _apsp_np(adj):
    # All sources advance one BFS layer per matrix product.
    n = adj.shape[0]
    dist = np.full((n, n), -1, np.int32)
    np.fill_diagonal(dist, 0)
    a = adj.astype(np.int32)
    reached = np.eye(n, dtype=np.bool_)
    frontier = reached.copy()
    d = 0
    while frontier.any():
        d += 1
        nxt = ((frontier.astype(np.int32) @ a) > 0) & ~reached
        dist[nxt] = d
        reached |= nxt
        frontier = nxt
    return dist


def all_pairs_distances(g) -> np.ndarray:
    if g.order == 0:
        return np.zeros((0, 0), np.int32)
    if use_numba():
        indptr, indices = g.csr
        return _apsp_nb(indptr, indices, g.order)
    return _apsp_np(g.adjacency)


# -- girth ----------------------------------------------------------------------


@njit(cache=True)
def _girth_nb(indptr, indices, n):
    best = n + 1
    dist = np.empty(n, np.int64)
    parent = np.empty(n, np.int64)
    queue = np.empty(n, np.int64)
    for s in range(n):
        dist[:] = -1
        dist[s] = 0
        parent[s] = -1
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if 2 * du >= best:
                break
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                if dist[w] < 0:
                    dist[w] = du + 1
                    parent[w] = u
                    queue[tail] = w
                    tail += 1
                elif w != parent[u]:
                    c = du + dist[w] + 1
                    if c < best:
                        best = c
    return best if best <= n else 0


def _girth_np(adj, dist):
    # Closed-walk bounds from every root at once: an edge inside one BFS layer
    # gives 2d+1, a vertex with two parents in the layer above gives 2d.  The
    # minimum over roots is attained on a shortest cycle.
    n = adj.shape[0]
    eu, ev = np.nonzero(np.triu(adj))
    if eu.size == 0:
        return 0
    du = dist[:, eu].astype(np.int64)
    dv = dist[:, ev].astype(np.int64)
    best = n + 1
    same = (du == dv) & (du >= 0)
    if same.any():
        best = min(best, int((2 * du[same] + 1).min()))
    inc_u = np.zeros((eu.size, n), np.int64)
    inc_u[np.arange(eu.size), eu] = 1
    inc_v = np.zeros((eu.size, n), np.int64)
    inc_v[np.arange(eu.size), ev] = 1
    up_v = ((dv == du + 1) & (du >= 0)).astype(np.int64)
    up_u = ((du == dv + 1) & (dv >= 0)).astype(np.int64)
    parents = up_v @ inc_v + up_u @ inc_u
    mask = parents >= 2
    if mask.any():
        best = min(best, int((2 * dist[mask].astype(np.int64)).min()))
    return best if best <= n else 0


def girth(g, dist=None) -> int:
    if g.size == 0:
        return 0
    if use_numba():
        indptr, indices = g.csr
        return int(_girth_nb(indptr, indices, g.order))
    if dist is None:
        dist = _apsp_np(g.adjacency)
    return _girth_np(g.adjacency, dist)


# -- isomorphism backtracking -----------------------------------------------------


@njit(cache=True)
def _iso_search_nb(da, ca, db, cb, order, max_out):
    n = da.shape[0]
    cap = 16
    out = np.empty((cap, n), np.int64)
    count = 0
    img = np.full(n, -1, np.int64)
    used = np.zeros(n, np.bool_)
    nextc = np.zeros(n + 1, np.int64)
    k = 0
    while k >= 0:
        v = order[k]
        if img[v] >= 0:
            used[img[v]] = False
            img[v] = -1
        w = nextc[k]
        found = False
        while w < n:
            if not used[w] and cb[w] == ca[v]:
                ok = True
                for j in range(k):
                    u = order[j]
                    if da[v, u] != db[w, img[u]]:
                        ok = False
                        break
                if ok:
                    found = True
                    break
            w += 1
        if not found:
            k -= 1
            continue
        nextc[k] = w + 1
        img[v] = w
        used[w] = True
        if k == n - 1:
            if count == cap:
                bigger = np.empty((cap * 2, n), np.int64)
                bigger[:cap] = out
                out = bigger
                cap *= 2
            out[count] = img
            count += 1
            if count >= max_out:
                break
        else:
            k += 1
            nextc[k] = 0
    return out[:count].copy()


def _iso_search_np(da, ca, db, cb, order, max_out):
    n = da.shape[0]
    img = np.full(n, -1, np.int64)
    used = np.zeros(n, np.bool_)
    found: list[np.ndarray] = []

    def descend(k: int) -> bool:
        if k == n:
            found.append(img.copy())
            return len(found) >= max_out
        v = order[k]
        mask = (cb == ca[v]) & ~used
        if k:
            src = order[:k]
            mask &= (db[:, img[src]] == da[v, src]).all(axis=1)
        for w in np.flatnonzero(mask):
            img[v] = w
            used[w] = True
            stop = descend(k + 1)
            used[w] = False
            img[v] = -1
            if stop:
                return True
        return False

    descend(0)
    if not found:
        return np.empty((0, n), np.int64)
    return np.stack(found)


def iso_search(da, ca, db, cb, order, max_out) -> np.ndarray:
    """All (up to ``max_out``) colour- and distance-preserving bijections A -> B.

    ``order`` is the sequence in which vertices of A get assigned.  A full
    assignment that preserves every pairwise distance preserves adjacency,
    so each row is an isomorphism.
    """
    n = da.shape[0]
    if n == 0:
        return np.zeros((1, 0), np.int64)
    args = (
        np.ascontiguousarray(da, np.int32),
        np.ascontiguousarray(ca, np.int64),
        np.ascontiguousarray(db, np.int32),
        np.ascontiguousarray(cb, np.int64),
        np.ascontiguousarray(order, np.int64),
        int(max_out),
    )
    if use_numba():
        return _iso_search_nb(*args)
    return _iso_search_np(*args)


# -- rotation systems ------------------------------------------------------------------
#
# A rotation system is given per vertex as one row of ``tab``: the darts
# leaving that vertex in cyclic order (padded with -1).  Dart 2e leaves the
# first endpoint of edge e, dart 2e+1 the second, so the reverse of dart d is
# d ^ 1.  Faces are the cycles of  d -> sigma(d ^ 1).


@njit(cache=True)
def _count_cycles(phi, seen):
    seen[:] = False
    cycles = 0
    for d in range(phi.shape[0]):
        if not seen[d]:
            cycles += 1
            x = d
            while not seen[x]:
                seen[x] = True
                x = phi[x]
    return cycles


@njit(cache=True)
def _rotation_search_nb(tab, ptr, deg, n_darts, target_faces, max_tries):
    n = deg.shape[0]
    choice = np.zeros(n, np.int64)
    counts = ptr[1:] - ptr[:-1]
    sigma = np.empty(n_darts, np.int64)
    phi = np.empty(n_darts, np.int64)
    seen = np.empty(n_darts, np.bool_)
    tries = 0
    while True:
        for v in range(n):
            row = tab[ptr[v] + choice[v]]
            k = deg[v]
            for i in range(k):
                sigma[row[i]] = row[(i + 1) % k]
        for d in range(n_darts):
            phi[d] = sigma[d ^ 1]
        if _count_cycles(phi, seen) == target_faces:
            return choice
        tries += 1
        if tries >= max_tries:
            return np.full(n, -2, np.int64)
        v = 0
        while v < n:
            choice[v] += 1
            if choice[v] < counts[v]:
                break
            choice[v] = 0
            v += 1
        if v == n:
            return np.full(n, -1, np.int64)


def _rotation_search_np(tab, ptr, deg, n_darts, target_faces, max_tries, chunk=4096):
    n = deg.shape[0]
    counts = ptr[1:] - ptr[:-1]
    total = int(np.prod(counts, dtype=object))
    limit = min(total, max_tries)
    darts = np.arange(n_darts)
    rounds = max(1, int(np.ceil(np.log2(max(n_darts, 2)))) + 1)
    # Mixed radix with vertex 0 least significant, matching the numba loop.
    radix = np.empty(n, np.int64)
    acc = 1
    for v in range(n):
        radix[v] = min(acc, 2**62)
        acc *= int(counts[v])
    for start in range(0, limit, chunk):
        idx = np.arange(start, min(start + chunk, limit), dtype=np.int64)
        choice = (idx[:, None] // radix[None, :]) % counts[None, :]
        b = idx.size
        sigma = np.empty((b, n_darts), np.int64)
        rows_ax = np.arange(b)[:, None]
        for v in range(n):
            k = deg[v]
            if k == 0:
                continue
            rows = tab[ptr[v] + choice[:, v], :k]
            sigma[rows_ax, rows] = np.roll(rows, -1, axis=1)
        phi = sigma[:, darts ^ 1]
        low = np.broadcast_to(darts, (b, n_darts)).copy()
        jump = phi
        for _ in range(rounds):
            low = np.minimum(low, np.take_along_axis(low, jump, axis=1))
            jump = np.take_along_axis(jump, jump, axis=1)
        faces = (low == darts).sum(axis=1)
        hit = np.flatnonzero(faces == target_faces)
        if hit.size:
            return choice[hit[0]].astype(np.int64)
    if limit < total:
        return np.full(n, -2, np.int64)
    return np.full(n, -1, np.int64)


def rotation_search(tab, ptr, deg, n_darts, target_faces, max_tries) -> np.ndarray:
    """First combination of per-vertex rows whose face count hits ``target_faces``.

    Returns the chosen row offset per vertex, all ``-1`` if none exists, or
    all ``-2`` if ``max_tries`` combinations were exhausted first.
    """
    args = (
        np.ascontiguousarray(tab, np.int64),
        np.ascontiguousarray(ptr, np.int64),
        np.ascontiguousarray(deg, np.int64),
        int(n_darts),
        int(target_faces),
        int(max_tries),
    )
    if use_numba():
        return _rotation_search_nb(*args)
    return _rotation_search_np(*args)
