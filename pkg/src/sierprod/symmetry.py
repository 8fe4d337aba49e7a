"""Automorphisms of products and how they arise from the factors.

Notation used in names and reports:

* ``full``   every automorphism of the product;
* ``tilde``  those preserving the split into inner and connecting edges;
* ``hat_b``  the group generated by per-copy maps Φ(g, β) with β fixing f(N(g));
* ``bar_a``  diagonal lifts Ψ(α, f∘α∘f⁻¹) that are automorphisms (bijective f).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import prod
from typing import Mapping

import numpy as np

from .errors import GraphError, NotAutomorphismError, UnknownVertexError
from .graph import Graph
from .groups import Permutation, PermGroup, check_semidirect, group_closure, is_automorphism
from .iso import automorphisms
from .metrics import is_connected
from .product import ProductResult, VertexMap, sierpinski_product


@lru_cache(maxsize=512)
def _aut(g: Graph) -> PermGroup:
    return automorphisms(g)


def _require_aut(p: Permutation, g: Graph, what: str) -> None:
    if not is_automorphism(p, g):
        raise NotAutomorphismError(f"{what} {p} is not an automorphism")


def _f_indices(p: ProductResult) -> np.ndarray:
    return np.array([p.inner.index(p.vmap(x)) for x in p.outer.labels], dtype=np.int64)


def _connecting_array(p: ProductResult) -> np.ndarray:
    if not p.connecting_edges:
        return np.zeros((0, 2), np.int64)
    return np.array(sorted(p.connecting_edges), dtype=np.int64)


def respecting_mask(rows: np.ndarray, p: ProductResult) -> np.ndarray:
    """For automorphisms given as rows, which ones keep connecting edges connecting."""
    ce = _connecting_array(p)
    if ce.shape[0] == 0:
        return np.ones(rows.shape[0], dtype=bool)
    mask = p.connecting_mask
    return mask[rows[:, ce[:, 0]], rows[:, ce[:, 1]]].all(axis=1)


def respects_partition(perm: Permutation, p: ProductResult) -> bool:
    """Whether an automorphism of the product maps inner edges to inner edges
    and connecting edges to connecting edges."""
    _require_aut(perm, p.graph, "permutation")
    return bool(respecting_mask(perm.as_array()[None, :], p)[0])


# -- lifts ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LiftSpec:
    """α ∈ Aut(G) and one β_g ∈ Aut(H) per vertex of G.

    ``beta`` is either a single permutation (used for every g) or a mapping
    from G labels to permutations.
    """

    alpha: Permutation
    beta: Permutation | Mapping

    def beta_for(self, g_label: str) -> Permutation:
        if isinstance(self.beta, Permutation):
            return self.beta
        return self.beta[g_label]


def psi_bijection(spec: LiftSpec, p: ProductResult) -> Permutation:
    """The map (g, h) -> (α(g), β_g(h)), whether or not it preserves edges."""
    g, h = p.outer, p.inner
    nh = h.order
    imgs = [0] * p.graph.order
    for a, label in enumerate(g.labels):
        beta = spec.beta_for(label).images
        base = spec.alpha.images[a] * nh
        for x in range(nh):
            imgs[a * nh + x] = base + beta[x]
    return Permutation(tuple(imgs), p.graph.labels)


def make_psi(spec: LiftSpec, p: ProductResult) -> Permutation | None:
    """Ψ(α, B) if it is an automorphism of the product, else ``None``.

    It is one exactly when f(α(g')) = β_g(f(g')) for every g and every g' in N(g).
    """
    g, h = p.outer, p.inner
    _require_aut(spec.alpha, g, "alpha")
    for label in g.labels:
        _require_aut(spec.beta_for(label), h, f"beta at {label}")
    f = _f_indices(p)
    alpha = spec.alpha.images
    for a, label in enumerate(g.labels):
        beta = spec.beta_for(label).images
        for b in g.neighbors(a):
            if f[alpha[b]] != beta[f[b]]:
                return None
    return psi_bijection(spec, p)


def diagonal_lift(alpha: Permutation, p: ProductResult) -> Permutation | None:
    """Ψ(α, f∘α∘f⁻¹) for bijective f, or ``None`` if that is not an automorphism."""
    beta = conjugate_by_map(alpha, p)
    if beta is None or not is_automorphism(beta, p.inner):
        return None
    return make_psi(LiftSpec(alpha, beta), p)


def conjugate_by_map(alpha: Permutation, p: ProductResult) -> Permutation | None:
    """f∘α∘f⁻¹ as a permutation of H, or ``None`` when f is not a bijection."""
    if not p.vmap.is_bijective():
        return None
    f = _f_indices(p)
    beta = [0] * p.inner.order
    for x in range(p.outer.order):
        beta[f[x]] = int(f[alpha.images[x]])
    return Permutation(tuple(beta), p.inner.labels)


def make_phi(g_label, beta: Permutation, p: ProductResult) -> Permutation | None:
    """Φ(g, β): β inside copy gH, identity elsewhere; ``None`` unless β fixes f(N(g)) pointwise."""
    g, h = p.outer, p.inner
    if g_label not in g:
        raise UnknownVertexError(f"unknown vertex {g_label!r} of G")
    _require_aut(beta, h, "beta")
    a = g.index(g_label)
    f = _f_indices(p)
    if any(beta.images[f[b]] != f[b] for b in g.neighbors(a)):
        return None
    nh = h.order
    imgs = list(range(p.graph.order))
    for x in range(nh):
        imgs[a * nh + x] = a * nh + beta.images[x]
    return Permutation(tuple(imgs), p.graph.labels)


def pointwise_stabilizer(group: PermGroup, points) -> PermGroup:
    pts = sorted(set(int(x) for x in points))
    arr = group.array
    if not pts:
        return group
    keep = (arr[:, pts] == np.array(pts)).all(axis=1)
    return PermGroup(arr[keep], group.labels)


def copy_stabilizers(p: ProductResult) -> dict[str, PermGroup]:
    """Aut(H) restricted to maps fixing f(N(g)) pointwise, for each g."""
    aut_h = _aut(p.inner)
    f = _f_indices(p)
    return {
        label: pointwise_stabilizer(aut_h, f[list(p.outer.neighbors(a))])
        for a, label in enumerate(p.outer.labels)
    }


def hat_b(p: ProductResult) -> PermGroup:
    """Group generated by all valid Φ(g, β).

    Its order is checked against the product of the per-copy stabiliser orders.
    """
    stabs = copy_stabilizers(p)
    gens = []
    for label, stab in stabs.items():
        for beta in stab.generators:
            phi = make_phi(label, beta, p)
            assert phi is not None
            gens.append(phi)
    group = group_closure(gens, n=p.graph.order, labels=p.graph.labels)
    expected = prod(s.order for s in stabs.values())
    if group.order != expected:
        raise AssertionError(f"hat_b order {group.order} != product of stabilisers {expected}")
    return group


def bar_a(p: ProductResult) -> PermGroup:
    """Diagonal automorphisms Ψ(α, f∘α∘f⁻¹), α ∈ Aut(G), that preserve edges.

    Requires f to be a bijection.
    """
    if not p.vmap.is_bijective():
        raise GraphError("diagonal automorphisms need a bijective vertex map")
    rows = []
    for alpha in _aut(p.outer):
        lift = diagonal_lift(alpha, p)
        if lift is not None:
            rows.append(lift.as_array())
    return PermGroup(np.stack(rows), p.graph.labels)


def project(perm: Permutation, p: ProductResult) -> Permutation:
    """The permutation of G induced on the copies gH."""
    if not respects_partition(perm, p):
        raise NotAutomorphismError("permutation does not preserve the edge partition")
    nh = p.inner.order
    arr = perm.as_array().reshape(p.outer.order, nh) // nh
    if not (arr == arr[:, :1]).all():
        raise NotAutomorphismError("permutation does not map copies onto copies")
    gamma = Permutation(tuple(int(x) for x in arr[:, 0]), p.outer.labels)
    if not is_automorphism(gamma, p.outer):
        raise AssertionError("projection is not an automorphism of G")
    return gamma


@dataclass
class PartitionedAut:
    full: PermGroup
    tilde: PermGroup
    hat_b: PermGroup
    bar_a: PermGroup | None

    def orders(self) -> dict:
        return {
            "full": self.full.order,
            "tilde": self.tilde.order,
            "hat_b": self.hat_b.order,
            "bar_a": None if self.bar_a is None else self.bar_a.order,
        }


def tilde_a(p: ProductResult) -> PartitionedAut:
    """Full automorphism group of the product and its partition-respecting parts."""
    full = automorphisms(p.graph)
    keep = respecting_mask(full.array, p)
    tilde = PermGroup(full.array[keep], p.graph.labels)
    hb = hat_b(p)
    ba = bar_a(p) if p.vmap.is_bijective() else None
    return PartitionedAut(full, tilde, hb, ba)


def non_respecting_witness(p: ProductResult, full: PermGroup | None = None) -> dict | None:
    """An automorphism that maps some inner edge onto a connecting edge, if any."""
    full = automorphisms(p.graph) if full is None else full
    bad = np.flatnonzero(~respecting_mask(full.array, p))
    if bad.size == 0:
        return None
    row = full.array[bad[0]]
    labels = p.graph.labels
    for i, j in sorted(p.inner_edges):
        a, b = int(row[i]), int(row[j])
        if (min(a, b), max(a, b)) in p.connecting_edges:
            return {
                "permutation": Permutation(tuple(row), labels).cycle_notation(),
                "inner_edge": [labels[i], labels[j]],
                "image_edge": [labels[a], labels[b]],
            }
    raise AssertionError("non-respecting automorphism without an inner-to-connecting edge")


def _gens(group: PermGroup) -> list[str]:
    return [g.cycle_notation() for g in group.generators]


def verify_decomposition(g: Graph, f: VertexMap) -> dict:
    """Check that the partition-respecting group of ``G ⊗_f G`` splits as
    diagonal lifts acting on the per-copy group, for an automorphism f of G."""
    if not (f.source.same_as(g) and f.target.same_as(g)):
        raise GraphError("f must map G to itself")
    if not is_connected(g):
        raise GraphError("G must be connected")
    f_perm = Permutation(tuple(int(x) for x in f.indices), g.labels)
    _require_aut(f_perm, g, "f")
    p = sierpinski_product(g, g, f)
    parts = tilde_a(p)
    tilde, hb, ba = parts.tilde, parts.hat_b, parts.bar_a
    aut_g = _aut(g)

    factorises = True
    for t in tilde:
        alpha = project(t, p)
        lift = diagonal_lift(alpha, p)
        if lift is None or (lift.inverse() * t) not in hb:
            factorises = False
            break
    checks = {
        "bar_a_isomorphic_size": ba.order == aut_g.order,
        "bar_a_in_tilde": ba.is_subgroup_of(tilde),
        "hat_b_in_tilde": hb.is_subgroup_of(tilde),
        "hat_b_normal": hb.is_normal_in(tilde),
        "intersection_trivial": hb.intersection(ba).order == 1,
        "order_product": ba.order * hb.order == tilde.order,
        "every_element_factorises": factorises,
    }
    checks["semidirect"] = (checks["bar_a_in_tilde"] and checks["hat_b_in_tilde"]
                            and check_semidirect(tilde, hb, ba))
    return {
        "orders": {"bar_a": ba.order, "hat_b": hb.order, "tilde": tilde.order,
                   "full": parts.full.order, "aut_G": aut_g.order},
        "checks": checks,
        "pass": all(checks.values()),
        "generators": {"bar_a": _gens(ba), "hat_b": _gens(hb)},
    }
