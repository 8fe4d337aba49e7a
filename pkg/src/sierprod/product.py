"""Sierpiński products: binary, left-nested chains, generalized Sierpiński graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import prod
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import GraphError, MapError, UnknownEdgeError
from .graph import Graph
from .io import parse_map_text

DEFAULT_SEPARATOR = "."


class VertexMap:
    """A total function from the vertices of ``source`` to those of ``target``."""

    def __init__(self, source: Graph, target: Graph, table: Mapping):
        tab = {str(k): str(v) for k, v in table.items()}
        missing = [x for x in source.labels if x not in tab]
        if missing:
            raise MapError(f"map is not total: no image for {missing[:5]}")
        extra = [x for x in tab if x not in source]
        if extra:
            raise MapError(f"map mentions unknown source vertices {extra[:5]}")
        bad = [v for v in tab.values() if v not in target]
        if bad:
            raise MapError(f"images {sorted(set(bad))[:5]} are not vertices of the target")
        self.source = source
        self.target = target
        self.table = {x: tab[x] for x in source.labels}
        self.indices = np.array(
            [target.index(self.table[x]) for x in source.labels], dtype=np.int64
        )
        self.indices.flags.writeable = False

    # -- factories ----------------------------------------------------------------------

    @classmethod
    def identity(cls, source: Graph, target: Graph) -> "VertexMap":
        """Identity on labels; needs ``V(source) ⊆ V(target)``."""
        return cls(source, target, {x: x for x in source.labels})

    @classmethod
    def from_function(cls, source: Graph, target: Graph, fn: Callable) -> "VertexMap":
        return cls(source, target, {x: fn(x) for x in source.labels})

    @classmethod
    def from_indices(cls, source: Graph, target: Graph, idx: Sequence[int]) -> "VertexMap":
        return cls(source, target,
                   {x: target.labels[int(i)] for x, i in zip(source.labels, idx)})

    @classmethod
    def modulo(cls, source: Graph, target: Graph, k: int) -> "VertexMap":
        """``i -> i mod k`` on integer labels."""
        return cls.from_function(source, target, lambda x: str(int(x) % k))

    @classmethod
    def parse(cls, text: str, source: Graph, target: Graph) -> "VertexMap":
        return cls(source, target, parse_map_text(text))

    # -- queries --------------------------------------------------------------------------

    def __call__(self, label) -> str:
        return self.table[str(label)]

    def is_locally_injective(self) -> bool:
        g = self.source
        for v in range(g.order):
            imgs = self.indices[list(g.neighbors(v))]
            if len(set(imgs.tolist())) != len(imgs):
                return False
        return True

    def is_bijective(self) -> bool:
        return (self.source.order == self.target.order
                and len(set(self.indices.tolist())) == self.source.order)

    def then(self, other: "VertexMap") -> "VertexMap":
        """Composition ``other ∘ self``."""
        if not other.source.same_as(self.target):
            raise MapError("composition arity mismatch")
        return VertexMap(self.source, other.target,
                         {x: other(self.table[x]) for x in self.source.labels})

    def __repr__(self):
        return f"VertexMap({self.table})"


def is_locally_injective(f: VertexMap) -> bool:
    return f.is_locally_injective()


@dataclass(frozen=True, eq=False)
class ProductResult:
    """The pair (K, φ) plus the bookkeeping needed by the analysis modules.

    Vertex ``(g, h)`` sits at index ``index(g) * |H| + index(h)`` of ``graph``.
    ``inner_edges`` and ``connecting_edges`` hold index pairs ``(i, j)``, ``i < j``.
    For a single-factor chain ``outer`` is ``None`` and every edge is inner.
    """

    graph: Graph
    phi: dict[str, str]
    inner_edges: frozenset
    connecting_edges: frozenset
    outer: Graph | None
    inner: Graph
    vmap: VertexMap | None
    separator: str = DEFAULT_SEPARATOR
    factors: tuple = field(default=())

    @property
    def g(self) -> Graph:
        return self.outer

    @property
    def h(self) -> Graph:
        return self.inner

    def split(self, i: int) -> tuple[int, int]:
        """Product vertex index -> (index in outer factor, index in inner factor)."""
        return divmod(i, self.inner.order)

    def vertex(self, g_label, h_label) -> int:
        return self.outer.index(g_label) * self.inner.order + self.inner.index(h_label)

    def copy_indices(self, g_label) -> range:
        start = self.outer.index(g_label) * self.inner.order
        return range(start, start + self.inner.order)

    def classify_edge(self, u, v) -> str:
        """``"inner"`` or ``"connecting"`` for the edge between labels ``u`` and ``v``."""
        i, j = self.graph.index(u), self.graph.index(v)
        e = (min(i, j), max(i, j))
        if e in self.inner_edges:
            return "inner"
        if e in self.connecting_edges:
            return "connecting"
        raise UnknownEdgeError(f"{{{u}, {v}}} is not an edge of the product")

    @cached_property
    def connecting_mask(self) -> np.ndarray:
        """Boolean matrix marking connecting edges, for vectorised checks."""
        n = self.graph.order
        m = np.zeros((n, n), dtype=bool)
        for i, j in self.connecting_edges:
            m[i, j] = m[j, i] = True
        return m


def _join(a: str, b: str, sep: str) -> str:
    return f"{a}{sep}{b}"


def sierpinski_product(g: Graph, h: Graph, f: VertexMap,
                       separator: str = DEFAULT_SEPARATOR) -> ProductResult:
    """``G ⊗_f H``: a copy of H per vertex of G, plus one edge
    ``{(g, f(g')), (g', f(g))}`` for each edge ``{g, g'}`` of G."""
    if not (f.source.same_as(g) and f.target.same_as(h)):
        raise MapError("vertex map does not go from G to H")
    nh = h.order
    # f may have been built on equal graphs with a different label order
    fi = np.array([h.index(f(x)) for x in g.labels], dtype=np.int64)
    labels = [_join(a, b, separator) for a in g.labels for b in h.labels]
    inner = [(a * nh + x, a * nh + y) for a in range(g.order) for x, y in h.edges]
    connecting = []
    for a, b in g.edges:
        u, v = a * nh + int(fi[b]), b * nh + int(fi[a])
        connecting.append((min(u, v), max(u, v)))
    try:
        graph = Graph(labels, inner + connecting)
    except GraphError as exc:
        raise GraphError(f"{exc}; choose a separator that keeps product labels distinct") from None
    phi = {x: labels[k * nh + int(fi[k])] for k, x in enumerate(g.labels)}
    return ProductResult(graph, phi, frozenset(inner), frozenset(connecting),
                         g, h, f, separator, (g, h))


@dataclass(frozen=True)
class ChainSpec:
    """Factors ``G_m, ..., G_1`` and maps ``f_{m-1}, ..., f_1``.

    ``maps[i]`` goes from ``factors[i]`` to ``factors[i + 1]``.
    """

    factors: tuple
    maps: tuple = ()
    separator: str = DEFAULT_SEPARATOR

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(self, "maps", tuple(self.maps))
        if not self.factors:
            raise MapError("a chain needs at least one factor")
        if len(self.maps) != len(self.factors) - 1:
            raise MapError(
                f"{len(self.factors)} factors need {len(self.factors) - 1} maps, "
                f"got {len(self.maps)}"
            )
        for k, (f, a, b) in enumerate(zip(self.maps, self.factors, self.factors[1:])):
            if not (f.source.same_as(a) and f.target.same_as(b)):
                raise MapError(f"map {k} does not go from factor {k} to factor {k + 1}")


def chain_product(spec: ChainSpec) -> ProductResult:
    """Left-nested product ``G_m ⊗ (… ⊗ (G_2 ⊗ G_1))``.

    At each step the new factor is attached through ``φ ∘ f`` where φ is the
    embedding returned by the previous step.  Labels are words ``g_m…g_1``.
    """
    base = spec.factors[-1]
    k = base
    phi = {x: x for x in base.labels}
    result = ProductResult(base, phi, frozenset(base.edges), frozenset(), None, base,
                           None, spec.separator, (base,))
    for i in range(len(spec.factors) - 2, -1, -1):
        g, f = spec.factors[i], spec.maps[i]
        lifted = VertexMap(g, k, {x: phi[f(x)] for x in g.labels})
        result = sierpinski_product(g, k, lifted, spec.separator)
        k, phi = result.graph, result.phi
    return ProductResult(result.graph, result.phi, result.inner_edges,
                         result.connecting_edges, result.outer, result.inner, result.vmap,
                         spec.separator, spec.factors)


def generalized_sierpinski(g: Graph, n: int, separator: str = DEFAULT_SEPARATOR) -> ProductResult:
    """``S_G^n``: n copies of G chained by identity maps."""
    if n < 1:
        raise GraphError("n must be at least 1")
    ident = VertexMap.identity(g, g)
    return chain_product(ChainSpec((g,) * n, (ident,) * (n - 1), separator))


def predicted_counts(spec: ChainSpec) -> tuple[int, int]:
    """Closed-form (order, size) of the chain product, without building it."""
    orders = [f.order for f in spec.factors]  # G_m first
    order = prod(orders)
    size = 0
    for pos, f in enumerate(spec.factors):
        size += prod(orders[:pos]) * f.size
    return order, size


def binary_counts(g: Graph, h: Graph) -> tuple[int, int]:
    return g.order * h.order, h.size * g.order + g.size
