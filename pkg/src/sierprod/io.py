"""Text formats: edge lists, graph6, vertex-map files and DOT export."""

from __future__ import annotations

from typing import TYPE_CHECKING

from .errors import LoopError, MapError, ParseError
from .graph import Graph

if TYPE_CHECKING:
    from .product import ProductResult


def parse_edge_list(text: str) -> Graph:
    """One ``u v`` pair per line; ``#`` starts a comment line.

    A line holding a single label declares an isolated vertex.  Vertices keep
    first-appearance order and repeated edges collapse.
    """
    labels: dict[str, int] = {}
    edges: set[tuple[int, int]] = set()

    def idx(x: str) -> int:
        return labels.setdefault(x, len(labels))

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) == 1:
            idx(parts[0])
            continue
        if len(parts) != 2:
            raise ParseError(f"expected two labels, got {len(parts)} fields", lineno)
        a, b = parts
        if a == b:
            raise LoopError(f"loop at {a!r} is not allowed in a simple graph", lineno)
        i, j = idx(a), idx(b)
        edges.add((min(i, j), max(i, j)))
    return Graph(list(labels), sorted(edges))


def emit_edge_list(g: Graph) -> str:
    lines = [f"{a} {b}" for a, b in g.edge_labels()]
    touched = {v for e in g.edges for v in e}
    lines += [g.labels[i] for i in range(g.order) if i not in touched]
    return "\n".join(lines) + ("\n" if lines else "")


# -- graph6 -------------------------------------------------------------------


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(63 + n)
    if n < 258048:
        return "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    return "~~" + "".join(chr(63 + ((n >> s) & 63)) for s in (30, 24, 18, 12, 6, 0))


def emit_graph6(g: Graph) -> str:
    """Standard graph6 (no header).  Vertex order is the graph's label order."""
    n = g.order
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _encode_n(n) + body


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 string; labels become ``"0" .. "n-1"``."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise ParseError("empty graph6 string")
    codes = [ord(c) - 63 for c in s]
    if any(c < 0 or c > 63 for c in codes):
        raise ParseError("graph6 characters must lie in '?'..'~'")
    if codes[0] < 63:
        n, rest = codes[0], codes[1:]
    elif len(codes) >= 4 and codes[1] < 63:
        n = (codes[1] << 12) | (codes[2] << 6) | codes[3]
        rest = codes[4:]
    elif len(codes) >= 8 and codes[1] == 63:
        n = 0
        for c in codes[2:8]:
            n = (n << 6) | c
        rest = codes[8:]
    else:
        raise ParseError("truncated graph6 size field")
    nbits = n * (n - 1) // 2
    if len(rest) != (nbits + 5) // 6:
        raise ParseError(
            f"graph6 body has {len(rest)} bytes, expected {(nbits + 5) // 6} for n={n}"
        )
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (rest[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph([str(i) for i in range(n)], edges)


# -- vertex maps ------------------------------------------------------------------


def parse_map_text(text: str) -> dict[str, str]:
    """Lines ``g h`` mapping a source label to a target label."""
    table: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("expected 'source target'", lineno)
        src, dst = parts
        if src in table:
            raise MapError(f"line {lineno}: source {src!r} mapped twice")
        table[src] = dst
    return table


def emit_map_text(table: dict[str, str]) -> str:
    return "".join(f"{k} {v}\n" for k, v in table.items())


# -- DOT ------------------------------------------------------------------------


def _q(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(g: Graph, product: "ProductResult | None" = None, name: str = "G") -> str:
    """Graphviz text.  With a product, connecting edges get ``class=connecting`` and red."""
    lines = [f"graph {_q(name)} {{", "  node [shape=circle];"]
    for lab in g.labels:
        lines.append(f"  {_q(lab)};")
    connecting = set(product.connecting_edges) if product is not None else set()
    for i, j in g.edges:
        a, b = _q(g.labels[i]), _q(g.labels[j])
        if product is None:
            lines.append(f"  {a} -- {b};")
        elif (i, j) in connecting:
            lines.append(f'  {a} -- {b} [class="connecting", color="red", penwidth=2];')
        else:
            lines.append(f'  {a} -- {b} [class="inner", color="black"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
