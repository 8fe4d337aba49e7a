"""Permutations of a fixed vertex set and the finite groups they generate."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .config import limits
from .errors import GraphError, SearchOverflow


@dataclass(frozen=True)
class Permutation:
    """Bijection on ``range(n)``; ``images[i]`` is the image of ``i``.

    ``labels`` only affects printing and label-based helpers.  Products follow
    function composition: ``(p * q)(i) == p(q(i))``.
    """

    images: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise GraphError("not a bijection")
        object.__setattr__(self, "images", imgs)
        if self.labels is not None:
            labs = tuple(self.labels)
            if len(labs) != len(imgs):
                raise GraphError("label count does not match permutation size")
            object.__setattr__(self, "labels", labs)

    # -- constructors ---------------------------------------------------------------

    @classmethod
    def identity(cls, n: int, labels: Sequence[str] | None = None) -> "Permutation":
        return cls(tuple(range(n)), labels)

    @classmethod
    def from_mapping(cls, mapping: dict, labels: Sequence[str]) -> "Permutation":
        """From ``{label: image label}``; unmentioned labels are fixed."""
        labels = tuple(str(x) for x in labels)
        pos = {x: i for i, x in enumerate(labels)}
        imgs = list(range(len(labels)))
        for a, b in mapping.items():
            try:
                imgs[pos[str(a)]] = pos[str(b)]
            except KeyError as exc:
                raise GraphError(f"unknown label {exc.args[0]!r}") from None
        return cls(tuple(imgs), labels)

    @classmethod
    def from_cycles(cls, text: str, labels: Sequence[str]) -> "Permutation":
        """Parse cycle notation such as ``"(1 2 3)(4 5)"`` over ``labels``."""
        mapping = {}
        stripped = text.strip()
        if stripped in ("", "()", "id", "e"):
            return cls.identity(len(labels), tuple(str(x) for x in labels))
        if re.sub(r"\([^()]*\)", "", stripped).strip():
            raise GraphError(f"malformed cycle notation {text!r}")
        for body in re.findall(r"\(([^()]*)\)", stripped):
            items = body.replace(",", " ").split()
            for a, b in zip(items, items[1:] + items[:1]):
                if a in mapping:
                    raise GraphError(f"label {a!r} appears twice in {text!r}")
                mapping[a] = b
        return cls.from_mapping(mapping, labels)

    # -- algebra ------------------------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def image_of(self, label) -> str:
        pos = self.labels.index(str(label))
        return self.labels[self.images[pos]]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.size != self.size:
            raise GraphError("permutations act on different sets")
        imgs = tuple(self.images[j] for j in other.images)
        return Permutation(imgs, self.labels or other.labels)

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for i, v in enumerate(self.images):
            inv[v] = i
        return Permutation(tuple(inv), self.labels)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point."""
        seen = [False] * self.size
        out = []
        for i in range(self.size):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_notation(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        name = self.labels.__getitem__ if self.labels else str
        return "".join("(" + " ".join(name(i) for i in c) + ")" for c in cyc)

    def order(self) -> int:
        from math import lcm

        return lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def as_array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.int64)

    def __str__(self):
        return self.cycle_notation()


def is_automorphism(p: Permutation, g) -> bool:
    """True iff ``p`` maps the edge set of graph ``g`` onto itself."""
    if p.size != g.order:
        return False
    return all(g.has_edge(p.images[i], p.images[j]) for i, j in g.edges)


def _key(row: np.ndarray) -> bytes:
    return np.asarray(row, dtype=np.int32).tobytes()


def _sorted_rows(arr: np.ndarray) -> np.ndarray:
    if arr.shape[0] <= 1 or arr.shape[1] == 0:
        return arr
    return arr[np.lexsort(arr.T[::-1])]


class PermGroup:
    """A finite permutation group with its full element list.

    Elements are kept in lexicographic order of their image tuples.
    """

    def __init__(self, elements: np.ndarray, labels: Sequence[str] | None = None,
                 generators: Iterable[Permutation] | None = None):
        arr = np.asarray(elements, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] == 0:
            raise GraphError("a group needs at least the identity")
        self._arr = _sorted_rows(arr)
        self.degree = arr.shape[1]
        self.labels = tuple(labels) if labels is not None else None
        self._index = {_key(r): k for k, r in enumerate(self._arr)}
        if len(self._index) != self._arr.shape[0]:
            raise GraphError("duplicate group elements")
        if _key(np.arange(self.degree)) not in self._index:
            raise GraphError("element list does not contain the identity")
        if generators is not None:
            self.__dict__["generators"] = list(generators)

    @classmethod
    def trivial(cls, n: int, labels=None) -> "PermGroup":
        return cls(np.arange(n, dtype=np.int64)[None, :], labels, generators=[])

    @property
    def order(self) -> int:
        return self._arr.shape[0]

    def __len__(self) -> int:
        return self.order

    @property
    def array(self) -> np.ndarray:
        return self._arr

    def elements(self) -> list[Permutation]:
        return [Permutation(tuple(r), self.labels) for r in self._arr]

    def __iter__(self):
        return iter(self.elements())

    def __contains__(self, p) -> bool:
        row = p.images if isinstance(p, Permutation) else p
        if len(row) != self.degree:
            return False
        return _key(row) in self._index

    @cached_property
    def generators(self) -> list[Permutation]:
        """A small generating set picked greedily in element order."""
        gens: list[Permutation] = []
        reached = {_key(np.arange(self.degree))}
        for row in self._arr:
            if _key(row) in reached:
                continue
            gens.append(Permutation(tuple(row), self.labels))
            reached = set(
                _key(r) for r in _closure_rows([g.as_array() for g in gens], self.degree,
                                               self.order)
            )
            if len(reached) == self.order:
                break
        return gens

    def is_closed(self) -> bool:
        arr = self._arr
        for a in arr:
            if _key(np.argsort(a)) not in self._index:
                return False
            prods = a[arr]  # a o b for every b
            if any(_key(r) not in self._index for r in prods):
                return False
        return True

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(
            _key(r) in other._index for r in self._arr
        )

    def is_normal_in(self, other: "PermGroup") -> bool:
        """``self`` is normal in ``other`` (assumes ``self`` is a subgroup)."""
        for g in other.generators:
            ga = g.as_array()
            ginv = np.argsort(ga)
            for n in self.generators:
                conj = ga[n.as_array()[ginv]]
                if _key(conj) not in self._index:
                    return False
        return True

    def intersection(self, other: "PermGroup") -> "PermGroup":
        rows = [r for r in self._arr if _key(r) in other._index]
        return PermGroup(np.stack(rows), self.labels)

    def __eq__(self, other):
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.degree == other.degree and self._index.keys() == other._index.keys()

    def __hash__(self):
        return hash(self._arr.tobytes())

    def __repr__(self):
        return f"PermGroup(order={self.order}, degree={self.degree})"


def _closure_rows(gens: list[np.ndarray], n: int, limit: int) -> np.ndarray:
    ident = np.arange(n, dtype=np.int64)
    seen = {_key(ident)}
    rows = [ident]
    frontier = ident[None, :]
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    while frontier.shape[0]:
        fresh = []
        for g in gens:
            # right multiplication x -> x o g
            for r in frontier[:, g]:
                k = _key(r)
                if k not in seen:
                    seen.add(k)
                    fresh.append(r)
                    if len(seen) > limit:
                        raise SearchOverflow("group order", limit, len(seen))
        rows.extend(fresh)
        frontier = np.stack(fresh) if fresh else np.empty((0, n), np.int64)
    return np.stack(rows)


def group_closure(gens: Sequence[Permutation], n: int | None = None,
                  labels: Sequence[str] | None = None, limit: int | None = None) -> PermGroup:
    """The group generated by ``gens``.

    ``n`` is required when ``gens`` is empty.  Raises ``SearchOverflow`` when
    the group would exceed ``limit`` elements (default from config).
    """
    gens = list(gens)
    if n is None:
        if not gens:
            raise GraphError("degree needed for an empty generator list")
        n = gens[0].size
    if any(g.size != n for g in gens):
        raise GraphError("generators act on different sets")
    if labels is None and gens:
        labels = gens[0].labels
    limit = limits().max_group_order if limit is None else limit
    rows = _closure_rows([g.as_array() for g in gens], n, limit)
    return PermGroup(rows, labels, generators=[g for g in gens if not g.is_identity()])


def check_semidirect(group: PermGroup, normal: PermGroup, complement: PermGroup) -> bool:
    """``group`` is the internal semidirect product ``normal ⋊ complement``.

    Both inputs must be subgroups of ``group``; otherwise ``GraphError``.
    """
    if not normal.is_subgroup_of(group) or not complement.is_subgroup_of(group):
        raise GraphError("semidirect check needs subgroups of the ambient group")
    if not normal.is_normal_in(group):
        return False
    if normal.intersection(complement).order != 1:
        return False
    return normal.order * complement.order == group.order
