"""Ground types: labels, k-subsets, simple graphs and Kneser adjacency.

Labels are 1-based throughout.  Every k-subset carries a bit mask so that
disjointness is a single ``&``; this caps the ambient set at 64 labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Iterable

from .errors import ParameterError

MAX_LABEL = 64


class KSubset(tuple):
    """A sorted tuple of distinct labels; a vertex of KG(n, k).

    Being a tuple, it hashes and compares element-wise, so lexicographic
    order is the natural order and ``KSubset((1, 2)) == (1, 2)``.
    """

    __slots__ = ()

    def __new__(cls, elements: Iterable[int]):
        items = tuple(sorted(int(x) for x in elements))
        if not items:
            raise ParameterError("a k-subset needs at least one element")
        if items[0] < 1 or items[-1] > MAX_LABEL:
            raise ParameterError(f"labels must lie in 1..{MAX_LABEL}, got {items}")
        if any(a == b for a, b in zip(items, items[1:])):
            raise ParameterError(f"repeated label in {items}")
        return super().__new__(cls, items)

    @property
    def k(self) -> int:
        return len(self)

    @property
    def mask(self) -> int:
        m = 0
        for x in self:
            m |= 1 << x
        return m

    def key(self) -> str:
        """Serialization key, e.g. ``"1,2"``."""
        return ",".join(map(str, self))

    @classmethod
    def from_key(cls, key: str) -> "KSubset":
        return cls(int(x) for x in key.split(","))

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self)) + "}"


def edge(u: int, v: int) -> KSubset:
    if u == v:
        raise ParameterError(f"loop at {u}")
    return KSubset((u, v))


@dataclass(frozen=True)
class KneserDescriptor:
    n: int
    k: int

    def __post_init__(self):
        if self.k < 1 or self.n < self.k:
            raise ParameterError(f"KG({self.n},{self.k}) needs n >= k >= 1")
        if self.n > MAX_LABEL:
            raise ParameterError(f"n={self.n} exceeds the supported maximum {MAX_LABEL}")

    def vertices(self) -> list[KSubset]:
        return k_subsets(self.n, self.k)

    @property
    def num_vertices(self) -> int:
        return comb(self.n, self.k)

    def contains(self, s: KSubset) -> bool:
        return len(s) == self.k and s[-1] <= self.n


@dataclass(frozen=True)
class SimpleGraph:
    """Finite simple graph on labels ``1..n``; edges are sorted pairs."""

    n: int
    edges: tuple[KSubset, ...] = field(default=())

    def __post_init__(self):
        if self.n < 0:
            raise ParameterError("vertex count must be non-negative")
        if self.n > MAX_LABEL:
            raise ParameterError(f"n={self.n} exceeds the supported maximum {MAX_LABEL}")
        seen = set()
        for e in self.edges:
            if len(e) != 2:
                raise ParameterError(f"edge {e!r} is not a pair")
            e = KSubset(e)
            if e[1] > self.n:
                raise ParameterError(f"edge {e!r} leaves 1..{self.n}")
            if e in seen:
                raise ParameterError(f"duplicate edge {e!r}")
            seen.add(e)
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        object.__setattr__(self, "_edge_set", frozenset(seen))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Iterable[int]]) -> "SimpleGraph":
        return cls(n, tuple(KSubset(p) for p in pairs))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def edge_set(self) -> frozenset[KSubset]:
        return self._edge_set

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edge_set

    def neighbors(self, v: int) -> set[int]:
        out = set()
        for a, b in self.edges:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return out

    def is_connected(self) -> bool:
        """Connectivity over all n vertices (isolated vertices disconnect)."""
        if self.n <= 1:
            return True
        adj = {v: set() for v in range(1, self.n + 1)}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen = {1}
        stack = [1]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def is_complete(self) -> bool:
        return self.num_edges == comb(self.n, 2)


def k_subsets(n: int, k: int) -> list[KSubset]:
    """All k-subsets of ``1..n`` in lexicographic order."""
    if n < 0 or k < 0 or k > n:
        raise ParameterError(f"k_subsets needs 0 <= k <= n, got n={n}, k={k}")
    if n > MAX_LABEL:
        raise ParameterError(f"n={n} exceeds the supported maximum {MAX_LABEL}")
    if k == 0:
        return []
    return [KSubset(c) for c in combinations(range(1, n + 1), k)]


def kneser_adjacent(a: KSubset, b: KSubset, n: int | None = None) -> bool:
    if len(a) != len(b):
        raise ParameterError(f"{a!r} and {b!r} have different sizes")
    if n is not None and max(a[-1], b[-1]) > n:
        raise ParameterError(f"{a!r} or {b!r} is not a subset of 1..{n}")
    return not (a.mask & b.mask)


def complete_graph(n: int) -> SimpleGraph:
    if n < 1:
        raise ParameterError(f"complete graph needs n >= 1, got {n}")
    return SimpleGraph(n, tuple(k_subsets(n, 2)) if n >= 2 else ())


def complement_of_line_graph(h: SimpleGraph) -> SimpleGraph:
    """Vertex i is the i-th edge of ``h`` (lexicographic, 1-based); two
    vertices are adjacent when the underlying edges share no endpoint."""
    masks = [e.mask for e in h.edges]
    out = []
    for i, j in combinations(range(len(masks)), 2):
        if not masks[i] & masks[j]:
            out.append(KSubset((i + 1, j + 1)))
    return SimpleGraph(len(masks), tuple(out))


def kneser_graph(n: int, k: int) -> tuple[list[KSubset], SimpleGraph]:
    """Materialize KG(n, k) with vertices numbered by lexicographic rank."""
    verts = KneserDescriptor(n, k).vertices()
    masks = [v.mask for v in verts]
    out = []
    for i, j in combinations(range(len(verts)), 2):
        if not masks[i] & masks[j]:
            out.append(KSubset((i + 1, j + 1)))
    return verts, SimpleGraph(len(verts), tuple(out))


def parse_graph(text: str) -> SimpleGraph:
    """Parse the ``n <count>`` / ``u v`` edge-list format."""
    n = None
    pairs = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 2 or tokens[0] != "n":
                raise ParameterError(f"line {lineno}: expected 'n <count>', got {line!r}")
            n = int(tokens[1])
            continue
        if len(tokens) != 2:
            raise ParameterError(f"line {lineno}: expected 'u v', got {line!r}")
        u, v = int(tokens[0]), int(tokens[1])
        if not 1 <= u < v <= n:
            raise ParameterError(f"line {lineno}: need 1 <= u < v <= {n}, got {u} {v}")
        if (u, v) in seen:
            raise ParameterError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add((u, v))
        pairs.append((u, v))
    if n is None:
        raise ParameterError("missing 'n <count>' header")
    return SimpleGraph.from_pairs(n, pairs)


def read_graph(path: str | Path) -> SimpleGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def format_graph(h: SimpleGraph) -> str:
    lines = [f"n {h.n}"] + [f"{u} {v}" for u, v in h.edges]
    return "\n".join(lines) + "\n"
