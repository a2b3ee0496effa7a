"""ST-partitions, Kneser colorings, and the correspondence between them.

A proper coloring of KG(n, 2) is the same thing as a partition of the edges
of K_n into stars and triangles: every color class of 2-subsets is a
pairwise intersecting family, and such a family is either a star (common
element) or the three pairs of a triangle.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Union

from .errors import ImproperColoringError, InvalidPartitionError, ParameterError
from .graphs import KneserDescriptor, KSubset, SimpleGraph, complete_graph, k_subsets

# ---------------------------------------------------------------------------
# Parts and partitions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Star:
    center: int
    leaves: tuple[int, ...]

    def __post_init__(self):
        leaves = tuple(sorted(set(self.leaves)))
        if len(leaves) != len(self.leaves):
            raise ParameterError(f"repeated leaf in star at {self.center}")
        if not leaves:
            raise ParameterError(f"star at {self.center} has no leaves")
        if self.center in leaves:
            raise ParameterError(f"star center {self.center} is also a leaf")
        object.__setattr__(self, "leaves", leaves)

    def edges(self) -> tuple[KSubset, ...]:
        return tuple(KSubset((self.center, x)) for x in self.leaves)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.leaves) | {self.center}

    def to_json(self) -> dict:
        return {"type": "star", "center": self.center, "leaves": list(self.leaves)}

    def __repr__(self) -> str:
        return f"Star({self.center},{{{','.join(map(str, self.leaves))}}})"


@dataclass(frozen=True)
class Triangle:
    vertices: tuple[int, int, int]

    def __post_init__(self):
        vs = tuple(sorted(set(self.vertices)))
        if len(vs) != 3 or len(self.vertices) != 3:
            raise ParameterError(f"triangle needs 3 distinct vertices, got {self.vertices}")
        object.__setattr__(self, "vertices", vs)

    def edges(self) -> tuple[KSubset, ...]:
        a, b, c = self.vertices
        return (KSubset((a, b)), KSubset((a, c)), KSubset((b, c)))

    def to_json(self) -> dict:
        return {"type": "triangle", "vertices": list(self.vertices)}

    def __repr__(self) -> str:
        return "Triangle{%d,%d,%d}" % self.vertices


STPart = Union[Star, Triangle]


def part_from_edges(edges: Iterable[Iterable[int]]) -> STPart | None:
    """Read an edge set as a star or triangle, or ``None`` if it is neither.

    A single edge becomes a star centered at its smaller endpoint.
    """
    es = [KSubset(e) for e in edges]
    if not es or len(set(es)) != len(es):
        return None
    common = set(es[0]).intersection(*es[1:])
    if common:
        c = min(common)
        return Star(c, tuple(x for e in es for x in e if x != c))
    verts = set().union(*es)
    if len(es) == 3 and len(verts) == 3:
        return Triangle(tuple(verts))
    return None


def part_from_json(obj: dict) -> STPart:
    kind = obj.get("type")
    if kind == "star":
        return Star(int(obj["center"]), tuple(int(x) for x in obj["leaves"]))
    if kind == "triangle":
        return Triangle(tuple(int(x) for x in obj["vertices"]))
    raise ParameterError(f"unknown part type {kind!r}")


@dataclass(frozen=True)
class STPartition:
    host: SimpleGraph
    parts: tuple[STPart, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    @property
    def size(self) -> int:
        return len(self.parts)

    @property
    def triangles(self) -> list[Triangle]:
        return [p for p in self.parts if isinstance(p, Triangle)]

    @property
    def stars(self) -> list[Star]:
        return [p for p in self.parts if isinstance(p, Star)]

    def num_triangles(self) -> int:
        return sum(isinstance(p, Triangle) for p in self.parts)

    def centers(self) -> set[int]:
        return {p.center for p in self.parts if isinstance(p, Star)}

    def edge_multiset(self) -> Counter:
        """Multiset of part edge sets; ignores part order and star centers."""
        return Counter(frozenset(p.edges()) for p in self.parts)

    def to_json(self) -> dict:
        out = {"n": self.host.n, "parts": [p.to_json() for p in self.parts]}
        if not self.host.is_complete():
            out["edges"] = [list(e) for e in self.host.edges]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "STPartition":
        n = int(obj["n"])
        if "edges" in obj:
            host = SimpleGraph.from_pairs(n, obj["edges"])
        else:
            host = complete_graph(n)
        return cls(host, tuple(part_from_json(p) for p in obj["parts"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


@dataclass
class PartitionReport:
    uncovered: list[KSubset] = field(default_factory=list)
    doubly_covered: list[KSubset] = field(default_factory=list)
    outside_host: list[KSubset] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.uncovered or self.doubly_covered or self.outside_host)

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "ok"
        bits = []
        for name in ("uncovered", "doubly_covered", "outside_host"):
            edges = getattr(self, name)
            if edges:
                bits.append(f"{name.replace('_', ' ')}: " + ", ".join(map(repr, edges)))
        return "; ".join(bits)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "uncovered": [e.key() for e in self.uncovered],
            "doubly_covered": [e.key() for e in self.doubly_covered],
            "outside_host": [e.key() for e in self.outside_host],
        }


def validate_partition(p: STPartition) -> PartitionReport:
    host = p.host.edge_set()
    counts = Counter(e for part in p.parts for e in part.edges())
    report = PartitionReport()
    report.outside_host = sorted(e for e in counts if e not in host)
    report.doubly_covered = sorted(e for e, c in counts.items() if c > 1 and e in host)
    report.uncovered = sorted(e for e in host if e not in counts)
    return report


# ---------------------------------------------------------------------------
# Colorings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StarShaped:
    common: frozenset[int]


@dataclass(frozen=True)
class TriangleClass:
    vertices: tuple[int, int, int]


@dataclass(frozen=True)
class NotIntersecting:
    pair: tuple[KSubset, KSubset]


ClassKind = Union[StarShaped, TriangleClass, NotIntersecting]


def is_star_shaped(members: Iterable[KSubset]) -> bool:
    members = list(members)
    if not members:
        raise ParameterError("empty color class")
    common = members[0].mask
    for s in members[1:]:
        common &= s.mask
    return common != 0


def classify_class(members: Iterable[KSubset]) -> ClassKind:
    members = sorted(members)
    if not members:
        raise ParameterError("empty color class")
    if any(len(s) != 2 for s in members):
        raise ParameterError("classify_class handles 2-subsets only")
    common = set(members[0]).intersection(*members[1:])
    if common:
        return StarShaped(frozenset(common))
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if not a.mask & b.mask:
                return NotIntersecting((a, b))
    # pairwise intersecting with no common point: the three sides of a triangle
    return TriangleClass(tuple(sorted(set().union(*members))))


@dataclass
class Coloring:
    """Color assignment on the vertices of KG(n, k).

    ``raw`` optionally keeps the pre-normalization colors for inspection.
    """

    n: int
    k: int
    colors: dict[KSubset, int]
    raw: dict[KSubset, int] | None = None

    def __post_init__(self):
        self.descriptor = KneserDescriptor(self.n, self.k)
        self.colors = {KSubset(s): int(c) for s, c in self.colors.items()}
        for s in self.colors:
            if not self.descriptor.contains(s):
                raise ParameterError(f"{s!r} is not a vertex of KG({self.n},{self.k})")

    def is_total(self) -> bool:
        return len(self.colors) == self.descriptor.num_vertices

    def require_total(self):
        if not self.is_total():
            missing = [s for s in self.descriptor.vertices() if s not in self.colors]
            raise ParameterError(f"partial coloring; first uncolored vertex {missing[0]!r}")

    @property
    def classes(self) -> dict[int, list[KSubset]]:
        out: dict[int, list[KSubset]] = {}
        for s in sorted(self.colors):
            out.setdefault(self.colors[s], []).append(s)
        return dict(sorted(out.items()))

    @property
    def num_colors(self) -> int:
        return len(set(self.colors.values()))

    def normalized(self) -> "Coloring":
        """Renumber classes 1..m by each class's smallest member."""
        order = {}
        for s in sorted(self.colors):
            c = self.colors[s]
            if c not in order:
                order[c] = len(order) + 1
        return Coloring(self.n, self.k, {s: order[c] for s, c in self.colors.items()}, raw=self.raw)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "colors": {s.key(): self.colors[s] for s in sorted(self.colors)},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Coloring":
        colors = {KSubset.from_key(key): int(c) for key, c in obj["colors"].items()}
        return cls(int(obj["n"]), int(obj["k"]), colors)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


@dataclass
class ProperCheck:
    proper: bool
    witness: tuple[KSubset, KSubset] | None = None

    def __bool__(self) -> bool:
        return self.proper


def is_proper_coloring(c: Coloring) -> ProperCheck:
    """The witness, if any, is the lexicographically first bad pair."""
    c.require_total()
    best = None
    for members in c.classes.values():
        masks = [s.mask for s in members]
        for i in range(len(members)):
            if best is not None and members[i] > best[0]:
                break
            for j in range(i + 1, len(members)):
                if not masks[i] & masks[j]:
                    pair = (members[i], members[j])
                    if best is None or pair < best:
                        best = pair
                    break
    if best is None:
        return ProperCheck(True)
    return ProperCheck(False, best)


def _require_proper(c: Coloring):
    check = is_proper_coloring(c)
    if not check:
        raise ImproperColoringError(check.witness)


def count_non_star_shaped(c: Coloring) -> int:
    _require_proper(c)
    return sum(not is_star_shaped(m) for m in c.classes.values())


def coloring_to_partition(c: Coloring) -> STPartition:
    if c.k != 2:
        raise ParameterError("the star/triangle correspondence needs k = 2")
    _require_proper(c)
    parts: list[STPart] = []
    for members in c.classes.values():
        kind = classify_class(members)
        if isinstance(kind, TriangleClass):
            parts.append(Triangle(kind.vertices))
        else:
            center = min(kind.common)
            parts.append(Star(center, tuple(x for s in members for x in s if x != center)))
    return STPartition(complete_graph(c.n), tuple(parts))


def partition_to_coloring(p: STPartition) -> Coloring:
    if not p.host.is_complete():
        raise ParameterError("partition_to_coloring needs a complete host")
    report = validate_partition(p)
    if not report:
        raise InvalidPartitionError(report)
    colors = {}
    for i, part in enumerate(p.parts, 1):
        for e in part.edges():
            colors[e] = i
    return Coloring(p.host.n, 2, colors)


def constant_coloring(n: int, k: int) -> Coloring:
    return Coloring(n, k, {s: 1 for s in k_subsets(n, k)})


# ---------------------------------------------------------------------------
# Lemma checkers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CenteredTriangle:
    """A triangle part with two or more vertices that center stars."""

    triangle: Triangle
    centers: tuple[int, ...]

    def to_json(self) -> dict:
        return {"lemma": "min-tri", "triangle": list(self.triangle.vertices), "centers": list(self.centers)}


@dataclass(frozen=True)
class UncenteredNeighbor:
    """A vertex outside every triangle, adjacent to two or more vertices of
    a triangle part, that centers no star."""

    vertex: int
    triangle: Triangle

    def to_json(self) -> dict:
        return {"lemma": "min-tri1", "vertex": self.vertex, "triangle": list(self.triangle.vertices)}


def check_lemma_min_tri(p: STPartition) -> list[CenteredTriangle]:
    centers = p.centers()
    out = []
    for t in p.triangles:
        hit = tuple(v for v in t.vertices if v in centers)
        if len(hit) >= 2:
            out.append(CenteredTriangle(t, hit))
    return out


def check_lemma_min_tri1(p: STPartition) -> list[UncenteredNeighbor]:
    centers = p.centers()
    triangles = p.triangles
    in_triangle = {v for t in triangles for v in t.vertices}
    out = []
    for x in range(1, p.host.n + 1):
        if x in in_triangle or x in centers:
            continue
        for t in triangles:
            if sum(p.host.has_edge(x, v) for v in t.vertices) >= 2:
                out.append(UncenteredNeighbor(x, t))
    return out
