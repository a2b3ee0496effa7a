"""Explicit optimal colorings and colorful multipartite witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import ImproperColoringError, ParameterError
from .graphs import KSubset, k_subsets
from .model import Coloring, STPartition, is_proper_coloring


@dataclass(frozen=True)
class MultipartiteWitness:
    parts: tuple[tuple[KSubset, ...], ...]
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(tuple(KSubset(v) for v in p) for p in self.parts))

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.parts)

    def vertices(self) -> list[KSubset]:
        return [v for p in self.parts for v in p]

    def label_unions(self) -> list[frozenset[int]]:
        return [frozenset(x for v in p for x in v) for p in self.parts]

    def to_json(self) -> dict:
        out = {"parts": [[v.key() for v in p] for p in self.parts]}
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "MultipartiteWitness":
        return cls(tuple(tuple(KSubset.from_key(k) for k in p) for p in obj["parts"]))


@dataclass
class WitnessReport:
    ok: bool
    reason: str | None = None
    pair: tuple[KSubset, KSubset] | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        out = {"ok": self.ok}
        if not self.ok:
            out["reason"] = self.reason
            out["pair"] = [v.key() for v in self.pair] if self.pair else None
        return out


def verify_colorful_multipartite(c: Coloring, w: MultipartiteWitness) -> WitnessReport:
    """Check cross-part disjointness, then color distinctness."""
    for p in w.parts:
        for v in p:
            if v not in c.colors:
                return WitnessReport(False, "unknown vertex", (v, v))
    for i, j in combinations(range(len(w.parts)), 2):
        for a in w.parts[i]:
            for b in w.parts[j]:
                if a.mask & b.mask:
                    return WitnessReport(False, "not adjacent", (a, b))
    seen: dict[int, KSubset] = {}
    for v in w.vertices():
        col = c.colors[v]
        if col in seen:
            return WitnessReport(False, "color collision", (seen[col], v))
        seen[col] = v
    return WitnessReport(True)


# ---------------------------------------------------------------------------
# Explicit colorings
# ---------------------------------------------------------------------------


def standard_optimal_coloring(n: int, k: int) -> Coloring:
    """Color by minimum element, lumping the last 2k-1 labels together."""
    if k < 1 or n < 2 * k - 1:
        raise ParameterError(f"standard coloring needs n >= 2k-1 >= 1, got n={n}, k={k}")
    last = n - 2 * k + 2
    colors = {s: min(s[0], last) for s in k_subsets(n, k)}
    return Coloring(n, k, colors)


def remark_color(i: int, j: int) -> int:
    """Raw color of the pair i < j: 3 inside {1,2,3}, else the larger label
    if the smaller one is in {1,2,3}, else the smaller label."""
    if j <= 3:
        return 3
    if i <= 3:
        return j
    return i


def remark_coloring(n: int) -> Coloring:
    """An optimal coloring of KG(n, 2) with no colorful cycle in K_n.

    Raw colors 3..n are shifted down by two; ``raw`` keeps the originals.
    """
    if n < 3:
        raise ParameterError(f"remark coloring needs n >= 3, got {n}")
    raw = {s: remark_color(*s) for s in k_subsets(n, 2)}
    return Coloring(n, 2, {s: c - 2 for s, c in raw.items()}, raw=raw)


def min_element_coloring(n: int, k: int) -> Coloring:
    """Color each k-subset by its minimum (n - k + 1 classes, all stars)."""
    return Coloring(n, k, {s: s[0] for s in k_subsets(n, k)})


# ---------------------------------------------------------------------------
# Corollary extractors
# ---------------------------------------------------------------------------


def _triangle_frame(p: STPartition) -> tuple[tuple[int, int, int], list[int]]:
    n = p.host.n
    if not p.host.is_complete():
        raise ParameterError("extractors need a partition of a complete graph")
    if n < 3:
        raise ParameterError("extractors need n >= 3")
    if p.size != n - 2:
        raise ParameterError(f"partition has {p.size} parts; optimal for K_{n} is {n - 2}")
    tris = p.triangles
    if len(tris) != 1:
        raise ParameterError(f"an optimal partition has exactly one triangle, found {len(tris)}")
    a, b, c = tris[0].vertices
    rest = [x for x in range(1, n + 1) if x not in (a, b, c)]
    return (a, b, c), rest


def extract_colorful_bipartite(p: STPartition, l: int, m: int) -> MultipartiteWitness:
    """Two parts: pairs {a, i} over the first l outside vertices, and pairs
    {b, j} over the remaining outside vertices plus the triangle side {b, c}.

    When l = n - 2 the roles are mirrored so the {b, c} side lands in the
    first part; the returned witness records this in ``notes``.
    """
    (a, b, c), rest = _triangle_frame(p)
    n = p.host.n
    if l < 0 or m < 0 or l + m != n - 2:
        raise ParameterError(f"need l, m >= 0 with l + m = {n - 2}, got ({l}, {m})")
    if m == 0:
        w = extract_colorful_bipartite(p, 0, l)
        return MultipartiteWitness((w.parts[1], w.parts[0]), notes=("mirrored",))
    side_a = tuple(KSubset((a, i)) for i in rest[:l])
    side_b = tuple(KSubset((b, j)) for j in rest[l:]) + (KSubset((b, c)),)
    return MultipartiteWitness((side_a, side_b))


def extract_colorful_tripartite(p: STPartition, k: int, l: int, m: int) -> MultipartiteWitness:
    (a, b, c), rest = _triangle_frame(p)
    n = p.host.n
    if n < 6:
        raise ParameterError(f"tripartite witnesses need n >= 6, got {n}")
    if min(k, l, m) < 1 or k + l + m != n - 3:
        raise ParameterError(f"need k, l, m >= 1 with k + l + m = {n - 3}, got ({k}, {l}, {m})")
    return MultipartiteWitness((
        tuple(KSubset((a, i)) for i in rest[:k]),
        tuple(KSubset((b, i)) for i in rest[k:k + l]),
        tuple(KSubset((c, i)) for i in rest[k + l:]),
    ))


# ---------------------------------------------------------------------------
# Rainbow cycles
# ---------------------------------------------------------------------------


@dataclass
class CycleCertificate:
    ok: bool
    cycle: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "cycle": list(self.cycle) if self.cycle else None}


def no_colorful_cycle_certificate(c: Coloring) -> CycleCertificate:
    """Search K_n, edge-colored by ``c``, for a cycle with distinct colors.

    DFS from each start vertex s over vertices > s only, so each cycle is
    rooted at its minimum vertex; the closing edge must also bring a new
    color.  Returns the first rainbow cycle found, as a vertex sequence.
    """
    if c.k != 2:
        raise ParameterError("colorful cycles are defined for k = 2")
    check = is_proper_coloring(c)
    if not check:
        raise ImproperColoringError(check.witness)
    n = c.n
    bit = {}
    for col in sorted(set(c.colors.values())):
        bit[col] = 1 << len(bit)
    cmask = [[0] * (n + 1) for _ in range(n + 1)]
    for (u, v), col in c.colors.items():
        cmask[u][v] = cmask[v][u] = bit[col]

    def dfs(s, path, on_path, used):
        x = path[-1]
        if len(path) >= 3 and not cmask[x][s] & used:
            return tuple(path)
        for y in range(s + 1, n + 1):
            if on_path >> y & 1 or cmask[x][y] & used:
                continue
            path.append(y)
            found = dfs(s, path, on_path | 1 << y, used | cmask[x][y])
            path.pop()
            if found:
                return found
        return None

    for s in range(1, n - 1):
        found = dfs(s, [s], 1 << s, 0)
        if found:
            return CycleCertificate(False, found)
    return CycleCertificate(True)


def is_colorful_cycle(c: Coloring, cycle: tuple[int, ...]) -> bool:
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        return False
    cols = [c.colors[KSubset((cycle[i], cycle[(i + 1) % len(cycle)]))] for i in range(len(cycle))]
    return len(set(cols)) == len(cols)

