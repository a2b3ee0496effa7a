"""Exact search: ST-partition enumeration, minimum sizes, chromatic numbers
and colorful multipartite subgraphs.

Edge sets are bit masks over the host's edges in lexicographic order, so
the lowest set bit is always the lowest uncovered edge.

The enumerator rests on one fact: an ST-partition of an edge set R with
p < |R| parts can always be refined to p + 1 parts (split a star, or a
triangle into a two-edge star plus an edge).  Hence R admits a partition
into exactly q parts iff ``min_size(R) <= q <= |R|``.  With ``min_size``
memoized, every branch the enumerator enters leads to at least one
solution.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import isqrt
from typing import Iterator

from .constructions import MultipartiteWitness, verify_colorful_multipartite
from .errors import ImproperColoringError, ParameterError, Undetermined
from .graphs import KSubset, SimpleGraph, complete_graph
from .model import Coloring, STPartition, Star, Triangle, is_proper_coloring


@dataclass(frozen=True)
class SearchBudget:
    max_parts: int | None = None
    node_limit: int | None = 10**9
    time_limit: float | None = None  # seconds

    def __post_init__(self):
        for name in ("max_parts", "node_limit", "time_limit"):
            val = getattr(self, name)
            if val is not None and val <= 0:
                raise ParameterError(f"{name} must be positive, got {val}")


DEFAULT_BUDGET = SearchBudget()


class _BudgetFired(Exception):
    pass


class _Meter:
    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.nodes = 0
        self.start = time.monotonic()
        self._limit = budget.node_limit

    def tick(self):
        self.nodes += 1
        if self._limit is not None and self.nodes > self._limit:
            raise _BudgetFired("node limit")
        if self.budget.time_limit is not None and self.nodes & 0x3FF == 0:
            if time.monotonic() - self.start > self.budget.time_limit:
                raise _BudgetFired("time limit")


def _popcount(x: int) -> int:
    return bin(x).count("1")


class _EdgeSystem:
    def __init__(self, h: SimpleGraph, allow_triangles: bool = True):
        self.host = h
        self.allow_triangles = allow_triangles
        self.ends = [tuple(e) for e in h.edges]
        index = {e: i for i, e in enumerate(self.ends)}
        self.full = (1 << len(self.ends)) - 1
        self.inc = [0] * (h.n + 1)
        for i, (u, v) in enumerate(self.ends):
            self.inc[u] |= 1 << i
            self.inc[v] |= 1 << i
        self.tris: list[list[tuple[int, tuple[int, int, int]]]] = [[] for _ in self.ends]
        if allow_triangles:
            for i, (u, v) in enumerate(self.ends):
                for w in range(1, h.n + 1):
                    if w in (u, v):
                        continue
                    a, b, c = sorted((u, v, w))
                    ab, ac, bc = index.get((a, b)), index.get((a, c)), index.get((b, c))
                    if ab is None or ac is None or bc is None:
                        continue
                    self.tris[i].append(((1 << ab) | (1 << ac) | (1 << bc), (a, b, c)))
        self.memo: dict[int, int] = {0: 0}

    def min_size(self, r: int, meter: _Meter) -> int:
        got = self.memo.get(r)
        if got is not None:
            return got
        meter.tick()
        i = (r & -r).bit_length() - 1
        u, v = self.ends[i]
        # a maximal star is never worse than any sub-star at the same center
        best = self.min_size(r & ~self.inc[u], meter)
        best = min(best, self.min_size(r & ~self.inc[v], meter))
        for tmask, _ in self.tris[i]:
            if tmask & r == tmask:
                best = min(best, self.min_size(r & ~tmask, meter))
        best += 1
        self.memo[r] = best
        return best

    def feasible(self, r: int, q: int, meter: _Meter) -> bool:
        if r == 0:
            return q == 0
        if q < 1 or q > _popcount(r):
            return False
        return self.min_size(r, meter) <= q

    def branches(self, r: int, q: int, meter: _Meter):
        """Every way to cover the lowest edge of r with a whole part such
        that the rest can still be split into q - 1 parts."""
        low = r & -r
        i = low.bit_length() - 1
        u, v = self.ends[i]
        out = []
        for tmask, verts in self.tris[i]:
            if tmask & r == tmask:
                rest = r & ~tmask
                if self.feasible(rest, q - 1, meter):
                    out.append((("T", verts), rest))
        for center in (u, v):
            avail = r & self.inc[center] & ~low
            if q > 1 and self.min_size(r & ~(avail | low), meter) > q - 1:
                continue
            # all submasks of avail; the empty one (single edge) only once, at u
            sub = avail
            while True:
                if sub or center == u:
                    block = low | sub
                    rest = r & ~block
                    if self.feasible(rest, q - 1, meter):
                        out.append((("S", center, block), rest))
                if sub == 0:
                    break
                sub = (sub - 1) & avail
        return out

    def generate(self, r: int, q: int, meter: _Meter) -> Iterator[tuple]:
        if r == 0:
            yield ()
            return
        meter.tick()
        for part, rest in self.branches(r, q, meter):
            for tail in self.generate(rest, q - 1, meter):
                yield (part,) + tail

    def to_part(self, raw):
        if raw[0] == "T":
            return Triangle(raw[1])
        _, center, block = raw
        leaves = []
        i = 0
        while block:
            if block & 1:
                a, b = self.ends[i]
                leaves.append(b if a == center else a)
            block >>= 1
            i += 1
        return Star(center, tuple(leaves))

    def to_partition(self, raws) -> STPartition:
        return STPartition(self.host, tuple(self.to_part(x) for x in raws))


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


@dataclass
class EnumerationReport:
    host: SimpleGraph
    target_size: int
    partitions_found: int = 0
    triangle_histogram: dict[int, int] = field(default_factory=dict)
    exhausted: bool = False
    nodes: int = 0

    def record(self, p: STPartition):
        self.partitions_found += 1
        t = p.num_triangles()
        self.triangle_histogram[t] = self.triangle_histogram.get(t, 0) + 1

    def merge(self, other: "EnumerationReport") -> "EnumerationReport":
        hist = dict(self.triangle_histogram)
        for t, c in other.triangle_histogram.items():
            hist[t] = hist.get(t, 0) + c
        return EnumerationReport(
            self.host, self.target_size,
            self.partitions_found + other.partitions_found,
            dict(sorted(hist.items())),
            self.exhausted and other.exhausted,
            self.nodes + other.nodes,
        )

    def to_json(self) -> dict:
        return {
            "n": self.host.n,
            "edges": self.host.num_edges,
            "target_size": self.target_size,
            "partitions_found": self.partitions_found,
            "triangle_histogram": {str(k): v for k, v in sorted(self.triangle_histogram.items())},
            "exhausted": self.exhausted,
            "nodes": self.nodes,
        }


class PartitionEnumerator:
    """Iterable over the ST-partitions of ``host`` with exactly ``size`` parts.

    Parts appear in order of their lowest edge, so each partition is produced
    once.  Single-edge stars are centered at their smaller endpoint.  The
    ``report`` is final once iteration ends; if a budget fires, iteration
    stops early and ``report.exhausted`` is False.
    """

    def __init__(self, host: SimpleGraph, size: int, budget: SearchBudget | None = None,
                 allow_triangles: bool = True, workers: int = 1):
        if size < 0:
            raise ParameterError(f"size must be non-negative, got {size}")
        if workers < 1:
            raise ParameterError("workers must be >= 1")
        self.host = host
        self.size = size
        self.budget = budget or DEFAULT_BUDGET
        self.allow_triangles = allow_triangles
        self.workers = workers
        self.report = EnumerationReport(host, size)

    def __iter__(self) -> Iterator[STPartition]:
        if self.workers > 1:
            yield from self._parallel()
            return
        system = _EdgeSystem(self.host, self.allow_triangles)
        meter = _Meter(self.budget)
        report = self.report = EnumerationReport(self.host, self.size)
        try:
            if self.budget.max_parts is not None and self.size > self.budget.max_parts:
                raise _BudgetFired("max parts")
            if system.feasible(system.full, self.size, meter):
                for raws in system.generate(system.full, self.size, meter):
                    p = system.to_partition(raws)
                    report.record(p)
                    yield p
            report.exhausted = True
        except _BudgetFired:
            report.exhausted = False
        finally:
            report.nodes = meter.nodes

    def _parallel(self) -> Iterator[STPartition]:
        system = _EdgeSystem(self.host, self.allow_triangles)
        meter = _Meter(self.budget)
        report = EnumerationReport(self.host, self.size, exhausted=True)
        try:
            roots = []
            if system.feasible(system.full, self.size, meter):
                roots = system.branches(system.full, self.size, meter) if system.full else [None]
        except _BudgetFired:
            self.report = EnumerationReport(self.host, self.size, nodes=meter.nodes)
            return
        report.nodes = meter.nodes
        if roots == [None]:
            p = STPartition(self.host, ())
            report.record(p)
            self.report = report
            yield p
            return
        jobs = [(self.host, self.allow_triangles, self.budget, self.size, k) for k in range(len(roots))]
        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            for raws_list, sub in pool.map(_branch_worker, jobs):
                for raws in raws_list:
                    p = system.to_partition(raws)
                    yield p
                report = report.merge(sub)
                self.report = report
        self.report = report


def _branch_worker(job):
    host, allow, budget, size, k = job
    system = _EdgeSystem(host, allow)
    meter = _Meter(budget)
    sub = EnumerationReport(host, size)
    out = []
    try:
        part, rest = system.branches(system.full, size, meter)[k]
        for tail in system.generate(rest, size - 1, meter):
            raws = (part,) + tail
            sub.record(system.to_partition(raws))
            out.append(raws)
        sub.exhausted = True
    except _BudgetFired:
        sub.exhausted = False
    sub.nodes = meter.nodes
    return out, sub


def enumerate_st_partitions(h: SimpleGraph, size: int, budget: SearchBudget | None = None,
                            workers: int = 1) -> PartitionEnumerator:
    return PartitionEnumerator(h, size, budget, workers=workers)


def _min_size(h: SimpleGraph, budget: SearchBudget | None, allow_triangles: bool) -> int:
    if h.num_edges == 0:
        raise ParameterError("host has no edges")
    budget = budget or DEFAULT_BUDGET
    system = _EdgeSystem(h, allow_triangles)
    meter = _Meter(budget)
    try:
        s = system.min_size(system.full, meter)
    except _BudgetFired as exc:
        raise Undetermined(f"minimum size undetermined: {exc}") from None
    if budget.max_parts is not None and s > budget.max_parts:
        raise Undetermined(f"minimum size exceeds max_parts={budget.max_parts}")
    return s


def min_st_partition_size(h: SimpleGraph, budget: SearchBudget | None = None) -> int:
    return _min_size(h, budget, True)


def min_star_partition_size(h: SimpleGraph, budget: SearchBudget | None = None) -> int:
    """Fewest stars covering ``h`` exactly; this equals its vertex cover number."""
    return _min_size(h, budget, False)


def optimal_partitions(h: SimpleGraph, budget: SearchBudget | None = None) -> list[STPartition]:
    s = min_st_partition_size(h, budget)
    en = enumerate_st_partitions(h, s, budget)
    parts = list(en)
    if not en.report.exhausted:
        raise Undetermined("enumeration budget fired")
    return parts


# ---------------------------------------------------------------------------
# Theorem verification
# ---------------------------------------------------------------------------


@dataclass
class TheoremVerdict:
    n: int
    status: str  # "pass" | "fail" | "inconclusive"
    min_size: int | None = None
    partitions: int = 0
    triangle_histogram: dict[int, int] = field(default_factory=dict)
    detail: str = ""
    counterexample: dict | None = None

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "status": self.status,
            "min_size": self.min_size,
            "partitions": self.partitions,
            "triangle_histogram": {str(k): v for k, v in sorted(self.triangle_histogram.items())},
        }
        if self.detail:
            out["detail"] = self.detail
        if self.counterexample:
            out["counterexample"] = self.counterexample
        return out


def verify_theorem_at(n: int, budget: SearchBudget | None = None, workers: int = 1) -> TheoremVerdict:
    if n < 3:
        raise ParameterError(f"the one-triangle statement needs n >= 3, got {n}")
    h = complete_graph(n)
    try:
        s = min_st_partition_size(h, budget)
    except Undetermined as exc:
        return TheoremVerdict(n, "inconclusive", detail=str(exc))
    if s != n - 2:
        return TheoremVerdict(n, "fail", s, detail=f"minimum size {s}, expected {n - 2}")
    en = enumerate_st_partitions(h, s, budget, workers=workers)
    bad = None
    for p in en:
        if bad is None and p.num_triangles() != 1:
            bad = p
    rep = en.report
    verdict = TheoremVerdict(n, "pass", s, rep.partitions_found, dict(sorted(rep.triangle_histogram.items())))
    if bad is not None:
        verdict.status = "fail"
        verdict.detail = f"optimal partition with {bad.num_triangles()} triangles"
        verdict.counterexample = bad.to_json()
    elif not rep.exhausted:
        verdict.status = "inconclusive"
        verdict.detail = "enumeration budget fired"
    return verdict


def verify_theorem(n_lo: int, n_hi: int, budget: SearchBudget | None = None,
                   workers: int = 1) -> list[TheoremVerdict]:
    if not 3 <= n_lo <= n_hi:
        raise ParameterError(f"need 3 <= n_lo <= n_hi, got {n_lo}..{n_hi}")
    return [verify_theorem_at(n, budget, workers) for n in range(n_lo, n_hi + 1)]


@dataclass
class SubgoalVerdict:
    name: str
    holds: bool
    detail: str
    counterexample: dict | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "holds": self.holds, "detail": self.detail}
        if self.counterexample:
            out["counterexample"] = self.counterexample
        return out


def _two_triangles(p: STPartition, shared_vertices: int) -> bool:
    tris = p.triangles
    for s, t in combinations(tris, 2):
        if len(set(s.vertices) & set(t.vertices)) == shared_vertices:
            return True
    return False


def integer_solutions_of_all_triangle_count() -> list[int]:
    """Non-negative integers n with 3(n - 2) = n(n - 1)/2, i.e. n^2 - 7n + 12 = 0."""
    disc = 7 * 7 - 4 * 12
    roots = set()
    r = isqrt(disc)
    if r * r == disc:
        for num in (7 - r, 7 + r):
            if num % 2 == 0 and num >= 0:
                roots.add(num // 2)
    return sorted(roots)


def verify_case_subgoals(budget: SearchBudget | None = None) -> list[SubgoalVerdict]:
    out = []
    for name, n, size, shared in (
        ("disjoint-triangles-K6", 6, 4, 0),
        ("vertex-sharing-triangles-K5", 5, 3, 1),
    ):
        en = enumerate_st_partitions(complete_graph(n), size, budget)
        bad = next((p for p in en if _two_triangles(p, shared)), None)
        if bad is None and not en.report.exhausted:
            out.append(SubgoalVerdict(name, False, "inconclusive: budget fired"))
            continue
        kind = "vertex-disjoint" if shared == 0 else "vertex-sharing"
        detail = f"{en.report.partitions_found} partitions of K_{n} into {size} parts; none with two {kind} triangles"
        if bad is None:
            out.append(SubgoalVerdict(name, True, detail))
        else:
            out.append(SubgoalVerdict(name, False, f"found two {kind} triangles", bad.to_json()))
    sols = integer_solutions_of_all_triangle_count()
    scan = [n for n in range(0, 1000) if 6 * (n - 2) == n * (n - 1)]
    out.append(SubgoalVerdict("all-triangle-count", sols == [3, 4] and scan == sols,
                              f"integer solutions {sols} (scan 0..999: {scan})"))
    return out


# ---------------------------------------------------------------------------
# Colorful multipartite search
# ---------------------------------------------------------------------------


def _labels_needed(size: int) -> int:
    """Fewest labels whose pairs number at least ``size``."""
    r = 0
    while r * (r - 1) // 2 < size:
        r += 1
    return r


def search_colorful_multipartite(c: Coloring, sizes: list[int],
                                 budget: SearchBudget | None = None) -> MultipartiteWitness | None:
    """First colorful complete multipartite subgraph of KG(n, 2) with the
    given part sizes, or None once the space is exhausted.

    Parts are filled in the given order with vertices in lexicographic order;
    consecutive parts of equal size are ordered by their first vertex.
    """
    if c.k != 2:
        raise ParameterError("colorful multipartite search is for k = 2")
    sizes = list(sizes)
    if not sizes or min(sizes) < 1:
        raise ParameterError(f"part sizes must be >= 1, got {sizes}")
    check = is_proper_coloring(c)
    if not check:
        raise ImproperColoringError(check.witness)
    if sum(sizes) > c.num_colors:
        raise ParameterError(f"{sum(sizes)} vertices cannot be colorful with {c.num_colors} colors")
    meter = _Meter(budget or DEFAULT_BUDGET)
    verts = sorted(c.colors)
    masks = [v.mask for v in verts]
    cbits = {col: 1 << i for i, col in enumerate(sorted(set(c.colors.values())))}
    vcol = [cbits[c.colors[v]] for v in verts]
    need = [_labels_needed(s) for s in sizes]
    future = [sum(need[i + 1:]) for i in range(len(sizes))]
    n = c.n
    nv = len(verts)
    chosen: list[list[int]] = [[] for _ in sizes]

    def fill(pi, start, prev_union, cur_union, used):
        meter.tick()
        if len(chosen[pi]) == sizes[pi]:
            nxt = pi + 1
            if nxt == len(sizes):
                return True
            first = 0
            if sizes[nxt] == sizes[pi]:
                first = chosen[pi][0] + 1
            return fill(nxt, first, prev_union | cur_union, 0, used)
        for j in range(start, nv):
            m = masks[j]
            if m & prev_union or vcol[j] & used:
                continue
            union = cur_union | m
            if _popcount(prev_union) + max(_popcount(union), need[pi]) + future[pi] > n:
                continue
            chosen[pi].append(j)
            if fill(pi, j + 1, prev_union, union, used | vcol[j]):
                return True
            chosen[pi].pop()
        return False

    try:
        found = fill(0, 0, 0, 0, 0)
    except _BudgetFired as exc:
        raise Undetermined(f"multipartite search undetermined: {exc}") from None
    if not found:
        return None
    w = MultipartiteWitness(tuple(tuple(verts[j] for j in part) for part in chosen))
    assert verify_colorful_multipartite(c, w)
    return w


# ---------------------------------------------------------------------------
# Exact chromatic number
# ---------------------------------------------------------------------------


def _max_clique(adj: list[int]) -> int:
    best = 0

    def expand(size, cand):
        nonlocal best
        if size + _popcount(cand) <= best:
            return
        if not cand:
            best = size
            return
        while cand:
            if size + _popcount(cand) <= best:
                return
            v = cand.bit_length() - 1
            cand &= ~(1 << v)
            expand(size + 1, cand & adj[v])

    expand(0, (1 << len(adj)) - 1)
    return best


def _dsatur_order_color(adj: list[int]) -> int:
    nv = len(adj)
    color = [-1] * nv
    for _ in range(nv):
        best, key = -1, None
        for v in range(nv):
            if color[v] >= 0:
                continue
            sat = len({color[w] for w in range(nv) if adj[v] >> w & 1 and color[w] >= 0})
            k = (sat, _popcount(adj[v]), -v)
            if key is None or k > key:
                best, key = v, k
        forbidden = {color[w] for w in range(nv) if adj[best] >> w & 1}
        col = 0
        while col in forbidden:
            col += 1
        color[best] = col
    return max(color) + 1


def exact_chromatic_number(g: SimpleGraph, budget: SearchBudget | None = None) -> int:
    """Branch and bound over DSATUR order: max-clique lower bound, greedy
    DSATUR upper bound, branching on the most saturated vertex."""
    if g.n < 1:
        raise ParameterError("graph needs at least one vertex")
    nv = g.n
    adj = [0] * nv
    for u, v in g.edges:
        adj[u - 1] |= 1 << (v - 1)
        adj[v - 1] |= 1 << (u - 1)
    meter = _Meter(budget or DEFAULT_BUDGET)
    lower = max(1, _max_clique(adj))
    best = _dsatur_order_color(adj)
    if best == lower:
        return best
    color = [-1] * nv

    def rec(colored, used):
        nonlocal best
        meter.tick()
        if colored == nv:
            best = used
            return best == lower
        pick, key, forb = -1, None, 0
        for v in range(nv):
            if color[v] >= 0:
                continue
            f = 0
            rest = adj[v]
            while rest:
                w = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                if color[w] >= 0:
                    f |= 1 << color[w]
            k = (_popcount(f), _popcount(adj[v]))
            if key is None or k > key:
                pick, key, forb = v, k, f
        for col in range(used + 1):
            # only colorings with fewer than `best` colors are of interest
            if col >= best - 1:
                break
            if forb >> col & 1:
                continue
            color[pick] = col
            if rec(colored + 1, max(used, col + 1)):
                return True
            color[pick] = -1
        return False

    try:
        rec(0, 0)
    except _BudgetFired as exc:
        raise Undetermined(f"chromatic number undetermined: {exc}") from None
    return best
