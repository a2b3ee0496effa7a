"""Verification campaigns: each returns a CampaignReport of per-cell verdicts."""

from __future__ import annotations

import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Callable, Iterable

from .constructions import (
    extract_colorful_bipartite,
    extract_colorful_tripartite,
    no_colorful_cycle_certificate,
    remark_coloring,
    verify_colorful_multipartite,
)
from .errors import ParameterError, Undetermined
from .graphs import SimpleGraph, complete_graph, k_subsets, kneser_graph, read_graph
from .model import (
    Coloring,
    STPartition,
    Star,
    Triangle,
    check_lemma_min_tri,
    check_lemma_min_tri1,
    classify_class,
    count_non_star_shaped,
    is_proper_coloring,
    partition_to_coloring,
    validate_partition,
)
from .search import (
    DEFAULT_BUDGET,
    SearchBudget,
    enumerate_st_partitions,
    exact_chromatic_number,
    min_st_partition_size,
    min_star_partition_size,
    search_colorful_multipartite,
    verify_theorem_at,
)

log = logging.getLogger(__name__)

SCHEMA = 1
COMMANDS = ("verify-theorem", "verify-lemmas", "verify-corollaries", "verify-remark",
            "chromatic", "enumerate", "classify")

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 64

# per-cell counters that add up meaningfully across cells
SUMMED = ("hosts", "partitions", "witnesses_checked", "cross_checked", "searches")


@dataclass
class CampaignConfig:
    command: str
    n_range: tuple[int, int] = (3, 8)
    budget: SearchBudget = DEFAULT_BUDGET
    output_path: Path | None = None
    parallelism: int = 1
    k: int = 2
    hosts: str | None = None
    size: int | None = None
    coloring_path: Path | None = None
    exhaustive_cross_check: bool = False
    cross_check_samples: int = 1
    self_test: bool = False
    figures_dir: Path | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ParameterError(f"unknown command {self.command!r}")
        lo, hi = self.n_range
        if lo > hi:
            raise ParameterError(f"empty n range {lo}..{hi}")
        if self.parallelism < 1:
            raise ParameterError("parallelism must be >= 1")
        if self.cross_check_samples < 1:
            raise ParameterError("cross-check samples must be >= 1")

    @property
    def ns(self) -> range:
        return range(self.n_range[0], self.n_range[1] + 1)


@dataclass
class Verdict:
    cell: str
    status: str  # pass | fail | inconclusive
    counts: dict = field(default_factory=dict)
    detail: str = ""
    counterexample: dict | None = None

    def to_json(self) -> dict:
        out = {"cell": self.cell, "status": self.status}
        if self.counts:
            out["counts"] = self.counts
        if self.detail:
            out["detail"] = self.detail
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class CampaignReport:
    command: str
    verdicts: list[Verdict] = field(default_factory=list)
    wall_time: float = 0.0
    extra: dict = field(default_factory=dict)
    samples: list = field(default_factory=list, repr=False)

    @property
    def status(self) -> str:
        if any(v.status == "fail" for v in self.verdicts):
            return "fail"
        if any(v.status == "inconclusive" for v in self.verdicts):
            return "inconclusive"
        return "pass"

    @property
    def exit_code(self) -> int:
        return {"pass": EXIT_PASS, "fail": EXIT_FAIL, "inconclusive": EXIT_INCONCLUSIVE}[self.status]

    @property
    def failures(self) -> list[Verdict]:
        return [v for v in self.verdicts if v.status == "fail"]

    def totals(self) -> dict:
        out: dict[str, int] = {}
        for v in self.verdicts:
            for key in SUMMED:
                if key in v.counts:
                    out[key] = out.get(key, 0) + v.counts[key]
        return out

    def summary(self) -> dict:
        out = {
            "schema": SCHEMA,
            "command": self.command,
            "status": self.status,
            "cells": len(self.verdicts),
            "counts": self.totals(),
            "wall_time": round(self.wall_time, 3),
            "failures": [v.to_json() for v in self.failures],
        }
        out.update(self.extra)
        return out

    def lines(self) -> list[str]:
        rows = [json.dumps(v.to_json(), separators=(",", ":")) for v in self.verdicts]
        rows.append(json.dumps({"summary": self.summary()}, separators=(",", ":")))
        return rows


def _map_cells(fn: Callable, cells: list, parallelism: int) -> list:
    if parallelism <= 1 or len(cells) <= 1:
        return [fn(c) for c in cells]
    with ProcessPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(fn, cells))


def _check_range(cfg: CampaignConfig, lo: int, hi: int, what: str):
    a, b = cfg.n_range
    if a < lo or b > hi:
        raise ParameterError(f"{what} accepts n in {lo}..{hi}, got {a}..{b}")


# ---------------------------------------------------------------------------
# verify-theorem
# ---------------------------------------------------------------------------


def run_verify_theorem(cfg: CampaignConfig) -> CampaignReport:
    _check_range(cfg, 3, 10, "verify-theorem")
    start = time.monotonic()
    report = CampaignReport("verify-theorem")
    for n in cfg.ns:
        tv = verify_theorem_at(n, cfg.budget, workers=cfg.parallelism)
        counts = {"partitions": tv.partitions}
        v = Verdict(f"n={n}", tv.status, counts, tv.detail, tv.counterexample)
        v.counts["min_size"] = tv.min_size
        v.counts["triangle_histogram"] = {str(k): c for k, c in tv.triangle_histogram.items()}
        if tv.status != "inconclusive":
            try:
                stars = min_star_partition_size(complete_graph(n), cfg.budget)
            except Undetermined as exc:
                v.status, v.detail = "inconclusive", str(exc)
            else:
                v.counts["min_star_size"] = stars
                if stars != n - 1 and v.status == "pass":
                    v.status, v.detail = "fail", f"star-only minimum {stars}, expected {n - 1}"
        log.info("verify-theorem n=%d: %s", n, v.status)
        report.verdicts.append(v)
    report.wall_time = time.monotonic() - start
    return report


# ---------------------------------------------------------------------------
# verify-lemmas
# ---------------------------------------------------------------------------


def connected_graphs(max_vertices: int) -> Iterable[SimpleGraph]:
    """Every labeled connected graph on 2..max_vertices vertices."""
    if max_vertices > 6:
        raise ParameterError("connected-graph sweep supports at most 6 vertices")
    for v in range(2, max_vertices + 1):
        edges = k_subsets(v, 2)
        for mask in range(1, 1 << len(edges)):
            chosen = tuple(e for i, e in enumerate(edges) if mask >> i & 1)
            g = SimpleGraph(v, chosen)
            if g.is_connected():
                yield g


def parse_host_spec(spec: str) -> list[tuple[str, SimpleGraph]]:
    """``k:LO..HI`` complete graphs, ``all:V`` connected graphs, ``file:PATH``."""
    kind, _, arg = spec.partition(":")
    if kind == "k":
        lo, hi = parse_range(arg)
        return [(f"K{n}", complete_graph(n)) for n in range(lo, hi + 1)]
    if kind == "all":
        v = int(arg)
        return [(f"all{g.n}:" + ";".join(e.key() for e in g.edges), g) for g in connected_graphs(v)]
    if kind == "file":
        return [(f"file:{arg}", read_graph(arg))]
    raise ParameterError(f"bad host spec {spec!r}; expected k:LO..HI, all:V or file:PATH")


def _lemma_cell(item):
    name, host, budget = item
    if host.num_edges == 0:
        return Verdict(name, "pass", {"hosts": 1, "partitions": 0})
    try:
        s = min_st_partition_size(host, budget)
    except Undetermined as exc:
        return Verdict(name, "inconclusive", detail=str(exc))
    en = enumerate_st_partitions(host, s, budget)
    checked = 0
    for p in en:
        checked += 1
        viol = [x.to_json() for x in check_lemma_min_tri(p) + check_lemma_min_tri1(p)]
        if viol:
            return Verdict(name, "fail", {"hosts": 1, "partitions": checked},
                           f"lemma violation: {viol[0]}", p.to_json())
    if not en.report.exhausted:
        return Verdict(name, "inconclusive", {"hosts": 1, "partitions": checked}, "budget fired")
    return Verdict(name, "pass", {"hosts": 1, "partitions": checked, "min_size": s})


def self_test_partitions() -> list[STPartition]:
    """Deliberately non-optimal partitions on which both checkers must fire."""
    return [
        STPartition(complete_graph(5), (
            Triangle((1, 2, 3)), Star(1, (4, 5)), Star(2, (4, 5)), Star(4, (5,)), Star(3, (4, 5)),
        )),
        STPartition(complete_graph(4), (
            Triangle((1, 2, 3)), Star(1, (4,)), Star(2, (4,)), Star(3, (4,)),
        )),
    ]


def run_verify_lemmas(cfg: CampaignConfig) -> CampaignReport:
    start = time.monotonic()
    report = CampaignReport("verify-lemmas")
    specs = [cfg.hosts] if cfg.hosts else ["k:3..7", "all:5"]
    for spec in specs:
        hosts = parse_host_spec(spec)
        cells = _map_cells(_lemma_cell, [(name, h, cfg.budget) for name, h in hosts], cfg.parallelism)
        if spec.startswith("all:"):
            # one aggregated verdict per vertex count keeps the report readable
            by_v: dict[int, list[Verdict]] = {}
            for (name, h), v in zip(hosts, cells):
                by_v.setdefault(h.n, []).append(v)
            for nv, vs in sorted(by_v.items()):
                bad = next((v for v in vs if v.status != "pass"), None)
                counts = {"hosts": len(vs), "partitions": sum(v.counts.get("partitions", 0) for v in vs)}
                if bad is None:
                    report.verdicts.append(Verdict(f"connected v={nv}", "pass", counts))
                else:
                    report.verdicts.append(Verdict(f"connected v={nv}", bad.status, counts,
                                                   f"{bad.cell}: {bad.detail}", bad.counterexample))
        else:
            report.verdicts.extend(cells)
    if cfg.self_test:
        for i, p in enumerate(self_test_partitions()):
            fired = bool(check_lemma_min_tri(p) or check_lemma_min_tri1(p))
            report.verdicts.append(Verdict(
                f"self-test {i}", "pass" if fired else "fail", {},
                "checker reported the injected violation" if fired else "checker missed the injected violation",
                None if fired else p.to_json(),
            ))
    report.wall_time = time.monotonic() - start
    return report


# ---------------------------------------------------------------------------
# verify-corollaries
# ---------------------------------------------------------------------------


def bipartite_sizes(n: int) -> list[tuple[int, int]]:
    return [(l, n - 2 - l) for l in range(0, n - 1)]


def tripartite_sizes(n: int) -> list[tuple[int, int, int]]:
    t = n - 3
    return [(k, l, t - k - l) for k in range(1, t) for l in range(1, t - k)]


def _corollary_cell(item):
    n, budget, samples, exhaustive = item
    host = complete_graph(n)
    s = min_st_partition_size(host, budget)
    en = enumerate_st_partitions(host, s, budget)
    tuples: list[tuple] = list(bipartite_sizes(n))
    if n >= 6:
        tuples += tripartite_sizes(n)
    checked = {t: 0 for t in tuples}
    crossed = {t: 0 for t in tuples}
    verdicts = []
    failure = None
    partitions = 0
    undetermined = 0
    for p in en:
        partitions += 1
        c = partition_to_coloring(p)
        for t in tuples:
            w = extract_colorful_bipartite(p, *t) if len(t) == 2 else extract_colorful_tripartite(p, *t)
            rep = verify_colorful_multipartite(c, w)
            checked[t] += 1
            if not rep or w.sizes != t:
                failure = failure or (t, p, f"extractor witness rejected: {rep.reason or 'wrong sizes'}")
                continue
            if exhaustive or crossed[t] < samples:
                crossed[t] += 1
                try:
                    found = search_colorful_multipartite(c, [x for x in t if x > 0], budget)
                except Undetermined:
                    undetermined += 1
                    continue
                if found is None:
                    failure = failure or (t, p, "brute-force search found no witness")
    if not en.report.exhausted or undetermined:
        return [Verdict(f"n={n}", "inconclusive", {"partitions": partitions}, "budget fired")]
    for t in tuples:
        kind = "bipartite" if len(t) == 2 else "tripartite"
        cell = f"n={n} {kind} {','.join(map(str, t))}"
        counts = {"witnesses_checked": checked[t], "cross_checked": crossed[t]}
        if failure and failure[0] == t:
            verdicts.append(Verdict(cell, "fail", counts, failure[2],
                                    {"partition": failure[1].to_json(), "sizes": list(t)}))
        else:
            verdicts.append(Verdict(cell, "pass", counts))
    return verdicts


def run_verify_corollaries(cfg: CampaignConfig) -> CampaignReport:
    _check_range(cfg, 4, 8, "verify-corollaries")
    start = time.monotonic()
    report = CampaignReport("verify-corollaries")
    items = [(n, cfg.budget, cfg.cross_check_samples, cfg.exhaustive_cross_check) for n in cfg.ns]
    for vs in _map_cells(_corollary_cell, items, cfg.parallelism):
        report.verdicts.extend(vs)
    report.wall_time = time.monotonic() - start
    return report


# ---------------------------------------------------------------------------
# verify-remark
# ---------------------------------------------------------------------------


def _remark_cell(item):
    n, budget = item
    c = remark_coloring(n)
    problems = []
    proper = is_proper_coloring(c)
    if not proper:
        return Verdict(f"n={n}", "fail", {}, "remark coloring is improper",
                       {"coloring": c.to_json(), "pair": [v.key() for v in proper.witness]})
    if c.num_colors != n - 2:
        problems.append(f"{c.num_colors} classes, expected {n - 2}")
    nss = count_non_star_shaped(c)
    if nss != 1:
        problems.append(f"{nss} non-star-shaped classes, expected 1")
    cert = no_colorful_cycle_certificate(c)
    counter = None
    if not cert:
        problems.append(f"colorful cycle {cert.cycle}")
        counter = {"coloring": c.to_json(), "cycle": list(cert.cycle)}
    searched = 0
    try:
        for t in tripartite_sizes(n + 1):  # parts >= 1 summing to n - 2
            searched += 1
            w = search_colorful_multipartite(c, list(t), budget)
            if w is not None:
                problems.append(f"witness with sizes {t} summing to n-2")
                counter = {"coloring": c.to_json(), "witness": w.to_json()}
        below = [t for t in tripartite_sizes(n)
                 if search_colorful_multipartite(c, list(t), budget) is not None]
        searched += len(tripartite_sizes(n))
    except Undetermined as exc:
        return Verdict(f"n={n}", "inconclusive", {"searches": searched}, str(exc))
    if not below:
        problems.append("no witness for any sizes summing to n-3")
    counts = {"searches": searched, "classes": c.num_colors, "non_star_shaped": nss,
              "witnesses_n_minus_3": len(below)}
    if problems:
        return Verdict(f"n={n}", "fail", counts, "; ".join(problems), counter or {"coloring": c.to_json()})
    return Verdict(f"n={n}", "pass", counts)


def run_verify_remark(cfg: CampaignConfig) -> CampaignReport:
    _check_range(cfg, 6, 9, "verify-remark")
    start = time.monotonic()
    report = CampaignReport("verify-remark")
    report.verdicts = _map_cells(_remark_cell, [(n, cfg.budget) for n in cfg.ns], cfg.parallelism)
    report.wall_time = time.monotonic() - start
    return report


# ---------------------------------------------------------------------------
# chromatic / enumerate / classify
# ---------------------------------------------------------------------------


def run_chromatic(cfg: CampaignConfig) -> CampaignReport:
    start = time.monotonic()
    report = CampaignReport("chromatic")
    k = cfg.k
    for n in cfg.ns:
        if n < 2 * k - 1:
            raise ParameterError(f"chi(KG(n,k)) = n-2k+2 needs n >= 2k-1, got n={n}, k={k}")
        expected = n - 2 * k + 2
        routes = {}
        try:
            if k == 2 and 2 <= n <= 10:
                routes["st"] = min_st_partition_size(complete_graph(n), cfg.budget)
            if comb(n, k) <= 25:
                _, g = kneser_graph(n, k)
                routes["oracle"] = exact_chromatic_number(g, cfg.budget)
        except Undetermined as exc:
            report.verdicts.append(Verdict(f"n={n} k={k}", "inconclusive", routes, str(exc)))
            continue
        if not routes:
            raise ParameterError(f"no exact route for KG({n},{k}): need k=2 with n<=10, or C(n,k)<=25")
        counts = dict(routes, expected=expected)
        ok = all(val == expected for val in routes.values())
        report.verdicts.append(Verdict(f"n={n} k={k}", "pass" if ok else "fail", counts,
                                       "" if ok else f"routes {routes} disagree with {expected}"))
    report.wall_time = time.monotonic() - start
    return report


def run_enumerate(cfg: CampaignConfig, sink: Callable[[str], None] | None = None) -> CampaignReport:
    start = time.monotonic()
    if not cfg.hosts or cfg.size is None:
        raise ParameterError("enumerate needs a host and a size")
    hosts = parse_host_spec(cfg.hosts)
    if len(hosts) != 1:
        raise ParameterError("enumerate takes exactly one host")
    name, host = hosts[0]
    en = enumerate_st_partitions(host, cfg.size, cfg.budget, workers=cfg.parallelism)
    first = []
    for p in en:
        if sink is not None:
            sink(p.dumps())
        if len(first) < 12:
            first.append(p)
    rep = en.report
    status = "pass" if rep.exhausted else "inconclusive"
    report = CampaignReport("enumerate", [Verdict(name, status, {"partitions": rep.partitions_found})],
                            extra={"report": rep.to_json()})
    report.samples = first
    report.wall_time = time.monotonic() - start
    return report


def classify_document(obj: dict) -> Verdict:
    """Classify a serialized coloring, or validate a serialized partition."""
    if "colors" in obj:
        c = Coloring.from_json(obj)
        proper = is_proper_coloring(c)
        if not proper:
            return Verdict("coloring", "fail", {"classes": c.num_colors}, "improper coloring",
                           {"pair": [v.key() for v in proper.witness]})
        kinds = {}
        for col, members in c.classes.items():
            if c.k == 2:
                kind = classify_class(members)
                kinds[str(col)] = type(kind).__name__ if not hasattr(kind, "common") \
                    else f"StarShaped{sorted(kind.common)}"
        nss = count_non_star_shaped(c)
        counts = {"classes": c.num_colors, "non_star_shaped": nss}
        if kinds:
            counts["kinds"] = kinds
        return Verdict("coloring", "pass", counts)
    if "parts" in obj:
        p = STPartition.from_json(obj)
        rep = validate_partition(p)
        if not rep:
            return Verdict("partition", "fail", {"parts": p.size}, rep.describe(), rep.to_json())
        counts = {"parts": p.size, "triangles": p.num_triangles()}
        viol = [x.to_json() for x in check_lemma_min_tri(p) + check_lemma_min_tri1(p)]
        optimal = None
        if p.host.num_edges:
            optimal = min_st_partition_size(p.host) == p.size
            counts["optimal"] = optimal
        if viol and optimal:
            return Verdict("partition", "fail", counts, f"optimal partition violates a lemma: {viol[0]}", obj)
        if optimal and p.host.is_complete() and p.host.n >= 3 and p.num_triangles() != 1:
            return Verdict("partition", "fail", counts, "optimal partition without exactly one triangle", obj)
        if viol:
            counts["lemma_conclusions_failing"] = viol
        return Verdict("partition", "pass", counts)
    raise ParameterError("document is neither a coloring nor a partition")


def run_classify(cfg: CampaignConfig) -> CampaignReport:
    start = time.monotonic()
    if cfg.coloring_path is None:
        raise ParameterError("classify needs --coloring PATH")
    text = Path(cfg.coloring_path).read_text(encoding="utf-8")
    report = CampaignReport("classify")
    try:
        docs = [json.loads(text)]
    except json.JSONDecodeError:
        docs = [json.loads(line) for line in text.splitlines() if line.strip()]
    for obj in docs:
        if "summary" in obj or "report" in obj:
            continue
        if "counterexample" in obj:
            obj = obj["counterexample"]
            obj = obj.get("partition", obj.get("coloring", obj))
        report.verdicts.append(classify_document(obj))
    report.wall_time = time.monotonic() - start
    return report


RUNNERS = {
    "verify-theorem": run_verify_theorem,
    "verify-lemmas": run_verify_lemmas,
    "verify-corollaries": run_verify_corollaries,
    "verify-remark": run_verify_remark,
    "chromatic": run_chromatic,
    "classify": run_classify,
}


def parse_range(text: str) -> tuple[int, int]:
    """``"3..8"`` -> (3, 8); ``"7"`` -> (7, 7)."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise ParameterError(f"bad range {text!r}; expected LO..HI or N") from None
    if lo > hi:
        raise ParameterError(f"empty range {text!r}")
    return lo, hi
