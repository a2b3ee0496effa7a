"""``st`` command-line entry point.

Exit status: 0 all pass, 1 some failure, 2 inconclusive (budget), 64 usage.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .errors import ParameterError
from .harness import (
    EXIT_USAGE,
    RUNNERS,
    CampaignConfig,
    parse_range,
    run_enumerate,
)
from .search import SearchBudget

log = logging.getLogger("stpart")

DEFAULT_RANGES = {
    "verify-theorem": "3..8",
    "verify-corollaries": "4..8",
    "verify-remark": "6..9",
    "chromatic": "7",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _budget_args(p):
    p.add_argument("--node-limit", type=int, default=10**9)
    p.add_argument("--time-limit", type=float, default=None, help="seconds")
    p.add_argument("--max-parts", type=int, default=None)
    p.add_argument("--json", dest="output", type=Path, default=None, help="write JSON lines here")
    p.add_argument("--parallel", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="st", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify-theorem", help="optimal ST-partitions of K_n have one triangle")
    p.add_argument("--n", default=DEFAULT_RANGES["verify-theorem"])
    p.add_argument("--figures", type=Path, default=None, help="directory for PNG figures")
    _budget_args(p)

    p = sub.add_parser("verify-lemmas", help="lemma checkers over all optimal partitions")
    p.add_argument("--hosts", default=None, help="k:LO..HI | all:V | file:PATH (default k:3..7 and all:5)")
    p.add_argument("--self-test", action="store_true", help="also inject known violations")
    _budget_args(p)

    p = sub.add_parser("verify-corollaries", help="colorful bipartite/tripartite witnesses")
    p.add_argument("--n", default=DEFAULT_RANGES["verify-corollaries"])
    p.add_argument("--exhaustive-cross-check", action="store_true")
    p.add_argument("--cross-check-samples", type=int, default=1)
    _budget_args(p)

    p = sub.add_parser("verify-remark", help="the no-colorful-cycle coloring")
    p.add_argument("--n", default=DEFAULT_RANGES["verify-remark"])
    _budget_args(p)

    p = sub.add_parser("chromatic", help="chi(KG(n,k)) by the ST route and the generic oracle")
    p.add_argument("--n", default=DEFAULT_RANGES["chromatic"])
    p.add_argument("--k", type=int, default=2)
    _budget_args(p)

    p = sub.add_parser("enumerate", help="stream ST-partitions of a host with a given size")
    p.add_argument("--host", required=True, help="k:N | file:PATH")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--figures", type=Path, default=None, help="directory for PNG figures")
    _budget_args(p)

    p = sub.add_parser("classify", help="classify a coloring or validate a partition file")
    p.add_argument("--coloring", type=Path, required=True)
    p.add_argument("--json", dest="output", type=Path, default=None)
    return parser


def config_from_args(args) -> CampaignConfig:
    budget = SearchBudget(
        max_parts=getattr(args, "max_parts", None),
        node_limit=getattr(args, "node_limit", 10**9),
        time_limit=getattr(args, "time_limit", None),
    )
    n_range = parse_range(args.n) if hasattr(args, "n") else (3, 8)
    return CampaignConfig(
        command=args.command,
        n_range=n_range,
        budget=budget,
        output_path=args.output,
        parallelism=getattr(args, "parallel", 1),
        k=getattr(args, "k", 2),
        hosts=getattr(args, "hosts", None) or getattr(args, "host", None),
        size=getattr(args, "size", None),
        coloring_path=getattr(args, "coloring", None),
        exhaustive_cross_check=getattr(args, "exhaustive_cross_check", False),
        cross_check_samples=getattr(args, "cross_check_samples", 1),
        self_test=getattr(args, "self_test", False),
        figures_dir=getattr(args, "figures", None),
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
        out = open(cfg.output_path, "w", encoding="utf-8") if cfg.output_path else sys.stdout
        try:
            def emit(line: str):
                out.write(line + "\n")

            if cfg.command == "enumerate":
                report = run_enumerate(cfg, sink=emit)
                emit(_report_line(report))
            else:
                report = RUNNERS[cfg.command](cfg)
                for line in report.lines():
                    emit(line)
        finally:
            if out is not sys.stdout:
                out.close()
        if cfg.figures_dir is not None:
            _write_figures(cfg, report)
    except ParameterError as exc:
        print(f"st: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    log.info("%s: %s in %.2fs", cfg.command, report.status, report.wall_time)
    return report.exit_code


def _report_line(report) -> str:
    body = dict(report.extra["report"], status=report.status, schema=1,
                wall_time=round(report.wall_time, 3))
    return json.dumps({"report": body}, separators=(",", ":"))


def _write_figures(cfg: CampaignConfig, report):
    from .plotting import draw_partitions, plot_theorem_report

    cfg.figures_dir.mkdir(parents=True, exist_ok=True)
    if cfg.command == "verify-theorem":
        path = plot_theorem_report(report, cfg.figures_dir / "theorem.png")
    elif report.samples:
        path = draw_partitions(report.samples, cfg.figures_dir / "partitions.png")
    else:
        return
    print(f"st: wrote {path}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
