"""Figures written next to campaign reports.  Uses the Agg backend only."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .model import STPartition, Triangle  # noqa: E402

RC = {
    "font.size": 9,
    "axes.titlesize": 10,
    "axes.labelsize": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
}


def plot_theorem_report(report, path: str | Path) -> Path:
    """Optimal partition counts per n (log scale) and minimum sizes vs n - 2."""
    rows = [v for v in report.verdicts if v.counts.get("min_size") is not None]
    ns = [int(v.cell.split("=")[1]) for v in rows]
    counts = [v.counts.get("partitions", 0) for v in rows]
    sizes = [v.counts["min_size"] for v in rows]
    stars = [v.counts.get("min_star_size") for v in rows]
    path = Path(path)
    with plt.rc_context(RC):
        fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(7.5, 3))
        bars = ax1.bar(ns, counts, color="#4C72B0")
        ax1.set_yscale("log")
        ax1.set_xlabel("n")
        ax1.set_ylabel("optimal ST-partitions of $K_n$")
        for b, v in zip(bars, rows):
            support = ",".join(v.counts.get("triangle_histogram", {}).keys()) or "-"
            ax1.annotate(f"T={{{support}}}", (b.get_x() + b.get_width() / 2, b.get_height()),
                         ha="center", va="bottom", fontsize=7)
        ax2.plot(ns, [n - 2 for n in ns], "k--", lw=1, label="n - 2")
        ax2.plot(ns, sizes, "o", color="#4C72B0", label="min ST size")
        if all(s is not None for s in stars):
            ax2.plot(ns, [n - 1 for n in ns], "k:", lw=1, label="n - 1")
            ax2.plot(ns, stars, "s", color="#DD8452", label="min star-only size")
        ax2.set_xlabel("n")
        ax2.set_ylabel("parts")
        ax2.legend(frameon=False, fontsize=7)
        fig.savefig(path)
        plt.close(fig)
    return path


def _circle(n: int) -> dict[int, tuple[float, float]]:
    return {v: (math.cos(math.pi / 2 - 2 * math.pi * (v - 1) / n),
                math.sin(math.pi / 2 - 2 * math.pi * (v - 1) / n)) for v in range(1, n + 1)}


def draw_partitions(partitions: list[STPartition], path: str | Path, cols: int = 4) -> Path:
    """One panel per partition; each part in its own color, centers ringed,
    triangle edges drawn thicker."""
    path = Path(path)
    if not partitions:
        raise ValueError("nothing to draw")
    rows = math.ceil(len(partitions) / cols)
    cmap = plt.get_cmap("tab10")
    with plt.rc_context(RC):
        fig, axes = plt.subplots(rows, min(cols, len(partitions)), figsize=(2.2 * min(cols, len(partitions)), 2.2 * rows),
                                 squeeze=False)
        for ax in axes.flat:
            ax.set_axis_off()
        for ax, p in zip(axes.flat, partitions):
            pos = _circle(p.host.n)
            for i, part in enumerate(p.parts):
                col = cmap(i % 10)
                lw = 2.8 if isinstance(part, Triangle) else 1.4
                for u, v in part.edges():
                    ax.plot([pos[u][0], pos[v][0]], [pos[u][1], pos[v][1]], color=col, lw=lw)
            centers = p.centers()
            for v, (x, y) in pos.items():
                ax.scatter([x], [y], s=70 if v in centers else 30, c="white",
                           edgecolors="black", linewidths=1.5 if v in centers else 0.8, zorder=3)
                ax.text(1.18 * x, 1.18 * y, str(v), ha="center", va="center", fontsize=7)
            ax.set_title(f"{p.size} parts, {p.num_triangles()} tri", fontsize=8)
            ax.set_aspect("equal")
        fig.savefig(path)
        plt.close(fig)
    return path
