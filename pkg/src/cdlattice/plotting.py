"""Figures for reports: Hasse diagrams with the CD lattice marked, and δ bar charts."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from matplotlib.figure import Figure

from .cd import CDReport
from .lattice import SubgroupLattice

CD_COLOR = "#c0392b"
OTHER_COLOR = "#7f8c8d"
FIGURE_DPI = 150


def _levels(lattice: SubgroupLattice) -> dict[int, list[int]]:
    levels: dict[int, list[int]] = {}
    for i, h in enumerate(lattice.subgroups):
        levels.setdefault(h.size, []).append(i)
    return levels


def plot_hasse(lattice: SubgroupLattice, report: CDReport | None, path, title: str = "") -> Path:
    """Draw the subgroup lattice by order; CD members are filled, the rest hollow."""
    levels = _levels(lattice)
    sizes = sorted(levels)
    width = max(len(v) for v in levels.values())
    pos = {}
    for y, size in enumerate(sizes):
        row = levels[size]
        for x, i in enumerate(row):
            pos[i] = ((x + 1) / (len(row) + 1) * width, y)
    cd = {h.mask for h in report.cd_members} if report else set()

    fig = Figure(figsize=(max(4.0, 0.45 * width + 2), max(3.0, 1.1 * len(sizes) + 1)))
    ax = fig.add_subplot(111)
    for i, ups in enumerate(lattice.hasse):
        x0, y0 = pos[i]
        for j in ups:
            x1, y1 = pos[j]
            both = lattice.subgroups[i].mask in cd and lattice.subgroups[j].mask in cd
            ax.plot([x0, x1], [y0, y1], color=CD_COLOR if both else OTHER_COLOR,
                    lw=1.4 if both else 0.5, alpha=0.9 if both else 0.5, zorder=1)
    in_cd = [i for i, h in enumerate(lattice.subgroups) if h.mask in cd]
    out_cd = [i for i, h in enumerate(lattice.subgroups) if h.mask not in cd]
    if out_cd:
        ax.scatter([pos[i][0] for i in out_cd], [pos[i][1] for i in out_cd], s=28,
                   facecolors="white", edgecolors=OTHER_COLOR, zorder=2, label="not in CD")
    if in_cd:
        ax.scatter([pos[i][0] for i in in_cd], [pos[i][1] for i in in_cd], s=40,
                   color=CD_COLOR, zorder=3, label="CD(G)")
    ax.set_yticks(range(len(sizes)))
    ax.set_yticklabels([str(s) for s in sizes])
    ax.set_ylabel("subgroup order")
    ax.set_xticks([])
    for side in ("top", "right", "bottom"):
        ax.spines[side].set_visible(False)
    if report is not None:
        title = title or "subgroup lattice"
        title += f"  (|L| = {len(lattice)}, |CD| = {len(report.cd_members)}, delta = {report.delta})"
    if title:
        ax.set_title(title, fontsize=10)
    ax.legend(loc="upper left", fontsize=8, frameon=False)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=FIGURE_DPI)
    return path


def plot_delta_bars(labels: Sequence[str], deltas: Sequence[int], bound: int | None, path,
                    title: str = "", selected: Sequence[bool] | None = None) -> Path:
    """One bar per group; bars at or under ``bound`` (or flagged ``selected``) are highlighted."""
    if selected is None:
        selected = [bound is not None and d <= bound for d in deltas]
    fig = Figure(figsize=(max(4.0, 0.45 * len(labels) + 1.5), 3.6))
    ax = fig.add_subplot(111)
    colors = [CD_COLOR if s else OTHER_COLOR for s in selected]
    ax.bar(range(len(labels)), deltas, color=colors)
    if bound is not None:
        ax.axhline(bound, color="black", lw=0.8, ls="--")
        ax.text(len(labels) - 0.5, bound, f" bound {bound}", va="bottom", ha="right", fontsize=8)
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=60, ha="right", fontsize=8)
    ax.set_ylabel("delta (subgroups not in CD)")
    if deltas and max(deltas) > 40:
        ax.set_yscale("symlog", linthresh=10)
    for side in ("top", "right"):
        ax.spines[side].set_visible(False)
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=FIGURE_DPI)
    return path
