"""Figures for CLI reports: Hasse diagrams and suite summaries.

Figures are drawn on an Agg canvas directly, so importing this module never
touches the global pyplot backend.
"""

from __future__ import annotations

from pathlib import Path
from typing import Dict, List, Sequence

from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .poset import FinitePoset

PASS_COLOR = "#3a7d44"
FAIL_COLOR = "#b23a48"


def hasse_layout(p: FinitePoset) -> Dict[str, tuple]:
    """Rank by longest chain from below; spread each rank evenly."""
    rank = [0] * len(p.labels)
    covers = p.hasse_covers()
    below: Dict[str, List[str]] = {lab: [] for lab in p.labels}
    for a, b in covers:
        below[b].append(a)
    for i in p.linear_extension():
        lab = p.labels[i]
        rank[i] = 1 + max((rank[p.index(a)] for a in below[lab]), default=-1)
    rows: Dict[int, List[str]] = {}
    for i, r in enumerate(rank):
        rows.setdefault(r, []).append(p.labels[i])
    pos = {}
    for r, labs in rows.items():
        width = len(labs)
        for k, lab in enumerate(labs):
            pos[lab] = (k - (width - 1) / 2, float(r))
    return pos


def _save(fig: Figure, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    FigureCanvasAgg(fig)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    return path


def hasse_figure(p: FinitePoset, title: str = "") -> Figure:
    pos = hasse_layout(p)
    n_ranks = 1 + max((y for _, y in pos.values()), default=0)
    width = max((sum(1 for v in pos.values() if v[1] == r) for r in range(int(n_ranks))), default=1)
    fig = Figure(figsize=(max(3.0, 1.2 * width), max(2.5, 1.1 * n_ranks)))
    ax = fig.add_subplot(111)
    for a, b in p.hasse_covers():
        (x0, y0), (x1, y1) = pos[a], pos[b]
        ax.plot([x0, x1], [y0, y1], color="0.4", lw=1.0, zorder=1)
    fontsize = 9 if len(p.labels) < 20 else 6
    for lab, (x, y) in pos.items():
        ax.annotate(
            lab,
            (x, y),
            ha="center",
            va="center",
            fontsize=fontsize,
            bbox=dict(boxstyle="round,pad=0.25", fc="white", ec="0.3", lw=0.8),
            zorder=2,
        )
    ax.set_xlim(min(x for x, _ in pos.values()) - 0.8, max(x for x, _ in pos.values()) + 0.8)
    ax.set_ylim(-0.6, n_ranks - 0.4)
    ax.set_axis_off()
    if title:
        ax.set_title(title, fontsize=10)
    return fig


def save_hasse(p: FinitePoset, path, title: str = "") -> Path:
    return _save(hasse_figure(p, title), path)


def suite_figure(names: Sequence[str], checked: Sequence[int], passed: Sequence[bool]) -> Figure:
    """Horizontal bars of cases checked per suite, coloured by verdict."""
    fig = Figure(figsize=(6.0, 0.45 * len(names) + 1.2))
    ax = fig.add_subplot(111)
    ys = range(len(names))
    colors = [PASS_COLOR if ok else FAIL_COLOR for ok in passed]
    ax.barh(list(ys), [max(c, 1) for c in checked], color=colors)
    ax.set_yticks(list(ys))
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xscale("log")
    ax.set_xlabel("cases checked")
    for side in ("top", "right"):
        ax.spines[side].set_visible(False)
    return fig


def save_suite(names, checked, passed, path) -> Path:
    return _save(suite_figure(names, checked, passed), path)
