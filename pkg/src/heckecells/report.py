"""Table emission (markdown / TSV / JSON) and figure rendering.

Every report-style CLI path can write its delimited output together with a
matplotlib rendering into an output directory: cell tables become a
size/a-value chart, cell matrices a block heatmap, fusion graphs a circular
multigraph drawing with the unit vertex starred.
"""

from __future__ import annotations

import json
import math
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "render_cell_matrix_figure",
    "render_cells_figure",
    "render_fusion_graph_figure",
    "render_table",
    "write_report",
]


def render_table(rows: list[dict], columns: list[str], fmt: str) -> str:
    """Render a list of records as markdown, TSV or JSON text."""
    if fmt == "json":
        return json.dumps(rows, indent=2, default=str)
    if fmt == "tsv":
        lines = ["\t".join(columns)]
        lines += ["\t".join(str(r.get(c, "")) for c in columns) for r in rows]
        return "\n".join(lines)
    if fmt == "md":
        widths = [
            max(len(c), *(len(str(r.get(c, ""))) for r in rows)) if rows else len(c)
            for c in columns
        ]
        def line(values):
            return "| " + " | ".join(str(v).ljust(w) for v, w in zip(values, widths)) + " |"
        out = [line(columns), "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
        out += [line([r.get(c, "") for c in columns]) for r in rows]
        return "\n".join(out)
    raise ValueError(f"unknown format {fmt!r}")


def write_report(out_dir: str, stem: str, text: str, fmt: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    ext = {"md": "md", "tsv": "tsv", "json": "json"}[fmt]
    path = os.path.join(out_dir, f"{stem}.{ext}")
    with open(path, "w") as fh:
        fh.write(text)
        if not text.endswith("\n"):
            fh.write("\n")
    return path


def render_cells_figure(rows: list[dict], title: str, path: str) -> str:
    """Cell sizes (log scale) with a-values annotated, one bar per cell."""
    names = [str(r["cell"]) for r in rows]
    sizes = [int(r["size"]) for r in rows]
    avals = [int(r["a"]) for r in rows]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.55 * len(rows) + 1.5), 3.4))
    bars = ax.bar(range(len(rows)), sizes, color="tab:blue", alpha=0.8)
    ax.set_yscale("log")
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(names)
    ax.set_xlabel("two-sided cell")
    ax.set_ylabel("size")
    ax.set_title(title)
    for bar, a in zip(bars, avals):
        ax.annotate(
            f"a={a}",
            (bar.get_x() + bar.get_width() / 2, bar.get_height()),
            ha="center",
            va="bottom",
            fontsize=7,
        )
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_cell_matrix_figure(block_scalars, class_sizes, title: str, path: str) -> str:
    """Heatmap of the block cell matrix with n_{r,c} annotations."""
    k = len(class_sizes)
    m = np.array(block_scalars, dtype=float)
    fig, ax = plt.subplots(figsize=(1.0 * k + 2.0, 1.0 * k + 1.6))
    ax.imshow(m, cmap="Blues")
    ax.set_xticks(range(k))
    ax.set_yticks(range(k))
    labels = [str(s) for s in class_sizes]
    ax.set_xticklabels(labels)
    ax.set_yticklabels(labels)
    ax.set_xlabel("left-cell class size")
    ax.set_ylabel("right-cell class size")
    for i in range(k):
        for j in range(k):
            n = block_scalars[i][j]
            ax.text(
                j, i, f"{n}$_{{{class_sizes[i]},{class_sizes[j]}}}$",
                ha="center", va="center",
                color="white" if m[i, j] > m.max() / 2 else "black",
            )
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_fusion_graph_figure(graph, title: str, path: str) -> str:
    """Circular layout; edge multiplicities shown by line count, loops as
    small arcs, the unit vertex starred."""
    n = graph.size
    angles = [2 * math.pi * i / n for i in range(n)]
    xs = [math.cos(t) for t in angles]
    ys = [math.sin(t) for t in angles]
    fig, ax = plt.subplots(figsize=(5.2, 5.2))
    sym = graph.is_symmetric()
    for i in range(n):
        rng = range(i + 1, n) if sym else range(n)
        for j in rng:
            mult = graph.adjacency[i][j] if sym else max(graph.adjacency[i][j], 0)
            if i == j or not mult:
                continue
            dx, dy = xs[j] - xs[i], ys[j] - ys[i]
            norm = math.hypot(dx, dy) or 1.0
            px, py = -dy / norm, dx / norm
            for k in range(mult):
                off = 0.035 * (k - (mult - 1) / 2)
                ax.plot(
                    [xs[i] + off * px, xs[j] + off * px],
                    [ys[i] + off * py, ys[j] + off * py],
                    color="tab:gray",
                    lw=1.2,
                    zorder=1,
                )
            if not sym and graph.adjacency[i][j]:
                ax.annotate(
                    "",
                    xy=(xs[j], ys[j]),
                    xytext=((xs[i] + xs[j]) / 2, (ys[i] + ys[j]) / 2),
                    arrowprops={"arrowstyle": "->", "color": "tab:gray"},
                )
    for i in range(n):
        loops = graph.adjacency[i][i]
        for k in range(loops):
            r = 0.12 + 0.05 * k
            cx, cy = xs[i] * (1 + r), ys[i] * (1 + r)
            circ = plt.Circle((cx, cy), r, fill=False, color="tab:gray", lw=1.2, zorder=1)
            ax.add_patch(circ)
    ax.scatter(xs, ys, s=160, color="tab:blue", zorder=2)
    for i in range(n):
        label = str(graph.labels[i]) + (" *" if i == graph.star else "")
        ax.annotate(
            label, (xs[i], ys[i]),
            textcoords="offset points", xytext=(0, 12),
            ha="center", fontsize=8, zorder=3,
        )
    ax.set_title(title)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
