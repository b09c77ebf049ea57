"""Matplotlib renderings of the report data, written straight to files."""

from __future__ import annotations

import math


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def save_limits_figure(rows, path):
    """Plot the minimal dilatation per genus against its limit value.

    ``rows`` are (genus, value, gap) triples as emitted by the limits report.
    """
    plt = _pyplot()
    genera = [r[0] for r in rows]
    values = [r[1] for r in rows]
    limit = 3.0 + 2.0 * math.sqrt(2.0)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(genera, values, marker="o", markersize=3, linewidth=1.0, label="minimal dilatation")
    ax.axhline(limit, color="crimson", linewidth=1.0, linestyle="--", label="limit 3 + 2*sqrt(2)")
    ax.set_xlabel("genus")
    ax.set_ylabel("dilatation")
    ax.set_title("Minimal dilatation per genus")
    ax.legend(loc="lower right", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_table_figure(rows, path):
    """Bar chart of the small-genus comparison table.

    ``rows`` are TableRow values from the search module.
    """
    plt = _pyplot()
    names = [r.name for r in rows]
    values = [r.dilatation for r in rows]
    limit = 3.0 + 2.0 * math.sqrt(2.0)
    fig, ax = plt.subplots(figsize=(6.5, 4.0))
    ax.bar(range(len(names)), values, color="steelblue")
    ax.axhline(limit, color="crimson", linewidth=1.0, linestyle="--", label="3 + 2*sqrt(2)")
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("dilatation")
    ax.set_ylim(0, max(values) * 1.15)
    for x, v in enumerate(values):
        ax.text(x, v + 0.05, "%.3f" % v, ha="center", fontsize=7)
    ax.set_title("Dilatations of the surviving small-genus patterns")
    ax.legend(loc="lower right", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
