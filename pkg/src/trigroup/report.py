"""Figures rendered from sweep CSV output.

Two plots per sweep: verdict frequencies per cell (the phase-transition
picture) and the spread of link-graph spectral gaps against the 1/2
threshold.  Files land next to the CSV unless an output directory is given.
"""

import csv
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .harness import summarize_rows


def load_rows(path):
    with open(path, newline="") as fh:
        return [dict(row) for row in csv.DictReader(fh)]


def _cells(rows):
    """Rows grouped per (n, p) cell, preserving sweep order."""
    order = []
    grouped = {}
    for row in rows:
        key = (row["n"], row["p"])
        if key not in grouped:
            grouped[key] = []
            order.append(key)
        grouped[key].append(row)
    return [(key, grouped[key]) for key in order]


def render_figures(rows, outdir, stem="sweep"):
    """Write the verdict-frequency and lambda2 figures; returns their paths."""
    cells = _cells(rows)
    labels = [f"n={n}\np={float(p):.3g}" for (n, p), _ in cells]
    os.makedirs(outdir, exist_ok=True)
    paths = []

    series = {
        "free certificate": lambda r: r["free_cert"] == "1",
        "chi witness": lambda r: r["chi_witness"] == "1",
        "isolated generator": lambda r: r["isolated_count"] not in ("", "0"),
        "(T) certificate": lambda r: r["t_cert"] == "1",
    }
    fig, ax = plt.subplots(figsize=(1.6 + 1.4 * len(cells), 4.0))
    width = 0.8 / len(series)
    for k, (name, pred) in enumerate(series.items()):
        fractions = [
            sum(pred(r) for r in cell_rows) / len(cell_rows)
            for _, cell_rows in cells
        ]
        xs = [i + (k - (len(series) - 1) / 2) * width for i in range(len(cells))]
        ax.bar(xs, fractions, width=width, label=name)
    ax.set_xticks(range(len(cells)), labels, fontsize=8)
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("fraction of trials")
    ax.set_title("certificates and witnesses per sweep cell")
    ax.legend(fontsize=8)
    fig.tight_layout()
    regimes_path = os.path.join(outdir, f"{stem}_regimes.png")
    fig.savefig(regimes_path, dpi=150)
    plt.close(fig)
    paths.append(regimes_path)

    spectral = [
        (label, [float(r["lambda2"]) for r in cell_rows if r["lambda2"]])
        for label, (_, cell_rows) in zip(labels, cells)
    ]
    spectral = [(label, values) for label, values in spectral if values]
    if spectral:
        fig, ax = plt.subplots(figsize=(1.6 + 1.4 * len(spectral), 4.0))
        for i, (_, values) in enumerate(spectral):
            ax.scatter([i] * len(values), values, s=12, alpha=0.6)
        ax.axhline(0.5, color="crimson", linestyle="--", label="1/2 threshold")
        ax.set_xticks(range(len(spectral)), [label for label, _ in spectral], fontsize=8)
        ax.set_ylabel("link-graph lambda2")
        ax.set_title("spectral gaps per sweep cell")
        ax.legend(fontsize=8)
        fig.tight_layout()
        lambda2_path = os.path.join(outdir, f"{stem}_lambda2.png")
        fig.savefig(lambda2_path, dpi=150)
        plt.close(fig)
        paths.append(lambda2_path)
    return paths


def report_text(rows):
    return summarize_rows(rows)
