"""Figures written next to a claims report (matplotlib, Agg backend)."""

from __future__ import annotations

import re
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .algebra import Signature  # noqa: E402
from .structure import classify_table  # noqa: E402

_RING_COLOUR = {"R": 0, "C": 1, "H": 2}
_STATUS_MARK = {"PASS": "o", "DISCREPANCY": "s", "FAIL": "x"}
_SIG = re.compile(r"C01-Cl\((\d+),(\d+)\)")


def classification_figure(results, path, max_n: int = 8):
    """Grid of Cl(p,q) classes from the table, overlaid with the C01 verdicts."""
    grid = np.full((max_n + 1, max_n + 1), np.nan)
    for p in range(max_n + 1):
        for q in range(max_n + 1 - p):
            grid[q, p] = _RING_COLOUR[classify_table(Signature(p, q)).division_ring]
    fig, ax = plt.subplots(figsize=(6, 5.5))
    cmap = matplotlib.colors.ListedColormap(["#9ecae1", "#fdae6b", "#a1d99b"])
    ax.imshow(grid, origin="lower", cmap=cmap, vmin=-0.5, vmax=2.5)
    for p in range(max_n + 1):
        for q in range(max_n + 1 - p):
            iso = classify_table(Signature(p, q))
            label = f"{'2x' if iso.factors == 2 else ''}{iso.n}{iso.division_ring}"
            ax.text(p, q, label, ha="center", va="center", fontsize=7)
    for r in results:
        m = _SIG.fullmatch(r.id)
        if m:
            p, q = int(m.group(1)), int(m.group(2))
            ax.scatter([p], [q], s=260, facecolors="none", edgecolors="k",
                       marker=_STATUS_MARK.get(r.status, "x"), linewidths=1.2)
    ax.set_xlabel("p")
    ax.set_ylabel("q")
    ax.set_title("Cl(p,q) by (p - q) mod 8; circled: checked signatures")
    ax.set_xticks(range(max_n + 1))
    ax.set_yticks(range(max_n + 1))
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return Path(path)


def killing_figure(results, path):
    """Stacked bars of Killing form inertia for the C14 claims."""
    rows = [(r.id.removeprefix("C14-"), r.details["inertia"]["killing"], r.status)
            for r in results if r.id.startswith("C14-") and "killing" in r.details["inertia"]]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    if rows:
        names = [n for n, _, _ in rows]
        plus = [i[0] for _, i, _ in rows]
        minus = [i[1] for _, i, _ in rows]
        x = np.arange(len(rows))
        ax.bar(x, plus, color="#3182bd", label="positive")
        ax.bar(x, minus, bottom=plus, color="#e6550d", label="negative")
        for xi, (_, (a, b), status) in zip(x, rows):
            ax.text(xi, a + b + 0.3, f"({a},{b}) {status}", ha="center", fontsize=7)
        ax.set_xticks(x, names)
        ax.set_ylim(0, 20)
        ax.legend(loc="upper left", ncol=2, fontsize=7)
    ax.set_ylabel("Killing form directions")
    ax.set_title("Real forms of the 15-dimensional spin algebras")
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return Path(path)


def render_figures(results, outdir) -> list[Path]:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    return [
        classification_figure(results, out / "classification.png"),
        killing_figure(results, out / "killing.png"),
    ]
