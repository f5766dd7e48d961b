"""Figure rendering for the report commands (written to files, never shown)."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def render_bounds_figure(rows: Sequence[dict], path: str | Path) -> Path:
    """Bound curves g, h, |delta_E| and the r interval over a degree range."""
    path = Path(path)
    ns = [r["n"] for r in rows]
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    ax.plot(ns, [r["g"] for r in rows], "o-", label="g(n)", lw=1.2, ms=3)
    ax.plot(ns, [r["h"] for r in rows], "s-", label="h(n)", lw=1.2, ms=3)
    de = [(r["n"], r["delta_e_size"]) for r in rows if r["delta_e_size"] is not None]
    if de:
        ax.plot([n for n, _ in de], [v for _, v in de], "^-", label="|delta_E|", lw=1.0, ms=3)
    lo = [r["r_interval"][0] for r in rows]
    hi = [r["r_interval"][1] for r in rows]
    ax.fill_between(ns, lo, hi, alpha=0.25, color="grey", label="r(S_n) interval")
    ax.set_xlabel("degree n")
    ax.set_ylabel("bound value")
    ax.legend(frameon=False)
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_gh_figure(rows: Sequence[dict], path: str | Path) -> Path:
    """g versus h over a range, highlighting the sign of the difference."""
    path = Path(path)
    ns = [r["n"] for r in rows]
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    ax.plot(ns, [r["g"] for r in rows], "o-", label="g(n)", lw=1.2, ms=3)
    ax.plot(ns, [r["h"] for r in rows], "s-", label="h(n)", lw=1.2, ms=3)
    flipped = [r["n"] for r in rows if r["h"] < r["g"]]
    for x in flipped:
        ax.axvline(x, color="red", alpha=0.3, lw=0.8)
    ax.set_xlabel("degree n")
    ax.set_ylabel("bound value")
    ax.legend(frameon=False)
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
