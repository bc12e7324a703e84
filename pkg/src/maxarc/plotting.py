"""Report figures, written to files with the Agg backend."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .arcs import Arc, ArcCheck
from .conic import conic_points


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def arc_figure(arc: Arc, path: str | Path, title: str | None = None) -> Path:
    """Affine part (x = 1 chart: points (1, b, c)) coloured by conic; 0 marks points off the arc."""
    plane, F = arc.plane, arc.field
    q = plane.q
    grid = np.zeros((q, q), dtype=int)
    for i, C in enumerate(arc.conics, start=1):
        for p in conic_points(plane, C):
            x, y, z = plane.coords(p)
            if x:
                grid[z, y] = i
    for p in arc.points:
        x, y, z = plane.coords(p)
        if x and grid[z, y] == 0:
            grid[z, y] = len(arc.conics) + 1  # nucleus or points not attributed to a conic
    fig, ax = plt.subplots(figsize=(5, 5))
    cmap = plt.get_cmap("tab10", max(2, len(arc.conics) + 2))
    ax.imshow(np.ma.masked_equal(grid, 0), cmap=cmap, origin="lower", interpolation="nearest")
    ax.set_xlabel("b  (point (1, b, c), integer encoding)")
    ax.set_ylabel("c")
    ax.set_title(title or f"degree {arc.degree} arc, {len(arc.points)} points, q = {q}")
    return _save(fig, Path(path))


def histogram_figure(check: ArcCheck, path: str | Path, title: str | None = None) -> Path:
    ks = sorted(check.histogram)
    fig, ax = plt.subplots(figsize=(4, 3))
    ax.bar([str(k) for k in ks], [check.histogram[k] for k in ks], color="0.35")
    ax.set_xlabel("points on line")
    ax.set_ylabel("lines")
    ax.set_title(title or ("maximal arc" if check.ok else "not a maximal arc"))
    return _save(fig, Path(path))


def census_figure(cells, F, path: str | Path) -> Path:
    """Stacked D/M conic counts per (lambda, sigma) cell."""
    labels = [f"{F.fmt(c.lam)}, {1 << c.sigma}" for c in cells]
    d = np.array([len(c.d_conics) for c in cells])
    m = np.array([len(c.m_conics) for c in cells])
    fig, ax = plt.subplots(figsize=(max(4, 0.45 * len(cells)), 3))
    x = np.arange(len(cells))
    ax.bar(x, d, color="0.7", label="D-conics")
    ax.bar(x, m, bottom=d, color="0.25", label="M-conics")
    ax.set_xticks(x, labels, rotation=60, ha="right", fontsize=7)
    ax.set_xlabel("conic sent to C_1, sigma")
    ax.set_ylabel("conics")
    ax.legend(frameon=False, fontsize=7)
    return _save(fig, Path(path))


def orbit_figure(sizes: list[int], path: str | Path, q: int) -> Path:
    fig, ax = plt.subplots(figsize=(4, 3))
    vals, counts = np.unique(sizes, return_counts=True)
    ax.bar([str(v) for v in vals], counts, color="0.35")
    ax.set_xlabel("orbit size")
    ax.set_ylabel("orbits")
    ax.set_title(f"2-dim subspaces of GF({q})")
    return _save(fig, Path(path))
