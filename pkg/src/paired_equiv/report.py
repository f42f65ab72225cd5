"""Serialization of surfaces, boundaries, and test reports, plus figure output.

CSV values are printed with 17 significant digits so that re-reading a file
reproduces the in-memory doubles bit for bit.  Out-of-domain surface cells
are written as empty fields (``null`` in JSON).  An optional timestamp
comment line is the only non-deterministic byte in any output and can be
suppressed.

Figures are rendered with matplotlib to SVG next to the delimited data:
surfaces as a linear-scale heatmap with the alpha-level contour outlined,
acceptance boundaries as closed polylines.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError
from .evaluation import SurfaceGrid

TOOL_VERSION = "0.1.0"


def format_value(x: float) -> str:
    """Shortest-safe decimal form: 17 significant digits round-trip exactly."""
    return format(float(x), ".17g")


def _meta(grid: SurfaceGrid, timestamp: Optional[str]) -> dict:
    meta = {
        "n": grid.n,
        "alpha": grid.alpha,
        "method": grid.method,
        "kind": grid.kind,
        "grid": {
            "axis1_len": len(grid.axis1),
            "axis2_len": len(grid.axis2),
        },
        "version": TOOL_VERSION,
    }
    if timestamp is not None:
        meta["generated"] = timestamp
    return meta


def surface_to_csv(grid: SurfaceGrid, timestamp: Optional[str] = None) -> str:
    """Rows of ``axis1,axis2,value`` with empty value for absent cells."""
    buf = io.StringIO()
    if timestamp is not None:
        buf.write(f"# generated: {timestamp}\n")
    buf.write("axis1,axis2,value\n")
    for i, a in enumerate(grid.axis1):
        for j, b in enumerate(grid.axis2):
            v = grid.values[i, j]
            cell = "" if np.isnan(v) else format_value(v)
            buf.write(f"{format_value(a)},{format_value(b)},{cell}\n")
    return buf.getvalue()


def surface_from_csv(text: str, n: int = 0, alpha: float = 0.5,
                     method: str = "mcnemar", kind: str = "size") -> SurfaceGrid:
    """Rebuild a grid from its CSV form (timestamp comments are skipped)."""
    rows = []
    reader = csv.reader(
        line for line in text.splitlines() if line and not line.startswith("#")
    )
    header = next(reader)
    if header != ["axis1", "axis2", "value"]:
        raise DomainError(f"unexpected surface CSV header {header!r}")
    for a, b, v in reader:
        rows.append((float(a), float(b), float(v) if v else np.nan))
    axis1 = sorted({r[0] for r in rows})
    axis2 = sorted({r[1] for r in rows})
    index1 = {a: i for i, a in enumerate(axis1)}
    index2 = {b: j for j, b in enumerate(axis2)}
    values = np.full((len(axis1), len(axis2)), np.nan)
    for a, b, v in rows:
        values[index1[a], index2[b]] = v
    return SurfaceGrid(
        axis1=np.array(axis1), axis2=np.array(axis2), values=values,
        n=n, alpha=alpha, method=method, kind=kind,
    )


def surface_to_json(grid: SurfaceGrid, timestamp: Optional[str] = None) -> str:
    payload = {
        "meta": _meta(grid, timestamp),
        "axes": {
            "axis1": [float(a) for a in grid.axis1],
            "axis2": [float(b) for b in grid.axis2],
        },
        "values": [
            [None if np.isnan(v) else float(v) for v in row] for row in grid.values
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def boundaries_to_csv(
    boundaries: dict[str, Sequence[tuple[int, int]]], timestamp: Optional[str] = None
) -> str:
    """Rows of ``method,x10,x01`` for each boundary polyline."""
    buf = io.StringIO()
    if timestamp is not None:
        buf.write(f"# generated: {timestamp}\n")
    buf.write("method,x10,x01\n")
    for method, pts in boundaries.items():
        for a, b in pts:
            buf.write(f"{method},{a},{b}\n")
    return buf.getvalue()


def boundaries_to_json(
    boundaries: dict[str, Sequence[tuple[int, int]]],
    n: int,
    alpha: float,
    timestamp: Optional[str] = None,
) -> str:
    meta = {"n": n, "alpha": alpha, "kind": "region", "version": TOOL_VERSION}
    if timestamp is not None:
        meta["generated"] = timestamp
    payload = {
        "meta": meta,
        "axes": None,
        "values": {
            method: [[int(a), int(b)] for a, b in pts]
            for method, pts in boundaries.items()
        },
    }
    return json.dumps(payload, indent=2) + "\n"


def results_to_json(rows: list[dict], timestamp: Optional[str] = None) -> str:
    meta = {"kind": "test_results", "version": TOOL_VERSION}
    if timestamp is not None:
        meta["generated"] = timestamp
    return json.dumps({"meta": meta, "axes": None, "values": rows}, indent=2) + "\n"


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt


def render_surface_svg(grid: SurfaceGrid, path: str) -> None:
    """Heatmap of the surface with the alpha-level contour outlined."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7.0, 5.5))
    masked = np.ma.masked_invalid(grid.values)
    mesh = ax.pcolormesh(grid.axis1, grid.axis2, masked.T, shading="nearest", vmin=0.0)
    fig.colorbar(mesh, ax=ax, label=grid.kind)
    filled = ~np.isnan(grid.values)
    if filled.sum() >= 4 and np.nanmin(grid.values) < grid.alpha < np.nanmax(grid.values):
        ax.contour(
            grid.axis1,
            grid.axis2,
            np.where(filled, grid.values, np.nan).T,
            levels=[grid.alpha],
            colors="red",
            linewidths=1.2,
        )
    labels = {"size": ("rho", "pi"), "power": ("p10", "p01")}
    xlabel, ylabel = labels.get(grid.kind, ("axis1", "axis2"))
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(f"{grid.method} {grid.kind}, n={grid.n}, alpha={grid.alpha:g}")
    fig.savefig(path, format="svg")
    plt.close(fig)


def render_region_svg(
    boundaries: dict[str, Sequence[tuple[int, int]]], n: int, alpha: float, path: str
) -> None:
    """Closed-polyline plot of one or two acceptance-region boundaries."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 6.0))
    styles = {"mcnemar": ("red", "--"), "margin": ("blue", "-")}
    for method, pts in boundaries.items():
        if not pts:
            continue
        closed = list(pts) + [pts[0]]
        xs = [p[0] for p in closed]
        ys = [p[1] for p in closed]
        color, ls = styles.get(method, ("black", "-"))
        ax.plot(xs, ys, ls, color=color, linewidth=1.2, label=method)
    ax.set_xlabel("x10")
    ax.set_ylabel("x01")
    ax.set_title(f"acceptance boundaries, n={n}, alpha={alpha:g}")
    ax.legend()
    ax.set_aspect("equal")
    fig.savefig(path, format="svg")
    plt.close(fig)
