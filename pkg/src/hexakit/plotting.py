"""Cluster figures: exact-arc SVG and matplotlib report plots."""

from __future__ import annotations

import math
from typing import Sequence

from .cluster import Cluster, ClusterMetrics
from .geometry import ArcSegment

# one colour per edge count; anything above 9 shares the last
K_COLORS = {
    2: "#7b3294",
    3: "#c2a5cf",
    4: "#a6dba0",
    5: "#5aae61",
    6: "#f7f7f7",
    7: "#fdb863",
    8: "#e66101",
    9: "#b2182b",
}
VOID_COLOR = "#ffffff"


def k_color(k: int) -> str:
    if k in K_COLORS:
        return K_COLORS[k]
    return K_COLORS[9] if k > 9 else K_COLORS[2]


def svg_arc_flags(seg: ArcSegment) -> tuple[float, int, int]:
    """``(radius, large_arc, sweep)`` for an SVG path with the y axis flipped."""
    radius, theta = seg.radius_and_half_angle()
    large = 1 if 2.0 * theta > math.pi else 0
    # counter-clockwise in the plane becomes clockwise on screen, which is sweep 0
    sweep = 0 if seg.bulge_area > 0 else 1
    return radius, large, sweep


def _fmt(x: float) -> str:
    x = float(x) + 0.0  # folds -0.0 into 0.0
    return repr(x)


def _path_d(segs: Sequence[ArcSegment]) -> str:
    p0 = segs[0].start
    parts = [f"M {_fmt(p0.x)} {_fmt(-p0.y)}"]
    for s in segs:
        if s.is_straight:
            parts.append(f"L {_fmt(s.end.x)} {_fmt(-s.end.y)}")
        else:
            r, large, sweep = svg_arc_flags(s)
            parts.append(f"A {_fmt(r)} {_fmt(r)} 0 {large} {sweep} {_fmt(s.end.x)} {_fmt(-s.end.y)}")
    parts.append("Z")
    return " ".join(parts)


def _bbox(c: Cluster) -> tuple[float, float, float, float]:
    xs, ys = [], []
    for ci in range(len(c.cells)):
        for s in c.cell_curve(ci).segments():
            for p in s.points(1e-3):
                xs.append(p.x)
                ys.append(p.y)
    return min(xs), min(ys), max(xs), max(ys)


def cluster_svg(c: Cluster, title: str = "") -> str:
    """SVG of the cluster: cells coloured by edge count, voids hatched, exterior outlined."""
    x0, y0, x1, y1 = _bbox(c)
    pad = 0.05 * max(x1 - x0, y1 - y0, 1e-9)
    legend_w = 0.35 * max(x1 - x0, y1 - y0)
    vx, vy = x0 - pad, -y1 - pad
    vw, vh = (x1 - x0) + 2 * pad + legend_w, (y1 - y0) + 2 * pad
    sw = 0.004 * max(vw, vh)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(vx)} {_fmt(vy)} {_fmt(vw)} {_fmt(vh)}" width="800" height="{_fmt(800 * vh / vw)}">',
    ]
    if title:
        out.append(f"<title>{title}</title>")
    out.append("<defs>")
    out.append(
        f'<pattern id="hatch" patternUnits="userSpaceOnUse" width="{_fmt(8 * sw)}" height="{_fmt(8 * sw)}" patternTransform="rotate(45)">'
        f'<line x1="0" y1="0" x2="0" y2="{_fmt(8 * sw)}" stroke="#555555" stroke-width="{_fmt(sw)}"/></pattern>'
    )
    out.append("</defs>")
    ks = set()
    for h in range(1, c.N + 1):
        for ci in c.chamber(h).cells:
            k = c.cell_k(ci)
            ks.add(k)
            d = _path_d(c.cell_curve(ci).segments())
            out.append(f'<path class="cell" data-chamber="{h}" data-k="{k}" d="{d}" fill="{k_color(k)}" stroke="#222222" stroke-width="{_fmt(sw)}"/>')
    for ci in c.chamber(0).cells:
        if ci == c.infinite_cell:
            continue
        d = _path_d(c.cell_curve(ci).segments())
        out.append(f'<path class="void" d="{d}" fill="url(#hatch)" stroke="#222222" stroke-width="{_fmt(sw)}"/>')
    ext = c.cell_curve(c.infinite_cell).segments()
    out.append(f'<path class="exterior" d="{_path_d(ext)}" fill="none" stroke="#000000" stroke-width="{_fmt(2.5 * sw)}"/>')
    # legend
    lx = x1 + pad + 0.1 * legend_w
    ly = -y1
    box = 0.06 * max(x1 - x0, y1 - y0, 1e-9)
    for i, k in enumerate(sorted(ks)):
        yy = ly + i * 1.5 * box
        out.append(f'<rect x="{_fmt(lx)}" y="{_fmt(yy)}" width="{_fmt(box)}" height="{_fmt(box)}" fill="{k_color(k)}" stroke="#222222" stroke-width="{_fmt(sw)}"/>')
        out.append(f'<text x="{_fmt(lx + 1.4 * box)}" y="{_fmt(yy + 0.85 * box)}" font-size="{_fmt(box)}" font-family="sans-serif">k = {k}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def report_figures(c: Cluster, m: ClusterMetrics, fig_dir: str) -> list[str]:
    """Write the cluster map and the edge-count histogram as PNG files; return their paths."""
    import os

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.patches import Patch, Polygon

    os.makedirs(fig_dir, exist_ok=True)
    paths = []

    fig, ax = plt.subplots(figsize=(6, 6))
    ks = set()
    for h in range(1, c.N + 1):
        for ci in c.chamber(h).cells:
            k = c.cell_k(ci)
            ks.add(k)
            pts = [(p.x, p.y) for s in c.cell_curve(ci).segments() for p in s.points(1e-3)]
            ax.add_patch(Polygon(pts, closed=True, facecolor=k_color(k), edgecolor="#222222", linewidth=0.6))
    for ci in c.chamber(0).cells:
        if ci == c.infinite_cell:
            continue
        pts = [(p.x, p.y) for s in c.cell_curve(ci).segments() for p in s.points(1e-3)]
        ax.add_patch(Polygon(pts, closed=True, facecolor=VOID_COLOR, hatch="///", edgecolor="#222222", linewidth=0.6))
    x0, y0, x1, y1 = _bbox(c)
    pad = 0.05 * max(x1 - x0, y1 - y0)
    ax.set_xlim(x0 - pad, x1 + pad)
    ax.set_ylim(y0 - pad, y1 + pad)
    ax.set_aspect("equal")
    ax.set_axis_off()
    ax.legend(handles=[Patch(facecolor=k_color(k), edgecolor="#222222", label=f"k = {k}") for k in sorted(ks)], loc="upper right", fontsize=8)
    ax.set_title(f"N = {m.N}, P = {m.P:.4f}, #Hex = {m.hex_count}")
    p = os.path.join(fig_dir, "cluster.png")
    fig.savefig(p, dpi=120, bbox_inches="tight", metadata={"Software": None})
    plt.close(fig)
    paths.append(p)

    fig, ax = plt.subplots(figsize=(5, 3.2))
    kk = sorted(m.ch_k)
    ax.bar([str(k) for k in kk], [m.ch_k[k] for k in kk], color=[k_color(k) for k in kk], edgecolor="#222222")
    ax.set_xlabel("edges per cell k")
    ax.set_ylabel("#Ch_k")
    ax.set_title("chambers with a k-sided cell")
    p = os.path.join(fig_dir, "ch_k.png")
    fig.savefig(p, dpi=120, bbox_inches="tight", metadata={"Software": None})
    plt.close(fig)
    paths.append(p)
    return paths
