"""Seeded random curve generators used by the property checks."""

from __future__ import annotations

import math

import numpy as np

from .geometry import ArcSegment, MarkedCurve, Point, PolyChainCurve, regular_polygon


def random_polychain(rng: np.random.Generator, kmin: int = 3, kmax: int = 9) -> PolyChainCurve:
    """A closed curve of 1-3 arcs per node gap around a jittered circle.

    Gaps bulge both ways, sometimes beyond -1/2, so every reduction step has
    something to do.
    """
    k = int(rng.integers(kmin, kmax + 1))
    radius = float(rng.uniform(0.5, 1.3))
    ang = np.sort(rng.uniform(0.0, 2.0 * math.pi, size=k))
    # keep gaps apart so chords stay well away from zero
    ang = np.linspace(0.0, 2.0 * math.pi, k, endpoint=False) + 0.4 * (ang - ang.mean()) / k
    nodes = [Point(radius * math.cos(a), radius * math.sin(a)) for a in ang]
    gaps = []
    for i in range(k):
        p, q = nodes[i], nodes[(i + 1) % k]
        m = int(rng.integers(1, 4))
        dx, dy = q.x - p.x, q.y - p.y
        ell = math.hypot(dx, dy)
        nx, ny = -dy / ell, dx / ell
        pts = [p]
        for j in range(1, m):
            t = j / m
            off = float(rng.uniform(-0.25, 0.25)) * ell
            pts.append(Point(p.x + t * dx + off * nx, p.y + t * dy + off * ny))
        pts.append(q)
        segs = []
        for a, b in zip(pts[:-1], pts[1:]):
            sl = math.hypot(b.x - a.x, b.y - a.y)
            segs.append(ArcSegment(a, b, float(rng.uniform(-0.35, 0.35)) * sl * sl))
        gaps.append(tuple(segs))
    return PolyChainCurve(tuple(gaps))


def random_bulged_hexagon(
    rng: np.random.Generator, jitter: float = 0.03, max_ratio: float = 0.08, area: float = 1.0
) -> MarkedCurve:
    """Near-regular hexagon whose edges bulge by ``|x_i| <= max_ratio * l_i^2``."""
    base = regular_polygon(6, area, angle=float(rng.uniform(0.0, math.pi / 3.0)))
    s = math.sqrt(area) * math.sqrt(2.0 / (3.0 * math.sqrt(3.0)))
    pts = [Point(p.x + jitter * s * float(rng.normal()), p.y + jitter * s * float(rng.normal())) for p in base]
    bulges = []
    for i in range(6):
        p, q = pts[i], pts[(i + 1) % 6]
        ell2 = (q.x - p.x) ** 2 + (q.y - p.y) ** 2
        bulges.append(float(rng.uniform(-max_ratio, max_ratio)) * ell2)
    return MarkedCurve.from_nodes(pts, bulges)


def random_convex_hexagon(rng: np.random.Generator, hd: float) -> np.ndarray:
    """Unit-area regular hexagon with vertices moved by at most ``hd``; convexity is checked."""
    base = np.array([(p.x, p.y) for p in regular_polygon(6, 1.0)])
    while True:
        r = hd * np.sqrt(rng.uniform(0.0, 1.0, size=6))
        t = rng.uniform(0.0, 2.0 * math.pi, size=6)
        xy = base + np.column_stack([r * np.cos(t), r * np.sin(t)])
        e = np.roll(xy, -1, axis=0) - xy
        f = np.roll(e, -1, axis=0)
        if np.all(e[:, 0] * f[:, 1] - e[:, 1] * f[:, 0] > 0.0):
            return xy


def random_chordal_hexagon(
    rng: np.random.Generator, jitter: float = 0.05, max_ratio: float = math.pi / 8.0
) -> MarkedCurve:
    """Convex hexagon near the unit-area regular one, with bulges ``|x_i| / l_i <= max_ratio``.

    Signs are random and the size of the bulges varies per curve, from almost
    flat to the cap.  Callers wanting disjoint lenses should reject curves that
    are not simple.
    """
    xy = random_convex_hexagon(rng, jitter * math.sqrt(2.0 / (3.0 * math.sqrt(3.0))))
    scale = float(rng.uniform(0.0, 1.0)) ** 2
    bulges = []
    for i in range(6):
        ell = float(np.hypot(*(xy[(i + 1) % 6] - xy[i])))
        r = scale * max_ratio * float(rng.uniform(0.0, 1.0))
        bulges.append(float(rng.choice((-1.0, 1.0))) * r * ell)
    return MarkedCurve.from_nodes([tuple(p) for p in xy], bulges)
