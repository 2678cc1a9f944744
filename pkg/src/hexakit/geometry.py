"""Closed curves made of circular arcs.

Every arc is stored by its chord endpoints and its *bulge*, the signed area
between the arc and its chord.  The sign follows the oriented-area
convention: the bulge of the arc ``gamma`` from ``start`` to ``end`` equals
``A(gamma) + A([end, start])`` with ``A`` the integral of ``x dy``.  So a
positive bulge puts the arc on the right of the oriented chord, and the arcs
of a counter-clockwise circle all carry positive bulges.

Because areas are stored rather than derived, the identity

    oriented_area(curve) = shoelace(nodes) + sum(bulges)

holds exactly, and the truncated functional ``sigma`` is exact as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .arcfn import P_MAX, arc_geometry, arc_len

SIMPLE_TOL = 1e-6


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x}, {self.y})")

    def __sub__(self, other: "Point") -> tuple[float, float]:
        return (self.x - other.x, self.y - other.y)

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


def _pt(p) -> Point:
    return p if isinstance(p, Point) else Point(float(p[0]), float(p[1]))


@dataclass(frozen=True)
class ArcSegment:
    start: Point
    end: Point
    bulge_area: float = 0.0

    def __post_init__(self):
        ell = self.chord_length
        if ell <= 0.0:
            raise ValueError("degenerate chord: start and end coincide")
        if not math.isfinite(self.bulge_area):
            raise ValueError("bulge area must be finite")
        if abs(self.bulge_area) / (ell * ell) >= P_MAX:
            raise ValueError("bulge exceeds the near-full-circle cap; split the arc")

    @property
    def chord_length(self) -> float:
        return math.hypot(self.end.x - self.start.x, self.end.y - self.start.y)

    @property
    def length(self) -> float:
        return arc_len(self.chord_length, abs(self.bulge_area))

    @property
    def is_straight(self) -> bool:
        return self.bulge_area == 0.0

    def radius_and_half_angle(self) -> tuple[float, float]:
        return arc_geometry(self.chord_length, self.bulge_area)

    def center(self) -> Point | None:
        """Center of the supporting circle, or ``None`` for a straight segment."""
        if self.is_straight:
            return None
        radius, theta = self.radius_and_half_angle()
        ell = self.chord_length
        dx, dy = self.end.x - self.start.x, self.end.y - self.start.y
        nx, ny = -dy / ell, dx / ell  # left normal of the chord
        d = radius * math.cos(theta) * (1.0 if self.bulge_area > 0 else -1.0)
        mx, my = 0.5 * (self.start.x + self.end.x), 0.5 * (self.start.y + self.end.y)
        return Point(mx + d * nx, my + d * ny)

    def points(self, tol: float) -> list[Point]:
        """Sample the arc so that no sub-chord is farther than ``tol`` from it.

        The end point is excluded; the start point is included.
        """
        if self.is_straight:
            return [self.start]
        radius, theta = self.radius_and_half_angle()
        # sagitta of a sub-arc of angle phi: R (1 - cos(phi / 2))
        if tol >= radius:
            pieces = 2
        else:
            phi = 2.0 * math.acos(1.0 - tol / radius)
            pieces = max(2, math.ceil(2.0 * theta / phi))
        c = self.center()
        sweep = 2.0 * theta * (1.0 if self.bulge_area > 0 else -1.0)
        a0 = math.atan2(self.start.y - c.y, self.start.x - c.x)
        out = [self.start]
        for i in range(1, pieces):
            a = a0 + sweep * i / pieces
            out.append(Point(c.x + radius * math.cos(a), c.y + radius * math.sin(a)))
        return out


def make_arc(p, q, signed_area: float) -> ArcSegment:
    """Arc from ``p`` to ``q`` bounding ``signed_area`` with its chord."""
    return ArcSegment(_pt(p), _pt(q), float(signed_area))


def reflect_arc(a: ArcSegment) -> ArcSegment:
    """Mirror the arc across its chord: same endpoints, negated bulge."""
    return ArcSegment(a.start, a.end, -a.bulge_area)


def _shoelace(points: Sequence[Point]) -> float:
    n = len(points)
    s = 0.0
    for i in range(n):
        p, q = points[i], points[(i + 1) % n]
        s += p.x * q.y - q.x * p.y
    return 0.5 * s


def shoelace(coords) -> float:
    """Signed area of a closed polygon given as an ``(n, 2)`` array-like."""
    xy = np.asarray(coords, dtype=float)
    if len(xy) > 1 and np.array_equal(xy[0], xy[-1]):
        xy = xy[:-1]
    x, y = xy[:, 0], xy[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


@dataclass(frozen=True)
class MarkedCurve:
    """Closed chain of arcs; every junction is a partition node."""

    edges: tuple[ArcSegment, ...]

    def __post_init__(self):
        edges = tuple(self.edges)
        object.__setattr__(self, "edges", edges)
        if len(edges) < 2:
            raise ValueError("a marked curve needs at least two edges")
        for i, e in enumerate(edges):
            nxt = edges[(i + 1) % len(edges)]
            if e.end != nxt.start:
                raise ValueError(f"edge {i} does not end where edge {i + 1} starts")

    @classmethod
    def from_nodes(cls, nodes: Iterable, bulges: Iterable[float] | None = None) -> "MarkedCurve":
        pts = [_pt(p) for p in nodes]
        k = len(pts)
        bl = [0.0] * k if bulges is None else [float(b) for b in bulges]
        if len(bl) != k:
            raise ValueError("need one bulge per node gap")
        return cls(tuple(ArcSegment(pts[i], pts[(i + 1) % k], bl[i]) for i in range(k)))

    @property
    def k(self) -> int:
        return len(self.edges)

    @property
    def nodes(self) -> list[Point]:
        return [e.start for e in self.edges]

    @property
    def bulges(self) -> list[float]:
        return [e.bulge_area for e in self.edges]

    def with_bulges(self, bulges: Sequence[float]) -> "MarkedCurve":
        return MarkedCurve.from_nodes(self.nodes, bulges)

    def segments(self) -> tuple[ArcSegment, ...]:
        return self.edges


@dataclass(frozen=True)
class PolyChainCurve:
    """Closed curve whose node gaps may hold several arcs each."""

    gaps: tuple[tuple[ArcSegment, ...], ...]

    def __post_init__(self):
        gaps = tuple(tuple(g) for g in self.gaps)
        object.__setattr__(self, "gaps", gaps)
        if len(gaps) < 2:
            raise ValueError("a poly-chain curve needs at least two node gaps")
        flat = [s for g in gaps for s in g]
        if any(len(g) == 0 for g in gaps):
            raise ValueError("every node gap needs at least one segment")
        for i, s in enumerate(flat):
            if s.end != flat[(i + 1) % len(flat)].start:
                raise ValueError("poly-chain curve is not closed and connected")

    @classmethod
    def from_marked(cls, c: MarkedCurve) -> "PolyChainCurve":
        return cls(tuple((e,) for e in c.edges))

    @property
    def k(self) -> int:
        return len(self.gaps)

    @property
    def nodes(self) -> list[Point]:
        return [g[0].start for g in self.gaps]

    def segments(self) -> tuple[ArcSegment, ...]:
        return tuple(s for g in self.gaps for s in g)


Curve = Union[MarkedCurve, PolyChainCurve]


def curve_length(c: Curve) -> float:
    return math.fsum(s.length for s in c.segments())


def chord_length_sum(c: Curve) -> float:
    return math.fsum(s.chord_length for s in c.segments())


def oriented_area(c: Curve) -> float:
    """Integral of ``x dy`` along the curve: polygon part plus bulges."""
    segs = c.segments()
    return _shoelace([s.start for s in segs]) + math.fsum(s.bulge_area for s in segs)


def _gap_chain(c: Curve, i: int) -> tuple[ArcSegment, ...]:
    if isinstance(c, MarkedCurve):
        return (c.edges[i],)
    return c.gaps[i]


def secant_area(c: Curve, i: int, j: int) -> float:
    """Signed area between the curve from node ``i`` to node ``j`` and the chord back."""
    k = c.k
    if not (0 <= i < k and 0 <= j < k):
        raise IndexError(f"node index out of range for k={k}")
    if i == j:
        raise ValueError("secant area needs two distinct nodes")
    chain: list[ArcSegment] = []
    g = i
    while g != j:
        chain.extend(_gap_chain(c, g))
        g = (g + 1) % k
    if len(chain) == 1:
        return chain[0].bulge_area
    pts = [s.start for s in chain] + [chain[-1].end]
    return _shoelace(pts) + math.fsum(s.bulge_area for s in chain)


def gap_areas(c: Curve) -> list[float]:
    """Secant areas ``A_i`` of consecutive node gaps."""
    return [secant_area(c, i, (i + 1) % c.k) for i in range(c.k)]


def sigma(c: Curve) -> float:
    """Sum of the gap secant areas, each clamped to ``[-1/2, 1/2]``."""
    return math.fsum(min(0.5, max(-0.5, a)) for a in gap_areas(c))


def sample_polyline(c: Curve, tol: float) -> list[Point]:
    """Polyline within sagitta ``tol`` of the curve; first point repeated last."""
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    out: list[Point] = []
    for s in c.segments():
        out.extend(s.points(tol))
    out.append(out[0])
    return out


def polyline_array(c: Curve, tol: float) -> np.ndarray:
    return np.array([p.as_tuple() for p in sample_polyline(c, tol)], dtype=float)


def _segments_cross(p1, p2, q1, q2) -> np.ndarray:
    """Vectorized closed-segment intersection test."""

    def orient(a, b, c):
        return (b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1]) - (b[..., 1] - a[..., 1]) * (
            c[..., 0] - a[..., 0]
        )

    def on_seg(a, b, c):
        return (
            (np.minimum(a[..., 0], b[..., 0]) <= c[..., 0])
            & (c[..., 0] <= np.maximum(a[..., 0], b[..., 0]))
            & (np.minimum(a[..., 1], b[..., 1]) <= c[..., 1])
            & (c[..., 1] <= np.maximum(a[..., 1], b[..., 1]))
        )

    d1 = orient(q1, q2, p1)
    d2 = orient(q1, q2, p2)
    d3 = orient(p1, p2, q1)
    d4 = orient(p1, p2, q2)
    proper = (d1 * d2 < 0) & (d3 * d4 < 0)
    touch = (
        ((d1 == 0) & on_seg(q1, q2, p1))
        | ((d2 == 0) & on_seg(q1, q2, p2))
        | ((d3 == 0) & on_seg(p1, p2, q1))
        | ((d4 == 0) & on_seg(p1, p2, q2))
    )
    return proper | touch


def polyline_is_simple(xy: np.ndarray) -> bool:
    """True iff the closed polyline (first point repeated last) has no self-contact."""
    xy = np.asarray(xy, dtype=float)
    if np.array_equal(xy[0], xy[-1]):
        xy = xy[:-1]
    n = len(xy)
    if n < 3:
        return False
    a = xy
    b = np.roll(xy, -1, axis=0)
    if np.any(np.all(a == b, axis=1)):
        return False
    # adjacent segments must not fold back onto each other
    u = b - a
    v = np.roll(u, -1, axis=0)
    cross = u[:, 0] * v[:, 1] - u[:, 1] * v[:, 0]
    dot = (u * v).sum(axis=1)
    if np.any((cross == 0) & (dot < 0)):
        return False
    # sweep on x: only segments whose bounding boxes overlap are tested exactly
    x0, x1 = np.minimum(a[:, 0], b[:, 0]), np.maximum(a[:, 0], b[:, 0])
    y0, y1 = np.minimum(a[:, 1], b[:, 1]), np.maximum(a[:, 1], b[:, 1])
    order = np.argsort(x0, kind="stable")
    stop = np.searchsorted(x0[order], x1[order], side="right")
    counts = stop - np.arange(n) - 1
    block = 2_000_000
    start = 0
    while start < n:
        # grow the block of sweep positions until it holds about `block` pairs
        csum = np.cumsum(counts[start:])
        end = start + max(1, int(np.searchsorted(csum, block, side="right")))
        cnt = counts[start:end]
        pi = np.repeat(np.arange(start, end), cnt)
        off = np.arange(cnt.sum()) - np.repeat(np.cumsum(cnt) - cnt, cnt)
        qi = pi + 1 + off
        ii, jj = order[pi], order[qi]
        gap = (jj - ii) % n
        keep = (gap > 1) & (gap < n - 1) & (y0[ii] <= y1[jj]) & (y0[jj] <= y1[ii])
        ii, jj = ii[keep], jj[keep]
        if len(ii) and _segments_cross(a[ii], b[ii], a[jj], b[jj]).any():
            return False
        start = end
    return True


def curve_is_simple(c: Curve, tol: float = SIMPLE_TOL) -> bool:
    """Heuristic injectivity test on the polyline sampled at ``tol``."""
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    return polyline_is_simple(polyline_array(c, tol))


def regular_polygon(k: int, area: float = 1.0, center=(0.0, 0.0), angle: float = 0.0) -> list[Point]:
    """Vertices of a counter-clockwise regular ``k``-gon with the given area."""
    radius = math.sqrt(2.0 * area / (k * math.sin(2.0 * math.pi / k)))
    cx, cy = center
    return [
        Point(cx + radius * math.cos(angle + 2.0 * math.pi * j / k), cy + radius * math.sin(angle + 2.0 * math.pi * j / k))
        for j in range(k)
    ]


def regular_hexagon_curve(area: float = 1.0, center=(0.0, 0.0), angle: float = 0.0) -> MarkedCurve:
    return MarkedCurve.from_nodes(regular_polygon(6, area, center, angle))
