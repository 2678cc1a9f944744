"""Area distance from a region to the closest regular hexagon of equal area.

The region is replaced by a polyline (exact for straight edges), the
hexagon is convex, and ``|E n H|`` comes from Sutherland-Hodgman clipping,
which is exact for a simple subject polygon against a convex clip polygon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Curve, Point, oriented_area, polyline_array, shoelace

HEX_CIRCUMRADIUS = math.sqrt(2.0 / (3.0 * math.sqrt(3.0)))  # unit-area hexagon
SIXTH = math.pi / 3.0
N_ANGLES = 24
TRANSLATION_STEP = 0.05  # coarse grid offsets, in units of sqrt(|E|)
NM_ITER = 200
EXACT_FIT = 1e-12  # relative sym-diff treated as an exact match
SMALL_SUBJECT = 48


@dataclass(frozen=True)
class Region:
    """Simple positively oriented region given by its polyline (first point not repeated)."""

    polyline: np.ndarray
    area: float

    @classmethod
    def from_polygon(cls, coords) -> "Region":
        xy = np.asarray(coords, dtype=float)
        if len(xy) > 1 and np.array_equal(xy[0], xy[-1]):
            xy = xy[:-1]
        a = shoelace(xy)
        if a < 0.0:
            xy = xy[::-1].copy()
            a = -a
        if a <= 0.0:
            raise ValueError("region must have positive area")
        return cls(xy, a)

    @classmethod
    def from_curve(cls, c: Curve, tol: float | None = None) -> "Region":
        area = abs(oriented_area(c))
        if area <= 0.0:
            raise ValueError("region must have positive area")
        tol = 1e-4 * math.sqrt(area) if tol is None else tol
        return cls.from_polygon(polyline_array(c, tol))

    def centroid(self) -> tuple[float, float]:
        x, y = self.polyline[:, 0], self.polyline[:, 1]
        xn, yn = np.roll(x, -1), np.roll(y, -1)
        cr = x * yn - xn * y
        a = 0.5 * cr.sum()
        return float(((x + xn) * cr).sum() / (6.0 * a)), float(((y + yn) * cr).sum() / (6.0 * a))


@dataclass(frozen=True)
class HexFit:
    center: Point
    angle: float
    scale: float
    sym_diff: float

    def vertices(self) -> np.ndarray:
        return hexagon_vertices(self.center.x, self.center.y, self.angle, self.scale)


def hexagon_vertices(cx: float, cy: float, angle: float, scale: float) -> np.ndarray:
    """Regular hexagon of area ``scale**2``, counter-clockwise."""
    r = HEX_CIRCUMRADIUS * scale
    t = angle + SIXTH * np.arange(6)
    return np.column_stack([cx + r * np.cos(t), cy + r * np.sin(t)])


# clipping -------------------------------------------------------------------------


def _clip_small(subject: list, clip: np.ndarray) -> list:
    out = subject
    m = len(clip)
    for i in range(m):
        if not out:
            break
        ax, ay = clip[i]
        bx, by = clip[(i + 1) % m]
        ex, ey = bx - ax, by - ay
        inp = out
        out = []
        px, py = inp[-1]
        ps = ex * (py - ay) - ey * (px - ax)
        for qx, qy in inp:
            qs = ex * (qy - ay) - ey * (qx - ax)
            if qs >= 0.0:
                if ps < 0.0:
                    t = ps / (ps - qs)
                    out.append((px + t * (qx - px), py + t * (qy - py)))
                out.append((qx, qy))
            elif ps >= 0.0:
                t = ps / (ps - qs)
                out.append((px + t * (qx - px), py + t * (qy - py)))
            px, py, ps = qx, qy, qs
    return out


def _clip_numpy(subject: np.ndarray, clip: np.ndarray) -> np.ndarray:
    out = subject
    m = len(clip)
    for i in range(m):
        if len(out) == 0:
            break
        a = clip[i]
        e = clip[(i + 1) % m] - a
        p = np.roll(out, 1, axis=0)
        q = out
        ps = e[0] * (p[:, 1] - a[1]) - e[1] * (p[:, 0] - a[0])
        qs = e[0] * (q[:, 1] - a[1]) - e[1] * (q[:, 0] - a[0])
        q_in = qs >= 0.0
        p_in = ps >= 0.0
        cross = q_in != p_in
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.where(cross, ps / (ps - qs), 0.0)
        inter = p + t[:, None] * (q - p)
        # per edge p->q: optional intersection, then q if inside
        n = len(q)
        buf = np.empty((2 * n, 2))
        keep = np.zeros(2 * n, dtype=bool)
        buf[0::2] = inter
        keep[0::2] = cross
        buf[1::2] = q
        keep[1::2] = q_in
        out = buf[keep]
    return out


def clip_convex(subject, clip) -> np.ndarray:
    """Clip a polygon against a counter-clockwise convex polygon."""
    clip = np.asarray(clip, dtype=float)
    subject = np.asarray(subject, dtype=float)
    if len(subject) <= SMALL_SUBJECT:
        res = _clip_small([tuple(p) for p in subject.tolist()], clip)
        return np.array(res, dtype=float).reshape(-1, 2)
    return _clip_numpy(subject, clip)


def _area(xy: np.ndarray) -> float:
    if len(xy) < 3:
        return 0.0
    return shoelace(xy)


def sym_diff_area(a, b) -> float:
    """``|A| + |B| - 2 |A n B|`` for a region ``a`` and a convex polygon ``b``."""
    reg = a if isinstance(a, Region) else Region.from_polygon(a)
    hb = np.asarray(b, dtype=float)
    if shoelace(hb) < 0.0:
        hb = hb[::-1]
    inter = _area(clip_convex(reg.polyline, hb))
    return max(0.0, reg.area + abs(shoelace(hb)) - 2.0 * inter)


# fitting ---------------------------------------------------------------------------


def _principal_angle(reg: Region) -> float:
    cx, cy = reg.centroid()
    d = reg.polyline - (cx, cy)
    seg = np.roll(reg.polyline, -1, axis=0) - reg.polyline
    w = np.hypot(seg[:, 0], seg[:, 1])
    sxx = float((w * d[:, 0] ** 2).sum())
    syy = float((w * d[:, 1] ** 2).sum())
    sxy = float((w * d[:, 0] * d[:, 1]).sum())
    return 0.5 * math.atan2(2.0 * sxy, sxx - syy)


def _hexatic_angle(reg: Region) -> float:
    """Phase of the six-fold moment of the boundary vertices about the centroid."""
    cx, cy = reg.centroid()
    z = (reg.polyline[:, 0] - cx) + 1j * (reg.polyline[:, 1] - cy)
    m = np.sum(z**6)
    if abs(m) == 0.0:
        return 0.0
    return float(np.angle(m)) / 6.0


def _canon_angle(t: float) -> float:
    t = math.fmod(t, SIXTH)
    if t < 0.0:
        t += SIXTH
    if t >= SIXTH:
        t = 0.0
    return t


def d_hex(reg: Region) -> HexFit:
    """Best placement of an equal-area regular hexagon; an upper bound on the infimum."""
    from scipy.optimize import minimize

    scale = math.sqrt(reg.area)
    cx, cy = reg.centroid()

    def cost(v) -> float:
        return sym_diff_area(reg, hexagon_vertices(v[0], v[1], v[2], scale))

    def key(v, f):
        return (f, _canon_angle(v[2]), v[0], v[1])

    seeds = [
        (cx, cy, _canon_angle(_hexatic_angle(reg))),
        (cx, cy, _canon_angle(_hexatic_angle(reg) + SIXTH / 2.0)),
        (cx, cy, _canon_angle(_principal_angle(reg))),
    ]
    best_v, best_f = None, math.inf
    for v in seeds:
        f = cost(v)
        if best_v is None or key(v, f) < key(best_v, best_f):
            best_v, best_f = v, f
    if best_f > EXACT_FIT * reg.area:
        h = TRANSLATION_STEP * scale
        for ia in range(N_ANGLES):
            t = SIXTH * ia / N_ANGLES
            for dx in (-h, 0.0, h):
                for dy in (-h, 0.0, h):
                    v = (cx + dx, cy + dy, t)
                    f = cost(v)
                    if key(v, f) < key(best_v, best_f):
                        best_v, best_f = v, f
        x0 = np.array(best_v)
        simplex = np.array([x0, x0 + (0.02 * scale, 0.0, 0.0), x0 + (0.0, 0.02 * scale, 0.0), x0 + (0.0, 0.0, 0.02)])
        r = minimize(
            cost,
            x0,
            method="Nelder-Mead",
            options={"maxiter": NM_ITER, "initial_simplex": simplex, "xatol": 1e-10, "fatol": 1e-14 * reg.area},
        )
        if r.fun < best_f:
            best_v, best_f = tuple(float(u) for u in r.x), float(r.fun)
    return HexFit(Point(best_v[0], best_v[1]), _canon_angle(best_v[2]), scale, best_f)


def hausdorff(a, b) -> float:
    """Symmetric Hausdorff distance between two finite point sets."""
    from scipy.spatial import cKDTree

    pa = np.asarray([p.as_tuple() if isinstance(p, Point) else p for p in a], dtype=float).reshape(-1, 2)
    pb = np.asarray([p.as_tuple() if isinstance(p, Point) else p for p in b], dtype=float).reshape(-1, 2)
    if len(pa) == 0 or len(pb) == 0:
        raise ValueError("hausdorff needs non-empty point sets")
    da, _ = cKDTree(pb).query(pa)
    db, _ = cKDTree(pa).query(pb)
    return float(max(da.max(), db.max()))


def sample_polygon_boundary(xy, spacing: float) -> np.ndarray:
    """Points along a closed polygon boundary at most ``spacing`` apart."""
    xy = np.asarray(xy, dtype=float)
    out = []
    for i in range(len(xy)):
        p, q = xy[i], xy[(i + 1) % len(xy)]
        n = max(1, math.ceil(float(np.hypot(*(q - p))) / spacing))
        t = np.arange(n)[:, None] / n
        out.append(p + t * (q - p))
    return np.vstack(out)


def disk_hexagon_sym_diff(area: float = 1.0) -> float:
    """``|D Δ H|`` for a concentric disk and regular hexagon of equal area."""
    rho = math.sqrt(area / math.pi)
    s = HEX_CIRCUMRADIUS * math.sqrt(area)
    h = s * math.sqrt(3.0) / 2.0
    # six circular caps of the disk beyond the hexagon sides; |D Δ H| = 2 |D \ H|
    cap = rho * rho * math.acos(h / rho) - h * math.sqrt(rho * rho - h * h)
    return 12.0 * cap
