"""Isoperimetric inequality for immersed polygons.

For any closed polygon with ``k`` vertices (self-intersections allowed, area
taken with sign) ``P^2 >= p(k)^2 A`` where ``p(k) = 2 sqrt(k tan(pi/k))`` is
the perimeter of the unit-area regular ``k``-gon.  The maximizers of area at
fixed perimeter have their vertices on a circle; equal-gap configurations
winding ``n`` times give the closed form in :func:`circle_config_ratio`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .geometry import Point, _pt


@dataclass(frozen=True)
class ImmersedPolygon:
    points: tuple[Point, ...]
    degenerate: bool = False

    def __post_init__(self):
        pts = tuple(_pt(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 3:
            raise ValueError("an immersed polygon needs at least 3 points")
        if not self.degenerate:
            for i, p in enumerate(pts):
                if p == pts[(i + 1) % len(pts)]:
                    raise ValueError("consecutive points coincide; pass degenerate=True")

    @property
    def k(self) -> int:
        return len(self.points)

    def array(self) -> np.ndarray:
        return np.array([p.as_tuple() for p in self.points], dtype=float)


def _as_array(p) -> np.ndarray:
    if isinstance(p, ImmersedPolygon):
        return p.array()
    return np.asarray(p, dtype=float)


def polygon_perimeter(p) -> float:
    xy = _as_array(p)
    d = np.roll(xy, -1, axis=0) - xy
    return float(np.hypot(d[:, 0], d[:, 1]).sum())


def polygon_oriented_area(p) -> float:
    xy = _as_array(p)
    x, y = xy[:, 0], xy[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    return 0.5 * float((x * yn - xn * y).sum())


def p_of_k(k: int) -> float:
    if k < 3:
        raise ValueError("p(k) needs k >= 3")
    return 2.0 * math.sqrt(k * math.tan(math.pi / k))


def immersed_iso_margin(p) -> float:
    """``P^2 - p(k)^2 A``; non-negative for every polygon."""
    xy = _as_array(p)
    per = polygon_perimeter(xy)
    return per * per - p_of_k(len(xy)) ** 2 * polygon_oriented_area(xy)


def batch_margins(polys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized ``(margin, P^2)`` for an ``(m, k, 2)`` stack of polygons."""
    polys = np.asarray(polys, dtype=float)
    k = polys.shape[1]
    nxt = np.roll(polys, -1, axis=1)
    d = nxt - polys
    per = np.hypot(d[..., 0], d[..., 1]).sum(axis=1)
    area = 0.5 * (polys[..., 0] * nxt[..., 1] - nxt[..., 0] * polys[..., 1]).sum(axis=1)
    p2 = per * per
    return p2 - p_of_k(k) ** 2 * area, p2


def regular_polygon_points(k: int, radius: float = 1.0, n: int = 1, phase: float = 0.0) -> np.ndarray:
    """Equal-gap circle configuration winding ``n`` times (``n = 1``: regular k-gon)."""
    j = np.arange(k)
    ang = phase + 2.0 * math.pi * n * j / k
    return np.column_stack([radius * np.cos(ang), radius * np.sin(ang)])


def circle_config_ratio(k: int, n: int) -> float:
    """``4 A`` at unit perimeter of the equal-gap circle configuration winding ``n`` times."""
    if k < 3:
        raise ValueError("k must be at least 3")
    if not 1 <= n <= k - 1 or 2 * n == k:
        raise ValueError(f"degenerate winding n={n} for k={k}")
    w = 2.0 * math.pi * n / k
    return math.sin(w) / (k * (1.0 - math.cos(w)))


def area_ratio(thetas: Sequence[float]) -> float:
    """``a = N / D^2`` with ``N = sum sin(w_j)`` and ``D = sum sqrt(1 - cos(w_j))``."""
    th = np.asarray(thetas, dtype=float)
    w = np.roll(th, -1) - th
    return float(np.sin(w).sum() / np.sqrt(1.0 - np.cos(w)).sum() ** 2)


def area_ratio_gradient(thetas: Sequence[float]) -> np.ndarray:
    """Analytic gradient of :func:`area_ratio` with respect to the angles."""
    th = np.asarray(thetas, dtype=float)
    if len(th) < 3:
        raise ValueError("need at least 3 angles")
    w = np.roll(th, -1) - th  # w_j = theta_{j+1} - theta_j
    c = np.cos(w)
    if np.any(1.0 - c <= 1e-15):
        raise ValueError("consecutive angles coincide")
    num = np.sin(w).sum()
    s = np.sqrt(1.0 - c)
    den = s.sum()
    # theta_j enters w_{j-1} with +1 and w_j with -1
    dN = np.roll(c, 1) - c
    ds = np.sin(w) / (2.0 * s)  # d sqrt(1 - cos w) / dw
    dD = np.roll(ds, 1) - ds
    return dN / den**2 - 2.0 * num / den**3 * dD


def random_polygons(rng: np.random.Generator, m: int, k: int) -> np.ndarray:
    return rng.uniform(-1.0, 1.0, size=(m, k, 2))


@dataclass(frozen=True)
class StressResult:
    count: int
    seed: int
    min_relative_margin: float
    violations: int

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_json(self) -> dict:
        return {
            "count": self.count,
            "seed": self.seed,
            "min_relative_margin": self.min_relative_margin,
            "violations": self.violations,
            "passed": self.passed,
        }


def random_stress(count: int, seed: int, kmin: int = 3, kmax: int = 12, tol: float = 1e-9) -> StressResult:
    """Check the inequality on ``count`` seeded random polygons, ``k`` uniform in ``[kmin, kmax]``."""
    from .parallel import pmap

    if count < 1:
        raise ValueError("count must be positive")
    ks = np.random.default_rng(seed).integers(kmin, kmax + 1, size=count)
    children = np.random.SeedSequence(seed).spawn(kmax - kmin + 1)

    def run(k: int) -> tuple[float, int]:
        m = int((ks == k).sum())
        if m == 0:
            return math.inf, 0
        polys = random_polygons(np.random.default_rng(children[k - kmin]), m, k)
        margin, p2 = batch_margins(polys)
        rel = margin / p2
        return float(rel.min()), int((rel < -tol).sum())

    res = pmap(run, range(kmin, kmax + 1))
    return StressResult(count, seed, min(r[0] for r in res), sum(r[1] for r in res))
