import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from shapely.geometry import Polygon

from hexakit.arcfn import P_MAX
from hexakit.corpus import random_polychain
from hexakit.geometry import (
    ArcSegment,
    MarkedCurve,
    Point,
    PolyChainCurve,
    curve_is_simple,
    curve_length,
    make_arc,
    oriented_area,
    polyline_is_simple,
    reflect_arc,
    regular_hexagon_curve,
    sample_polyline,
    secant_area,
    shoelace,
    sigma,
)

from conftest import TWELVE4

BOWTIE = [(0, 0), (1, 1), (1, 0), (0, 1)]


def two_arc_circle(ccw=True):
    s = math.pi / 2 if ccw else -math.pi / 2
    return MarkedCurve.from_nodes([(1, 0), (-1, 0)], [s, s])


def test_circle_length_and_area():
    c = two_arc_circle()
    assert abs(curve_length(c) - 2 * math.pi) < 1e-12
    assert abs(oriented_area(c) - math.pi) < 1e-12
    assert abs(oriented_area(two_arc_circle(False)) + math.pi) < 1e-12


def test_hexagon_length():
    assert abs(curve_length(regular_hexagon_curve()) - 2 * TWELVE4) < 1e-12


def test_semicircle_pair():
    c = MarkedCurve.from_nodes([(0, 0), (1, 0)], [math.pi / 8, math.pi / 8])
    assert abs(curve_length(c) - math.pi) < 1e-12


def test_bowtie_area_zero():
    c = MarkedCurve.from_nodes(BOWTIE)
    assert oriented_area(c) == 0.0
    assert not curve_is_simple(c)


@pytest.mark.parametrize(
    "p,q,b,length",
    [((0, 0), (1, 0), 0.0, 1.0), ((0, 0), (1, 0), math.pi / 8, math.pi / 2), ((0, 0), (2, 0), math.pi / 2, math.pi)],
)
def test_make_arc_lengths(p, q, b, length):
    assert abs(make_arc(p, q, b).length - length) < 1e-12


def test_make_arc_rejects_degenerate():
    with pytest.raises(ValueError):
        make_arc((0, 0), (0, 0), 0.1)
    with pytest.raises(ValueError):
        make_arc((0, 0), (1, 0), 2 * P_MAX)


def test_reflect():
    a = make_arc((0, 0), (1, 0), 0.2)
    r = reflect_arc(a)
    assert r.bulge_area == -0.2 and r.length == a.length
    z = make_arc((0, 0), (1, 0), 0.0)
    assert reflect_arc(z).bulge_area == 0.0


def test_reflect_negative_bulges_raises_area():
    c = MarkedCurve.from_nodes([(0, 0), (1, 0), (1, 1), (0, 1)], [-0.1, -0.05, -0.2, -0.02])
    r = c.with_bulges([abs(b) for b in c.bulges])
    assert abs(oriented_area(r) - oriented_area(c) - 2 * 0.37) < 1e-12


def test_secant_area_examples():
    sq = MarkedCurve.from_nodes([(0, 0), (1, 0), (1, 1), (0, 1)], [0.0, 0.3, 0.0, 0.0])
    assert secant_area(sq, 0, 1) == 0.0
    assert abs(secant_area(sq, 1, 2) - 0.3) < 1e-15
    assert abs(secant_area(two_arc_circle(), 0, 1) - math.pi / 2) < 1e-12


def test_half_disk_against_polyline():
    # oracle: sample the upper half of the unit circle and close it by the chord
    t = np.linspace(0.0, math.pi, 20001)
    xy = np.column_stack([np.cos(t), np.sin(t)])
    assert abs(abs(shoelace(xy)) - math.pi / 2) < 1e-7


def test_sigma_examples():
    assert sigma(regular_hexagon_curve()) == 0.0
    assert sigma(two_arc_circle()) == 1.0
    sq = MarkedCurve.from_nodes([(0, 0), (1, 0), (1, 1), (0, 1)], [0.1] * 4)
    assert abs(sigma(sq) - 0.4) < 1e-15


def test_sample_polyline_straight_hexagon():
    c = regular_hexagon_curve()
    pts = sample_polyline(c, 1e-3)
    assert len(pts) == 7 and pts[0] == pts[-1]


def test_sample_polyline_circle_area():
    pts = sample_polyline(two_arc_circle(), 1e-3)
    assert abs(shoelace([(p.x, p.y) for p in pts]) - math.pi) < 1e-2


def test_sampling_deviation_halves():
    seg = make_arc((0, 0), (1, 0), math.pi / 8)
    c = seg.center()
    r, _ = seg.radius_and_half_angle()

    def dev(tol):
        pts = seg.points(tol) + [seg.end]
        worst = 0.0
        for a, b in zip(pts[:-1], pts[1:]):
            m = Point(0.5 * (a.x + b.x), 0.5 * (a.y + b.y))
            worst = max(worst, r - math.hypot(m.x - c.x, m.y - c.y))
        return worst

    assert dev(5e-4) <= dev(1e-3) / 2 + 1e-15


def test_simplicity_examples():
    assert curve_is_simple(regular_hexagon_curve())
    h = regular_hexagon_curve()
    bulged = h.with_bulges([0.1, 0, 0, 0, 0, 0])
    assert curve_is_simple(bulged)
    # oracle: shapely agrees on the sampled polyline
    xy = [(p.x, p.y) for p in sample_polyline(bulged, 1e-4)]
    assert Polygon(xy).is_valid


def test_polyline_is_simple_touching():
    sq = np.array([(0, 0), (2, 0), (2, 2), (1, 0), (0, 2), (0, 0)], float)
    assert not polyline_is_simple(sq)


def test_polychain_nodes_and_gaps():
    p = PolyChainCurve.from_marked(regular_hexagon_curve())
    assert p.k == 6 and len(p.segments()) == 6


# property tests ---------------------------------------------------------------

bulge_ratio = st.floats(-0.9 * P_MAX, 0.9 * P_MAX)
coord = st.floats(-5.0, 5.0)


@given(coord, coord, coord, coord, st.floats(-3.0, 3.0))
def test_dido_and_reflection(x0, y0, x1, y1, r):
    if math.hypot(x1 - x0, y1 - y0) < 1e-3:
        return
    ell = math.hypot(x1 - x0, y1 - y0)
    a = make_arc((x0, y0), (x1, y1), r * ell * ell)
    assert a.length >= math.sqrt(2 * math.pi * abs(a.bulge_area)) * (1 - 1e-12)
    ra = reflect_arc(a)
    assert ra.length == a.length and ra.bulge_area == -a.bulge_area


def test_dido_equality_semicircle():
    a = make_arc((0, 0), (3, 0), math.pi * 9 / 8)
    assert abs(a.length - math.sqrt(2 * math.pi * a.bulge_area)) < 1e-9


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_area_matches_polyline_oracle(seed):
    c = random_polychain(np.random.default_rng(seed))
    # each chord of the sampling cuts off at most sagitta * chord, so the error is O(tol)
    for tol in (1e-3, 1e-4):
        pts = sample_polyline(c, tol)
        err = abs(oriented_area(c) - shoelace([(p.x, p.y) for p in pts]))
        assert err <= tol * curve_length(c)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_sigma_bound_and_secant_additivity(seed):
    rng = np.random.default_rng(seed)
    c = random_polychain(rng)
    assert abs(sigma(c)) <= c.k / 2
    if c.k < 3:
        return
    i, j, m = sorted(rng.choice(c.k, size=3, replace=False).tolist())
    n = c.nodes
    tri = shoelace([n[i].as_tuple(), n[j].as_tuple(), n[m].as_tuple()])
    lhs = secant_area(c, i, j) + secant_area(c, j, m) - secant_area(c, i, m)
    assert abs(lhs + tri) < 1e-12


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_area_is_shoelace_plus_bulges(seed):
    c = random_polychain(np.random.default_rng(seed))
    segs = c.segments()
    pts = [s.start.as_tuple() for s in segs]
    assert abs(oriented_area(c) - shoelace(pts) - sum(s.bulge_area for s in segs)) < 1e-12


def test_arc_center_on_bisector():
    a = make_arc((0, 0), (1, 0), 0.05)
    ctr = a.center()
    r, _ = a.radius_and_half_angle()
    assert abs(ctr.x - 0.5) < 1e-15
    assert abs(math.hypot(ctr.x, ctr.y) - r) < 1e-12
    # positive bulge puts the arc on the right of the chord, so the far side of the center
    mid = a.points(1e-3)[len(a.points(1e-3)) // 2]
    assert mid.y < 0


def test_arcsegment_straight():
    a = ArcSegment(Point(0, 0), Point(3, 4), 0.0)
    assert a.is_straight and a.length == 5.0
