"""Planar cluster geometry, hexagonal isoperimetry and its certified constants."""

from .arcfn import arc1, arc1_deriv, arc_len, p_of_theta, solve_theta
from .geometry import (
    ArcSegment,
    MarkedCurve,
    Point,
    PolyChainCurve,
    curve_is_simple,
    curve_length,
    make_arc,
    oriented_area,
    reflect_arc,
    sample_polyline,
    secant_area,
    sigma,
)

__version__ = "0.1.0"

__all__ = [
    "ArcSegment",
    "MarkedCurve",
    "Point",
    "PolyChainCurve",
    "arc1",
    "arc1_deriv",
    "arc_len",
    "curve_is_simple",
    "curve_length",
    "make_arc",
    "oriented_area",
    "p_of_theta",
    "reflect_arc",
    "sample_polyline",
    "secant_area",
    "sigma",
    "solve_theta",
]
