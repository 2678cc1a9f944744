"""Length of a circular arc over a chord, as a function of the enclosed area.

``arc_len(ell, x)`` is the length of the circular arc that subtends a chord of
length ``ell`` and bounds, together with the chord, a region of area ``x``.
By scaling it reduces to ``arc1(q) = arc_len(1, q)``, which is evaluated
through the half-angle parametrization

    q = p(theta) = (theta - sin(theta) cos(theta)) / (4 sin(theta)**2)
    arc1(q) = theta / sin(theta)

valid for every theta in (0, pi): chords of length 2 R sin(theta) cover both
the minor-arc regime (theta < pi/2, q < pi/8) and the major-arc regime.
"""

from __future__ import annotations

import math

THETA_MAX = math.pi - 1e-6
SERIES_CUTOFF = 0.2  # below this the closed form loses digits to cancellation
BISECT_WIDTH = 1e-13
NEWTON_STEPS = 4
TAU_THETA = 1e-13


# Taylor coefficients of p and p' in theta; truncation error < 1e-16 below the cutoff
_P_COEF = (1 / 6, 1 / 45, 1 / 315, 2 / 4725, 1 / 18711, 1382 / 212837625, 2 / 2606175, 14468 / 162820783125)
_DP_COEF = (1 / 6, 1 / 15, 1 / 63, 2 / 675, 1 / 2079, 1382 / 19348875, 2 / 200475, 14468 / 10854718875)


def _horner(coef, t2: float) -> float:
    acc = 0.0
    for c in reversed(coef):
        acc = acc * t2 + c
    return acc


def _p_series(theta: float) -> float:
    return theta * _horner(_P_COEF, theta * theta)


def _dp_series(theta: float) -> float:
    return _horner(_DP_COEF, theta * theta)


def p_of_theta(theta: float) -> float:
    """Area-to-squared-chord ratio of a circular arc of half-angle ``theta``."""
    if not 0.0 <= theta < math.pi:
        raise ValueError(f"theta must lie in [0, pi), got {theta!r}")
    if theta < SERIES_CUTOFF:
        return _p_series(theta)
    s = math.sin(theta)
    return (theta - s * math.cos(theta)) / (4.0 * s * s)


def _dp_dtheta(theta: float) -> float:
    # d/dtheta of (theta - sin cos) / (4 sin^2) = (sin - theta cos) / (2 sin^3)
    if theta < SERIES_CUTOFF:
        return _dp_series(theta)
    s = math.sin(theta)
    return (s - theta * math.cos(theta)) / (2.0 * s * s * s)


P_MAX = p_of_theta(THETA_MAX)


def solve_theta(q: float) -> float:
    """Invert :func:`p_of_theta` by bisection followed by a short Newton polish."""
    if not q >= 0.0 or not math.isfinite(q):
        raise ValueError(f"area ratio must be finite and >= 0, got {q!r}")
    if q >= P_MAX:
        raise ValueError(f"area ratio {q!r} exceeds the near-full-circle cap {P_MAX:.6g}")
    if q == 0.0:
        return 0.0
    lo, hi = 0.0, THETA_MAX
    while hi - lo > BISECT_WIDTH:
        mid = 0.5 * (lo + hi)
        if p_of_theta(mid) < q:
            lo = mid
        else:
            hi = mid
    theta = 0.5 * (lo + hi)
    for _ in range(NEWTON_STEPS):
        r = p_of_theta(theta) - q
        if abs(r) <= TAU_THETA * max(1.0, q):
            break
        step = r / _dp_dtheta(theta)
        nxt = theta - step
        if not lo <= nxt <= hi:
            break
        theta = nxt
    return theta


def _theta_over_sin(theta: float) -> float:
    if theta < 1e-4:
        t2 = theta * theta
        return 1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0
    return theta / math.sin(theta)


def arc1(x: float) -> float:
    """Length of the arc over a unit chord enclosing area ``x``."""
    return _theta_over_sin(solve_theta(x))


def arc_len(ell: float, x: float) -> float:
    """Length of the arc over a chord of length ``ell`` enclosing area ``x``.

    ``ell = 0`` is the closed-curve limit, the isoperimetric profile
    ``2 sqrt(pi x)``.
    """
    if ell < 0.0 or x < 0.0:
        raise ValueError("arc_len needs ell >= 0 and x >= 0")
    if ell == 0.0:
        return 2.0 * math.sqrt(math.pi) * math.sqrt(x)
    return ell * arc1(x / (ell * ell))


def arc1_deriv(x: float) -> float:
    """Derivative of :func:`arc1`: the curvature of the arc over a unit chord.

    The radius of that arc is ``1 / (2 sin(theta))``, so the curvature is
    ``2 sin(theta)``.
    """
    return 2.0 * math.sin(solve_theta(x))


def arc_geometry(ell: float, x: float) -> tuple[float, float]:
    """Return ``(radius, half_angle)`` of the arc over chord ``ell`` with area ``x``.

    A straight segment (``x == 0``) has infinite radius and zero half-angle.
    """
    if ell <= 0.0:
        raise ValueError("chord length must be positive")
    theta = solve_theta(abs(x) / (ell * ell))
    if theta == 0.0:
        return math.inf, 0.0
    return ell / (2.0 * math.sin(theta)), theta
