"""The hexagonal isoperimetric functional and its reduction to arc curves.

For a marked curve with ``k`` nodes we use

    deficit  = L + T sigma - 2 T A
    epsilon  = a (k - 6) + T sigma - 2 T min(1, A)

with ``T = 12 ** 0.25``.  The reductions replace a general marked curve by
one made of single arcs, clamp very negative gaps, and then transfer secant
area between gaps of opposite sign; none of them increases ``L + epsilon``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .arcfn import P_MAX
from .geometry import (
    Curve,
    MarkedCurve,
    PolyChainCurve,
    curve_is_simple,
    curve_length,
    gap_areas,
    make_arc,
    oriented_area,
    sigma,
)

TWELVE4 = 12.0 ** 0.25
A_DEFAULT = 3.0 / 50.0
# smallest certified endpoint bound of the step-five ledger (f_{5,4}(1, 19/100) >= 1/1000)
C_DEFAULT = 1.0 / 1000.0
A3_DEFAULT = 0.01
MIN_AREA_SMALL_K = 1.0 / 100.0


@dataclass(frozen=True)
class HalesConstants:
    a: float = A_DEFAULT
    twelve4: float = TWELVE4
    c: float = C_DEFAULT
    a3: float = A3_DEFAULT
    a2: float = field(init=False)
    a1: float = field(init=False)

    def __post_init__(self):
        if not self.a < math.sqrt(math.pi) / 2.0 - 0.375 * self.twelve4:
            raise ValueError("a violates a < sqrt(pi)/2 - (3/8) 12^(1/4)")
        if self.c <= 0.0:
            raise ValueError("c must be positive")
        object.__setattr__(self, "a2", self.c / 8.0)
        object.__setattr__(self, "a1", self.a + self.c / 8.0)

    def with_a3(self, a3: float) -> "HalesConstants":
        return replace(self, a3=a3)


DEFAULT_CONSTANTS = HalesConstants()


@dataclass(frozen=True)
class FEval:
    k: int
    x: float
    y: float
    f1: float
    f2: float
    f3: float
    f4: float
    fk: float


def deficit(c: Curve, twelve4: float = TWELVE4) -> float:
    return curve_length(c) + twelve4 * sigma(c) - 2.0 * twelve4 * oriented_area(c)


def epsilon_fn(c: Curve, consts: HalesConstants = DEFAULT_CONSTANTS) -> float:
    t = consts.twelve4
    return consts.a * (c.k - 6) + t * sigma(c) - 2.0 * t * min(1.0, oriented_area(c))


def energy(c: Curve, consts: HalesConstants = DEFAULT_CONSTANTS) -> float:
    """``L + epsilon``, the quantity the reductions never increase."""
    return curve_length(c) + epsilon_fn(c, consts)


def g_k(k: int, x: float, y: float, consts: HalesConstants = DEFAULT_CONSTANTS) -> float:
    return consts.a * (k - 6) + consts.twelve4 * (y - 2.0 * min(1.0, x))


def f_terms(k: int, x: float, y: float, consts: HalesConstants = DEFAULT_CONSTANTS) -> FEval:
    if k < 2:
        raise ValueError("k must be at least 2")
    if x < 0.0:
        raise ValueError("x must be non-negative")
    g = g_k(k, x, y, consts)
    sp = math.sqrt(math.pi)
    f1 = g + 2.0 * math.sqrt(math.pi * x)
    f2 = g + 2.0 * math.sqrt(math.pi * (x + 2.0 * max(-y, 0.0)))
    f3 = g + 2.0 * sp * abs(y)
    f4 = g + 2.0 * math.sqrt(k * math.tan(math.pi / k)) * math.sqrt(max(x - y, 0.0))
    return FEval(k, x, y, f1, f2, f3, f4, max(f1, f2, f3, f4))


# reductions -----------------------------------------------------------------


def reduce_step_one(c: PolyChainCurve | MarkedCurve) -> MarkedCurve:
    """Replace every node gap by the single arc with the same secant area."""
    if isinstance(c, MarkedCurve):
        return c
    nodes = c.nodes
    areas = gap_areas(c)
    for i, x in enumerate(areas):
        p, q = nodes[i], nodes[(i + 1) % c.k]
        ell2 = (q.x - p.x) ** 2 + (q.y - p.y) ** 2
        if ell2 == 0.0 or abs(x) / ell2 >= P_MAX:
            raise ValueError(f"gap {i} cannot be replaced by a single arc")
    return MarkedCurve.from_nodes(nodes, areas)


def reduce_step_two(c: MarkedCurve) -> MarkedCurve:
    """Flatten gaps with secant area below -1/2 to exactly -1/2."""
    bulges = c.bulges
    if all(b >= -0.5 for b in bulges):
        return c
    return c.with_bulges([max(b, -0.5) for b in bulges])


def _transfer(areas: list[float]) -> list[float]:
    out = list(areas)
    while True:
        pos = [i for i, v in enumerate(out) if 0.0 < v <= 0.5]
        neg = [i for i, v in enumerate(out) if -0.5 <= v < 0.0]
        if not pos or not neg:
            return out
        i = min(pos, key=lambda m: (out[m], m))
        j = min(neg, key=lambda m: (out[m], m))
        beta = out[i] + out[j]
        if beta >= 0.0:
            out[i], out[j] = beta, 0.0
        else:
            out[i], out[j] = 0.0, beta


def reduce_step_three(c: MarkedCurve) -> MarkedCurve:
    """Pairwise transfer until the gaps with ``|A_i| <= 1/2`` share one sign."""
    bulges = c.bulges
    if any(b < -0.5 for b in bulges):
        raise ValueError("step three needs every secant area >= -1/2")
    out = _transfer(bulges)
    if out == bulges:
        return c
    return c.with_bulges(out)


def canonicalize(c: PolyChainCurve | MarkedCurve) -> MarkedCurve:
    return reduce_step_three(reduce_step_two(reduce_step_one(c)))


def same_sign_property(c: MarkedCurve) -> bool:
    """Either every clamped-range secant area is >= 0 or every one is <= 0."""
    inner = [b for b in c.bulges if abs(b) <= 0.5]
    return all(b >= 0.0 for b in inner) or all(b <= 0.0 for b in inner)


# quantitative form -----------------------------------------------------------


def a3_of_k(k: int, consts: HalesConstants) -> float:
    return consts.a3 if k == 6 else 0.0


def quantitative_gap(
    c: MarkedCurve,
    consts: HalesConstants = DEFAULT_CONSTANTS,
    dhex: float | None = None,
    check_simple: bool = True,
) -> float:
    """``L + a1 (k-6) + T sigma - 2 T A - a2 |k-6| - a3(k) (d_hex^2 + 1 - A)``.

    ``dhex`` may be supplied to skip the shape fit.
    """
    area = oriented_area(c)
    k = c.k
    if area > 1.0 + 1e-12:
        raise ValueError(f"area {area!r} exceeds 1")
    if 2 <= k <= 6 and area < MIN_AREA_SMALL_K:
        raise ValueError(f"area {area!r} below 1/100 with k = {k}")
    if check_simple and not curve_is_simple(c):
        raise ValueError("curve is not simple")
    a3 = a3_of_k(k, consts)
    if dhex is None:
        if a3 == 0.0:
            dhex = 0.0
        else:
            from .hexfit import Region, d_hex

            dhex = d_hex(Region.from_curve(c)).sym_diff
    t = consts.twelve4
    return (
        curve_length(c)
        + consts.a1 * (k - 6)
        + t * sigma(c)
        - 2.0 * t * area
        - consts.a2 * abs(k - 6)
        - a3 * (dhex * dhex + (1.0 - area))
    )


def estimate_a3(curves, consts: HalesConstants = DEFAULT_CONSTANTS) -> float:
    """Largest a3 keeping the hexagonal (k = 6) gap non-negative on ``curves``.

    Curves with a vanishing normalizer are skipped.  Returns ``inf`` when no
    curve constrains the constant.
    """
    from .hexfit import Region, d_hex

    best = math.inf
    base = consts.with_a3(0.0)
    for c in curves:
        if c.k != 6:
            continue
        dh = d_hex(Region.from_curve(c)).sym_diff
        norm = dh * dh + (1.0 - oriented_area(c))
        if norm <= 1e-12:
            continue
        best = min(best, quantitative_gap(c, base, dhex=dh, check_simple=False) / norm)
    return best
