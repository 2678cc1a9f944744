"""Outward-rounded interval arithmetic on doubles.

Every primitive operation computes the float result(s) and then widens the
enclosure by ``ULPS`` units in the last place on each side.  The libm
functions used here (sqrt, sin, cos, tan) are accurate to well under one ulp
on the platforms we target, so the widening absorbs both their error and the
rounding of the float operation itself.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

ULPS = 4

Number = Union[int, float, Fraction]


def _down(x: float, n: int = ULPS) -> float:
    for _ in range(n):
        x = math.nextafter(x, -math.inf)
    return x


def _up(x: float, n: int = ULPS) -> float:
    for _ in range(n):
        x = math.nextafter(x, math.inf)
    return x


class Interval:
    __slots__ = ("lo", "hi")

    def __init__(self, lo: float, hi: float | None = None):
        lo = float(lo)
        hi = lo if hi is None else float(hi)
        if math.isnan(lo) or math.isnan(hi) or lo > hi:
            raise ValueError(f"invalid interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    # constructors ---------------------------------------------------------

    @classmethod
    def exact(cls, q: Number) -> "Interval":
        """Enclosure of an exact rational number."""
        if isinstance(q, int) and abs(q) < 2**53:
            return cls(float(q))
        f = float(q)
        if Fraction(f) == Fraction(q):
            return cls(f)
        return cls(_down(f, 1), _up(f, 1))

    @classmethod
    def hull(cls, *xs: "Interval") -> "Interval":
        return cls(min(x.lo for x in xs), max(x.hi for x in xs))

    @staticmethod
    def _coerce(x) -> "Interval":
        return x if isinstance(x, Interval) else Interval.exact(x)

    # queries ----------------------------------------------------------------

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __contains__(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def __repr__(self) -> str:
        return f"Interval({self.lo!r}, {self.hi!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Interval) and self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    # arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "Interval":
        o = Interval._coerce(other)
        return Interval(_down(self.lo + o.lo), _up(self.hi + o.hi))

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other) -> "Interval":
        o = Interval._coerce(other)
        return Interval(_down(self.lo - o.hi), _up(self.hi - o.lo))

    def __rsub__(self, other) -> "Interval":
        return Interval._coerce(other) - self

    def __mul__(self, other) -> "Interval":
        o = Interval._coerce(other)
        p = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(_down(min(p)), _up(max(p)))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Interval":
        o = Interval._coerce(other)
        if o.lo <= 0.0 <= o.hi:
            raise ZeroDivisionError("interval divisor contains zero")
        q = (self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi)
        return Interval(_down(min(q)), _up(max(q)))

    def __rtruediv__(self, other) -> "Interval":
        return Interval._coerce(other) / self

    def __pow__(self, n: int) -> "Interval":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        out = Interval(1.0)
        for _ in range(n):
            out = out * self
        if n % 2 == 0 and self.lo < 0.0 < self.hi:
            out = Interval(0.0, out.hi)
        return out

    def __abs__(self) -> "Interval":
        if self.lo >= 0.0:
            return self
        if self.hi <= 0.0:
            return -self
        return Interval(0.0, max(-self.lo, self.hi))

    def pos_part(self) -> "Interval":
        return Interval(max(self.lo, 0.0), max(self.hi, 0.0))

    def neg_part(self) -> "Interval":
        return Interval(max(-self.hi, 0.0), max(-self.lo, 0.0))


def imin(a: Interval, b: Interval) -> Interval:
    return Interval(min(a.lo, b.lo), min(a.hi, b.hi))


def imax(a: Interval, b: Interval) -> Interval:
    return Interval(max(a.lo, b.lo), max(a.hi, b.hi))


def isqrt(x: Interval) -> Interval:
    if x.lo < 0.0:
        raise ValueError(f"sqrt of interval with negative part {x!r}")
    lo = 0.0 if x.lo == 0.0 else max(0.0, _down(math.sqrt(x.lo)))
    return Interval(lo, _up(math.sqrt(x.hi)))


def ipi() -> Interval:
    # math.pi is the double just below pi
    return Interval(math.pi, math.nextafter(math.pi, math.inf))


def _contains_point(x: Interval, offset: float, period_mult: float) -> bool:
    """Conservatively test whether ``x`` may contain ``offset * pi + 2 pi m``."""
    p = ipi()
    # m ranges over the integers that could be hit
    m_lo = math.floor((x.lo / p.hi - offset) / period_mult) - 1
    m_hi = math.ceil((x.hi / p.lo - offset) / period_mult) + 1
    for m in range(m_lo, m_hi + 1):
        t = (Interval.exact(offset) + Interval.exact(period_mult * m)) * p
        if t.hi >= x.lo and t.lo <= x.hi:
            return True
    return False


def isin(x: Interval) -> Interval:
    if x.width >= 7.0:
        return Interval(-1.0, 1.0)
    a, b = math.sin(x.lo), math.sin(x.hi)
    lo, hi = _down(min(a, b)), _up(max(a, b))
    if _contains_point(x, 0.5, 2.0):
        hi = 1.0
    if _contains_point(x, -0.5, 2.0):
        lo = -1.0
    return Interval(max(lo, -1.0), min(hi, 1.0))


def icos(x: Interval) -> Interval:
    if x.width >= 7.0:
        return Interval(-1.0, 1.0)
    a, b = math.cos(x.lo), math.cos(x.hi)
    lo, hi = _down(min(a, b)), _up(max(a, b))
    if _contains_point(x, 0.0, 2.0):
        hi = 1.0
    if _contains_point(x, 1.0, 2.0):
        lo = -1.0
    return Interval(max(lo, -1.0), min(hi, 1.0))


def itan(x: Interval) -> Interval:
    """tan on a sub-interval of (-pi/2, pi/2), where it is increasing."""
    half = ipi() / 2
    if not (x.lo > -half.lo and x.hi < half.lo):
        raise ValueError(f"tan enclosure needs an interval inside (-pi/2, pi/2), got {x!r}")
    return Interval(_down(math.tan(x.lo)), _up(math.tan(x.hi)))


def iroot4(x: Interval) -> Interval:
    return isqrt(isqrt(x))
