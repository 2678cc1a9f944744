"""Rigorous checks of the scalar inequalities behind the hexagonal functional.

Each ledger entry is an *atom*: one inequality between a closed-form
expression and a rational bound.  The expression is evaluated in interval
arithmetic, so a ``certified`` status means the claimed side holds for the
exact real numbers, and ``refuted`` means the opposite side holds.

A few entries of the source ledger are false as stated (the enclosures
prove it).  They are kept verbatim, so their failure stays visible, and each
one is followed by a ``.s`` atom carrying the weaker bound that the
downstream argument actually needs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Callable

import numpy as np

from .arcfn import arc1
from .hales import A_DEFAULT, HalesConstants
from .interval import Interval, imin, ipi, isqrt, itan, iroot4

CERTIFIED = "certified"
REFUTED = "refuted"
HEURISTIC_PASS = "heuristic-pass"
HEURISTIC_FAIL = "heuristic-fail"

# ids of the source ledger; every one must be covered by at least one atom
LEDGER_MANIFEST = tuple(f"L{i}" for i in range(1, 21))


@dataclass(frozen=True)
class CheckResult:
    id: str
    claim: str
    status: str
    enclosure: Interval
    margin: float

    @property
    def ok(self) -> bool:
        return self.status in (CERTIFIED, HEURISTIC_PASS)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "claim": self.claim,
            "status": self.status,
            "enclosure": [self.enclosure.lo, self.enclosure.hi],
            "margin": self.margin,
        }


# interval building blocks ------------------------------------------------------


class Env:
    """Interval constants shared by the ledger expressions."""

    def __init__(self, a: Q = Q(3, 50)):
        self.pi = ipi()
        self.sqrt_pi = isqrt(self.pi)
        self.t = iroot4(Interval.exact(12))  # 12^(1/4)
        self.sqrt12 = isqrt(Interval.exact(12))
        self.a = Interval.exact(a)
        self.a_exact = a

    def g(self, k: int, x: Q, y: Q) -> Interval:
        return self.a * (k - 6) + self.t * (Interval.exact(y) - 2 * Interval.exact(min(Q(1), x)))

    def f1(self, k: int, x: Q, y: Q) -> Interval:
        return self.g(k, x, y) + 2 * isqrt(self.pi * x)

    def f2(self, k: int, x: Q, y: Q) -> Interval:
        return self.g(k, x, y) + 2 * isqrt(self.pi * (x + 2 * max(-y, Q(0))))

    def f3(self, k: int, x: Q, y: Q) -> Interval:
        return self.g(k, x, y) + 2 * self.sqrt_pi * abs(y)

    def ktan(self, k: int) -> Interval:
        return k * itan(self.pi / k)

    def f4(self, k: int, x: Q, y: Q) -> Interval:
        return self.g(k, x, y) + 2 * isqrt(self.ktan(k)) * isqrt(Interval.exact(max(x - y, Q(0))))

    def _disc(self, k: int) -> Interval:
        return self.pi + self.a * (k - 6) * 2 * self.t

    def z(self, k: int) -> Interval:
        num = self.pi + self.a * (k - 6) * self.t + self.sqrt_pi * isqrt(self._disc(k))
        return num / (2 * self.sqrt12)

    def y(self, k: int) -> Interval:
        num = self.pi + self.a * (k - 6) * self.t - self.sqrt_pi * isqrt(self._disc(k))
        return num / (2 * self.sqrt12)


@dataclass(frozen=True)
class Atom:
    id: str
    claim: str
    expr: Callable[[Env], Interval]
    op: str  # one of "<", "<=", ">", ">=", "in"
    bound: object  # rational, or (lo, hi) for "in"


def _judge(atom: Atom, val: Interval) -> tuple[str, float]:
    if atom.op == "in":
        lo, hi = atom.bound
        d_lo = val - Interval.exact(lo)
        d_hi = Interval.exact(hi) - val
        margin = min(d_lo.lo, d_hi.lo)
        if margin > 0.0:
            return CERTIFIED, margin
        if d_lo.hi <= 0.0 or d_hi.hi <= 0.0:
            return REFUTED, margin
        return HEURISTIC_FAIL, margin
    b = Interval.exact(atom.bound)
    # d is the slack on the claimed side; positive means the claim holds
    d = (b - val) if atom.op in ("<", "<=") else (val - b)
    strict = atom.op in ("<", ">")
    if d.lo > 0.0 or (not strict and d.lo >= 0.0 and d.hi == 0.0):
        return CERTIFIED, d.lo
    if d.hi < 0.0 or (strict and d.hi <= 0.0):
        return REFUTED, d.lo
    return (HEURISTIC_PASS if d.mid > 0.0 else HEURISTIC_FAIL), d.lo


def evaluate_atom(atom: Atom, env: Env) -> CheckResult:
    val = atom.expr(env)
    status, margin = _judge(atom, val)
    return CheckResult(atom.id, atom.claim, status, val, margin)


# exact identities ----------------------------------------------------------------


class LinearForm:
    """Rational combination of the symbols sqrt(pi), 12^(1/4), a and 1."""

    def __init__(self, coeffs: dict[str, Q]):
        self.coeffs = {s: Q(v) for s, v in coeffs.items() if v != 0}

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        keys = set(self.coeffs) | set(other.coeffs)
        return LinearForm({s: self.coeffs.get(s, Q(0)) - other.coeffs.get(s, Q(0)) for s in keys})

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_interval(self, env: Env) -> Interval:
        sym = {"sqrt_pi": env.sqrt_pi, "t": env.t, "a": env.a, "1": Interval(1.0)}
        out = Interval(0.0)
        for s in sorted(self.coeffs):
            out = out + sym[s] * Interval.exact(self.coeffs[s])
        return out


def _rational_sqrt(q: Q) -> Q:
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n != q.numerator or d * d != q.denominator:
        raise ValueError(f"{q} is not a rational square")
    return Q(n, d)


def step_four_f(z: Q) -> LinearForm:
    # (2 sqrt(pi) - T) z + (sqrt(pi) - 3/2 T) - 4 a
    return LinearForm({"sqrt_pi": 2 * z + 1, "t": -z - Q(3, 2), "a": Q(-4)})


def step_four_g(z: Q) -> LinearForm:
    # 2 sqrt(pi) sqrt(1 + 2 z) - T z - 3/2 T - 4 a, for 1 + 2 z a rational square
    r = _rational_sqrt(1 + 2 * z)
    return LinearForm({"sqrt_pi": 2 * r, "t": -z - Q(3, 2), "a": Q(-4)})


def _l3_identity(env: Env) -> CheckResult:
    z = Q(3, 2)
    diff = step_four_f(z) - step_four_g(z)
    val = step_four_f(z).to_interval(env)
    if diff.is_zero():
        return CheckResult("L3.a", "f(3/2) = g(3/2) (exact symbolic identity)", CERTIFIED, val, 0.0)
    return CheckResult("L3.a", "f(3/2) = g(3/2) (exact symbolic identity)", REFUTED, val, -math.inf)


def _l20_monotone(env: Env) -> CheckResult:
    """d y_t / dt = a T (t - 6) w(t) with w > 0 on [2, 6] makes t -> y_t decreasing."""
    t_rng = Interval(2.0, 6.0)
    u = env.pi + 2 * env.a * env.t * (t_rng - 6)
    if u.lo <= 0.0:
        return CheckResult("L20", "y_t decreasing on [2, 6]", REFUTED, u, u.lo)
    su = isqrt(u)
    w = 2 * env.a * env.t / (2 * env.sqrt12 * su * (su + env.sqrt_pi))
    claim = "t -> y_t is decreasing on [2, 6]: dy/dt = a T (t - 6) w(t) with w > 0"
    status = CERTIFIED if w.lo > 0.0 else REFUTED
    return CheckResult("L20", claim, status, w, w.lo)


# the ledger ------------------------------------------------------------------------


def _atoms() -> list[Atom]:
    A: list[Atom] = []

    def add(id_, claim, expr, op, bound):
        A.append(Atom(id_, claim, expr, op, bound))

    add("L1", "sqrt(pi)/2 - (3/8) 12^(1/4) > a = 3/50",
        lambda e: e.sqrt_pi / 2 - Interval.exact(Q(3, 8)) * e.t, ">", Q(3, 50))
    add("L2", "c(a) = 2 sqrt(pi) - (3/2) 12^(1/4) - 4a > 0",
        lambda e: 2 * e.sqrt_pi - Interval.exact(Q(3, 2)) * e.t - 4 * e.a, ">", Q(0))
    add("L3.b", "f(3/2) = 4 sqrt(pi) - 3 12^(1/4) - 4a >= 7/10",
        lambda e: 4 * e.sqrt_pi - 3 * e.t - 4 * e.a, ">=", Q(7, 10))
    add("L3.c", "4 sqrt(pi) - 3 12^(1/4) - 4a >= 2 sqrt(pi) - (3/2) 12^(1/4)",
        lambda e: (4 * e.sqrt_pi - 3 * e.t - 4 * e.a) - (2 * e.sqrt_pi - Interval.exact(Q(3, 2)) * e.t), ">=", Q(0))
    add("L3.d", "2 sqrt(pi) - (3/2) 12^(1/4) >= 7/10",
        lambda e: 2 * e.sqrt_pi - Interval.exact(Q(3, 2)) * e.t, ">=", Q(7, 10))

    def h(e, x):
        return 2 * isqrt(e.pi * x) - e.t * x - Interval.exact(Q(6, 25))

    add("L4.a", "h(1) > 9/100, h(x) = 2 sqrt(pi x) - 12^(1/4) x - 6/25", lambda e: h(e, Q(1)), ">", Q(9, 100))
    add("L4.b", "h(1/100) > 9/100", lambda e: h(e, Q(1, 100)), ">", Q(9, 100))
    add("L5.a", "(2 12^(1/4) + 9/50) / (2 sqrt(pi) + 12^(1/4)) < 4/5",
        lambda e: (2 * e.t + Interval.exact(Q(9, 50))) / (2 * e.sqrt_pi + e.t), "<", Q(4, 5))
    add("L5.b", "(2 12^(1/4) + 9/50) / (2 sqrt(pi) - 12^(1/4)) < 5/2",
        lambda e: (2 * e.t + Interval.exact(Q(9, 50))) / (2 * e.sqrt_pi - e.t), "<", Q(5, 2))
    add("L6", "2 sqrt(6 pi) - (5/2) 12^(1/4) - 2 sqrt(pi) > 2/5",
        lambda e: 2 * isqrt(6 * e.pi) - Interval.exact(Q(5, 2)) * e.t - 2 * e.sqrt_pi, ">", Q(2, 5))
    add("L7", "4 pi - (36/25) 12^(1/4) > 9",
        lambda e: 4 * e.pi - Interval.exact(Q(36, 25)) * e.t, ">", Q(9))
    add("L8.a", "z_9 > 1", lambda e: e.z(9), ">", Q(1))
    add("L8.b", "z_6 = pi / sqrt(12) > 9/10", lambda e: e.pi / e.sqrt12, ">", Q(9, 10))
    add("L8.c", "z_3 > 4/5", lambda e: e.z(3), ">", Q(4, 5))
    add("L8.d", "y_3 < 1/500", lambda e: e.y(3), "<", Q(1, 500))
    add("L8.s", "y_3 < 1/100 (bound used downstream)", lambda e: e.y(3), "<", Q(1, 100))
    add("L9", "sqrt(2 pi) - 2 12^(1/4) < -1", lambda e: isqrt(2 * e.pi) - 2 * e.t, "<", Q(-1))
    add("L10.a", "f_{7,2}(1, -5/2) >= 3/10", lambda e: e.f2(7, Q(1), Q(-5, 2)), ">=", Q(3, 10))
    add("L10.b", "f_{7,2}(1, -1/10) >= 3/100", lambda e: e.f2(7, Q(1), Q(-1, 10)), ">=", Q(3, 100))
    add("L10.c", "f_{7,2}(1, 0) < 0", lambda e: e.f2(7, Q(1), Q(0)), "<", Q(0))
    add("L11.a", "f_{7,1}(9/10, 1/10) >= 1/4", lambda e: e.f1(7, Q(9, 10), Q(1, 10)), ">=", Q(1, 4))
    add("L11.b", "f_{7,1}(1, 1/10) >= 3/50", lambda e: e.f1(7, Q(1), Q(1, 10)), ">=", Q(3, 50))
    add("L12.a", "sqrt(7 tan(pi/7) / (8/10)) - 2 12^(1/4) < -1",
        lambda e: isqrt(e.ktan(7) / Interval.exact(Q(8, 10))) - 2 * e.t, "<", Q(-1))
    add("L12.b", "sqrt(3 tan(pi/3) / (3/5)) - 2 12^(1/4) <= -4/5",
        lambda e: isqrt(e.ktan(3) / Interval.exact(Q(3, 5))) - 2 * e.t, "<=", Q(-4, 5))
    add("L12.s", "sqrt(3 tan(pi/3) / (3/5)) - 2 12^(1/4) < 0 (monotonicity used downstream)",
        lambda e: isqrt(e.ktan(3) / Interval.exact(Q(3, 5))) - 2 * e.t, "<", Q(0))
    add("L13.a", "f_{7,4}(1, -1/10) >= 1/500", lambda e: e.f4(7, Q(1), Q(-1, 10)), ">=", Q(1, 500))
    add("L13.b", "f_{7,4}(1, 1/10) >= 7/1000", lambda e: e.f4(7, Q(1), Q(1, 10)), ">=", Q(7, 1000))
    add("L13.c", "f_{8,4}(1, -1/10) >= 1/50", lambda e: e.f4(8, Q(1), Q(-1, 10)), ">=", Q(1, 50))
    add("L13.d", "f_{8,4}(1, 1/10) >= 3/100", lambda e: e.f4(8, Q(1), Q(1, 10)), ">=", Q(3, 100))
    add("L14.a", "f_{3,2}(1, -5/2) > 1/10", lambda e: e.f2(3, Q(1), Q(-5, 2)), ">", Q(1, 10))
    add("L14.b", "f_{3,2}(1, -3/10) > 1/50", lambda e: e.f2(3, Q(1), Q(-3, 10)), ">", Q(1, 50))
    add("L15.a", "f_{3,4}(1, -3/10) >= 7/10", lambda e: e.f4(3, Q(1), Q(-3, 10)), ">=", Q(7, 10))
    add("L15.b", "f_{3,4}(1, 1/5) >= 1/2", lambda e: e.f4(3, Q(1), Q(1, 5)), ">=", Q(1, 2))
    add("L15.c", "f_{4,4}(1, -3/10) >= 1/10", lambda e: e.f4(4, Q(1), Q(-3, 10)), ">=", Q(1, 10))
    add("L15.d", "f_{4,4}(1, 1/5) >= 1/10", lambda e: e.f4(4, Q(1), Q(1, 5)), ">=", Q(1, 10))
    add("L15.e", "f_{5,4}(1, 1/5) < 0", lambda e: e.f4(5, Q(1), Q(1, 5)), "<", Q(0))
    add("L15.f", "f_{5,4}(1, -3/10) >= 1/200", lambda e: e.f4(5, Q(1), Q(-3, 10)), ">=", Q(1, 200))
    add("L15.g", "f_{5,4}(1, 19/100) >= 1/1000", lambda e: e.f4(5, Q(1), Q(19, 100)), ">=", Q(1, 1000))
    add("L16.a", "f_{3,1}(4/5, 1/5) >= 3/10", lambda e: e.f1(3, Q(4, 5), Q(1, 5)), ">=", Q(3, 10))
    add("L16.b", "f_{3,1}(1, 1/5) >= 1/100", lambda e: e.f1(3, Q(1), Q(1, 5)), ">=", Q(1, 100))
    add("L16.c", "f_{4,1}(4/5, 1/5) >= 2/5", lambda e: e.f1(4, Q(4, 5), Q(1, 5)), ">=", Q(2, 5))
    add("L16.d", "f_{4,1}(1, 1/5) >= 7/100", lambda e: e.f1(4, Q(1), Q(1, 5)), ">=", Q(7, 100))
    add("L16.e", "f_{5,1}(4/5, 19/100) >= 2/5", lambda e: e.f1(5, Q(4, 5), Q(19, 100)), ">=", Q(2, 5))
    add("L16.f", "f_{5,1}(1, 19/100) >= 1/10", lambda e: e.f1(5, Q(1), Q(19, 100)), ">=", Q(1, 10))
    add("L17", "c_0 = (sqrt(2 pi) - 12^(1/4)) / (2 sqrt(2 pi)) > 0",
        lambda e: (isqrt(2 * e.pi) - e.t) / (2 * isqrt(2 * e.pi)), ">", Q(0))
    add("L18", "3 / 12^(1/4) > 2 12^(1/4) / 8", lambda e: 3 / e.t - 2 * e.t / 8, ">", Q(0))
    add("L19.a", "K_0 = sqrt(pi) - 3^(1/4) / sqrt(2) in (0.84, 0.85)",
        lambda e: e.sqrt_pi - iroot4(Interval.exact(3)) / isqrt(Interval.exact(2)), "in", (Q(84, 100), Q(85, 100)))
    add("L19.b", "M_0 = pi / sqrt(3 sqrt(3) / 2) in (1.94, 1.96)",
        lambda e: e.pi / isqrt(3 * isqrt(Interval.exact(3)) / 2), "in", (Q(194, 100), Q(196, 100)))
    return A


ATOMS = _atoms()

# atoms whose bound enters the step-five constant c as a lower bound on f
STEP_FIVE_LOWER_BOUNDS = (
    "L4.a", "L4.b", "L6", "L10.a", "L10.b", "L11.a", "L11.b", "L13.a", "L13.b", "L13.c", "L13.d",
    "L14.a", "L14.b", "L15.a", "L15.b", "L15.c", "L15.d", "L15.f", "L15.g",
    "L16.a", "L16.b", "L16.c", "L16.d", "L16.e", "L16.f",
)


def _sort_key(rid: str) -> tuple:
    head, _, tail = rid.partition(".")
    return (int(head[1:]), tail)


def check_scalar_ledger(a: Q = Q(3, 50), overrides: dict[str, Q] | None = None) -> list[CheckResult]:
    """Evaluate every ledger atom.  ``overrides`` replaces atom bounds (a test hook)."""
    env = Env(a)
    out = [_l3_identity(env), _l20_monotone(env)]
    for atom in ATOMS:
        if overrides and atom.id in overrides:
            atom = Atom(atom.id, atom.claim + " [bound overridden]", atom.expr, atom.op, overrides[atom.id])
        out.append(evaluate_atom(atom, env))
    out.sort(key=lambda r: _sort_key(r.id))
    return out


def ledger_ids(results: list[CheckResult]) -> set[str]:
    return {r.id.partition(".")[0] for r in results}


def working_c(results: list[CheckResult]) -> float:
    """Smallest certified step-five lower bound, the constant c of the reduced claim."""
    by_id = {r.id: r for r in results}
    bounds = []
    for rid in STEP_FIVE_LOWER_BOUNDS:
        r = by_id.get(rid)
        if r is None or r.status != CERTIFIED:
            continue
        atom = next(x for x in ATOMS if x.id == rid)
        bounds.append(float(atom.bound))
    c_a = by_id.get("L2")
    if c_a is not None and c_a.status == CERTIFIED:
        bounds.append(c_a.enclosure.lo)
    return min(bounds) if bounds else 0.0


def certified_constants(results: list[CheckResult] | None = None) -> HalesConstants:
    results = check_scalar_ledger() if results is None else results
    return HalesConstants(a=A_DEFAULT, c=working_c(results))


def min_certified_margin(results: list[CheckResult]) -> float:
    m = [r.margin for r in results if r.status == CERTIFIED and r.margin > 0.0]
    return min(m) if m else 0.0


# heuristic scans -------------------------------------------------------------------


def fk_grid(k: int, x: np.ndarray, y: np.ndarray, a: float = A_DEFAULT) -> np.ndarray:
    t = 12.0 ** 0.25
    g = a * (k - 6) + t * (y - 2.0 * np.minimum(1.0, x))
    f1 = g + 2.0 * np.sqrt(np.pi * x)
    f2 = g + 2.0 * np.sqrt(np.pi * (x + 2.0 * np.maximum(-y, 0.0)))
    f3 = g + 2.0 * np.sqrt(np.pi) * np.abs(y)
    f4 = g + 2.0 * math.sqrt(k * math.tan(math.pi / k)) * np.sqrt(np.maximum(x - y, 0.0))
    return np.maximum(np.maximum(f1, f2), np.maximum(f3, f4))


def scan_infimum(k: int, x_range: Interval, y_range: Interval, grid: int, lip: float = 0.0) -> CheckResult:
    """Grid minimum of f_k over a box; with ``lip > 0`` a Lipschitz lower bound."""
    if grid < 2:
        raise ValueError("grid must be at least 2")
    if lip < 0.0:
        raise ValueError("lip must be non-negative")
    xs = np.linspace(x_range.lo, x_range.hi, grid)
    ys = np.linspace(y_range.lo, y_range.hi, grid)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    vals = fk_grid(k, X, Y)
    m = float(vals.min())
    claim = f"inf f_{k} over [{x_range.lo!r}, {x_range.hi!r}] x [{y_range.lo!r}, {y_range.hi!r}] > 0"
    rid = f"scan.k{k}"
    if lip > 0.0:
        diag = math.hypot(x_range.width, y_range.width)
        lb = m - lip * diag / (grid - 1)
        status = CERTIFIED if lb > 0.0 else HEURISTIC_FAIL
        return CheckResult(rid, claim + f" (Lipschitz {lip!r})", status, Interval(min(lb, m), m), lb)
    status = HEURISTIC_PASS if m > 0.0 else HEURISTIC_FAIL
    return CheckResult(rid, claim, status, Interval(m), m)


def default_scans(grid: int) -> list[CheckResult]:
    """Corroborating scans of the step-five two-variable infima."""
    boxes = [
        (9, Interval(0.0, 1.0), Interval(-2.5, 0.8)),
        (7, Interval(0.9, 1.0), Interval(-2.5, 0.8)),
        (8, Interval(0.9, 1.0), Interval(-2.5, 0.8)),
        (3, Interval(0.8, 1.0), Interval(-2.5, 0.8)),
        (4, Interval(0.8, 1.0), Interval(-2.5, 0.8)),
        (5, Interval(0.8, 1.0), Interval(-2.5, 0.8)),
    ]
    out = []
    for k, xr, yr in boxes:
        r = scan_infimum(k, xr, yr, grid)
        out.append(CheckResult(f"{r.id}.x{xr.lo:g}", r.claim, r.status, r.enclosure, r.margin))
    return out


# arc coercivity --------------------------------------------------------------------------


def fit_arc_coercivity(x_max: float, grid: int = 4001) -> float:
    """Smallest C with arc1(x) >= 1 + 6 x^2 - C x^3 on (0, x_max], grid plus local refine."""
    if not 0.0 < x_max <= 0.5:
        raise ValueError("x_max must lie in (0, 1/2]")
    from scipy.optimize import minimize_scalar

    def ratio(x: float) -> float:
        return (1.0 + 6.0 * x * x - arc1(x)) / (x ** 3)

    # ratio is ill-conditioned near 0, where the residual is O(x^4); start the grid away from it
    xs = np.linspace(x_max / grid, x_max, grid)
    vals = np.array([ratio(float(x)) for x in xs])
    i = int(np.argmax(vals))
    best = float(vals[i])
    lo, hi = float(xs[max(i - 1, 0)]), float(xs[min(i + 1, grid - 1)])
    if hi > lo:
        r = minimize_scalar(lambda x: -ratio(x), bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
        best = max(best, -float(r.fun))
    return max(best, 0.0) * (1.0 + 1e-9) + 1e-12


# certificate ----------------------------------------------------------------------------------


def certificate(results: list[CheckResult], scans: list[CheckResult] | None = None) -> dict:
    ledger_ok = all(r.status == CERTIFIED for r in results)
    return {
        "kind": "hexakit-certificate",
        "version": 1,
        "all_certified": ledger_ok,
        "certified_count": sum(r.status == CERTIFIED for r in results),
        "working_c": working_c(results),
        "checks": [r.to_json() for r in results],
        "scans": [r.to_json() for r in (scans or [])],
    }


def certificate_json(results: list[CheckResult], scans: list[CheckResult] | None = None) -> str:
    return json.dumps(certificate(results, scans), indent=2, sort_keys=False) + "\n"
