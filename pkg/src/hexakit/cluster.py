"""Planar clusters: chambers made of cells bounded by loops of arc edges.

The stored ("raw") form is what the file format holds: single-arc edges
between vertices, cells as loops of ``(edge, orientation)`` pairs, chambers as
lists of cells.  On construction, runs of raw edges joined at degree-2
vertices are merged into edge chains; all counts of edges ``k`` refer to the
merged form.  A closed run with no branch vertex at all keeps its lowest-id
vertex as an anchor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .geometry import (
    ArcSegment,
    Point,
    PolyChainCurve,
    curve_is_simple,
    curve_length,
    oriented_area,
)

TWELVE4 = 12.0 ** 0.25
TAU_AREA = 1e-6
MIN_CELL_AREA = 1.0 / 100.0


class ClusterError(ValueError):
    """Malformed topology: the input does not describe a cluster at all."""


@dataclass(frozen=True)
class RawEdge:
    v0: int
    v1: int
    bulge_area: float = 0.0


@dataclass(frozen=True)
class CellSpec:
    edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class ChamberSpec:
    cells: tuple[int, ...]
    exterior: bool = False
    infinite_cell: int | None = None


@dataclass(frozen=True)
class MergedEdge:
    v0: int
    v1: int
    raw: tuple[tuple[int, int], ...]  # (raw edge id, orientation along the chain)
    segments: tuple[ArcSegment, ...]

    @property
    def length(self) -> float:
        return math.fsum(s.length for s in self.segments)


def _reverse(s: ArcSegment) -> ArcSegment:
    return ArcSegment(s.end, s.start, -s.bulge_area)


class Cluster:
    """Immutable cluster with derived merged topology."""

    def __init__(
        self,
        vertices: Sequence[Point],
        edges: Sequence[RawEdge],
        cells: Sequence[CellSpec],
        chambers: Sequence[ChamberSpec],
    ):
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)
        self.cells = tuple(cells)
        self.chambers = tuple(chambers)
        self._check_structure()
        ext = [h for h, ch in enumerate(self.chambers) if ch.exterior]
        self.exterior_index = ext[0]
        self.infinite_cell = self.chambers[self.exterior_index].infinite_cell
        # chamber order: exterior first, then the bounded chambers in input order
        self.order = [self.exterior_index] + [h for h in range(len(self.chambers)) if h != self.exterior_index]
        self._segments = tuple(self._raw_segment(i) for i in range(len(self.edges)))
        self._merge()
        self._cell_cache: dict[int, PolyChainCurve] = {}

    # structure -----------------------------------------------------------------

    def _raw_segment(self, i: int) -> ArcSegment:
        e = self.edges[i]
        try:
            return ArcSegment(self.vertices[e.v0], self.vertices[e.v1], e.bulge_area)
        except ValueError as err:
            raise ClusterError(f"edge {i}: {err}") from err

    def _check_structure(self) -> None:
        nv, ne, nc = len(self.vertices), len(self.edges), len(self.cells)
        for i, e in enumerate(self.edges):
            if not (0 <= e.v0 < nv and 0 <= e.v1 < nv):
                raise ClusterError(f"edge {i} references a missing vertex")
            if e.v0 == e.v1:
                raise ClusterError(f"edge {i} is a loop on one vertex")
            if not math.isfinite(e.bulge_area):
                raise ClusterError(f"edge {i} has a non-finite bulge")
        uses: dict[int, list[int]] = {i: [] for i in range(ne)}
        for ci, cell in enumerate(self.cells):
            if not cell.edges:
                raise ClusterError(f"cell {ci} has no edges")
            for eid, o in cell.edges:
                if not 0 <= eid < ne:
                    raise ClusterError(f"cell {ci} references missing edge {eid}")
                if o not in (1, -1):
                    raise ClusterError(f"cell {ci}: orientation must be +1 or -1")
                uses[eid].append(o)
            m = len(cell.edges)
            for j in range(m):
                if self._head(cell.edges[j]) != self._tail(cell.edges[(j + 1) % m]):
                    raise ClusterError(f"cell {ci}: loop does not close at position {j}")
        for eid, os_ in uses.items():
            if sorted(os_) != [-1, 1]:
                raise ClusterError(f"edge {eid} must bound exactly two cells with opposite orientations (found {os_})")
        owner = [-1] * nc
        ext = [h for h, ch in enumerate(self.chambers) if ch.exterior]
        if len(ext) != 1:
            raise ClusterError("exactly one chamber must be marked exterior")
        for h, ch in enumerate(self.chambers):
            for ci in ch.cells:
                if not 0 <= ci < nc:
                    raise ClusterError(f"chamber {h} references missing cell {ci}")
                if owner[ci] != -1:
                    raise ClusterError(f"cell {ci} belongs to two chambers")
                owner[ci] = h
            if not ch.exterior and not ch.cells:
                raise ClusterError(f"chamber {h} has no cells")
        if any(o == -1 for o in owner):
            raise ClusterError("some cell belongs to no chamber")
        ech = self.chambers[ext[0]]
        if ech.infinite_cell is None or ech.infinite_cell not in ech.cells:
            raise ClusterError("the exterior chamber must name its infinite cell")
        for h, ch in enumerate(self.chambers):
            if not ch.exterior and ch.infinite_cell is not None:
                raise ClusterError(f"bounded chamber {h} names an infinite cell")
        deg = [0] * nv
        for e in self.edges:
            deg[e.v0] += 1
            deg[e.v1] += 1
        for v, d in enumerate(deg):
            if d == 0:
                raise ClusterError(f"vertex {v} is isolated")
            if d == 1:
                raise ClusterError(f"vertex {v} ends a dangling edge")
        self.degree = tuple(deg)
        self.cell_owner = tuple(owner)

    def _tail(self, eo: tuple[int, int]) -> int:
        e = self.edges[eo[0]]
        return e.v0 if eo[1] == 1 else e.v1

    def _head(self, eo: tuple[int, int]) -> int:
        e = self.edges[eo[0]]
        return e.v1 if eo[1] == 1 else e.v0

    # merging -------------------------------------------------------------------

    def _merge(self) -> None:
        nv = len(self.vertices)
        inc: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
        for i, e in enumerate(self.edges):
            inc[e.v0].append((i, 1))
            inc[e.v1].append((i, -1))
        branch = [d != 2 for d in self.degree]
        # anchors for closed runs of degree-2 vertices
        seen = [False] * nv
        for v in range(nv):
            if branch[v] or seen[v]:
                continue
            comp, stack = [], [v]
            seen[v] = True
            hit_branch = False
            while stack:
                u = stack.pop()
                comp.append(u)
                for eid, o in inc[u]:
                    e = self.edges[eid]
                    w = e.v1 if o == 1 else e.v0
                    if branch[w]:
                        hit_branch = True
                    elif not seen[w]:
                        seen[w] = True
                        stack.append(w)
            if not hit_branch:
                branch[min(comp)] = True
        self.branch = tuple(branch)
        used = [False] * len(self.edges)
        merged: list[MergedEdge] = []
        raw_to_merged: dict[int, tuple[int, int]] = {}
        for v in range(nv):
            if not branch[v]:
                continue
            for eid, o in sorted(inc[v]):
                if used[eid]:
                    continue
                chain = []
                cur_e, cur_o = eid, o
                while True:
                    used[cur_e] = True
                    chain.append((cur_e, cur_o))
                    head = self._head((cur_e, cur_o))
                    if branch[head]:
                        break
                    nxt = [(x, xo) for x, xo in inc[head] if x != cur_e]
                    cur_e, cur_o = nxt[0]
                    if used[cur_e]:
                        raise ClusterError("inconsistent edge chain")
                mid = len(merged)
                for pos, (x, xo) in enumerate(chain):
                    raw_to_merged[x] = (mid, xo)
                segs = tuple(self._segments[x] if xo == 1 else _reverse(self._segments[x]) for x, xo in chain)
                merged.append(MergedEdge(v, self._head(chain[-1]), tuple(chain), segs))
        self.merged_edges = tuple(merged)
        self.raw_to_merged = raw_to_merged
        self.merged_vertex_count = sum(1 for v in range(nv) if not branch[v])
        loops = []
        for ci, cell in enumerate(self.cells):
            loops.append(self._merged_loop(cell))
        self.merged_loops = tuple(loops)

    def _merged_loop(self, cell: CellSpec) -> tuple[tuple[int, int], ...]:
        m = len(cell.edges)
        start = next((j for j in range(m) if self.branch[self._tail(cell.edges[j])]), None)
        if start is None:
            raise ClusterError("cell loop has no branch vertex")
        out: list[tuple[int, int]] = []
        j = start
        count = 0
        while count < m:
            eid, o = cell.edges[j]
            mid, mo = self.raw_to_merged[eid]
            orient = mo * o
            me = self.merged_edges[mid]
            out.append((mid, orient))
            step = len(me.raw)
            for t in range(step):
                x, xo = cell.edges[(j + t) % m]
                if self.raw_to_merged[x][0] != mid:
                    raise ClusterError("cell loop splits a merged edge chain")
            j = (j + step) % m
            count += step
        return tuple(out)

    # basic queries ----------------------------------------------------------------

    @property
    def N(self) -> int:
        return len(self.chambers) - 1

    def chamber(self, h: int) -> ChamberSpec:
        """Chamber by paper index: ``h = 0`` is the exterior."""
        return self.chambers[self.order[h]]

    def finite_cells(self) -> list[int]:
        return [ci for ci in range(len(self.cells)) if ci != self.infinite_cell]

    def cell_k(self, ci: int) -> int:
        """Number of edges of a cell: its vertices of degree at least 3."""
        return sum(1 for mid, o in self.merged_loops[ci] if self.degree[self._merged_tail(mid, o)] >= 3)

    def _merged_tail(self, mid: int, o: int) -> int:
        me = self.merged_edges[mid]
        return me.v0 if o == 1 else me.v1

    def cell_curve(self, ci: int) -> PolyChainCurve:
        if ci in self._cell_cache:
            return self._cell_cache[ci]
        gaps = []
        for mid, o in self.merged_loops[ci]:
            segs = self.merged_edges[mid].segments
            gaps.append(segs if o == 1 else tuple(_reverse(s) for s in reversed(segs)))
        if len(gaps) < 2:
            gaps = [(s,) for g in gaps for s in g]
        if len(gaps) < 2:
            raise ClusterError(f"cell {ci} is bounded by a single arc")
        c = PolyChainCurve(tuple(gaps))
        self._cell_cache[ci] = c
        return c

    def cell_area(self, ci: int) -> float:
        return oriented_area(self.cell_curve(ci))

    def cell_perimeter(self, ci: int) -> float:
        return curve_length(self.cell_curve(ci))

    def chamber_area(self, h: int) -> float:
        return math.fsum(self.cell_area(ci) for ci in self.chamber(h).cells)


# measurements ----------------------------------------------------------------------


def perimeter(c: Cluster) -> float:
    return math.fsum(s.length for s in c._segments)


def euler_residual(c: Cluster) -> int:
    inner = sum(6 - c.cell_k(ci) for ci in c.finite_cells())
    return inner - (6 + c.cell_k(c.infinite_cell))


def double_counting_check(c: Cluster) -> float:
    total = math.fsum(c.cell_perimeter(ci) for ci in range(len(c.cells)))
    return abs(2.0 * perimeter(c) - total)


def void_area(c: Cluster) -> float:
    ext = c.chamber(0)
    return math.fsum(c.cell_area(ci) for ci in ext.cells if ci != c.infinite_cell)


def boundary_connected(c: Cluster) -> bool:
    parent = list(range(len(c.vertices)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in c.edges:
        parent[find(e.v0)] = find(e.v1)
    return len({find(v) for v in range(len(c.vertices))}) == 1


@dataclass
class Check:
    id: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"id": self.id, "passed": self.passed, "detail": self.detail}


@dataclass
class ValidationReport:
    checks: list[Check] = field(default_factory=list)
    merged_vertices: int = 0

    @property
    def passed(self) -> bool:
        return all(ch.passed for ch in self.checks)

    def failed(self) -> list[str]:
        return [ch.id for ch in self.checks if not ch.passed]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "merged_vertices": self.merged_vertices,
            "checks": [ch.to_json() for ch in self.checks],
        }


def validate(c: Cluster, M: float, tau_area: float = TAU_AREA, simple_tol: float = 1e-6) -> ValidationReport:
    rep = ValidationReport(merged_vertices=c.merged_vertex_count)
    # C1: finite cells bounded by simple positively oriented loops
    bad = []
    for ci in c.finite_cells():
        cur = c.cell_curve(ci)
        if oriented_area(cur) <= 0.0 or not curve_is_simple(cur, simple_tol):
            bad.append(ci)
    inf_area = c.cell_area(c.infinite_cell)
    c1_ok = not bad and inf_area < 0.0
    rep.checks.append(Check("C1", c1_ok, f"non-simple or misoriented cells: {bad}" if bad else ("" if c1_ok else "infinite cell loop is not reversed")))
    # C2: finitely many edges, each a finite chain of arcs
    c2_ok = all(len(me.segments) >= 1 and math.isfinite(me.length) for me in c.merged_edges)
    rep.checks.append(Check("C2", c2_ok, f"{len(c.merged_edges)} edges"))
    # C3: degree three everywhere, at least two edges per cell
    bad_v = [v for v in range(len(c.vertices)) if c.branch[v] and c.degree[v] != 3]
    bad_k = [ci for ci in range(len(c.cells)) if c.cell_k(ci) < 2]
    detail = []
    if bad_v:
        detail.append(f"vertices with degree != 3: {bad_v[:20]}")
    if bad_k:
        detail.append(f"cells with fewer than two edges: {bad_k[:20]}")
    rep.checks.append(Check("C3", not bad_v and not bad_k, "; ".join(detail)))
    # C4: connected boundary and low energy
    P = perimeter(c)
    N = c.N
    bound = TWELVE4 * N + M * math.sqrt(N)
    conn = boundary_connected(c)
    c4_ok = conn and P <= bound * (1.0 + 1e-12)
    rep.checks.append(Check("C4", c4_ok, f"connected={conn} P={P!r} bound={bound!r}"))
    # C5: cells with 2 <= k <= 6 have area at least 1/100
    small = [
        ci for ci in c.finite_cells() if 2 <= c.cell_k(ci) <= 6 and c.cell_area(ci) < MIN_CELL_AREA
    ]
    rep.checks.append(Check("C5", not small, f"small cells: {small[:20]}" if small else ""))
    # unit area of every bounded chamber
    off = [h for h in range(1, N + 1) if abs(c.chamber_area(h) - 1.0) > tau_area]
    rep.checks.append(Check("unit_area", not off, f"chambers off unit area: {off[:20]}" if off else ""))
    return rep


@dataclass(frozen=True)
class ClusterMetrics:
    N: int
    P: float
    hex_count: int
    ch_k: dict[int, int]
    p_ext: float
    edge_ext: int
    void_area: float
    mean_dhex_sq: float

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "P": self.P,
            "hex_count": self.hex_count,
            "ch_k": {str(k): v for k, v in sorted(self.ch_k.items())},
            "p_ext": self.p_ext,
            "edge_ext": self.edge_ext,
            "void_area": self.void_area,
            "mean_dhex_sq": self.mean_dhex_sq,
        }


def hex_chambers(c: Cluster) -> list[int]:
    out = []
    for h in range(1, c.N + 1):
        cells = c.chamber(h).cells
        if len(cells) == 1 and c.cell_k(cells[0]) == 6:
            out.append(h)
    return out


def metrics(c: Cluster, with_dhex: bool = True) -> ClusterMetrics:
    from .hexfit import Region, d_hex

    hexes = hex_chambers(c)
    ch_k: dict[int, int] = {}
    for h in range(1, c.N + 1):
        ks = {c.cell_k(ci) for ci in c.chamber(h).cells}
        for k in ks:
            ch_k[k] = ch_k.get(k, 0) + 1
    if with_dhex and hexes:
        vals = []
        for h in hexes:
            ci = c.chamber(h).cells[0]
            vals.append(d_hex(Region.from_curve(c.cell_curve(ci))).sym_diff ** 2)
        mean = math.fsum(vals) / len(vals)
    else:
        mean = 0.0
    return ClusterMetrics(
        N=c.N,
        P=perimeter(c),
        hex_count=len(hexes),
        ch_k=dict(sorted(ch_k.items())),
        p_ext=c.cell_perimeter(c.infinite_cell),
        edge_ext=c.cell_k(c.infinite_cell),
        void_area=void_area(c),
        mean_dhex_sq=mean,
    )


@dataclass(frozen=True)
class Conclusion:
    id: str
    quantity: str
    measured: float
    bound: float
    holds: bool

    def to_json(self) -> dict:
        return {"id": self.id, "quantity": self.quantity, "measured": self.measured, "bound": self.bound, "holds": self.holds}


def theorem1_report(c: Cluster, M: float, C0: float, m: ClusterMetrics | None = None) -> list[Conclusion]:
    m = metrics(c) if m is None else m
    N = c.N
    rn = math.sqrt(N)
    rows = [
        Conclusion("hex_count", "#Hex >= N - C0 M sqrt(N)", m.hex_count, N - C0 * M * rn, m.hex_count >= N - C0 * M * rn),
        Conclusion("hex_shape", "mean d_hex^2 over Hex <= C0 M / sqrt(N)", m.mean_dhex_sq, C0 * M / rn, m.mean_dhex_sq <= C0 * M / rn),
        Conclusion("p_ext", "P_ext <= C0 M sqrt(N)", m.p_ext, C0 * M * rn, m.p_ext <= C0 * M * rn),
        Conclusion("edge_ext", "edge_ext <= C0 M sqrt(N)", m.edge_ext, C0 * M * rn, m.edge_ext <= C0 * M * rn),
        Conclusion("void", "|E_void| <= C0 M sqrt(N)", m.void_area, C0 * M * rn, m.void_area <= C0 * M * rn),
    ]
    # one row for all k != 6; the reported measurement is the worst ratio to its bound
    worst_ratio, worst_k = 0.0, None
    ok = True
    for k, n in m.ch_k.items():
        if k == 6:
            continue
        b = C0 * M * rn / abs(k - 6)
        if n > b:
            ok = False
        r = n / b if b > 0 else math.inf
        if worst_k is None or r > worst_ratio:
            worst_ratio, worst_k = r, k
    rows.append(
        Conclusion(
            "non_hexagonal",
            f"#Ch_k <= C0 M sqrt(N) / |k - 6| for all k != 6 (worst k = {worst_k})",
            float(m.ch_k.get(worst_k, 0)) if worst_k is not None else 0.0,
            C0 * M * rn / abs(worst_k - 6) if worst_k is not None else math.inf,
            ok,
        )
    )
    small = sorted(k for k in m.ch_k if k <= 5)
    rows.append(Conclusion("small_k_exists", "some k <= 5 has Ch_k non-empty", float(len(small)), 1.0, bool(small)))
    return rows
