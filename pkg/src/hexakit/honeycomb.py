"""Spiral honeycomb clusters of unit-area regular hexagons.

Hexagons are pointy-top, so neighbours sit east, north-east, ... at distance
``sqrt(3) s`` with ``s`` the side length.  Cells are placed centre-out: ring
``r`` starts at the cell ``r`` steps east of the centre and walks clockwise.

Vertices are keyed on an exact integer lattice: a cell at axial coordinates
``(q, r)`` has its centre at ``(2q + r, 3r)`` in units of ``(sqrt(3) s / 2, s / 2)``
and its corners at the six offsets ``(+-1, +-1)``, ``(0, +-2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cluster import CellSpec, ChamberSpec, Cluster, RawEdge, perimeter
from .geometry import Point, _shoelace

TWELVE4 = 12.0 ** 0.25
HEX_SIDE = math.sqrt(2.0 / (3.0 * math.sqrt(3.0)))  # side of the unit-area regular hexagon
K0 = math.sqrt(math.pi) - 3.0 ** 0.25 / math.sqrt(2.0)
M0 = math.pi / math.sqrt(3.0 * math.sqrt(3.0) / 2.0)

# axial directions, counter-clockwise from east
AXIAL_DIRS = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)]
# walking order around a ring, starting at the east cell and going clockwise:
# directions -120, 180, 120, 60, 0, -60 degrees
RING_WALK = [(0, -1), (-1, 0), (-1, 1), (0, 1), (1, 0), (1, -1)]
# corner offsets at 30 + 60 j degrees, counter-clockwise
CORNERS = [(1, 1), (0, 2), (-1, 1), (-1, -1), (0, -2), (1, -1)]


@dataclass(frozen=True)
class SpiralSpec:
    N: int
    hex_area: float = 1.0
    smooth_boundary: bool = False

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be at least 1")
        if not self.hex_area > 0.0:
            raise ValueError("hex_area must be positive")


def spiral_cells(N: int) -> list[tuple[int, int]]:
    """Axial coordinates of the first ``N`` cells of the spiral."""
    out = [(0, 0)]
    r = 1
    while len(out) < N:
        q, s = r, 0  # east cell of ring r
        for dq, ds in RING_WALK:
            for _ in range(r):
                out.append((q, s))
                q, s = q + dq, s + ds
        r += 1
    return out[:N]


def ring_of(N: int) -> int:
    """Number of complete rings when ``N = 1 + 3 r (r + 1)``, else -1."""
    r = 0
    while 1 + 3 * r * (r + 1) < N:
        r += 1
    return r if 1 + 3 * r * (r + 1) == N else -1


def interior_count(rings: int) -> int:
    """Cells with all six neighbours present in the complete spiral of ``rings`` rings."""
    return 0 if rings == 0 else 1 + 3 * rings * (rings - 1)


def generate_spiral(spec: SpiralSpec) -> Cluster:
    cells_ax = spiral_cells(spec.N)
    side = HEX_SIDE * math.sqrt(spec.hex_area)
    ux, uy = side * math.sqrt(3.0) / 2.0, side / 2.0
    vid: dict[tuple[int, int], int] = {}
    verts: list[Point] = []
    edge_id: dict[tuple[int, int], int] = {}
    edges: list[RawEdge] = []
    cells: list[CellSpec] = []
    for q, r in cells_ax:
        cx, cy = 2 * q + r, 3 * r
        ids = []
        for dx, dy in CORNERS:
            key = (cx + dx, cy + dy)
            if key not in vid:
                vid[key] = len(verts)
                verts.append(Point(key[0] * ux, key[1] * uy))
            ids.append(vid[key])
        loop = []
        for j in range(6):
            a, b = ids[j], ids[(j + 1) % 6]
            if (b, a) in edge_id:
                loop.append((edge_id[(b, a)], -1))
            else:
                edge_id[(a, b)] = len(edges)
                edges.append(RawEdge(a, b, 0.0))
                loop.append((edge_id[(a, b)], 1))
        cells.append(CellSpec(tuple(loop)))
    # exterior loop: edges used once, reversed, chained from the lowest vertex id
    use = [0] * len(edges)
    for cell in cells:
        for eid, _ in cell.edges:
            use[eid] += 1
    out_from: dict[int, tuple[int, int]] = {}
    for eid, e in enumerate(edges):
        if use[eid] == 1:
            out_from[e.v1] = (eid, -1)  # traversed v1 -> v0
    start = min(out_from)
    loop = []
    v = start
    while True:
        eid, o = out_from[v]
        loop.append((eid, o))
        v = edges[eid].v0
        if v == start:
            break
    inf_cell = len(cells)
    cells.append(CellSpec(tuple(loop)))
    chambers = [ChamberSpec((inf_cell,), exterior=True, infinite_cell=inf_cell)]
    chambers += [ChamberSpec((i,)) for i in range(spec.N)]
    c = Cluster(verts, edges, cells, chambers)
    if spec.smooth_boundary and spec.N >= 2:
        c = smooth_exterior(c)
    return c


def smooth_exterior(c: Cluster) -> Cluster:
    """Replace each exterior edge chain by one arc bounding the same area with its chord.

    Cell areas are unchanged and every chain becomes no longer; the degree-2
    vertices on the exterior disappear.
    """
    inf = c.infinite_cell
    ext_chains = {mid for mid, _ in c.merged_loops[inf]}
    drop_raw: set[int] = set()
    new_edges: dict[int, RawEdge] = {}
    for mid in sorted(ext_chains):
        me = c.merged_edges[mid]
        if len(me.raw) < 2 or me.v0 == me.v1:
            continue
        pts = [s.start for s in me.segments] + [me.segments[-1].end]
        area = _shoelace(pts) + math.fsum(s.bulge_area for s in me.segments)
        drop_raw.update(x for x, _ in me.raw)
        new_edges[me.raw[0][0]] = RawEdge(me.v0, me.v1, area)
    if not new_edges:
        return c
    keep_v = sorted({v for i, e in enumerate(c.edges) if i not in drop_raw for v in (e.v0, e.v1)} | {v for e in new_edges.values() for v in (e.v0, e.v1)})
    vmap = {v: i for i, v in enumerate(keep_v)}
    verts = [c.vertices[v] for v in keep_v]
    emap: dict[int, int] = {}
    edges: list[RawEdge] = []
    for i, e in enumerate(c.edges):
        if i in new_edges:
            ne = new_edges[i]
            emap[i] = len(edges)
            edges.append(RawEdge(vmap[ne.v0], vmap[ne.v1], ne.bulge_area))
        elif i not in drop_raw:
            emap[i] = len(edges)
            edges.append(RawEdge(vmap[e.v0], vmap[e.v1], e.bulge_area))
    cells = []
    for ci, cell in enumerate(c.cells):
        loop = []
        for eid, o in cell.edges:
            if eid not in drop_raw:
                loop.append((emap[eid], o))
                continue
            # eid was absorbed; emit the replacement once, at the chain's first raw edge in loop order
            mid, mo = c.raw_to_merged[eid]
            me = c.merged_edges[mid]
            first = me.raw[0][0]
            orient = mo * o  # orientation of the whole chain in this loop
            head_raw = me.raw[0][0] if orient == 1 else me.raw[-1][0]
            if eid == head_raw:
                loop.append((emap[first], orient))
        cells.append(CellSpec(tuple(loop)))
    return Cluster(verts, edges, cells, c.chambers)


def energy_gap(c: Cluster) -> float:
    N = c.N
    return (perimeter(c) - TWELVE4 * N) / math.sqrt(N)


def spiral_perimeter_sweep(n_max: int) -> list[float]:
    """Perimeter of the straight spiral for ``N = 1..n_max``, counted edge by edge."""
    cells = spiral_cells(n_max)
    present: set[tuple[int, int]] = set()
    shared = 0
    out = []
    for q, r in cells:
        for dq, dr in AXIAL_DIRS:
            if (q + dq, r + dr) in present:
                shared += 1
        present.add((q, r))
        out.append(HEX_SIDE * (6 * len(present) - shared))
    return out


def psi_bounds(N: int) -> tuple[float, float]:
    if N < 2:
        raise ValueError("psi bounds need N >= 2")
    rn = math.sqrt(N)
    return TWELVE4 * N + K0 * rn, TWELVE4 * N + M0 * rn + 3.0
