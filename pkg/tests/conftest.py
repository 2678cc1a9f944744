import math

import pytest

from hexakit.honeycomb import SpiralSpec, generate_spiral

TWELVE4 = 12.0**0.25


@pytest.fixture(scope="session")
def spiral7():
    return generate_spiral(SpiralSpec(7))


@pytest.fixture(scope="session")
def spiral19():
    return generate_spiral(SpiralSpec(19))


def hex_side(area=1.0):
    return math.sqrt(2.0 * area / (3.0 * math.sqrt(3.0)))


def squares_2x2():
    """Four unit squares around a degree-4 vertex; not a valid Plateau cluster."""
    from hexakit.cluster import CellSpec, ChamberSpec, Cluster, RawEdge
    from hexakit.geometry import Point

    verts = [Point(x, y) for y in (-1, 0, 1) for x in (-1, 0, 1)]
    vid = lambda x, y: (y + 1) * 3 + (x + 1)
    edges, index = [], {}

    def edge(a, b):
        key = (min(a, b), max(a, b))
        if key not in index:
            index[key] = len(edges)
            edges.append(RawEdge(key[0], key[1], 0.0))
        return index[key], 1 if (a, b) == key else -1

    cells = []
    for x0, y0 in ((-1, -1), (0, -1), (-1, 0), (0, 0)):
        loop = [vid(x0, y0), vid(x0 + 1, y0), vid(x0 + 1, y0 + 1), vid(x0, y0 + 1)]
        cells.append(CellSpec(tuple(edge(loop[i], loop[(i + 1) % 4]) for i in range(4))))
    ring = [vid(-1, -1), vid(-1, 0), vid(-1, 1), vid(0, 1), vid(1, 1), vid(1, 0), vid(1, -1), vid(0, -1)]
    cells.append(CellSpec(tuple(edge(ring[i], ring[(i + 1) % 8]) for i in range(8))))
    chambers = [ChamberSpec((4,), True, 4)] + [ChamberSpec((i,)) for i in range(4)]
    return Cluster(verts, edges, cells, chambers)


def with_void(c):
    """Move the first bounded chamber's cells into the exterior chamber."""
    from hexakit.cluster import ChamberSpec, Cluster

    ext = c.chambers[c.exterior_index]
    first = c.order[1]
    chambers = []
    for h, ch in enumerate(c.chambers):
        if h == first:
            continue
        if h == c.exterior_index:
            ch = ChamberSpec(ch.cells + c.chambers[first].cells, True, ext.infinite_cell)
        chambers.append(ch)
    return Cluster(c.vertices, c.edges, c.cells, chambers)


def with_shrunk_chamber(c, target=0.8):
    """Bend one exterior edge inward so that its bounded chamber loses area."""
    from hexakit.cluster import Cluster, RawEdge

    eid, o = c.cells[c.infinite_cell].edges[0]
    owner = next(h for h in range(1, c.N + 1) if any(e == eid for ci in c.chamber(h).cells for e, _ in c.cells[ci].edges))
    for sign in (1.0, -1.0):
        edges = list(c.edges)
        e = edges[eid]
        edges[eid] = RawEdge(e.v0, e.v1, sign * (1.0 - target))
        out = Cluster(c.vertices, edges, c.cells, c.chambers)
        if abs(out.chamber_area(owner) - target) < 1e-9:
            return out, owner
    raise AssertionError("could not shrink chamber")


ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line for an acceptance criterion; printed in the summary."""

    def record(n: int, ok: bool, detail: str) -> None:
        ACCEPTANCE[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
