import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hexakit.cluster import euler_residual, metrics, perimeter, validate
from hexakit.honeycomb import (
    K0,
    M0,
    SpiralSpec,
    energy_gap,
    generate_spiral,
    interior_count,
    psi_bounds,
    ring_of,
    spiral_cells,
    spiral_perimeter_sweep,
)

from conftest import TWELVE4, hex_side


def test_single_hexagon():
    c = generate_spiral(SpiralSpec(1))
    assert c.N == 1
    assert abs(perimeter(c) - 2 * TWELVE4) < 1e-12
    assert abs(energy_gap(c) - TWELVE4) < 1e-12
    # one hexagon has no branch vertices, so C3 cannot hold
    assert validate(c, 2.5).failed() == ["C3"]
    assert euler_residual(c) == 0


def test_flower_gap(spiral7):
    assert abs(energy_gap(spiral7) - (30 * hex_side() - 7 * TWELVE4) / math.sqrt(7)) < 1e-12
    assert abs(energy_gap(spiral7) - 2.111) < 1e-3


def test_spiral_order():
    cells = spiral_cells(8)
    assert cells[0] == (0, 0) and cells[1] == (1, 0)
    assert len(set(spiral_cells(61))) == 61
    assert spiral_cells(19)[7] == (2, 0)


def test_rings():
    assert [ring_of(n) for n in (1, 7, 19, 37, 61)] == [0, 1, 2, 3, 4]
    assert ring_of(8) == -1
    assert [interior_count(r) for r in range(4)] == [0, 1, 7, 19]


def test_spec_errors():
    with pytest.raises(ValueError):
        SpiralSpec(0)
    with pytest.raises(ValueError):
        psi_bounds(1)


def test_constants():
    assert abs(K0 - 0.8418) < 1e-4
    assert abs(M0 - 1.9491) < 1e-4
    lo, hi = psi_bounds(100)
    assert abs(lo - 194.539) < 1e-3 and abs(hi - 208.612) < 1e-3


@pytest.mark.parametrize("N", [2, 3, 5, 7, 12, 19, 30, 37, 50])
def test_spiral_validates(N):
    c = generate_spiral(SpiralSpec(N))
    rep = validate(c, energy_gap(c))
    assert rep.passed, rep.failed()
    assert euler_residual(c) == 0
    for h in range(1, N + 1):
        assert abs(c.chamber_area(h) - 1.0) <= 1e-9


@pytest.mark.parametrize("N", [7, 19, 37, 61])
def test_complete_rings_hex_count(N):
    m = metrics(generate_spiral(SpiralSpec(N)), with_dhex=False)
    assert m.hex_count == interior_count(ring_of(N))


def test_sweep_matches_generator():
    sweep = spiral_perimeter_sweep(40)
    for N in (1, 2, 9, 23, 40):
        assert abs(sweep[N - 1] - perimeter(generate_spiral(SpiralSpec(N)))) < 1e-9


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 3000))
def test_perimeter_above_lower_bound(N):
    P = spiral_perimeter_sweep(N)[-1]
    assert P > psi_bounds(N)[0]


@pytest.mark.parametrize("N", [7, 19])
def test_smoothing(N):
    straight = generate_spiral(SpiralSpec(N))
    smooth = generate_spiral(SpiralSpec(N, smooth_boundary=True))
    assert validate(smooth, energy_gap(smooth)).passed
    assert euler_residual(smooth) == 0
    assert perimeter(smooth) < perimeter(straight)
    for h in range(1, N + 1):
        assert abs(smooth.chamber_area(h) - 1.0) <= 1e-9


def test_hex_area_scaling():
    c = generate_spiral(SpiralSpec(7, hex_area=4.0))
    assert abs(perimeter(c) - 2 * 30 * hex_side()) < 1e-12
