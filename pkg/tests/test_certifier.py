import json
import os
import subprocess
import sys
from fractions import Fraction as Q

import mpmath
import numpy as np
import pytest

from hexakit.arcfn import arc1
from hexakit.certifier import (
    CERTIFIED,
    HEURISTIC_PASS,
    LEDGER_MANIFEST,
    REFUTED,
    certificate_json,
    certified_constants,
    check_scalar_ledger,
    default_scans,
    fit_arc_coercivity,
    ledger_ids,
    scan_infimum,
    working_c,
)
from hexakit.hales import f_terms
from hexakit.interval import Interval

mpmath.mp.dps = 40
PI = mpmath.pi
T = mpmath.root(12, 4)
A = mpmath.mpf(3) / 50

# sub-items per ledger entry, fixed independently of the implementation
EXPECTED_ATOMS = {
    "L1": 1, "L2": 1, "L3": 4, "L4": 2, "L5": 2, "L6": 1, "L7": 1, "L8": 5, "L9": 1, "L10": 3,
    "L11": 2, "L12": 3, "L13": 4, "L14": 2, "L15": 7, "L16": 6, "L17": 1, "L18": 1, "L19": 2, "L20": 1,
}


def mp_f(k, i, x, y):
    x, y = (mpmath.mpf(v.numerator) / v.denominator if isinstance(v, Q) else mpmath.mpf(v) for v in (x, y))
    g = A * (k - 6) + T * (y - 2 * min(1, x))
    if i == 1:
        return g + 2 * mpmath.sqrt(PI * x)
    if i == 2:
        return g + 2 * mpmath.sqrt(PI * (x + 2 * max(-y, 0)))
    if i == 4:
        return g + 2 * mpmath.sqrt(k * mpmath.tan(PI / k)) * mpmath.sqrt(max(x - y, 0))
    raise ValueError(i)



ORACLES = {
    "L1": mpmath.sqrt(PI) / 2 - mpmath.mpf(3) / 8 * T,
    "L2": 2 * mpmath.sqrt(PI) - mpmath.mpf(3) / 2 * T - 4 * A,
    "L6": 2 * mpmath.sqrt(6 * PI) - mpmath.mpf(5) / 2 * T - 2 * mpmath.sqrt(PI),
    "L7": 4 * PI - mpmath.mpf(36) / 25 * T,
    "L8.b": PI / mpmath.sqrt(12),
    "L9": mpmath.sqrt(2 * PI) - 2 * T,
    "L10.a": mp_f(7, 2, 1, -2.5),
    "L10.c": mp_f(7, 2, 1, 0),
    "L11.a": mp_f(7, 1, Q(9, 10), Q(1, 10)),
    "L12.b": mpmath.sqrt(3 * mpmath.tan(PI / 3) / (mpmath.mpf(3) / 5)) - 2 * T,
    "L13.a": mp_f(7, 4, 1, Q(-1, 10)),
    "L15.e": mp_f(5, 4, 1, Q(1, 5)),
    "L15.g": mp_f(5, 4, 1, Q(19, 100)),
    "L16.f": mp_f(5, 1, 1, Q(19, 100)),
    "L17": (mpmath.sqrt(2 * PI) - T) / (2 * mpmath.sqrt(2 * PI)),
    "L19.a": mpmath.sqrt(PI) - mpmath.root(3, 4) / mpmath.sqrt(2),
    "L19.b": PI / mpmath.sqrt(3 * mpmath.sqrt(3) / 2),
}


@pytest.fixture(scope="module")
def ledger():
    return check_scalar_ledger()


def test_manifest_coverage(ledger):
    assert ledger_ids(ledger) == set(LEDGER_MANIFEST) == {f"L{i}" for i in range(1, 21)}
    counts = {}
    for r in ledger:
        head = r.id.partition(".")[0]
        counts[head] = counts.get(head, 0) + 1
    assert counts == EXPECTED_ATOMS


@pytest.mark.parametrize("rid", sorted(ORACLES))
def test_enclosures_contain_oracle(ledger, rid):
    r = next(x for x in ledger if x.id == rid)
    v = ORACLES[rid]
    assert mpmath.mpf(r.enclosure.lo) <= v <= mpmath.mpf(r.enclosure.hi)
    assert r.enclosure.width < 1e-12


def test_example_enclosures(ledger):
    by = {r.id: r for r in ledger}
    assert 0.51 < by["L2"].enclosure.lo and by["L2"].enclosure.hi < 0.52
    assert 0.9068 < by["L8.b"].enclosure.lo and by["L8.b"].enclosure.hi < 0.9070
    assert by["L13.a"].status == CERTIFIED


def test_known_refutations(ledger):
    # two stated bounds are false; their weaker downstream forms hold
    refuted = {r.id for r in ledger if r.status == REFUTED}
    assert refuted == {"L8.d", "L12.b"}
    by = {r.id: r for r in ledger}
    assert by["L8.s"].status == CERTIFIED and by["L12.s"].status == CERTIFIED


def test_certified_margins_positive(ledger):
    for r in ledger:
        if r.status == CERTIFIED and r.id != "L3.a":
            assert r.margin > 0


def test_working_constants(ledger):
    assert working_c(ledger) == 1 / 1000
    c = certified_constants(ledger)
    assert c.a2 == 1.25e-4 and abs(c.a1 - (0.06 + 1.25e-4)) < 1e-15


def test_tamper_refutes():
    out = check_scalar_ledger(overrides={"L7": Q(10)})
    assert next(r for r in out if r.id == "L7").status == REFUTED


def test_ledger_matches_float_evaluation(ledger):
    by = {r.id: r for r in ledger}
    assert abs(by["L13.a"].enclosure.mid - f_terms(7, 1.0, -0.1).f4) < 1e-12
    assert abs(by["L10.b"].enclosure.mid - f_terms(7, 1.0, -0.1).f2) < 1e-12


def test_deterministic_output(ledger):
    a = certificate_json(ledger, default_scans(64))
    b = certificate_json(check_scalar_ledger(), default_scans(64))
    assert a == b
    doc = json.loads(a)
    assert doc["certified_count"] == 48 and doc["all_certified"] is False


def test_deterministic_across_thread_counts(tmp_path):
    outs = []
    for n in ("1", "4"):
        env = dict(os.environ, HEXAKIT_THREADS=n)
        p = tmp_path / f"c{n}.json"
        subprocess.run([sys.executable, "-m", "hexakit.cli", "certify", "--out", str(p)], env=env, capture_output=True)
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_scan_examples():
    r = scan_infimum(9, Interval(0.0, 1.0), Interval(-2.5, 0.8), 512)
    assert r.status == HEURISTIC_PASS and r.margin > 0
    s = scan_infimum(6, Interval(0.1, 0.1), Interval(-2.5, 0.8), 2048)
    assert s.margin > 0
    p = scan_infimum(7, Interval(1.0, 1.0), Interval(-0.1, -0.1), 2)
    assert abs(p.margin - f_terms(7, 1.0, -0.1).fk) < 1e-12
    assert all(x.status == HEURISTIC_PASS for x in default_scans(128))
    with pytest.raises(ValueError):
        scan_infimum(7, Interval(0, 1), Interval(0, 1), 1)


def test_scan_refinement():
    xr, yr = Interval(0.9, 1.0), Interval(-2.5, 0.8)
    lip = 20.0
    diag = float(np.hypot(xr.width, yr.width))
    for g in (16, 32, 64, 128):
        coarse = scan_infimum(7, xr, yr, g, lip).margin
        fine = scan_infimum(7, xr, yr, 2 * g, lip).margin
        assert fine <= coarse + lip * diag / (g - 1) + 1e-15


def test_arc_coercivity():
    C = fit_arc_coercivity(0.5)
    assert 0 < C <= 20
    xs = np.random.default_rng(1).uniform(0.0, 0.5, 100_000)
    vals = np.array([arc1(float(x)) - 1 - 6 * x * x + C * x**3 for x in xs])
    assert vals.min() >= -1e-12
    with pytest.raises(ValueError):
        fit_arc_coercivity(0.6)


def test_y3_root_oracle(ledger):
    # y_3 is the smaller root of x -> f_{3,1}(x, 0); find it by bisection on the defining function
    f = lambda x: mp_f(3, 1, x, 0)
    root = mpmath.findroot(f, (mpmath.mpf("1e-6"), mpmath.mpf("0.1")), solver="bisect", tol=1e-35)
    r = next(x for x in ledger if x.id == "L8.d")
    assert mpmath.mpf(r.enclosure.lo) <= root <= mpmath.mpf(r.enclosure.hi)
    assert root > mpmath.mpf(1) / 500
