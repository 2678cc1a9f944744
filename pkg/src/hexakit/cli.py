"""hexakit command line.

Exit codes: 0 success, 1 a check failed, 2 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import clusterio
from .certifier import certificate_json, check_scalar_ledger, default_scans
from .cluster import metrics, perimeter, theorem1_report, validate, euler_residual, double_counting_check
from .clusterio import ClusterFileError, atomic_write
from .geometry import MarkedCurve
from .hexfit import Region, d_hex
from .honeycomb import SpiralSpec, energy_gap, generate_spiral
from .polyiso import random_stress

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _dump(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _load(path: str):
    try:
        return clusterio.load(path)
    except ClusterFileError as err:
        print(f"error: {err}", file=sys.stderr)
        return None


def cmd_validate(args) -> int:
    c = _load(args.path)
    if c is None:
        return EXIT_INPUT
    rep = validate(c, args.M)
    doc = rep.to_json()
    doc["M"] = args.M
    doc["N"] = c.N
    doc["perimeter"] = perimeter(c)
    doc["euler_residual"] = euler_residual(c)
    _emit(_dump(doc), args.out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _text_table(rows, m, M, C0) -> str:
    lines = [f"# N={m.N}\tP={m.P!r}\tM={M!r}\tC0={C0!r}", "conclusion\tmeasured\tbound\tholds"]
    for r in rows:
        lines.append(f"{r.id}\t{r.measured!r}\t{r.bound!r}\t{'yes' if r.holds else 'no'}")
    return "\n".join(lines) + "\n"


def cmd_report(args) -> int:
    c = _load(args.path)
    if c is None:
        return EXIT_INPUT
    M = energy_gap(c) if args.M is None else args.M
    rep = validate(c, M)
    m = metrics(c)
    rows = theorem1_report(c, M, args.C0, m)
    doc = {
        "N": c.N,
        "M": M,
        "C0": args.C0,
        "validation": rep.to_json(),
        "metrics": m.to_json(),
        "euler_residual": euler_residual(c),
        "double_counting_residual": double_counting_check(c),
        "conclusions": [r.to_json() for r in rows],
    }
    if args.fig_dir:
        from .plotting import report_figures

        doc["figures"] = report_figures(c, m, args.fig_dir)
    if args.json:
        atomic_write(args.json, _dump(doc))
    _emit(_text_table(rows, m, M, args.C0), args.out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_generate(args) -> int:
    if args.N < 1:
        print("error: --N must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    c = generate_spiral(SpiralSpec(args.N, smooth_boundary=args.smooth))
    text = clusterio.dumps(c)
    try:
        _emit(text, args.out)
    except OSError as err:
        print(f"error: cannot write {args.out}: {err}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def _parse_overrides(items) -> dict[str, Fraction]:
    out = {}
    for it in items or []:
        key, _, val = it.partition("=")
        out[key] = Fraction(val)
    return out


def cmd_certify(args) -> int:
    try:
        overrides = _parse_overrides(args.tamper)
    except (ValueError, ZeroDivisionError) as err:
        print(f"error: bad --tamper value: {err}", file=sys.stderr)
        return EXIT_INPUT
    results = check_scalar_ledger(overrides=overrides)
    scans = default_scans(args.grid) if args.grid else []
    text = certificate_json(results, scans)
    if args.out:
        atomic_write(args.out, text)
    for r in results + scans:
        print(f"{r.id}\t{r.status}\t{r.margin!r}\t{r.claim}")
    ok = all(r.status == "certified" for r in results)
    print(f"# {sum(r.status == 'certified' for r in results)}/{len(results)} certified", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_dhex(args) -> int:
    try:
        with open(args.path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    rows = []
    try:
        if isinstance(doc, dict) and "nodes" in doc:
            curve = MarkedCurve.from_nodes(doc["nodes"], doc.get("bulges"))
            fits = [("curve", Region.from_curve(curve))]
        else:
            c = clusterio.cluster_from_doc(doc)
            fits = []
            for h in range(1, c.N + 1):
                cells = c.chamber(h).cells
                if len(cells) == 1:
                    fits.append((h, Region.from_curve(c.cell_curve(cells[0]))))
    except (ClusterFileError, ValueError, TypeError, KeyError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    for name, reg in fits:
        f = d_hex(reg)
        rows.append(
            {
                "id": name,
                "area": reg.area,
                "d_hex": f.sym_diff,
                "center": [f.center.x, f.center.y],
                "angle": f.angle,
                "scale": f.scale,
                "below_2_area": f.sym_diff < 2.0 * reg.area,
            }
        )
    _emit(_dump({"fits": rows}), args.out)
    return EXIT_OK


def cmd_polyiso(args) -> int:
    if args.random < 1:
        print("error: --random must be positive", file=sys.stderr)
        return EXIT_INPUT
    res = random_stress(args.random, args.seed, args.kmin, args.kmax)
    _emit(_dump(res.to_json()), args.out)
    return EXIT_OK if res.passed else EXIT_FAIL


def cmd_plot(args) -> int:
    from .plotting import cluster_svg

    c = _load(args.path)
    if c is None:
        return EXIT_INPUT
    atomic_write(args.out, cluster_svg(c))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hexakit", description="Planar cluster and hexagonal isoperimetry toolkit")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("validate", help="check a cluster file against C1-C5 and unit area")
    s.add_argument("path")
    s.add_argument("--M", type=float, default=2.5, help="exterior energy density")
    s.add_argument("--out", help="write the JSON report here instead of stdout")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("report", help="structure report with the honeycomb conclusions")
    s.add_argument("path")
    s.add_argument("--M", type=float, default=None, help="energy density (default: measured)")
    s.add_argument("--C0", type=float, default=10.0)
    s.add_argument("--json", help="write the full JSON report to this file")
    s.add_argument("--out", help="write the tab-separated table here instead of stdout")
    s.add_argument("--fig-dir", help="render PNG figures into this directory")
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("generate", help="write a spiral honeycomb cluster")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--smooth", action="store_true", help="replace exterior chains by single arcs")
    s.add_argument("--out", help="output file (default stdout)")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("certify", help="interval-certify the scalar inequality ledger")
    s.add_argument("--out", help="certificate JSON file")
    s.add_argument("--grid", type=int, default=0, help="add heuristic grid scans of this resolution")
    s.add_argument("--tamper", action="append", metavar="ID=VALUE", help=argparse.SUPPRESS)
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("dhex", help="distance to the closest regular hexagon")
    s.add_argument("path", help="cluster file, or a curve file {nodes, bulges}")
    s.add_argument("--out")
    s.set_defaults(func=cmd_dhex)

    s = sub.add_parser("polyiso", help="random test of the immersed polygon inequality")
    s.add_argument("--random", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--kmin", type=int, default=3)
    s.add_argument("--kmax", type=int, default=12)
    s.add_argument("--out")
    s.set_defaults(func=cmd_polyiso)

    s = sub.add_parser("plot", help="SVG drawing of a cluster")
    s.add_argument("path")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_plot)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
