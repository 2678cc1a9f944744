"""Cluster file format, version 1 (UTF-8 JSON).

    {"version": 1,
     "vertices": [[x, y], ...],
     "edges": [{"v0": i, "v1": j, "bulge_area": a}, ...],
     "cells": [{"edges": [[edge_id, orient], ...]}, ...],
     "chambers": [{"cells": [...], "exterior": bool, "infinite_cell": id}, ...]}

Floats are written with ``repr`` (shortest round-trip form), one record per
line, so generate -> parse -> serialize is byte-identical.
"""

from __future__ import annotations

import json
import os
import tempfile

import jsonschema

from .cluster import CellSpec, ChamberSpec, Cluster, ClusterError, RawEdge
from .geometry import Point

SCHEMA = {
    "type": "object",
    "required": ["version", "vertices", "edges", "cells", "chambers"],
    "properties": {
        "version": {"const": 1},
        "vertices": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
        },
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["v0", "v1"],
                "properties": {
                    "v0": {"type": "integer", "minimum": 0},
                    "v1": {"type": "integer", "minimum": 0},
                    "bulge_area": {"type": "number"},
                },
            },
        },
        "cells": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["edges"],
                "properties": {
                    "edges": {
                        "type": "array",
                        "minItems": 1,
                        "items": {
                            "type": "array",
                            "prefixItems": [{"type": "integer", "minimum": 0}, {"enum": [1, -1]}],
                            "minItems": 2,
                            "maxItems": 2,
                        },
                    }
                },
            },
        },
        "chambers": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["cells"],
                "properties": {
                    "cells": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                    "exterior": {"type": "boolean"},
                    "infinite_cell": {"type": ["integer", "null"], "minimum": 0},
                },
            },
        },
    },
}


class ClusterFileError(ValueError):
    """The file could not be read as a cluster (bad JSON, schema or topology)."""


def cluster_from_doc(doc) -> Cluster:
    try:
        jsonschema.validate(doc, SCHEMA, cls=jsonschema.Draft202012Validator)
    except jsonschema.ValidationError as err:
        raise ClusterFileError(f"schema: {err.message}") from err
    try:
        verts = [Point(float(x), float(y)) for x, y in doc["vertices"]]
        edges = [RawEdge(int(e["v0"]), int(e["v1"]), float(e.get("bulge_area", 0.0))) for e in doc["edges"]]
        cells = [CellSpec(tuple((int(i), int(o)) for i, o in c["edges"])) for c in doc["cells"]]
        chambers = [
            ChamberSpec(tuple(int(i) for i in ch["cells"]), bool(ch.get("exterior", False)), ch.get("infinite_cell"))
            for ch in doc["chambers"]
        ]
        return Cluster(verts, edges, cells, chambers)
    except (ClusterError, ValueError) as err:
        raise ClusterFileError(str(err)) from err


def loads(text: str) -> Cluster:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ClusterFileError(f"invalid JSON: {err}") from err
    return cluster_from_doc(doc)


def load(path: str) -> Cluster:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as err:
        raise ClusterFileError(f"cannot read {path}: {err}") from err
    return loads(text)


def _num(x: float) -> str:
    return json.dumps(float(x))


def dumps(c: Cluster) -> str:
    lines = ["{", '"version": 1,', '"vertices": [']
    lines += [f"[{_num(p.x)}, {_num(p.y)}]," for p in c.vertices]
    _strip_comma(lines)
    lines += ["],", '"edges": [']
    lines += [f'{{"v0": {e.v0}, "v1": {e.v1}, "bulge_area": {_num(e.bulge_area)}}},' for e in c.edges]
    _strip_comma(lines)
    lines += ["],", '"cells": [']
    lines += ['{"edges": [' + ", ".join(f"[{i}, {o}]" for i, o in cell.edges) + "]}," for cell in c.cells]
    _strip_comma(lines)
    lines += ["],", '"chambers": [']
    for ch in c.chambers:
        cells = ", ".join(str(i) for i in ch.cells)
        if ch.exterior:
            lines.append(f'{{"cells": [{cells}], "exterior": true, "infinite_cell": {ch.infinite_cell}}},')
        else:
            lines.append(f'{{"cells": [{cells}], "exterior": false}},')
    _strip_comma(lines)
    lines += ["]", "}"]
    return "\n".join(lines) + "\n"


def _strip_comma(lines: list[str]) -> None:
    if lines[-1].endswith(","):
        lines[-1] = lines[-1][:-1]


def atomic_write(path: str, data: str | bytes) -> None:
    """Write via a temporary file in the target directory and rename over ``path``."""
    d = os.path.dirname(os.path.abspath(path))
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, mode, **({} if mode == "wb" else {"encoding": "utf-8", "newline": "\n"})) as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save(c: Cluster, path: str) -> None:
    atomic_write(path, dumps(c))
