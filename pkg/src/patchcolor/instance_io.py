"""Bit-exact JSON instance files.

An instance document has the fixed key order

    {"vertices": n,
     "rotations": [[neighbor ids, counterclockwise], ...],
     "outer": [u, v],
     "hues": [0|1|2, ...],              # optional
     "colors": [[0|1, 0|1] | null, ...],  # optional, partial allowed
     "boundary_coloring": [[v, [b0, b1]], ...]}  # optional

All values are integers; the human-readable color labels 1, 2, 3, 4
correspond to the pairs (0,0), (0,1), (1,0), (1,1).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .errors import StructuralError
from .plane import Color, PlaneGraph

COLOR_OF_LABEL: dict[int, Color] = {1: (0, 0), 2: (0, 1), 3: (1, 0), 4: (1, 1)}
LABEL_OF_COLOR: dict[Color, int] = {c: l for l, c in COLOR_OF_LABEL.items()}


@dataclass
class Instance:
    graph: PlaneGraph
    hues: Optional[list[int]] = None
    colors: Optional[list[Optional[Color]]] = None
    boundary_coloring: Optional[dict[int, Color]] = None


def instance_to_dict(inst: Instance) -> dict:
    g = inst.graph
    doc: dict = {
        "vertices": g.n,
        "rotations": [list(r) for r in g.rotations],
        "outer": list(g.outer),
    }
    if inst.hues is not None:
        doc["hues"] = list(inst.hues)
    if inst.colors is not None:
        doc["colors"] = [list(c) if c is not None else None for c in inst.colors]
    if inst.boundary_coloring is not None:
        doc["boundary_coloring"] = [
            [v, list(c)] for v, c in sorted(inst.boundary_coloring.items())
        ]
    return doc


def instance_from_dict(doc: dict) -> Instance:
    try:
        n = int(doc["vertices"])
        rotations = doc["rotations"]
        outer = doc["outer"]
    except (KeyError, TypeError) as exc:
        raise StructuralError(f"missing instance field: {exc}") from exc
    if len(rotations) != n:
        raise StructuralError("rotation count differs from the vertex count")
    graph = PlaneGraph(rotations, outer)
    hues = None
    if "hues" in doc:
        hues = [int(h) for h in doc["hues"]]
        if len(hues) != n or any(h not in (0, 1, 2) for h in hues):
            raise StructuralError("hues must be one value in 0..2 per vertex")
    colors = None
    if "colors" in doc:
        raw = doc["colors"]
        if len(raw) != n:
            raise StructuralError("colors must list one entry per vertex")
        colors = [None if c is None else _as_color(c) for c in raw]
    boundary_coloring = None
    if "boundary_coloring" in doc:
        boundary_coloring = {}
        for v, c in doc["boundary_coloring"]:
            v = int(v)
            if not 0 <= v < n:
                raise StructuralError(f"precolored vertex {v} out of range")
            boundary_coloring[v] = _as_color(c)
    return Instance(graph, hues, colors, boundary_coloring)


def _as_color(c) -> Color:
    pair = (int(c[0]), int(c[1]))
    if pair[0] not in (0, 1) or pair[1] not in (0, 1):
        raise StructuralError(f"color {c} is not a pair over 0/1")
    return pair


def dumps_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), separators=(", ", ": "))


def loads_instance(text: str) -> Instance:
    return instance_from_dict(json.loads(text))


def load_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_instance(fh.read())


def save_instance(path: str, inst: Instance) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_instance(inst) + "\n")


def load_walk(path: str) -> tuple[list, bool]:
    """Walk documents: {"walk": [...], "closed": bool}; entries are vertex ids
    or [i, j] grid points."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    try:
        raw = doc["walk"]
    except (KeyError, TypeError) as exc:
        raise StructuralError("walk file needs a 'walk' array") from exc
    closed = bool(doc.get("closed", False))
    walk = [tuple(x) if isinstance(x, list) else int(x) for x in raw]
    return walk, closed
