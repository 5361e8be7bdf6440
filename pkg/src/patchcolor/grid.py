"""The dappled triangular grid and homomorphisms into it.

Grid vertices are the integer points (i, j); two points are adjacent when
their difference is one of the six steps +-(1,0), +-(0,1), +-(1,1).  Every
point carries a hue (i + j) mod 3 and a color (i mod 2, j mod 2).  Points
and steps are plain integer pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .errors import ImproperColoring, StructuralError
from .plane import Color, DappledPatch

GridPoint = tuple[int, int]

#: The six steps in counterclockwise order of the standard drawing.
STEPS: tuple[GridPoint, ...] = ((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1))
_STEP_SET = frozenset(STEPS)


def grid_hue(p: GridPoint) -> int:
    return (p[0] + p[1]) % 3


def grid_color(p: GridPoint) -> Color:
    return (p[0] % 2, p[1] % 2)


def grid_adjacent(p: GridPoint, q: GridPoint) -> bool:
    return (q[0] - p[0], q[1] - p[1]) in _STEP_SET


def grid_distance(p: GridPoint, q: GridPoint) -> int:
    """Graph distance in the triangular grid."""
    d1, d2 = q[0] - p[0], q[1] - p[1]
    if d1 * d2 >= 0:
        return max(abs(d1), abs(d2))
    return abs(d1) + abs(d2)


def sigma(a: int, bc: Color) -> int:
    """+1 when the hue difference equals the integer sum of the color difference."""
    if a not in (1, 2) or bc not in ((0, 1), (1, 0), (1, 1)):
        raise ValueError(f"sigma is defined on {{1,2}} x nonzero colors, got {a}, {bc}")
    return 1 if a == bc[0] + bc[1] else -1


def edge_delta(hue_u: int, color_u: Color, hue_v: int, color_v: Color) -> GridPoint:
    """Grid step assigned to an edge from its hue and color differences."""
    a = (hue_v - hue_u) % 3
    bc = ((color_v[0] - color_u[0]) % 2, (color_v[1] - color_u[1]) % 2)
    if a == 0:
        raise ImproperColoring("adjacent vertices share a hue")
    if bc == (0, 0):
        raise ImproperColoring("adjacent vertices share a color")
    s = sigma(a, bc)
    return (s * bc[0], s * bc[1])


def walk_delta(hues: Sequence[int], colors: Sequence[Color]) -> GridPoint:
    """Sum of edge steps along a walk given per-vertex hues and colors."""
    di = dj = 0
    for k in range(1, len(hues)):
        si, sj = edge_delta(hues[k - 1], colors[k - 1], hues[k], colors[k])
        di += si
        dj += sj
    return (di, dj)


def canonical_point(hue: int, color: Color) -> GridPoint:
    """Lexicographically smallest point of the given hue and color in [0,6)^2."""
    for i in range(6):
        for j in range(6):
            if (i + j) % 3 == hue and (i % 2, j % 2) == color:
                return (i, j)
    raise ValueError(f"no point with hue {hue} and color {color}")


def build_homomorphism(
    g: DappledPatch, anchor: int, anchor_image: GridPoint
) -> list[GridPoint]:
    """Edge-, hue- and color-preserving map of a dappled patch into the grid.

    The image of each vertex is the anchor image plus the accumulated edge
    steps along any walk from the anchor; for dappled patches the sum is
    path-independent, which makes the map well defined and unique.
    """
    hues, colors = g.hued.hue, g.color
    if grid_hue(anchor_image) != hues[anchor] or grid_color(anchor_image) != colors[anchor]:
        raise ValueError("anchor image must match the anchor's hue and color")
    f = _spread_from(g.hued.patch.graph.rotations, hues, colors, anchor, anchor_image)
    if f is None:
        raise StructuralError("edge steps are not path-independent: not a dappled patch")
    return f


def _spread_from(
    adj: Sequence[Sequence[int]],
    hues: Sequence[int],
    colors: Sequence[Color],
    anchor: int,
    anchor_image: GridPoint,
) -> Optional[list[GridPoint]]:
    n = len(adj)
    f: list[Optional[GridPoint]] = [None] * n
    f[anchor] = anchor_image
    queue = [anchor]
    while queue:
        v = queue.pop()
        pv = f[v]
        assert pv is not None
        for u in adj[v]:
            step = edge_delta(hues[v], colors[v], hues[u], colors[u])
            pu = (pv[0] + step[0], pv[1] + step[1])
            if f[u] is None:
                f[u] = pu
                queue.append(u)
            elif f[u] != pu:
                return None
    if any(p is None for p in f):
        raise StructuralError("graph is not connected")
    return [p for p in f if p is not None]


def check_viability(
    adj: Sequence[Sequence[int]],
    hues: Sequence[int],
    colors: Sequence[Color],
) -> Optional[list[GridPoint]]:
    """Homomorphism of a connected hued, 4-colored graph into the grid, if any.

    The lexicographically smallest vertex is anchored at the canonical point
    of its hue and color; all other homomorphisms are translations of the
    returned one.  Returns None when no homomorphism exists.  Raises
    ImproperColoring if hues or colors are not proper.
    """
    anchor = 0
    return _spread_from(adj, hues, colors, anchor, canonical_point(hues[anchor], colors[anchor]))


def cycle_adjacency(m: int) -> list[list[int]]:
    """Adjacency lists of a cycle on vertices 0..m-1."""
    if m < 3:
        raise ValueError("a cycle needs at least three vertices")
    return [[(i - 1) % m, (i + 1) % m] for i in range(m)]


def step_neighbor(p: GridPoint, hue: int, color: Color) -> Optional[GridPoint]:
    """The unique neighbor of p with the given hue and color, if one exists."""
    found = None
    for di, dj in STEPS:
        q = (p[0] + di, p[1] + dj)
        if grid_hue(q) == hue and grid_color(q) == color:
            assert found is None, "two neighbors share a hue and color"
            found = q
    return found


@dataclass(frozen=True)
class Hexagon:
    """Subgraph of the grid induced by a center point and its six neighbors."""

    center: GridPoint

    @property
    def central_hue(self) -> int:
        return grid_hue(self.center)

    @property
    def central_color(self) -> Color:
        return grid_color(self.center)

    def ring(self) -> tuple[GridPoint, ...]:
        cx, cy = self.center
        return tuple((cx + di, cy + dj) for di, dj in STEPS)

    def contains(self, p: GridPoint) -> bool:
        return p == self.center or grid_adjacent(self.center, p)


# Images of the retraction by distance from (0,0) in the hue-0/1 subgraph
# minus the edge (0,0)-(0,1); distances 4+ collapse onto the last two ring
# vertices by parity.
_RETRACT_TABLE: dict[int, GridPoint] = {0: (0, 0), 1: (1, 0), 2: (2, 1), 3: (2, 2)}


def _honeycomb_neighbors(p: GridPoint) -> list[GridPoint]:
    # the hue-0/1 subgraph is 3-regular: hue 0 steps up, hue 1 steps down
    if grid_hue(p) == 0:
        deltas = ((1, 0), (0, 1), (-1, -1))
    else:
        deltas = ((-1, 0), (0, -1), (1, 1))
    return [(p[0] + di, p[1] + dj) for di, dj in deltas]


def _honeycomb_distance(target: GridPoint, margin: int = 6) -> int:
    """BFS distance from (0,0) to target in the hue-0/1 subgraph minus the
    edge (0,0)-(0,1), inside the bounding box inflated by the margin."""
    lo_i = min(0, target[0]) - margin
    hi_i = max(1, target[0]) + margin
    lo_j = min(0, target[1]) - margin
    hi_j = max(1, target[1]) + margin
    start = (0, 0)
    dist = {start: 0}
    frontier = [start]
    while frontier:
        nxt: list[GridPoint] = []
        for p in frontier:
            for q in _honeycomb_neighbors(p):
                if {p, q} == {(0, 0), (0, 1)}:
                    continue
                if not (lo_i <= q[0] <= hi_i and lo_j <= q[1] <= hi_j):
                    continue
                if q not in dist:
                    dist[q] = dist[p] + 1
                    if q == target:
                        return dist[q]
                    nxt.append(q)
        frontier = nxt
    raise StructuralError(f"{target} unreachable inside the search window")


def hexagon_retraction(x: Hexagon, p: GridPoint) -> GridPoint:
    """Image of p under the retraction of the grid onto the hexagon.

    Works in coordinates translated so the center sits at (1,1): points of
    the central hue map to the center, every other point maps through the
    distance table for the honeycomb of the two remaining hues.
    """
    tx, ty = x.center[0] - 1, x.center[1] - 1
    q = (p[0] - tx, p[1] - ty)
    if grid_hue(q) == 2:
        img = (1, 1)
    else:
        m = 0 if q == (0, 0) else _honeycomb_distance(q)
        if m in _RETRACT_TABLE:
            img = _RETRACT_TABLE[m]
        else:
            img = (1, 2) if m % 2 == 0 else (0, 1)
    return (img[0] + tx, img[1] + ty)


def image_of_walk(f: Mapping[int, GridPoint] | Sequence[GridPoint], walk: Sequence[int]) -> tuple[GridPoint, ...]:
    return tuple(f[v] for v in walk)
