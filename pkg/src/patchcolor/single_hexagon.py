"""Decision pipeline for boundary colorings whose grid image fits one hexagon.

When the image of the boundary cycle under its grid homomorphism lies in the
closed neighborhood of a single grid point, extending the 4-coloring is
equivalent to extending a 3-precoloring of the bipartite subgraph spanned by
the two non-central hues.  The cited linear-time 3-coloring subroutine is
replaced by an exact backtracking solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .errors import ImproperColoring, InvalidCertificate
from .grid import (
    GridPoint,
    Hexagon,
    check_viability,
    cycle_adjacency,
    grid_adjacent,
    grid_color,
    grid_hue,
)
from .plane import COLORS, Color, HuedPatch, is_proper_coloring


@dataclass(frozen=True)
class SingleHexagonCertificate:
    """Hexagon containing the boundary image plus the boundary homomorphism."""

    hexagon: Hexagon
    images: tuple[GridPoint, ...]  # aligned with the boundary cycle

    def __post_init__(self):
        c = self.hexagon
        for p in self.images:
            if not c.contains(p):
                raise InvalidCertificate(f"{p} outside the hexagon at {c.center}")
            if (grid_hue(p) == c.central_hue) != (grid_color(p) == c.central_color):
                raise InvalidCertificate("central hue without central color")


@dataclass(frozen=True)
class ThreeColoringInstance:
    """Bipartite graph with a partial proper precoloring from three colors."""

    adjacency: tuple[tuple[int, ...], ...]
    precolor: tuple[tuple[int, Color], ...]
    palette: tuple[Color, Color, Color]
    vertex_ids: tuple[int, ...]  # ids in the originating patch


def boundary_viability(g: HuedPatch, phi: Mapping[int, Color]) -> Optional[list[GridPoint]]:
    """Grid homomorphism of the boundary cycle under phi, or None."""
    boundary = g.patch.boundary
    hues = [g.hue[v] for v in boundary]
    colors = [phi[v] for v in boundary]
    return check_viability(cycle_adjacency(len(boundary)), hues, colors)


def find_hexagon(images: Sequence[GridPoint]) -> Optional[SingleHexagonCertificate]:
    """Hexagon whose closed neighborhood contains all image points, if any.

    Candidate centers are the intersection of the closed neighborhoods of
    the image points (at most seven points); the lexicographically smallest
    valid center is chosen.
    """
    pts = list(images)
    first = pts[0]
    candidates = [first] + [(first[0] + di, first[1] + dj) for di, dj in
                            ((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1))]
    centers = [
        z for z in candidates
        if all(p == z or grid_adjacent(z, p) for p in pts)
    ]
    if not centers:
        return None
    return SingleHexagonCertificate(Hexagon(min(centers)), tuple(pts))


def reduce_to_bipartite(
    g: HuedPatch, cert: SingleHexagonCertificate, phi: Mapping[int, Color]
) -> ThreeColoringInstance:
    """3-precoloring instance on the subgraph of hues other than the central one."""
    c = cert.hexagon.central_hue
    k = cert.hexagon.central_color
    boundary = set(g.patch.boundary)
    for v in g.patch.boundary:
        if g.hue[v] == c and phi[v] != k:
            raise InvalidCertificate(
                f"boundary vertex {v} has the central hue but not the central color"
            )
    keep = [v for v in range(g.patch.graph.n) if g.hue[v] != c]
    new = {v: i for i, v in enumerate(keep)}
    adjacency = tuple(
        tuple(new[u] for u in g.patch.graph.neighbors(v) if g.hue[u] != c)
        for v in keep
    )
    precolor = tuple(
        (new[v], phi[v]) for v in keep if v in boundary
    )
    palette = tuple(col for col in COLORS if col != k)
    return ThreeColoringInstance(adjacency, precolor, palette, tuple(keep))


def solve_3precoloring(inst: ThreeColoringInstance) -> Optional[list[Color]]:
    """Extend the precoloring to a proper coloring from the palette, if possible.

    Unit propagation on the color domains plus backtracking on a vertex of
    minimum remaining domain.
    """
    n = len(inst.adjacency)
    domains: list[set[Color]] = [set(inst.palette) for _ in range(n)]
    for v, col in inst.precolor:
        if col not in domains[v]:
            return None
        domains[v] = {col}

    def propagate(doms: list[set[Color]], seeds: list[int]) -> Optional[list[int]]:
        order = list(seeds)
        fixed = []
        while order:
            v = order.pop()
            if len(doms[v]) != 1:
                continue
            (col,) = doms[v]
            fixed.append(v)
            for u in inst.adjacency[v]:
                if col in doms[u]:
                    if len(doms[u]) == 1:
                        return None
                    doms[u] = doms[u] - {col}
                    if len(doms[u]) == 1:
                        order.append(u)
        return fixed

    def solve(doms: list[set[Color]]) -> Optional[list[Color]]:
        undecided = [v for v in range(n) if len(doms[v]) > 1]
        if not undecided:
            return [next(iter(d)) for d in doms]
        v = min(undecided, key=lambda u: len(doms[u]))
        for col in sorted(doms[v]):
            trial = [set(d) for d in doms]
            trial[v] = {col}
            if propagate(trial, [v]) is None:
                continue
            got = solve(trial)
            if got is not None:
                return got
        return None

    start = [set(d) for d in domains]
    if propagate(start, list(range(n))) is None:
        return None
    return solve(start)


def lift_coloring(
    solution: Sequence[Color],
    cert: SingleHexagonCertificate,
    inst: ThreeColoringInstance,
    g: HuedPatch,
) -> list[Color]:
    """4-coloring of the patch: central-hue vertices get the central color."""
    k = cert.hexagon.central_color
    colors: list[Optional[Color]] = [None] * g.patch.graph.n
    for new_id, old_id in enumerate(inst.vertex_ids):
        colors[old_id] = solution[new_id]
    for v in range(g.patch.graph.n):
        if colors[v] is None:
            colors[v] = k
    out = [c for c in colors if c is not None]
    assert is_proper_coloring(g.patch.graph, out), "lifted coloring is not proper"
    return out


@dataclass
class HexagonDecision:
    status: str  # "extends" | "not_viable" | "not_single_hexagon" | "no_3_coloring"
    coloring: Optional[list[Color]] = None
    certificate: Optional[SingleHexagonCertificate] = None
    images: Optional[list[GridPoint]] = None

    @property
    def extends(self) -> bool:
        return self.status == "extends"


def decide_single_hexagon(g: HuedPatch, phi: Mapping[int, Color]) -> HexagonDecision:
    """Full pipeline: viability, hexagon detection, reduction, solving, lift.

    The verdict is stage-tagged; "not_single_hexagon" means the equivalence
    does not apply, not that the coloring fails to extend.  Raises
    ImproperColoring when phi is improper on the boundary cycle itself.
    """
    boundary = g.patch.boundary
    for i in range(len(boundary)):
        u, v = boundary[i], boundary[(i + 1) % len(boundary)]
        if phi[u] == phi[v]:
            raise ImproperColoring(f"boundary neighbors {u}, {v} share a color")
    images = boundary_viability(g, phi)
    if images is None:
        return HexagonDecision("not_viable")
    cert = find_hexagon(images)
    if cert is None:
        return HexagonDecision("not_single_hexagon", images=images)
    inst = reduce_to_bipartite(g, cert, phi)
    solution = solve_3precoloring(inst)
    if solution is None:
        return HexagonDecision("no_3_coloring", certificate=cert, images=images)
    colors = lift_coloring(solution, cert, inst, g)
    assert all(colors[v] == phi[v] for v in boundary), "witness ignores the precoloring"
    return HexagonDecision("extends", coloring=colors, certificate=cert, images=images)
