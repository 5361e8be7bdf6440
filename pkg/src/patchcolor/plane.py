"""Combinatorial plane graphs given by rotation systems.

A plane graph is stored as one counterclockwise rotation (cyclic neighbor
list) per vertex plus one directed edge designating the outer face.  Face
tracing follows a single fixed convention: from the dart (u -> v) the next
dart is (v -> w) where w is the predecessor of u in the counterclockwise
rotation of v.  Under this rule every face of the embedding is traced
exactly once and the walk traced from the stored outer dart is the outer
face.

Vertex ids are dense 0-based integers, hue maps are lists of ints in
{0, 1, 2} and color maps are lists of pairs over {0, 1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import (
    InternalFaceNotTriangle,
    NotBipartite,
    NotNearEulerian,
    NotTwoConnected,
    OuterBoundaryNotCycle,
    StructuralError,
)

Color = tuple[int, int]

#: Fixed order of the four colors, used whenever a deterministic choice is needed.
COLORS: tuple[Color, ...] = ((0, 0), (0, 1), (1, 0), (1, 1))


class FaceWalk(NamedTuple):
    walk: tuple[int, ...]
    outer: bool


class PlaneGraph:
    """Immutable plane graph: rotation system plus a designated outer dart."""

    __slots__ = ("rotations", "outer", "_pred", "_faces")

    def __init__(self, rotations: Sequence[Sequence[int]], outer: Sequence[int]):
        rots = tuple(tuple(int(x) for x in r) for r in rotations)
        n = len(rots)
        if n < 2:
            raise StructuralError("need at least two vertices")
        for v, rot in enumerate(rots):
            if not rot:
                raise StructuralError(f"vertex {v} is isolated")
            if len(set(rot)) != len(rot):
                raise StructuralError(f"vertex {v} lists a neighbor twice")
            for u in rot:
                if not 0 <= u < n:
                    raise StructuralError(f"vertex {v} lists out-of-range neighbor {u}")
                if u == v:
                    raise StructuralError(f"vertex {v} lists itself")
        for v, rot in enumerate(rots):
            for u in rot:
                if v not in rots[u]:
                    raise StructuralError(f"adjacency not symmetric on ({v}, {u})")
        u, v = int(outer[0]), int(outer[1])
        if not (0 <= u < n) or v not in rots[u]:
            raise StructuralError(f"outer dart ({u}, {v}) is not a dart")
        self.rotations = rots
        self.outer = (u, v)
        # predecessor-in-rotation lookup, the heart of the face tracing rule
        self._pred = tuple(
            {rot[i]: rot[i - 1] for i in range(len(rot))} for rot in rots
        )
        self._faces: Optional[tuple[FaceWalk, ...]] = None
        self._check_planarity()

    @property
    def n(self) -> int:
        return len(self.rotations)

    @property
    def edge_count(self) -> int:
        return sum(len(r) for r in self.rotations) // 2

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotations[v]

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._pred[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.rotations[u] if u < v]

    def next_dart(self, u: int, v: int) -> tuple[int, int]:
        return (v, self._pred[v][u])

    def _trace_from(self, u: int, v: int) -> tuple[int, ...]:
        walk = [u]
        cu, cv = u, v
        while True:
            walk.append(cv)
            cu, cv = self.next_dart(cu, cv)
            if (cu, cv) == (u, v):
                break
        walk.pop()  # closing vertex equals walk[0]
        return tuple(walk)

    def faces(self) -> tuple[FaceWalk, ...]:
        if self._faces is not None:
            return self._faces
        seen: set[tuple[int, int]] = set()
        out: list[FaceWalk] = []
        darts = [self.outer] + sorted(
            (u, v) for u in range(self.n) for v in self.rotations[u]
        )
        for u, v in darts:
            if (u, v) in seen:
                continue
            walk = self._trace_from(u, v)
            for i in range(len(walk)):
                seen.add((walk[i], walk[(i + 1) % len(walk)]))
            out.append(FaceWalk(walk, (u, v) == self.outer))
        self._faces = tuple(out)
        return self._faces

    def internal_faces(self) -> list[tuple[int, ...]]:
        return [f.walk for f in self.faces() if not f.outer]

    def outer_walk(self) -> tuple[int, ...]:
        return self.faces()[0].walk

    def _check_planarity(self) -> None:
        faces = self.faces()
        total = sum(len(f.walk) for f in faces)
        if total != 2 * self.edge_count:
            raise StructuralError("face tracing does not partition the darts")
        if self.n - self.edge_count + len(faces) != 2:
            raise StructuralError(
                "Euler's formula fails: not a connected planar embedding"
            )


def trace_faces(g: PlaneGraph) -> list[FaceWalk]:
    """All faces of the embedding as closed walks, outer face flagged."""
    return list(g.faces())


def mirror(g: PlaneGraph) -> PlaneGraph:
    """The mirror image: all rotations reversed, outer dart reversed."""
    return PlaneGraph([list(reversed(r)) for r in g.rotations], (g.outer[1], g.outer[0]))


@dataclass(frozen=True)
class Patch:
    """Plane graph whose internal faces are all triangles, outer face a cycle."""

    graph: PlaneGraph
    boundary: tuple[int, ...]


@dataclass(frozen=True)
class HuedPatch:
    patch: Patch
    hue: tuple[int, ...]


@dataclass(frozen=True)
class DappledPatch:
    hued: HuedPatch
    color: tuple[Color, ...]


def validate_patch(g: PlaneGraph) -> Patch:
    """Check the patch conditions and return the Patch wrapper.

    Raises InternalFaceNotTriangle or OuterBoundaryNotCycle.
    """
    outer = g.outer_walk()
    if len(outer) < 3 or len(set(outer)) != len(outer):
        raise OuterBoundaryNotCycle(f"outer walk {outer} is not a cycle")
    for f in g.faces():
        if not f.outer and len(f.walk) != 3:
            raise InternalFaceNotTriangle(f.walk)
    return Patch(g, outer)


def boundary_of(g: PlaneGraph) -> tuple[int, ...]:
    """Outer face walk, required to be a simple cycle."""
    outer = g.outer_walk()
    if len(outer) < 3 or len(set(outer)) != len(outer):
        raise OuterBoundaryNotCycle(f"outer walk {outer} is not a cycle")
    return outer


def is_near_eulerian(p: Patch) -> bool:
    """True iff every internal vertex has even degree."""
    on_boundary = set(p.boundary)
    return all(
        p.graph.degree(v) % 2 == 0
        for v in range(p.graph.n)
        if v not in on_boundary
    )


def compute_hues(p: Patch) -> list[int]:
    """Proper 3-coloring by forced propagation through internal triangles.

    The lexicographically smallest edge is seeded with hues (0, 1); in each
    internal triangle two known hues force the third.  Should any component
    remain untouched (blocks across cut vertices), it is reseeded on its
    smallest edge.  Raises NotNearEulerian when propagation derives a
    conflict, which happens exactly when some internal vertex has odd degree.
    """
    g = p.graph
    hue: list[Optional[int]] = [None] * g.n
    triangles = [f.walk for f in g.faces() if not f.outer]
    tris_at: list[list[int]] = [[] for _ in range(g.n)]
    for idx, t in enumerate(triangles):
        for v in t:
            tris_at[v].append(idx)

    def propagate(seeds: Iterable[int]) -> None:
        work = list(seeds)
        while work:
            t = triangles[work.pop()]
            known = [hue[v] for v in t if hue[v] is not None]
            if len(set(known)) != len(known):
                raise NotNearEulerian(f"hue conflict on triangle {t}")
            if len(known) == 2:
                rest = [v for v in t if hue[v] is None][0]
                hue[rest] = 3 - known[0] - known[1]
                work.extend(tris_at[rest])

    edges = sorted(g.edges())
    while True:
        seed = next((e for e in edges if hue[e[0]] is None or hue[e[1]] is None), None)
        if seed is None:
            break
        u, v = seed
        if hue[u] is None and hue[v] is None:
            hue[u], hue[v] = 0, 1
        elif hue[u] is None:
            hue[u] = (hue[v] + 1) % 3
        else:
            hue[v] = (hue[u] + 1) % 3
        propagate(set(tris_at[u]) | set(tris_at[v]))

    for u, v in edges:
        if hue[u] == hue[v]:
            raise NotNearEulerian(f"hue conflict on edge ({u}, {v})")
    return [h for h in hue if h is not None]


def bipartition(g: PlaneGraph) -> list[int]:
    """Two-coloring by BFS from vertex 0; raises NotBipartite."""
    side: list[Optional[int]] = [None] * g.n
    side[0] = 0
    queue = [0]
    while queue:
        v = queue.pop(0)
        for u in g.neighbors(v):
            if side[u] is None:
                side[u] = 1 - side[v]
                queue.append(u)
            elif side[u] == side[v]:
                raise NotBipartite(f"odd cycle through edge ({v}, {u})")
    if any(s is None for s in side):
        raise StructuralError("graph is not connected")
    return [s for s in side if s is not None]


def is_two_connected(g: PlaneGraph) -> bool:
    if g.n < 3:
        return False
    for cut in range(g.n):
        start = 0 if cut != 0 else 1
        seen = {cut, start}
        queue = [start]
        while queue:
            v = queue.pop()
            for u in g.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        if len(seen) != g.n:
            return False
    return True


def patch_extension(b: PlaneGraph) -> HuedPatch:
    """Insert a new hue-2 vertex into every internal face of a bipartite graph.

    Original vertices keep hues 0/1 by bipartition class (vertex 0 is hue 0);
    each new vertex is joined to all vertices of its face in embedding order.
    Face vertices are numbered n, n+1, ... in face tracing order.
    """
    side = bipartition(b)
    if not is_two_connected(b):
        raise NotTwoConnected("patch extension needs a 2-connected base")
    faces = [f.walk for f in b.faces() if not f.outer]
    n = b.n
    centers = list(range(n, n + len(faces)))
    # per original vertex: map (w, w') of consecutive rotation entries -> center
    # to insert between them (each face corner uses one distinct pair)
    inserts: list[dict[tuple[int, int], int]] = [dict() for _ in range(n)]
    for c, walk in zip(centers, faces):
        k = len(walk)
        for i, v in enumerate(walk):
            nxt, prv = walk[(i + 1) % k], walk[(i - 1) % k]
            inserts[v][(nxt, prv)] = c
    rotations: list[list[int]] = []
    for v in range(n):
        rot = b.rotations[v]
        new_rot: list[int] = []
        for i, w in enumerate(rot):
            new_rot.append(w)
            c = inserts[v].get((w, rot[(i + 1) % len(rot)]))
            if c is not None:
                new_rot.append(c)
        rotations.append(new_rot)
    for walk in faces:
        rotations.append(list(walk))
    ext = PlaneGraph(rotations, b.outer)
    patch = validate_patch(ext)
    hues = side + [2] * len(faces)
    return HuedPatch(patch, tuple(hues))


def is_odd_patch(h: HuedPatch) -> bool:
    """True iff every vertex of the boundary cycle has odd degree."""
    g = h.patch.graph
    return all(g.degree(v) % 2 == 1 for v in h.patch.boundary)


def is_near_quadrangulation(g: PlaneGraph) -> bool:
    """True iff g is 2-connected and every internal face has length four."""
    if not is_two_connected(g):
        return False
    return all(len(f.walk) == 4 for f in g.faces() if not f.outer)


def cut_along_edge(
    g: PlaneGraph, u: int, v: int
) -> tuple[PlaneGraph, tuple[int, ...], list[int]]:
    """Cut from the outer face along the edge uv (u on the boundary, v internal).

    u splits into two boundary vertices (u keeps its id, the new copy gets id
    n) and v becomes a boundary vertex.  Returns the cut graph, its boundary
    cycle and the map from new vertex ids to old ones.  The new boundary has
    length |C| + 2 and all internal faces are preserved.
    """
    boundary = boundary_of(g)
    if u not in boundary:
        raise StructuralError(f"{u} is not on the boundary")
    if v in boundary:
        raise StructuralError(f"{v} is on the boundary")
    if not g.has_edge(u, v):
        raise StructuralError(f"({u}, {v}) is not an edge")
    j = boundary.index(u)
    w_prev, w_next = boundary[j - 1], boundary[(j + 1) % len(boundary)]
    rot = list(g.rotations[u])
    # open the rotation of u right after its boundary predecessor
    k = rot.index(w_prev)
    rot = rot[k:] + rot[:k]  # [w_prev, x_1, ..., x_t, w_next]
    assert rot[-1] == w_next, "outer corner of u not where the trace says"
    m = rot.index(v)
    u2 = g.n
    rotations = [list(r) for r in g.rotations]
    rotations[u] = rot[: m + 1]          # [w_prev, x_1, ..., x_{m-1}, v]
    rotations.append(rot[m:])            # [v, x_{m+1}, ..., x_t, w_next]
    for x in rot[m + 1 :]:
        rx = rotations[x]
        rx[rx.index(u)] = u2
    rv = rotations[v]
    rv[rv.index(u) : rv.index(u) + 1] = [u2, u]
    new_boundary = boundary[: j + 1] + (v, u2) + boundary[j + 1 :]
    cut = PlaneGraph(rotations, (u, v))
    assert cut.outer_walk() == (u, v, u2) + boundary[j + 1 :] + boundary[: j], (
        "cut boundary does not match the expected cycle"
    )
    old_of_new = list(range(g.n)) + [u]
    return cut, tuple(new_boundary), old_of_new


def subgraph_inside_cycle(
    g: PlaneGraph, cycle: Sequence[int]
) -> tuple[PlaneGraph, list[int], tuple[int, ...]]:
    """Sub-plane-graph drawn in the closed disk bounded by a cycle of g.

    The cycle is given as a vertex sequence whose consecutive pairs are edges
    of g.  Returns (subgraph, old ids indexed by new id, boundary of the
    subgraph in new ids tracing the given cycle).
    """
    m = len(cycle)
    cyc_edges = {frozenset((cycle[i], cycle[(i + 1) % m])) for i in range(m)}
    faces = g.faces()
    edge_faces: dict[frozenset[int], list[int]] = {}
    for idx, f in enumerate(faces):
        walk = f.walk
        for i in range(len(walk)):
            e = frozenset((walk[i], walk[(i + 1) % len(walk)]))
            edge_faces.setdefault(e, []).append(idx)
    # flood the outside starting at the outer face, never crossing the cycle
    outside = {0}
    stack = [0]
    while stack:
        fi = stack.pop()
        walk = faces[fi].walk
        for i in range(len(walk)):
            e = frozenset((walk[i], walk[(i + 1) % len(walk)]))
            if e in cyc_edges:
                continue
            for fj in edge_faces[e]:
                if fj not in outside:
                    outside.add(fj)
                    stack.append(fj)
    inside = [i for i in range(len(faces)) if i not in outside]
    keep_edges: set[frozenset[int]] = set(cyc_edges)
    keep_vertices: set[int] = set(cycle)
    for fi in inside:
        walk = faces[fi].walk
        keep_vertices.update(walk)
        for i in range(len(walk)):
            keep_edges.add(frozenset((walk[i], walk[(i + 1) % len(walk)])))
    old_ids = sorted(keep_vertices)
    new_id = {old: new for new, old in enumerate(old_ids)}
    rotations = [
        [new_id[u] for u in g.rotations[old] if frozenset((old, u)) in keep_edges]
        for old in old_ids
    ]
    a, b = new_id[cycle[0]], new_id[cycle[1]]
    sub = PlaneGraph(rotations, (a, b))
    want = tuple(new_id[v] for v in cycle)
    if _cyclic_eq(sub.outer_walk(), want):
        return sub, old_ids, want
    sub = PlaneGraph(rotations, (b, a))
    assert _cyclic_eq(sub.outer_walk(), want), "cycle does not bound the region"
    return sub, old_ids, want


def _cyclic_eq(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b):
        return False
    ta, tb = tuple(a), tuple(b)
    return any(ta[i:] + ta[:i] == tb for i in range(len(ta)))


def is_proper_coloring(g: PlaneGraph, colors: Sequence) -> bool:
    return all(colors[u] != colors[v] for u, v in g.edges())


def coloring_extends(colors: Sequence, boundary_coloring) -> bool:
    return all(colors[v] == c for v, c in dict(boundary_coloring).items())
