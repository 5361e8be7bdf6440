"""Ground-truth brute force and deterministic instance generators.

Everything here is seeded and independent of the decision pipelines, so the
outputs can serve as oracles in the test suites.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Sequence

from .grid import STEPS, GridPoint, grid_adjacent, grid_color, grid_hue
from .plane import (
    COLORS,
    Color,
    DappledPatch,
    HuedPatch,
    PlaneGraph,
    compute_hues,
    is_near_eulerian,
    patch_extension,
    validate_patch,
)

Seed = int


def oracle_extend_4(
    g: PlaneGraph, precolor: Mapping[int, Color]
) -> Optional[list[Color]]:
    """Exhaustive search for a proper 4-coloring extending the precoloring.

    Backtracking with forward checking over the four-color domains; returns
    a witness coloring or None when the search space is exhausted.
    """
    n = g.n
    domains: list[set[Color]] = [set(COLORS) for _ in range(n)]
    for v, col in dict(precolor).items():
        domains[v] = {col}

    def propagate(doms, seeds) -> bool:
        work = list(seeds)
        while work:
            v = work.pop()
            if len(doms[v]) != 1:
                continue
            (col,) = doms[v]
            for u in g.neighbors(v):
                if col in doms[u]:
                    if len(doms[u]) == 1:
                        return False
                    doms[u] = doms[u] - {col}
                    if len(doms[u]) == 1:
                        work.append(u)
        return True

    def solve(doms) -> Optional[list[Color]]:
        open_vs = [v for v in range(n) if len(doms[v]) > 1]
        if not open_vs:
            return [next(iter(d)) for d in doms]
        v = min(open_vs, key=lambda u: len(doms[u]))
        for col in sorted(doms[v]):
            trial = [set(d) for d in doms]
            trial[v] = {col}
            if propagate(trial, [v]) and (got := solve(trial)) is not None:
                return got
        return None

    start = [set(d) for d in domains]
    if not propagate(start, range(n)):
        return None
    return solve(start)


# ---------------------------------------------------------------------------
# Grid windows
# ---------------------------------------------------------------------------

Tri = tuple[int, int, int]  # (i, j, kind); kind 0 = lower-right, 1 = upper-left


def _tri_corners(t: Tri) -> tuple[GridPoint, GridPoint, GridPoint]:
    i, j, kind = t
    if kind == 0:
        return ((i, j), (i + 1, j), (i + 1, j + 1))
    return ((i, j), (i + 1, j + 1), (i, j + 1))


def _tri_edges(t: Tri) -> list[frozenset[GridPoint]]:
    a, b, c = _tri_corners(t)
    return [frozenset((a, b)), frozenset((b, c)), frozenset((a, c))]


def _edge_tris(e: frozenset[GridPoint]) -> list[Tri]:
    (p, q) = sorted(e)
    d = (q[0] - p[0], q[1] - p[1])
    if d == (1, 0):
        return [(p[0], p[1], 0), (p[0], p[1] - 1, 1)]
    if d == (0, 1):
        return [(p[0], p[1], 1), (p[0] - 1, p[1], 0)]
    if d == (1, 1):
        return [(p[0], p[1], 0), (p[0], p[1], 1)]
    raise ValueError(f"not a grid edge: {e}")


def _region_boundary(tris: set[Tri]) -> Optional[list[GridPoint]]:
    """Boundary cycle of a triangle region, or None if it is not a disk."""
    count: dict[frozenset[GridPoint], int] = {}
    for t in tris:
        for e in _tri_edges(t):
            count[e] = count.get(e, 0) + 1
    border = [e for e, c in count.items() if c == 1]
    incident: dict[GridPoint, list[frozenset[GridPoint]]] = {}
    for e in border:
        for p in e:
            incident.setdefault(p, []).append(e)
    if any(len(es) != 2 for es in incident.values()):
        return None
    corners = {p for t in tris for p in _tri_corners(t)}
    interior = [p for p in corners if p not in incident]
    # walk the border; it must be a single cycle through all border edges
    start = min(incident)
    cycle = [start]
    prev_edge = None
    while True:
        here = cycle[-1]
        nxt_edge = next(e for e in incident[here] if e != prev_edge)
        nxt = next(p for p in nxt_edge if p != here)
        if nxt == start:
            break
        cycle.append(nxt)
        prev_edge = nxt_edge
        if len(cycle) > len(border):
            return None
    if len(cycle) != len(border):
        return None
    # every interior corner must be fully surrounded
    for p in interior:
        hexa = {
            (p[0] + t[0], p[1] + t[1], t[2])
            for t in ((0, 0, 0), (0, 0, 1), (-1, -1, 0), (-1, -1, 1), (-1, 0, 0), (0, -1, 1))
        }
        if not hexa <= tris:
            return None
    return cycle


def _region_graph(tris: set[Tri], boundary: list[GridPoint]) -> tuple[PlaneGraph, list[GridPoint]]:
    edges: set[frozenset[GridPoint]] = set()
    pts: set[GridPoint] = set()
    for t in tris:
        pts.update(_tri_corners(t))
        edges.update(_tri_edges(t))
    order = sorted(pts)
    idx = {p: i for i, p in enumerate(order)}
    rotations = []
    for p in order:
        rot = []
        for di, dj in STEPS:
            q = (p[0] + di, p[1] + dj)
            if frozenset((p, q)) in edges:
                rot.append(idx[q])
        rotations.append(rot)
    a, b = idx[boundary[0]], idx[boundary[1]]
    pg = PlaneGraph(rotations, (a, b))
    m = len(boundary)
    if not (len(pg.outer_walk()) == m and set(pg.outer_walk()) == {idx[p] for p in boundary}):
        pg = PlaneGraph(rotations, (b, a))
        assert len(pg.outer_walk()) == m
    return pg, order


@dataclass(frozen=True)
class GridWindow:
    """Dappled patch cut out of the triangular grid, with its coordinates."""

    dappled: DappledPatch
    points: tuple[GridPoint, ...]  # aligned with vertex ids


def _window_from_tris(tris: set[Tri], boundary: list[GridPoint]) -> GridWindow:
    pg, order = _region_graph(tris, boundary)
    patch = validate_patch(pg)
    hues = tuple(grid_hue(p) for p in order)
    colors = tuple(grid_color(p) for p in order)
    window = GridWindow(DappledPatch(HuedPatch(patch, hues), colors), tuple(order))
    assert is_near_eulerian(patch), "grid window must be near-Eulerian"
    return window


def gen_grid_window(seed: Seed, triangles: int = 6, tries: int = 200) -> GridWindow:
    """Randomly grown simply connected union of grid triangles."""
    rng = random.Random(seed)
    for _ in range(tries):
        tris: set[Tri] = {(0, 0, rng.randrange(2))}
        stuck = 0
        while len(tris) < triangles and stuck < 50:
            frontier = []
            for t in tris:
                for e in _tri_edges(t):
                    for t2 in _edge_tris(e):
                        if t2 not in tris:
                            frontier.append(t2)
            cand = rng.choice(frontier)
            if _region_boundary(tris | {cand}) is None:
                stuck += 1
                continue
            tris.add(cand)
        boundary = _region_boundary(tris)
        if boundary is not None and len(tris) == triangles:
            return _window_from_tris(tris, boundary)
    raise RuntimeError("window growth failed; widen the retry budget")


def _canonical_tris(tris: frozenset[Tri]) -> frozenset[Tri]:
    mi = min(t[0] for t in tris)
    mj = min(t[1] for t in tris)
    return frozenset((i - mi, j - mj, k) for i, j, k in tris)


def enumerate_grid_windows(max_triangles: int) -> Iterator[GridWindow]:
    """All window shapes up to translation, by increasing triangle count."""
    level = {_canonical_tris(frozenset({(0, 0, 0)})), _canonical_tris(frozenset({(0, 0, 1)}))}
    seen = set(level)
    for shape in sorted(level, key=sorted):
        yield _window_from_tris(set(shape), _region_boundary(set(shape)))
    for _ in range(1, max_triangles):
        nxt = set()
        for shape in level:
            tris = set(shape)
            for t in tris:
                for e in _tri_edges(t):
                    for t2 in _edge_tris(e):
                        if t2 in tris:
                            continue
                        grown = frozenset(tris | {t2})
                        if _region_boundary(set(grown)) is None:
                            continue
                        canon = _canonical_tris(grown)
                        if canon not in seen:
                            seen.add(canon)
                            nxt.add(canon)
        for shape in sorted(nxt, key=sorted):
            yield _window_from_tris(set(shape), _region_boundary(set(shape)))
        level = nxt


# ---------------------------------------------------------------------------
# Near-quadrangulations
# ---------------------------------------------------------------------------


def _c4() -> tuple[PlaneGraph, tuple[int, ...]]:
    pg = PlaneGraph([[1, 3], [2, 0], [3, 1], [0, 2]], (1, 0))
    return pg, pg.outer_walk()


def _glue_quad(
    g: PlaneGraph, boundary: tuple[int, ...], kind: int, pos: int
) -> Optional[tuple[PlaneGraph, tuple[int, ...]]]:
    """Glue one quadrilateral onto the outer face along kind boundary edges."""
    m = len(boundary)
    b = boundary[pos:] + boundary[:pos]
    rotations = [list(r) for r in g.rotations]

    def insert_before(vertex: int, anchor: int, new: int) -> None:
        rot = rotations[vertex]
        rot.insert(rot.index(anchor), new)

    def insert_after(vertex: int, anchor: int, new: int) -> None:
        rot = rotations[vertex]
        rot.insert(rot.index(anchor) + 1, new)

    if kind == 1:
        u, v = b[0], b[1]
        n1, n2 = g.n, g.n + 1
        insert_before(u, b[-1], n1)
        insert_after(v, b[2 % m], n2)
        rotations.append([n2, u])
        rotations.append([v, n1])
        new_boundary = (u, n1, n2, v) + b[2:]
    elif kind == 2:
        if m < 3:
            return None
        u, v, w = b[0], b[1], b[2]
        x = g.n
        insert_before(u, b[-1], x)
        insert_after(w, b[3 % m], x)
        rotations.append([u, w])
        new_boundary = (u, x, w) + b[3:]
    elif kind == 3:
        if m < 5:
            return None
        u, v, w, t = b[0], b[1], b[2], b[3]
        if g.has_edge(u, t):
            return None
        insert_before(u, b[-1], t)
        insert_after(t, b[4 % m], u)
        new_boundary = (u, t) + b[4:]
    else:
        raise ValueError(f"glue kind must be 1..3, got {kind}")
    out = PlaneGraph(rotations, (new_boundary[0], new_boundary[1]))
    assert out.outer_walk() == new_boundary, "glue broke the outer face"
    return out, new_boundary


def gen_near_quadrangulation(seed: Seed, quads: int = 4) -> PlaneGraph:
    """Random disk quadrangulation grown by gluing quads on the boundary."""
    rng = random.Random(seed)
    g, boundary = _c4()
    built = 1
    guard = 0
    while built < quads:
        guard += 1
        if guard > 100 * quads:
            raise RuntimeError("quad growth stalled")
        kind = rng.choices((1, 2, 3), weights=(5, 4, 2))[0]
        pos = rng.randrange(len(boundary))
        got = _glue_quad(g, boundary, kind, pos)
        if got is None:
            continue
        g, boundary = got
        built += 1
    return g


def canonical_form(g: PlaneGraph) -> str:
    """Canonical string over all boundary roots and both orientations.

    Vertices are relabeled in BFS order; each vertex's rotation is read
    starting from the edge to its BFS parent, so the string determines the
    rooted embedding.  The minimum over all boundary darts and the two
    orientations is a canonical form for boundary-rooted plane graphs.
    """
    best = None
    boundary = g.outer_walk()
    for gg in (g, PlaneGraph([list(reversed(r)) for r in g.rotations], (g.outer[1], g.outer[0]))):
        for s in range(len(boundary)):
            u, v = boundary[s], boundary[(s + 1) % len(boundary)]
            if not gg.has_edge(u, v):
                u, v = v, u
            label = {u: 0, v: 1}
            order = [u, v]
            parent_edge = {u: v, v: u}
            qi = 1
            while qi < len(order):
                w = order[qi]
                rot = gg.rotations[w]
                k = rot.index(parent_edge[w])
                for step in range(len(rot)):
                    nb = rot[(k + step) % len(rot)]
                    if nb not in label:
                        label[nb] = len(order)
                        order.append(nb)
                        parent_edge[nb] = w
                qi += 1
            if len(order) != gg.n:
                continue
            rows = []
            for w in order:
                rot = gg.rotations[w]
                k = rot.index(parent_edge[w])
                rows.append(tuple(label[rot[(k + s2) % len(rot)]] for s2 in range(len(rot))))
            key = repr(rows)
            if best is None or key < best:
                best = key
    assert best is not None
    return best


def enumerate_near_quadrangulations(max_quads: int) -> Iterator[PlaneGraph]:
    """All disk quadrangulations with at most max_quads faces, up to
    boundary-rooted isomorphism (including reflections)."""
    g0, b0 = _c4()
    seen = {canonical_form(g0)}
    level = [(g0, b0)]
    yield g0
    for _ in range(1, max_quads):
        nxt = []
        for g, boundary in level:
            for kind in (1, 2, 3):
                for pos in range(len(boundary)):
                    got = _glue_quad(g, boundary, kind, pos)
                    if got is None:
                        continue
                    key = canonical_form(got[0])
                    if key not in seen:
                        seen.add(key)
                        nxt.append(got)
                        yield got[0]
        level = nxt


# ---------------------------------------------------------------------------
# Viable cycle colorings
# ---------------------------------------------------------------------------


def gen_viable_cycle_coloring(
    seed: Seed, hues: Sequence[int], attempts: int = 10_000
) -> Optional[list[Color]]:
    """Random viable coloring of a hued cycle, by rejection sampling.

    Walks the grid choosing a random neighbor of each required hue and keeps
    the colors when the walk closes; returns None after the attempt budget
    (closure can be impossible for some hue sequences).
    """
    rng = random.Random(seed)
    m = len(hues)
    for _ in range(attempts):
        p = (0, 0) if hues[0] == 0 else ((1, 0) if hues[0] == 1 else (1, 1))
        walk = [p]
        ok = True
        for k in range(1, m):
            options = []
            for di, dj in STEPS:
                q = (walk[-1][0] + di, walk[-1][1] + dj)
                if grid_hue(q) == hues[k]:
                    options.append(q)
            if not options:
                ok = False
                break
            walk.append(rng.choice(options))
        if not ok:
            continue
        if grid_adjacent(walk[-1], walk[0]):
            return [grid_color(p) for p in walk]
    return None


# ---------------------------------------------------------------------------
# Exhaustive small-instance stream
# ---------------------------------------------------------------------------


def proper_boundary_colorings(
    g: PlaneGraph, boundary: Sequence[int], max_colors: int = 4
) -> Iterator[dict[int, Color]]:
    """Proper colorings of the boundary cycle, canonical up to permutation.

    Colors are introduced in first-use order, which picks one representative
    per orbit of the color permutation group.  Properness is enforced on all
    edges between boundary vertices, chords included.
    """
    verts = list(boundary)
    adj_prev: list[list[int]] = []
    for i, v in enumerate(verts):
        adj_prev.append([j for j in range(i) if g.has_edge(v, verts[j])])
    assign: list[int] = []

    def rec(i: int, used: int) -> Iterator[dict[int, Color]]:
        if i == len(verts):
            yield {v: COLORS[c] for v, c in zip(verts, assign)}
            return
        cap = min(used + 1, max_colors)
        for c in range(cap):
            if any(assign[j] == c for j in adj_prev[i]):
                continue
            assign.append(c)
            yield from rec(i + 1, max(used, c + 1))
            assign.pop()

    yield from rec(0, 0)


def enumerate_small_instances(
    limit: int, max_window_triangles: int = 6, max_quads: int = 5
) -> Iterator[tuple[HuedPatch, dict[int, Color]]]:
    """Stream of (hued patch, boundary coloring) pairs for the suites.

    Bases are grid windows up to the given size and patch extensions of all
    small near-quadrangulations, deduplicated by canonical form; each base is
    paired with every proper boundary coloring up to color permutation.
    """
    bases: list[HuedPatch] = []
    seen = set()
    for w in enumerate_grid_windows(max_window_triangles):
        key = canonical_form(w.dappled.hued.patch.graph)
        if key not in seen:
            seen.add(key)
            patch = w.dappled.hued.patch
            bases.append(HuedPatch(patch, tuple(compute_hues(patch))))
    for q in enumerate_near_quadrangulations(max_quads):
        ext = patch_extension(q)
        key = canonical_form(ext.patch.graph)
        if key not in seen:
            seen.add(key)
            bases.append(ext)
    count = 0
    for base in bases:
        for phi in proper_boundary_colorings(base.patch.graph, base.patch.boundary):
            yield base, phi
            count += 1
            if count >= limit:
                return
