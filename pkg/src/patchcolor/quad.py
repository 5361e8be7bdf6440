"""Extension machinery for patch extensions of near-quadrangulations.

A boundary 4-coloring extends to the patch extension of a 2-connected plane
graph with quadrilateral internal faces exactly when it is viable,
null-homotopic on the boundary, and admits no shortcut: no internal path
between boundary vertices that is strictly shorter than the topological
retract of the grid image of the boundary arc it spans.  The decision runs
the shortcut search; the constructor follows the tight-chord / cut-edge
recursion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .errors import (
    ImproperColoring,
    NotNearQuadrangulation,
    NotNullHomotopic,
    NotViable,
)
from .grid import (
    STEPS,
    GridPoint,
    check_viability,
    cycle_adjacency,
    grid_color,
    grid_hue,
)
from .plane import (
    COLORS,
    Color,
    DappledPatch,
    HuedPatch,
    PlaneGraph,
    bipartition,
    boundary_of,
    cut_along_edge,
    is_near_quadrangulation,
    is_proper_coloring,
    mirror,
    patch_extension,
    subgraph_inside_cycle,
    validate_patch,
)
from .walks import ClosedWalk, is_null_homotopic, topological_retract


@dataclass(frozen=True)
class ShortcutReport:
    x: int
    y: int
    chord: tuple[int, ...]          # path from x to y, interior internal
    base: tuple[int, ...]           # boundary arc from x to y
    retract_edges: int
    chord_edges: int
    kind: str                       # "shortcut" | "tight" | "slack"


def _boundary_images(
    boundary: Sequence[int], hues: Sequence[int], phi: Mapping[int, Color]
) -> Optional[list[GridPoint]]:
    m = len(boundary)
    cyc_hues = [hues[v] for v in boundary]
    cyc_colors = [phi[v] for v in boundary]
    return check_viability(cycle_adjacency(m), cyc_hues, cyc_colors)


def _arc(boundary: Sequence[int], i: int, j: int) -> tuple[int, ...]:
    m = len(boundary)
    out = [boundary[i]]
    k = i
    while k != j:
        k = (k + 1) % m
        out.append(boundary[k])
    return tuple(out)


def _retract_lengths(images: Sequence[GridPoint]) -> list[list[int]]:
    """r[i][j] = edge count of the retract of the image arc i -> j (forward)."""
    m = len(images)
    r = [[0] * m for _ in range(m)]
    for i in range(m):
        stack = [images[i]]
        for step in range(1, m):
            j = (i + step) % m
            p = images[j]
            if len(stack) >= 2 and stack[-2] == p:
                stack.pop()
            else:
                stack.append(p)
            r[i][j] = len(stack) - 1
    return r


def _chord_search(
    g: PlaneGraph, boundary: Sequence[int], x: int
) -> tuple[dict[int, int], dict[int, int]]:
    """Shortest generalized chords from x: distances and BFS parents.

    Explores edges of g that are not boundary edges, never passing through a
    boundary vertex other than the endpoints.
    """
    on_boundary = set(boundary)
    m = len(boundary)
    boundary_edges = {
        frozenset((boundary[i], boundary[(i + 1) % m])) for i in range(m)
    }
    dist = {x: 0}
    parent: dict[int, int] = {}
    queue = [x]
    while queue:
        v = queue.pop(0)
        if v != x and v in on_boundary:
            continue
        for u in g.neighbors(v):
            if frozenset((v, u)) in boundary_edges:
                continue
            if u == x or u in dist:
                continue
            dist[u] = dist[v] + 1
            parent[u] = v
            queue.append(u)
    return dist, parent


def _chord_path(parent: dict[int, int], x: int, y: int) -> tuple[int, ...]:
    path = [y]
    while path[-1] != x:
        path.append(parent[path[-1]])
    return tuple(reversed(path))


def find_shortcut(
    g: PlaneGraph,
    boundary: Sequence[int],
    images: Sequence[GridPoint],
) -> tuple[Optional[ShortcutReport], Optional[ShortcutReport]]:
    """Scan all boundary pairs for shortcuts; also report a tight chord.

    Requires the boundary image to be null-homotopic so that both arcs of a
    pair give the same retract length.  Returns (shortcut, tight): the first
    is None exactly when no chord is strictly shorter than the retract of
    its base, the second reports some chord matching its retract length.
    """
    if not is_null_homotopic(ClosedWalk(tuple(images))):
        raise NotNullHomotopic("boundary image must be null-homotopic")
    m = len(boundary)
    r = _retract_lengths(images)
    pos = {v: i for i, v in enumerate(boundary)}
    shortcut = None
    tight = None
    for vx in sorted(boundary):
        dist, parent = _chord_search(g, boundary, vx)
        for vy in sorted(boundary):
            if vy == vx or vy not in dist:
                continue
            i, j = pos[vx], pos[vy]
            d = dist[vy]
            rr = r[i][j]
            assert r[j][i] == rr, "arc retract lengths disagree on a null-homotopic image"
            if d < rr:
                report = ShortcutReport(
                    vx, vy, _chord_path(parent, vx, vy), _arc(boundary, i, j), rr, d,
                    "shortcut",
                )
                if shortcut is None:
                    shortcut = report
            elif d == rr:
                if tight is None:
                    tight = ShortcutReport(
                        vx, vy, _chord_path(parent, vx, vy), _arc(boundary, i, j),
                        rr, d, "tight",
                    )
            else:
                assert (d - rr) % 2 == 0 and d >= rr + 2, (
                    "chord length and retract length must share parity"
                )
        if shortcut is not None:
            return shortcut, tight
    return shortcut, tight


def _check_quad_input(g: PlaneGraph, phi: Mapping[int, Color]) -> tuple[int, ...]:
    if not is_near_quadrangulation(g):
        raise NotNearQuadrangulation("input must be 2-connected with 4-faces")
    boundary = boundary_of(g)
    m = len(boundary)
    for i in range(m):
        u, v = boundary[i], boundary[(i + 1) % m]
        if phi[u] == phi[v]:
            raise ImproperColoring(f"boundary neighbors {u}, {v} share a color")
    return boundary


def decide_quad(g: PlaneGraph, phi: Mapping[int, Color]) -> bool:
    """Whether phi extends to a 4-coloring of the patch extension of g."""
    boundary = _check_quad_input(g, phi)
    hues = bipartition(g)
    images = _boundary_images(boundary, hues, phi)
    if images is None:
        return False
    if not is_null_homotopic(ClosedWalk(tuple(images))):
        return False
    shortcut, _ = find_shortcut(g, boundary, images)
    return shortcut is None


def _extend_rec(g: PlaneGraph, phi: dict[int, Color]) -> dict[int, Color]:
    """Color all vertices of the near-quadrangulation following the recursion.

    Preconditions (asserted): phi viable, null-homotopic and shortcut-free.
    """
    boundary = boundary_of(g)
    hues = bipartition(g)
    images = _boundary_images(boundary, hues, phi)
    assert images is not None, "recursion entered with a non-viable coloring"
    shortcut, tight = find_shortcut(g, boundary, images)
    assert shortcut is None, "recursion entered with a shortcut present"

    if g.edge_count == len(boundary):
        # the graph is the boundary cycle itself, forced to be a 4-cycle
        assert len(boundary) == 4, "near-quadrangulation equal to its boundary"
        return dict(phi)

    if tight is not None:
        pos = {v: i for i, v in enumerate(boundary)}
        f_of = {v: images[i] for v, i in pos.items()}
        path = tight.chord
        arc = tight.base
        retract = topological_retract([f_of[v] for v in arc])
        assert len(retract) == len(path), "tight chord does not match its retract"
        assert retract[0] == f_of[path[0]] and retract[-1] == f_of[path[-1]]
        phi_all = dict(phi)
        for v, p in zip(path[1:-1], retract[1:-1]):
            assert hues[v] == grid_hue(p), "hue mismatch on a tight extension"
            phi_all[v] = grid_color(p)
        cycle1 = arc + tuple(reversed(path[1:-1]))
        other = _arc(boundary, pos[arc[-1]], pos[arc[0]])
        cycle2 = other + path[1:-1]
        out = dict(phi_all)
        for cyc in (cycle1, cycle2):
            sub, old_ids, sub_boundary = subgraph_inside_cycle(g, cyc)
            sub_phi = {v: phi_all[old_ids[v]] for v in sub_boundary}
            colored = _extend_rec(sub, sub_phi)
            for v, col in colored.items():
                old = old_ids[v]
                assert out.get(old, col) == col, "sides disagree on a shared vertex"
                out[old] = col
        return out

    # all chords slack: cut along an edge leaving the boundary
    on_boundary = set(boundary)
    u = min(
        v for v in boundary if any(w not in on_boundary for w in g.neighbors(v))
    )
    v = next(w for w in g.neighbors(u) if w not in on_boundary)
    cut, cut_boundary, old_of_new = cut_along_edge(g, u, v)
    phi_cut: dict[int, Color] = {}
    for w in cut_boundary:
        old = old_of_new[w]
        if old == u:
            phi_cut[w] = phi[u]
        elif w == v:
            phi_cut[w] = next(c for c in COLORS if c != phi[u])
        else:
            phi_cut[w] = phi[old]
    colored = _extend_rec(cut, phi_cut)
    out: dict[int, Color] = {}
    for w, col in colored.items():
        old = old_of_new[w]
        assert out.get(old, col) == col, "cut copies disagree"
        out[old] = col
    return out


def extend_quad(
    g: PlaneGraph, phi: Mapping[int, Color]
) -> Optional[tuple[HuedPatch, list[Color]]]:
    """Witness 4-coloring of the patch extension of g, or None.

    Returns the patch extension together with a coloring indexed by its
    vertex ids (originals first, then one center per internal face in face
    tracing order).
    """
    if not decide_quad(g, phi):
        return None
    base_colors = _extend_rec(g, dict(phi))
    ext = patch_extension(g)
    colors: list[Color] = [base_colors[v] for v in range(g.n)]
    for walk in g.internal_faces():
        used = {base_colors[v] for v in walk}
        free = [c for c in COLORS if c not in used]
        assert free, "face corners use all four colors; recursion is wrong"
        colors.append(free[0])
    assert is_proper_coloring(ext.patch.graph, colors), "witness is not proper"
    assert all(colors[v] == phi[v] for v in boundary_of(g)), "witness moved the boundary"
    return ext, colors


# ---------------------------------------------------------------------------
# Dappled patch realizing a prescribed viable boundary cycle
# ---------------------------------------------------------------------------


def _strictly_inside(pt2: GridPoint, poly2: Sequence[GridPoint]) -> bool:
    """Crossing-number test on doubled integer coordinates.

    The caller guarantees the point is not on the polygon.
    """
    x, y = pt2
    crossings = 0
    n = len(poly2)
    for i in range(n):
        ax, ay = poly2[i]
        bx, by = poly2[(i + 1) % n]
        if (ay > y) != (by > y):
            num = (y - ay) * (bx - ax)
            rhs = (x - ax) * (by - ay)
            if (by - ay) > 0:
                if num > rhs:
                    crossings += 1
            else:
                if num < rhs:
                    crossings += 1
    return crossings % 2 == 1


def _grid_region(
    images: Sequence[GridPoint],
) -> tuple[PlaneGraph, list[int], list[Color], list[int]]:
    """Subgraph of the grid drawn inside an injective closed grid cycle."""
    m = len(images)
    poly2 = [(2 * p[0], 2 * p[1]) for p in images]
    on_cycle = set(images)
    cyc_edges = {frozenset((images[i], images[(i + 1) % m])) for i in range(m)}
    lo_i = min(p[0] for p in images)
    hi_i = max(p[0] for p in images)
    lo_j = min(p[1] for p in images)
    hi_j = max(p[1] for p in images)
    pts = set(on_cycle)
    for i in range(lo_i, hi_i + 1):
        for j in range(lo_j, hi_j + 1):
            p = (i, j)
            if p not in on_cycle and _strictly_inside((2 * i, 2 * j), poly2):
                pts.add(p)
    edges: set[frozenset[GridPoint]] = set()
    for p in pts:
        for di, dj in ((1, 0), (0, 1), (1, 1)):
            q = (p[0] + di, p[1] + dj)
            if q not in pts:
                continue
            e = frozenset((p, q))
            if e in cyc_edges:
                edges.add(e)
            else:
                mid2 = (p[0] + q[0], p[1] + q[1])
                if _strictly_inside(mid2, poly2):
                    edges.add(e)
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
    a, b = idx[images[0]], idx[images[1]]
    want = tuple(idx[p] for p in images)
    # pick the dart whose trace is the polygon; the input order may run either
    # way around it, which _normalize_forward later resolves by mirroring
    pg = PlaneGraph(rotations, (a, b))
    ow = pg.outer_walk()
    if not (len(ow) == m and set(ow) == set(want)):
        pg = PlaneGraph(rotations, (b, a))
        ow = pg.outer_walk()
        assert len(ow) == m and set(ow) == set(want), (
            "cycle image does not bound the region"
        )
    hues = [grid_hue(p) for p in order]
    colors = [grid_color(p) for p in order]
    return pg, hues, colors, [idx[p] for p in images]


def _edge_graph(
    images: Sequence[GridPoint],
) -> tuple[PlaneGraph, list[int], list[Color], list[int]]:
    pg = PlaneGraph([[1], [0]], (0, 1))
    hues = [grid_hue(p) for p in images]
    colors = [grid_color(p) for p in images]
    return pg, hues, colors, [0, 1]


def _normalize_forward(
    pg: PlaneGraph, bids: Sequence[int]
) -> PlaneGraph:
    """Mirror the patch if needed so its outer trace follows bids in order."""
    if len(bids) == 2:
        return pg
    ow = pg.outer_walk()
    k = ow.index(bids[0])
    rot = ow[k:] + ow[:k]
    if rot[1] == bids[1]:
        return pg
    flipped = mirror(pg)
    ow = flipped.outer_walk()
    k = ow.index(bids[0])
    rot = ow[k:] + ow[:k]
    assert rot[1] == bids[1], "boundary ids do not lie on the outer face"
    return flipped


def _build_dappled(
    images: Sequence[GridPoint], hues: Sequence[int], colors: Sequence[Color]
) -> tuple[PlaneGraph, list[int], list[Color], list[int]]:
    """Recursive construction; returns (graph, hues, colors, boundary ids).

    Boundary ids are aligned with the input positions.  Length-2 inputs
    produce a single edge (used only inside the recursion).
    """
    m = len(images)
    assert all(grid_hue(p) == h for p, h in zip(images, hues))
    assert all(grid_color(p) == c for p, c in zip(images, colors))
    if m == 2:
        return _edge_graph(images)
    if len(set(images)) == m:
        return _grid_region(images)

    i0, j0 = min(
        (i, j)
        for i in range(m)
        for j in range(i + 1, m)
        if images[i] == images[j]
    )
    rot_images = list(images[i0:]) + list(images[:i0])
    rot_hues = list(hues[i0:]) + list(hues[:i0])
    rot_colors = list(colors[i0:]) + list(colors[:i0])
    r = j0 - i0

    g1, h1, c1, b1 = _build_dappled(rot_images[:r], rot_hues[:r], rot_colors[:r])
    g2, h2, c2, b2 = _build_dappled(rot_images[r:], rot_hues[r:], rot_colors[r:])
    g1 = _normalize_forward(g1, b1)
    g2 = _normalize_forward(g2, b2)

    z1, z2 = b1[0], b2[0]
    x, a1 = b1[-1], b1[1 % len(b1)]
    y, l2 = b2[1 % len(b2)], b2[-1]
    n1 = g1.n

    def remap2(v: int) -> int:
        if v == z2:
            return z1
        return n1 + v if v < z2 else n1 + v - 1

    n_merged = n1 + g2.n - 1
    hue_x, hue_y = h1[x], h2[y]
    hue_z, col_z = h1[z1], c1[z1]
    col_x, col_y = c1[x], c2[y]
    if hue_x == hue_y:
        q_ids = [n_merged]
        q_hues = [3 - hue_x - hue_z]
        q_cols = [next(c for c in COLORS if c not in (col_x, col_y, col_z))]
    else:
        q_ids = [n_merged, n_merged + 1]
        q_hues = [hue_y, hue_x]
        cq1 = next(c for c in COLORS if c not in (col_x, col_z))
        cq2 = next(c for c in COLORS if c not in (col_y, col_z, cq1))
        q_cols = [cq1, cq2]
    w = n_merged + len(q_ids)

    rotations: list[list[int]] = [list(r_) for r_ in g1.rotations]
    for v in range(g2.n):
        if v == z2:
            continue
        rotations.append([remap2(u) for u in g2.rotations[v]])
    assert len(rotations) == n_merged

    rot1z = list(g1.rotations[z1])
    ix = rot1z.index(x)
    L1 = rot1z[ix:] + rot1z[:ix]
    rot2z = [remap2(u) for u in g2.rotations[z2]]
    l2_id = remap2(l2)
    il = rot2z.index(l2_id)
    L2 = rot2z[il:] + rot2z[:il]
    rotations[z1] = L1 + L2 + list(reversed(q_ids))

    rx = rotations[x]
    rx[rx.index(z1) + 1 : rx.index(z1) + 1] = [q_ids[0], w]
    y_id = remap2(y)
    ry = rotations[y_id]
    ry[ry.index(z1) : ry.index(z1)] = [w, q_ids[-1]]

    if len(q_ids) == 1:
        rotations.append([x, z1, y_id, w])
    else:
        rotations.append([x, z1, q_ids[1], w])
        rotations.append([q_ids[0], z1, y_id, w])
    rotations.append([x] + q_ids + [y_id])  # w

    hues_out = list(h1) + [h2[v] for v in range(g2.n) if v != z2] + q_hues + [hue_z]
    colors_out = list(c1) + [c2[v] for v in range(g2.n) if v != z2] + q_cols + [col_z]

    merged = PlaneGraph(rotations, (z1, a1))
    merged_bids = [z1] + [v for v in b1[1:]] + [w] + [remap2(v) for v in b2[1:]]
    assert merged.outer_walk() == tuple(merged_bids), "glued boundary trace mismatch"
    out_bids = [0] * m
    for k in range(m):
        out_bids[(i0 + k) % m] = merged_bids[k]
    return merged, hues_out, colors_out, out_bids


def build_patch_from_cycle(
    hues: Sequence[int], colors: Sequence[Color]
) -> tuple[DappledPatch, list[int]]:
    """Dappled patch whose boundary cycle realizes the given hues and colors.

    The cycle must be viable; raises NotViable otherwise.  An injective grid
    image yields the region of the grid it encloses; a repeated image point
    splits the cycle there, builds both parts and rejoins them around a new
    apex vertex carrying the repeated point's hue and color.  Returns the
    patch and the boundary vertex ids aligned with the input positions.
    """
    m = len(hues)
    f = check_viability(cycle_adjacency(m), list(hues), list(colors))
    if f is None:
        raise NotViable("cycle coloring admits no grid homomorphism")
    pg, hue_list, color_list, bids = _build_dappled(f, list(hues), list(colors))
    patch = validate_patch(pg)
    for u, v in pg.edges():
        assert hue_list[u] != hue_list[v], "hue map is not proper"
        assert color_list[u] != color_list[v], "color map is not proper"
    dappled = DappledPatch(HuedPatch(patch, tuple(hue_list)), tuple(color_list))
    for k in range(m):
        assert hue_list[bids[k]] == hues[k] and color_list[bids[k]] == colors[k]
    return dappled, bids
