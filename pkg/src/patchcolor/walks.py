"""Walk calculus: openings, combinations, retraction and null-homotopy.

Walks are tuples of vertices (ints for graph walks, integer pairs for grid
walks).  Closed walks are cyclic sequences; equality is rotation
equivalence, realized by a canonical least rotation.  The empty closed walk
is a first-class value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import NotViable
from .grid import GridPoint, check_viability, grid_distance, grid_hue
from .plane import HuedPatch, PlaneGraph


class ClosedWalk:
    """Cyclic sequence of vertices; rotations of the sequence are equal."""

    __slots__ = ("seq", "_canon")

    def __init__(self, seq: Sequence = ()):
        self.seq = tuple(seq)
        self._canon: Optional[tuple] = None

    def canon(self) -> tuple:
        if self._canon is None:
            s = self.seq
            self._canon = min(s[i:] + s[:i] for i in range(len(s))) if s else ()
        return self._canon

    def __len__(self):
        return len(self.seq)

    def __iter__(self):
        return iter(self.seq)

    def __getitem__(self, i):
        return self.seq[i % len(self.seq)]

    def __eq__(self, other):
        return isinstance(other, ClosedWalk) and self.canon() == other.canon()

    def __hash__(self):
        return hash(self.canon())

    def __repr__(self):
        return f"ClosedWalk({list(self.seq)!r})"

    def reversed(self) -> "ClosedWalk":
        return ClosedWalk(tuple(reversed(self.seq)))

    def rotation(self, start: int) -> tuple:
        return self.seq[start:] + self.seq[:start]


EMPTY = ClosedWalk(())


def openings(z: ClosedWalk) -> list[tuple]:
    """Walks that traverse z once, one per starting position.

    A closed walk of length m has m openings; they are pairwise distinct
    exactly when the vertices of z are pairwise distinct.
    """
    m = len(z)
    return [z.rotation(i) + (z.seq[i],) for i in range(m)]


def combine(w1, w2: ClosedWalk, attach: int, rotation: int = 0):
    """Splice the chosen opening of w2 into w1 at position attach.

    w1 may be a walk (tuple) or a ClosedWalk; the result has the same kind.
    The opening of w2 starting at index `rotation` must begin at the vertex
    w1[attach].
    """
    closed = isinstance(w1, ClosedWalk)
    seq = w1.seq if closed else tuple(w1)
    if len(w2) == 0:
        return ClosedWalk(seq) if closed else seq
    opening = w2.rotation(rotation) + (w2.seq[rotation],)
    if seq[attach] != opening[0]:
        raise ValueError(
            f"opening starts at {opening[0]} but attachment vertex is {seq[attach]}"
        )
    out = seq[: attach + 1] + opening[1:] + seq[attach + 1 :]
    return ClosedWalk(out) if closed else out


def one_step_retraction(w, i: int):
    """Remove the backtracking segment starting at index i.

    For open walks this needs w[i] == w[i+2]; for closed walks indices are
    cyclic and a closed walk of length two retracts to the empty walk.
    """
    if isinstance(w, ClosedWalk):
        m = len(w)
        if m == 2:
            return EMPTY
        if m < 2 or w.seq[i % m] != w.seq[(i + 2) % m]:
            raise ValueError(f"segment at {i} is not retractable")
        drop = {(i + 1) % m, (i + 2) % m}
        return ClosedWalk(tuple(v for k, v in enumerate(w.seq) if k not in drop))
    seq = tuple(w)
    if i + 2 >= len(seq) or seq[i] != seq[i + 2]:
        raise ValueError(f"segment at {i} is not retractable")
    return seq[: i + 1] + seq[i + 3 :]


def topological_retract(w: Sequence) -> tuple:
    """Fully reduced open walk; unique regardless of retraction order."""
    stack: list = []
    for v in w:
        if len(stack) >= 2 and stack[-2] == v:
            stack.pop()
        else:
            stack.append(v)
    return tuple(stack)


def retract_with_witness(w: Sequence) -> tuple[tuple, list[int]]:
    """Leftmost-first reduction of an open walk, recording each index used."""
    seq = list(w)
    steps: list[int] = []
    i = 0
    while i + 2 < len(seq):
        if seq[i] == seq[i + 2]:
            steps.append(i)
            del seq[i + 1 : i + 3]
            i = max(i - 1, 0)
        else:
            i += 1
    return tuple(seq), steps


def topological_retract_closed(z: ClosedWalk) -> ClosedWalk:
    """Fully reduced closed walk, canonical up to rotation."""
    seq = list(z.seq)
    changed = True
    while changed and len(seq) > 2:
        changed = False
        m = len(seq)
        for i in range(m):
            if seq[i] == seq[(i + 2) % m]:
                drop = sorted(((i + 1) % m, (i + 2) % m), reverse=True)
                for k in drop:
                    del seq[k]
                changed = True
                break
    if len(seq) == 2:
        return EMPTY
    return ClosedWalk(tuple(seq))


def is_null_homotopic(z: ClosedWalk) -> bool:
    """True iff the topological retract of z is empty."""
    return len(topological_retract_closed(z)) == 0


def retractable_segments(z: ClosedWalk) -> list[int]:
    m = len(z)
    if m == 2:
        return [0, 1]
    return [i for i in range(m) if z.seq[i] == z.seq[(i + 2) % m]]


def split_retract_equal(z: ClosedWalk, k: int) -> bool:
    """Whether the two walks splitting z at position k have equal retracts.

    The closed walk u_1..u_m splits into u_1..u_k and u_1, u_m, ..., u_k;
    their retracts agree exactly when z is null-homotopic.
    """
    m = len(z)
    if m == 0:
        return True
    if not 1 <= k <= m:
        raise ValueError("split index out of range")
    w1 = z.seq[:k]
    w2 = (z.seq[0],) + tuple(reversed(z.seq[k - 1 :]))
    return topological_retract(w1) == topological_retract(w2)


def subwalk_graph(
    walk: Sequence[int], hues: Sequence[int], colors
) -> tuple[list[list[int]], list[int], list, list[int]]:
    """Adjacency, hues and colors of the subgraph traversed by a closed walk.

    Vertices are relabeled densely; returns (adjacency, hues, colors,
    original ids by new id).
    """
    ids = sorted(set(walk))
    new = {v: i for i, v in enumerate(ids)}
    adj: list[set[int]] = [set() for _ in ids]
    m = len(walk)
    for i in range(m):
        a, b = new[walk[i]], new[walk[(i + 1) % m]]
        adj[a].add(b)
        adj[b].add(a)
    return (
        [sorted(s) for s in adj],
        [hues[v] for v in ids],
        [colors[v] for v in ids],
        ids,
    )


def null_homotopic_on(
    walk: Sequence[int], hues: Sequence[int], colors
) -> bool:
    """Whether a viable coloring is null-homotopic on the closed walk.

    `colors` maps every vertex of the walk to a color (list or dict).  The
    walk's grid image is computed from one homomorphism of the traversed
    subgraph; all others are translations, so one member decides.  Raises
    NotViable when the coloring is not viable on the traversed subgraph.
    """
    colors = dict(enumerate(colors)) if not isinstance(colors, dict) else colors
    adj, sub_hues, sub_colors, ids = subwalk_graph(walk, hues, colors)
    f = check_viability(adj, sub_hues, sub_colors)
    if f is None:
        raise NotViable("coloring admits no grid homomorphism on the walk")
    pos = {v: i for i, v in enumerate(ids)}
    image = ClosedWalk(tuple(f[pos[v]] for v in walk))
    return is_null_homotopic(image)


@dataclass
class GlueStep:
    edge: tuple[int, int]
    attach_vertex: int


def face_combination(g: PlaneGraph) -> tuple[ClosedWalk, list[GlueStep]]:
    """Combination of all internal face walks and the outer walk, with audit.

    Face walks are merged pairwise along shared edges (smallest edge first,
    internal faces before the outer walk); every merge splices one walk into
    the other at a shared vertex so that the two darts of the shared edge
    become adjacent and cancel.  The final closed walk therefore retracts to
    the boundary walk of a spanning tree and is null-homotopic.
    """
    faces = g.faces()
    walks: list[Optional[list]] = [list(f.walk) for f in faces]
    is_outer = [f.outer for f in faces]
    audit: list[GlueStep] = []

    def dart_location(a: int, b: int) -> tuple[int, int]:
        for wi, w in enumerate(walks):
            if w is None:
                continue
            for k in range(len(w)):
                if w[k] == a and w[(k + 1) % len(w)] == b:
                    return wi, k
        raise AssertionError(f"dart ({a}, {b}) lost during merging")

    def alive() -> list[int]:
        return [i for i, w in enumerate(walks) if w is not None]

    while len(alive()) > 1:
        candidates = []
        for u, v in sorted(g.edges()):
            wa, ka = dart_location(v, u)
            wb, kb = dart_location(u, v)
            if wa == wb:
                continue
            internal = not (is_outer[wa] or is_outer[wb])
            candidates.append((not internal, (u, v), wa, ka, wb, kb))
        assert candidates, "no shared edge between remaining walks"
        _, (u, v), wa, ka, wb, kb = min(candidates)
        a_walk, b_walk = walks[wa], walks[wb]
        assert a_walk is not None and b_walk is not None
        # rotate the (v->u) holder to start at u, the (u->v) holder likewise
        a_rot = a_walk[ka + 1 :] + a_walk[: ka + 1]
        b_rot = b_walk[kb:] + b_walk[:kb]
        merged = b_rot + a_rot
        walks[wa] = merged
        walks[wb] = None
        is_outer[wa] = is_outer[wa] or is_outer[wb]
        audit.append(GlueStep((u, v), u))
    final = walks[alive()[0]]
    assert final is not None
    return ClosedWalk(tuple(final)), audit


def necessary_condition_quad(g: HuedPatch, phi) -> bool:
    """Necessary condition for extending a boundary coloring of a patch
    extension of a near-quadrangulation: the coloring must be null-homotopic
    on the boundary cycle."""
    boundary = g.patch.boundary
    colors = dict(phi)
    return null_homotopic_on(boundary, g.hue, colors)


@dataclass
class NecessaryReport:
    status: str  # "obstruction_proven" | "inconclusive"
    witness: Optional[ClosedWalk] = None
    reason: str = ""
    examined: int = 0

    @property
    def obstruction_proven(self) -> bool:
        return self.status == "obstruction_proven"


def _grid_walks_matching(start: GridPoint, hue_seq: Sequence[int]):
    """All closed grid walks from start whose vertex hues follow hue_seq.

    hue_seq[0] must be the hue of start.  Each step has exactly three
    candidate neighbors of the required hue; branches that cannot return to
    the start in the remaining steps are pruned.
    """
    m = len(hue_seq)
    assert grid_hue(start) == hue_seq[0]
    path = [start]

    def candidates(p: GridPoint, hue: int) -> list[GridPoint]:
        out = []
        for di, dj in ((1, 0), (0, 1), (1, 1), (-1, 0), (0, -1), (-1, -1)):
            q = (p[0] + di, p[1] + dj)
            if grid_hue(q) == hue:
                out.append(q)
        return out

    def rec(i: int):
        if i == m:
            if grid_distance(path[-1], start) == 1:
                yield tuple(path)
            return
        for q in candidates(path[-1], hue_seq[i]):
            if grid_distance(q, start) > m - i:
                continue
            path.append(q)
            yield from rec(i + 1)
            path.pop()

    if m == 0:
        return
    yield from rec(1)


def necessary_condition_general(
    g: HuedPatch,
    phi,
    subgraph_edges: Optional[Sequence[tuple[int, int]]] = None,
    search_bound: int = 24,
) -> NecessaryReport:
    """Bounded exhaustive test of the topological necessary condition.

    For a connected plane subgraph h of g containing the boundary cycle, an
    extendable coloring forces some combination of the reversed boundary
    image with one hue-matching grid walk per internal face of h to be
    null-homotopic.  The search enumerates all such combinations (members of
    each face family up to translation, all attachment orders and positions)
    as long as the total combined length stays within the bound.  Finding no
    null-homotopic member proves the coloring does not extend.
    """
    boundary = g.patch.boundary
    colors = dict(phi)
    pg = g.patch.graph
    if subgraph_edges is None:
        m = len(boundary)
        subgraph_edges = [(boundary[i], boundary[(i + 1) % m]) for i in range(m)]
    edge_set = {frozenset(e) for e in subgraph_edges}
    for i in range(len(boundary)):
        e = frozenset((boundary[i], boundary[(i + 1) % len(boundary)]))
        if e not in edge_set:
            raise ValueError("subgraph must contain the boundary cycle")
    keep = sorted({v for e in edge_set for v in e})
    new = {v: i for i, v in enumerate(keep)}
    rotations = [
        [new[u] for u in pg.rotations[v] if frozenset((v, u)) in edge_set]
        for v in keep
    ]
    sub = PlaneGraph(rotations, (new[pg.outer[0]], new[pg.outer[1]]))
    face_hue_seqs = [
        [g.hue[keep[v]] for v in f.walk] for f in sub.faces() if not f.outer
    ]

    adj, sub_hues, sub_colors, ids = subwalk_graph(boundary, g.hue, colors)
    f = check_viability(adj, sub_hues, sub_colors)
    if f is None:
        raise NotViable("boundary coloring is not viable")
    pos = {v: i for i, v in enumerate(ids)}
    base = tuple(reversed([f[pos[v]] for v in boundary]))

    total = len(base) + sum(len(s) for s in face_hue_seqs)
    if total > search_bound:
        return NecessaryReport("inconclusive", reason="bound exceeded")

    examined = 0
    seen: set[tuple] = set()

    def search(current: tuple, remaining: tuple[int, ...]):
        nonlocal examined
        if not remaining:
            z = ClosedWalk(current)
            if z.canon() in seen:
                return None
            seen.add(z.canon())
            examined += 1
            if is_null_homotopic(z):
                return z
            return None
        for ri, fi in enumerate(remaining):
            hue_seq = face_hue_seqs[fi]
            L = len(hue_seq)
            rest = remaining[:ri] + remaining[ri + 1 :]
            for attach in range(len(current)):
                p = current[attach]
                for rot in range(L):
                    if hue_seq[rot] != grid_hue(p):
                        continue
                    rotated = hue_seq[rot:] + hue_seq[:rot]
                    for w in _grid_walks_matching(p, rotated):
                        spliced = (
                            current[: attach + 1] + w[1:] + (p,) + current[attach + 1 :]
                        )
                        found = search(spliced, rest)
                        if found is not None:
                            return found
        return None

    witness = search(base, tuple(range(len(face_hue_seqs))))
    if witness is not None:
        return NecessaryReport("inconclusive", witness=witness, examined=examined)
    return NecessaryReport(
        "obstruction_proven", reason="no null-homotopic combination", examined=examined
    )
