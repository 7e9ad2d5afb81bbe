"""Undirected multigraphs, rotation systems and face walks.

Darts are plain integers: edge ``e`` yields darts ``2*e`` (from ``edges[e][0]``
to ``edges[e][1]``) and ``2*e + 1`` (the reverse), so ``d ^ 1`` reverses a dart.
Rotations list the darts leaving a vertex in counter-clockwise order. The face
to the left of a dart is traced by :func:`faces`; internal faces of a drawing
that respects the embedding are then walked counter-clockwise and the outer face
clockwise.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional


class StructureError(ValueError):
    """Raised for malformed graphs, rotations or embeddings."""


@dataclass(frozen=True)
class Graph:
    """Undirected multigraph on vertices ``0..n-1``; self-loops are rejected."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        edges = tuple((int(u), int(v)) for u, v in edges)
        if n < 0:
            raise StructureError("negative vertex count")
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise StructureError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise StructureError(f"self-loop at vertex {u}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def tail(self, d: int) -> int:
        return self.edges[d >> 1][d & 1]

    def head(self, d: int) -> int:
        return self.edges[d >> 1][1 - (d & 1)]

    @cached_property
    def out_darts(self) -> tuple[tuple[int, ...], ...]:
        """Darts leaving each vertex, in edge order (not a rotation)."""
        out: list[list[int]] = [[] for _ in range(self.n)]
        for e, (u, v) in enumerate(self.edges):
            out[u].append(2 * e)
            out[v].append(2 * e + 1)
        return tuple(tuple(x) for x in out)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.out_darts)

    def neighbors(self, v: int) -> list[int]:
        return [self.head(d) for d in self.out_darts[v]]

    def has_multi_edges(self) -> bool:
        seen = set()
        for u, v in self.edges:
            key = (u, v) if u < v else (v, u)
            if key in seen:
                return True
            seen.add(key)
        return False

    def edge_index(self) -> dict[tuple[int, int], int]:
        """Map ``(u, v)`` and ``(v, u)`` to an edge id (last one wins on multi-edges)."""
        index = {}
        for e, (u, v) in enumerate(self.edges):
            index[(u, v)] = e
            index[(v, u)] = e
        return index


@dataclass(frozen=True)
class FaceWalk:
    """Cyclic sequence of darts bounding one face, each with the face on its left."""

    darts: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.darts)

    def __len__(self) -> int:
        return len(self.darts)


@dataclass(frozen=True, eq=False)
class PlanarEmbeddedGraph:
    """A graph plus a counter-clockwise rotation system and optional outer face.

    ``outer_dart`` names the outer face as the face to the left of that dart,
    which keeps the designation stable however faces are numbered.
    """

    graph: Graph
    rotation: tuple[tuple[int, ...], ...]
    outer_dart: Optional[int] = None
    _rot_pos: list[int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        g = self.graph
        rotation = tuple(tuple(int(d) for d in r) for r in self.rotation)
        object.__setattr__(self, "rotation", rotation)
        if len(rotation) != g.n:
            raise StructureError("rotation must list every vertex")
        pos = [-1] * (2 * g.m)
        for v, rot in enumerate(rotation):
            for i, d in enumerate(rot):
                if not 0 <= d < 2 * g.m:
                    raise StructureError(f"unknown dart {d} at vertex {v}")
                if g.tail(d) != v:
                    raise StructureError(f"dart {d} does not leave vertex {v}")
                if pos[d] != -1:
                    raise StructureError(f"dart {d} listed twice")
                pos[d] = i
        if -1 in pos:
            missing = pos.index(-1)
            raise StructureError(f"dart {missing} missing from rotation of {g.tail(missing)}")
        object.__setattr__(self, "_rot_pos", pos)
        if self.outer_dart is not None and not 0 <= self.outer_dart < 2 * g.m:
            raise StructureError("outer dart out of range")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_adjacency(
        cls,
        adj: Sequence[Sequence[int]],
        outer: Optional[Sequence[int]] = None,
    ) -> "PlanarEmbeddedGraph":
        """Build from ordered neighbor lists (CCW per vertex).

        The k-th occurrence of ``v`` in ``adj[u]`` is paired with the k-th from
        last occurrence of ``u`` in ``adj[v]``; parallel edges bounding a lens
        appear in opposite orders at their two ends.
        """
        n = len(adj)
        for u, nbrs in enumerate(adj):
            for v in nbrs:
                if not 0 <= v < n:
                    raise StructureError(f"neighbor {v} of {u} out of range")
                if v == u:
                    raise StructureError(f"self-loop at vertex {u}")
        # slots[(u, v)] = positions in adj[u] holding v
        slots: dict[tuple[int, int], list[int]] = {}
        for u, nbrs in enumerate(adj):
            for i, v in enumerate(nbrs):
                slots.setdefault((u, v), []).append(i)
        dart_at: list[list[int]] = [[-1] * len(nbrs) for nbrs in adj]
        edges: list[tuple[int, int]] = []
        for (u, v), mine in slots.items():
            theirs = slots.get((v, u), [])
            if len(theirs) != len(mine):
                raise StructureError(f"adjacency of {u} and {v} is not symmetric")
            if u > v:
                continue
            for k, i in enumerate(mine):
                j = theirs[len(theirs) - 1 - k]
                e = len(edges)
                edges.append((u, v))
                dart_at[u][i] = 2 * e
                dart_at[v][j] = 2 * e + 1
        g = Graph(n, edges)
        outer_dart = None
        if outer is not None:
            a, b = outer
            for i, w in enumerate(adj[a]):
                if w == b:
                    outer_dart = dart_at[a][i]
                    break
            else:
                raise StructureError(f"outer dart {a}->{b} is not an edge")
        return cls(g, tuple(tuple(r) for r in dart_at), outer_dart)

    @classmethod
    def from_coordinates(
        cls, graph: Graph, coords: Sequence[Sequence[int]], with_outer: bool = True
    ) -> "PlanarEmbeddedGraph":
        """Embedding induced by a unit-length grid drawing (outer face = unbounded)."""
        rot = []
        for v in range(graph.n):
            x, y = coords[v]
            darts = list(graph.out_darts[v])
            darts.sort(key=lambda d: _direction(x, y, *coords[graph.head(d)]))
            rot.append(tuple(darts))
        emb = cls(graph, tuple(rot))
        if not with_outer or graph.m == 0:
            return emb
        return emb.with_outer(unbounded_face_dart(emb, coords))

    def adjacency(self) -> list[list[int]]:
        return [[self.graph.head(d) for d in rot] for rot in self.rotation]

    def with_outer(self, dart: Optional[int]) -> "PlanarEmbeddedGraph":
        return PlanarEmbeddedGraph(self.graph, self.rotation, dart)

    def mirror(self) -> "PlanarEmbeddedGraph":
        """Reflection: reversed rotations; the outer face keeps its edges."""
        rot = tuple(tuple(reversed(r)) for r in self.rotation)
        outer = None if self.outer_dart is None else self.outer_dart ^ 1
        return PlanarEmbeddedGraph(self.graph, rot, outer)

    # -- rotation and face structure ------------------------------------------

    def rot_next(self, d: int) -> int:
        rot = self.rotation[self.graph.tail(d)]
        return rot[(self._rot_pos[d] + 1) % len(rot)]

    def rot_prev(self, d: int) -> int:
        rot = self.rotation[self.graph.tail(d)]
        return rot[self._rot_pos[d] - 1]

    def face_next(self, d: int) -> int:
        """Next dart along the face to the left of ``d``."""
        return self.rot_prev(d ^ 1)

    @cached_property
    def _faces(self) -> tuple[tuple[FaceWalk, ...], tuple[int, ...]]:
        g = self.graph
        rotation = self.rotation
        pos = self._rot_pos
        edges = g.edges
        nd = 2 * g.m
        face_of = [-1] * nd
        walks = []
        for start in range(nd):
            if face_of[start] != -1:
                continue
            fid = len(walks)
            walk = []
            d = start
            while face_of[d] == -1:
                face_of[d] = fid
                walk.append(d)
                r = d ^ 1
                rot = rotation[edges[r >> 1][r & 1]]
                d = rot[pos[r] - 1]
            if d != start:
                raise StructureError("rotation does not induce closed face walks")
            walks.append(FaceWalk(tuple(walk)))
        return tuple(walks), tuple(face_of)

    @property
    def face_of_dart(self) -> tuple[int, ...]:
        return self._faces[1]

    @property
    def outer_face(self) -> Optional[int]:
        if self.outer_dart is None:
            return None
        return self.face_of_dart[self.outer_dart]

    def face_vertices(self, f: int) -> list[int]:
        tail = self.graph.tail
        return [tail(d) for d in faces(self)[f].darts]

    def internal_faces(self) -> list[int]:
        fo = self.outer_face
        return [f for f in range(len(faces(self))) if f != fo]

    def euler_ok(self) -> bool:
        """V - E + F = 2 on every connected component."""
        g = self.graph
        comp = connected_components(g)
        ncomp = max(comp, default=-1) + 1
        verts = [0] * ncomp
        edges = [0] * ncomp
        fcount = [0] * ncomp
        for v in range(g.n):
            verts[comp[v]] += 1
        for u, _ in g.edges:
            edges[comp[u]] += 1
        for walk in faces(self):
            fcount[comp[g.tail(walk.darts[0])]] += 1
        for c in range(ncomp):
            f = fcount[c] if edges[c] else 1
            if verts[c] - edges[c] + f != 2:
                return False
        return True


def _direction(x: int, y: int, x2: int, y2: int) -> int:
    """0=E, 1=N, 2=W, 3=S for a unit step; raises on anything else."""
    dx, dy = x2 - x, y2 - y
    try:
        return _DIRS[(dx, dy)]
    except KeyError:
        raise StructureError(f"({x},{y})->({x2},{y2}) is not a unit grid step") from None


_DIRS = {(1, 0): 0, (0, 1): 1, (-1, 0): 2, (0, -1): 3}
STEPS = ((1, 0), (0, 1), (-1, 0), (0, -1))


def unbounded_face_dart(emb: PlanarEmbeddedGraph, coords: Sequence[Sequence[int]]) -> int:
    """A dart whose left face is unbounded in a planar unit grid drawing.

    Uses the bottom-most of the left-most vertices: it has no west or south
    neighbor, and the face left of its upward dart (or of its only dart) is the
    unbounded one.
    """
    g = emb.graph
    candidates = [v for v in range(g.n) if g.degrees[v] > 0]
    if not candidates:
        raise StructureError("graph has no edges")
    v = min(candidates, key=lambda w: (coords[w][0], coords[w][1]))
    x, y = coords[v]
    best = None
    for d in g.out_darts[v]:
        hx, hy = coords[g.head(d)]
        if (hx, hy) == (x, y + 1):
            return d
        best = d
    return best


def faces(emb: PlanarEmbeddedGraph) -> list[FaceWalk]:
    """Face walks of the embedding; face ids are list positions.

    Raises :class:`StructureError` when the rotation is malformed (checked at
    construction) or when the walks do not close.
    """
    return list(emb._faces[0])


def connected_components(g: Graph) -> list[int]:
    comp = [-1] * g.n
    out = g.out_darts
    c = 0
    for s in range(g.n):
        if comp[s] != -1:
            continue
        comp[s] = c
        stack = [s]
        while stack:
            v = stack.pop()
            for d in out[v]:
                w = g.head(d)
                if comp[w] == -1:
                    comp[w] = c
                    stack.append(w)
        c += 1
    return comp


def is_connected(g: Graph) -> bool:
    return g.n == 0 or max(connected_components(g)) == 0


def bridges_and_blocks(g: Graph) -> tuple[list[int], list[list[int]]]:
    """Bridges (as edge ids) and blocks (as sorted edge-id lists).

    Iterative Hopcroft-Tarjan over edge ids, so parallel edges are handled:
    a doubled edge is never a bridge. Bridges are exactly the one-edge blocks.
    """
    n = g.n
    out = g.out_darts
    disc = [-1] * n
    low = [0] * n
    blocks: list[list[int]] = []
    edge_stack: list[int] = []
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        # frames: (vertex, incoming edge id, iterator index)
        stack = [(root, -1, 0)]
        while stack:
            v, pe, i = stack[-1]
            if i < len(out[v]):
                stack[-1] = (v, pe, i + 1)
                d = out[v][i]
                e = d >> 1
                if e == pe:
                    continue
                w = g.head(d)
                if disc[w] == -1:
                    edge_stack.append(e)
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, e, 0))
                elif disc[w] < disc[v]:
                    edge_stack.append(e)
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if not stack:
                    continue
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if low[v] >= disc[p]:
                    block = []
                    while True:
                        e = edge_stack.pop()
                        block.append(e)
                        if e == pe:
                            break
                    blocks.append(sorted(block))
    bridges = sorted(b[0] for b in blocks if len(b) == 1)
    return bridges, blocks


def is_biconnected(g: Graph) -> bool:
    """At least 3 vertices, connected, no cut-vertex."""
    if g.n < 3 or not is_connected(g):
        return False
    _, blocks = bridges_and_blocks(g)
    return len(blocks) == 1


def max_degree(g: Graph) -> int:
    return max(g.degrees, default=0)


def is_cycle(g: Graph) -> bool:
    return g.n >= 3 and g.m == g.n and all(d == 2 for d in g.degrees) and is_connected(g)


def planar_embedding(g: Graph) -> Optional[PlanarEmbeddedGraph]:
    """Some planar rotation system of a simple graph, or None if it is not planar."""
    import networkx as nx

    if g.has_multi_edges():
        raise StructureError("planar_embedding expects a simple graph")
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges)
    planar, emb = nx.check_planarity(nxg)
    if not planar:
        return None
    dart_of = {}
    for e, (u, v) in enumerate(g.edges):
        dart_of[(u, v)] = 2 * e
        dart_of[(v, u)] = 2 * e + 1
    rot = []
    for v in range(g.n):
        if g.degrees[v] == 0:
            rot.append(())
            continue
        # networkx lists neighbors clockwise
        cw = list(emb.neighbors_cw_order(v))
        rot.append(tuple(dart_of[(v, w)] for w in reversed(cw)))
    return PlanarEmbeddedGraph(g, tuple(rot))


def embedding_key(emb: PlanarEmbeddedGraph) -> tuple:
    """Hashable form of (rotation system, outer face) independent of cyclic shifts."""
    rot = []
    for r in emb.rotation:
        if r:
            i = r.index(min(r))
            r = r[i:] + r[:i]
        rot.append(tuple(r))
    outer = None
    if emb.outer_dart is not None:
        outer = tuple(sorted(faces(emb)[emb.outer_face].darts))
    return tuple(rot), outer


def embedding_key_up_to_reflection(emb: PlanarEmbeddedGraph) -> tuple:
    return min(embedding_key(emb), embedding_key(emb.mirror()))
