"""Small named graph families used by tests, demos and the CLI."""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from .graph import Graph, PlanarEmbeddedGraph


def cycle(n: int) -> PlanarEmbeddedGraph:
    """C_n with vertices 0..n-1 in counter-clockwise order; outer face left of 1->0."""
    edges = [(i, (i + 1) % n) for i in range(n)]
    g = Graph(n, edges)
    # vertex i: dart to i+1 (2*i), dart to i-1 (reverse of edge i-1)
    rot = [(2 * i, 2 * ((i - 1) % n) + 1) for i in range(n)]
    emb = PlanarEmbeddedGraph(g, tuple(rot))
    return emb.with_outer(1)


def cycle_coords_rectangle(w: int, h: int) -> list[tuple[int, int]]:
    """Coordinates putting C_{2(w+h)} counter-clockwise around a w x h box."""
    pts = []
    for i in range(w):
        pts.append((i, 0))
    for j in range(h):
        pts.append((w, j))
    for i in range(w, 0, -1):
        pts.append((i, h))
    for j in range(h, 0, -1):
        pts.append((0, j))
    return pts


def from_points(
    points: Sequence[tuple[int, int]], edges: Iterable[Sequence[int]] | None = None
) -> tuple[PlanarEmbeddedGraph, list[tuple[int, int]]]:
    """Plane graph induced by a unit-length point set.

    Without explicit ``edges`` every pair of points at distance 1 is joined.
    """
    points = [tuple(p) for p in points]
    if edges is None:
        index = {p: i for i, p in enumerate(points)}
        edges = []
        for i, (x, y) in enumerate(points):
            for q in ((x + 1, y), (x, y + 1)):
                j = index.get(q)
                if j is not None:
                    edges.append((i, j))
    g = Graph(len(points), edges)
    return PlanarEmbeddedGraph.from_coordinates(g, points), points


def grid(rows: int, cols: int) -> tuple[PlanarEmbeddedGraph, list[tuple[int, int]]]:
    """``rows`` x ``cols`` grid graph, vertex ``r*cols + c`` at ``(c, r)``."""
    points = [(c, r) for r in range(rows) for c in range(cols)]
    return from_points(points)


def polyomino(cells: Iterable[tuple[int, int]]) -> tuple[PlanarEmbeddedGraph, list[tuple[int, int]]]:
    """Union of unit squares with lower-left corners ``cells`` (shared sides merged)."""
    cells = set(cells)
    pts = sorted({(x + dx, y + dy) for x, y in cells for dx in (0, 1) for dy in (0, 1)})
    edges = set()
    for x, y in cells:
        for a, b in (((x, y), (x + 1, y)), ((x, y), (x, y + 1)), ((x + 1, y), (x + 1, y + 1)), ((x, y + 1), (x + 1, y + 1))):
            edges.add((a, b))
    index = {p: i for i, p in enumerate(pts)}
    return from_points(pts, sorted((index[a], index[b]) for a, b in edges))


def theta(*lengths: int) -> Graph:
    """Two poles 0 and 1 joined by internally disjoint paths of the given lengths."""
    if len(lengths) < 2 or min(lengths) < 1 or sum(1 for k in lengths if k == 1) > 1:
        raise ValueError("need at least two paths and at most one direct edge")
    edges = []
    n = 2
    for k in lengths:
        prev = 0
        for _ in range(k - 1):
            edges.append((prev, n))
            prev = n
            n += 1
        edges.append((prev, 1))
    return Graph(n, edges)


def subdivide(g: Graph, times: int = 1) -> Graph:
    """Replace every edge with a path of ``times + 1`` edges."""
    n = g.n
    edges = []
    for u, v in g.edges:
        prev = u
        for _ in range(times):
            edges.append((prev, n))
            prev = n
            n += 1
        edges.append((prev, v))
    return Graph(n, edges)


def k4() -> PlanarEmbeddedGraph:
    # outer triangle 0,1,2 counter-clockwise with 3 in the middle
    adj = [[1, 3, 2], [2, 3, 0], [0, 3, 1], [0, 1, 2]]
    return PlanarEmbeddedGraph.from_adjacency(adj, outer=[1, 0])
