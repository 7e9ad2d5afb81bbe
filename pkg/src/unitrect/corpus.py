"""Deterministic instance corpora for oracle comparisons."""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterator
from dataclasses import dataclass

import networkx as nx

from . import families
from .graph import Graph, PlanarEmbeddedGraph, faces, is_biconnected, is_connected, max_degree
from .oracle import DIHEDRAL, all_embeddings, enumerate_outer_polygons, shape_key


@dataclass(frozen=True)
class Instance:
    name: str
    emb: PlanarEmbeddedGraph  # with outer face
    coords: tuple | None = None  # a known drawing, when the instance came from one

    @property
    def graph(self) -> Graph:
        return self.emb.graph

    @property
    def internal_faces(self) -> int:
        return len(faces(self.emb)) - 1


def _cells_connected(cells) -> bool:
    cells = list(cells)
    seen = {cells[0]}
    stack = [cells[0]]
    cs = set(cells)
    while stack:
        x, y = stack.pop()
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                q = (x + dx, y + dy)
                if q in cs and q not in seen:
                    seen.add(q)
                    stack.append(q)
    return len(seen) == len(cs)


def polyomino_instances(side: int = 3, max_cells: int = 7) -> list[Instance]:
    """Unions of unit squares inside a ``side`` x ``side`` block of cells, up to symmetry."""
    all_cells = [(x, y) for x in range(side) for y in range(side)]
    seen = set()
    out = []
    for k in range(1, max_cells + 1):
        for cells in itertools.combinations(all_cells, k):
            if not _cells_connected(cells):
                continue
            emb, pts = families.polyomino(cells)
            key = shape_key(emb.graph, pts, DIHEDRAL)
            if key in seen:
                continue
            seen.add(key)
            out.append(Instance(f"poly{''.join(f'{x}{y}' for x, y in cells)}", emb, tuple(pts)))
    return out


def edge_deletion_instances(count: int, seed: int = 0, rows: int = 4, cols: int = 4,
                            max_internal: int = 7, min_internal: int = 0) -> list[Instance]:
    """Connected spanning subgraphs of a grid, drawn with their grid coordinates."""
    rng = random.Random(seed)
    base, pts = families.grid(rows, cols)
    edges = list(base.graph.edges)
    out = []
    seen = set()
    attempts = 0
    while len(out) < count and attempts < count * 50:
        attempts += 1
        keep = [e for e in edges if rng.random() < rng.choice((0.6, 0.75, 0.9))]
        used = sorted({v for e in keep for v in e})
        if len(used) < 3:
            continue
        index = {v: i for i, v in enumerate(used)}
        g = Graph(len(used), [(index[u], index[v]) for u, v in keep])
        if not is_connected(g):
            continue
        sub_pts = [pts[v] for v in used]
        emb = PlanarEmbeddedGraph.from_coordinates(g, sub_pts)
        if not min_internal <= len(faces(emb)) - 1 <= max_internal:
            continue
        key = shape_key(g, sub_pts)
        if key in seen:
            continue
        seen.add(key)
        out.append(Instance(f"del{seed}_{len(out)}", emb, tuple(sub_pts)))
    return out


def random_bipartite_planar(rng: random.Random, n: int, extra: int) -> Graph | None:
    """Random connected bipartite planar graph of maximum degree 4."""
    color = [rng.randint(0, 1) for _ in range(n)]
    if len(set(color)) < 2:
        return None
    # random spanning tree respecting the colouring
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    deg = [0] * n
    placed = [order[0]]
    for v in order[1:]:
        cands = [u for u in placed if color[u] != color[v] and deg[u] < 4]
        if not cands:
            return None
        u = rng.choice(cands)
        edges.add((min(u, v), max(u, v)))
        deg[u] += 1
        deg[v] += 1
        placed.append(v)
    tries = 0
    added = 0
    while added < extra and tries < extra * 20:
        tries += 1
        u, v = rng.sample(range(n), 2)
        if color[u] == color[v] or deg[u] >= 4 or deg[v] >= 4:
            continue
        e = (min(u, v), max(u, v))
        if e in edges:
            continue
        nxg = nx.Graph(list(edges | {e}))
        if not nx.check_planarity(nxg)[0]:
            continue
        edges.add(e)
        deg[u] += 1
        deg[v] += 1
        added += 1
    return Graph(n, sorted(edges))


def random_rotation_instances(count: int, seed: int = 0, n_range=(4, 9),
                              max_internal: int = 7, min_internal: int = 0) -> list[Instance]:
    """Random bipartite planar graphs with a random rotation system and outer face."""
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count and attempts < count * 30:
        attempts += 1
        n = rng.randint(*n_range)
        g = random_bipartite_planar(rng, n, rng.randint(0, n))
        if g is None or max_degree(g) > 4:
            continue
        embs = list(itertools.islice(all_embeddings(g), 200))
        if not embs:
            continue
        emb = rng.choice(embs)
        walks = faces(emb)
        if not min_internal <= len(walks) - 1 <= max_internal:
            continue
        f = rng.randrange(len(walks))
        out.append(Instance(f"rot{seed}_{len(out)}", emb.with_outer(walks[f].darts[0])))
    return out


def outer_polygons(inst: Instance, max_pruned: int = 4000, max_free: int = 300):
    """Outer drawings to test for one instance, or None if there are too many.

    All angle-compatible polygons are used; when the instance has at most
    ``max_free`` polygons without the angle pruning those are added too, which
    supplies wrongly oriented and otherwise hopeless prescriptions.
    """
    pruned = enumerate_outer_polygons(inst.emb, True, limit=max_pruned + 1)
    if len(pruned) > max_pruned:
        return None
    free = enumerate_outer_polygons(inst.emb, False, limit=max_free + 1)
    if len(free) > max_free:
        return pruned
    seen = {tuple(sorted(p.items())) for p in pruned}
    return pruned + [p for p in free if tuple(sorted(p.items())) not in seen]


def fixed_outer_corpus() -> list[tuple[Instance, list]]:
    """Plane graphs paired with the outer drawings prescribed to them."""
    out = []
    groups = (
        polyomino_instances(),
        edge_deletion_instances(330, seed=1, min_internal=1),
        random_rotation_instances(220, seed=2, min_internal=1),
    )
    for group in groups:
        for inst in group:
            polys = outer_polygons(inst)
            if polys is not None:
                out.append((inst, polys))
    return out


def grid_biconnected_subgraphs(rows: int = 3, cols: int = 4) -> list[tuple[str, Graph]]:
    """Every biconnected edge subset of a grid, one per drawn shape."""
    base, pts = families.grid(rows, cols)
    edges = list(base.graph.edges)
    seen = set()
    out = []
    for mask in range(1, 1 << len(edges)):
        keep = [edges[i] for i in range(len(edges)) if mask >> i & 1]
        if len(keep) < 4:
            continue
        used = sorted({v for e in keep for v in e})
        index = {v: i for i, v in enumerate(used)}
        g = Graph(len(used), [(index[a], index[b]) for a, b in keep])
        if not is_biconnected(g):
            continue
        key = shape_key(g, [pts[v] for v in used], DIHEDRAL)
        if key in seen:
            continue
        seen.add(key)
        out.append((f"sub{rows}x{cols}_{mask}", g))
    return out


def random_biconnected(count: int, seed: int = 0, n_range=(4, 12)) -> list[tuple[str, Graph]]:
    """Random biconnected bipartite planar graphs of maximum degree 4."""
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count and attempts < count * 200:
        attempts += 1
        n = rng.randint(*n_range)
        g = random_bipartite_planar(rng, n, rng.randint(1, n))
        if g is None or max_degree(g) > 4 or not is_biconnected(g):
            continue
        out.append((f"bic{seed}_{len(out)}", g))
    return out


def _dissection(rng: random.Random, w: int, h: int, p_split: float):
    boxes = [(0, 0, w, h)]
    done = []
    while boxes:
        x0, y0, x1, y1 = boxes.pop()
        cuts = [("x", c) for c in range(x0 + 1, x1)] + [("y", c) for c in range(y0 + 1, y1)]
        if not cuts or rng.random() > p_split:
            done.append((x0, y0, x1, y1))
            continue
        axis, c = rng.choice(cuts)
        if axis == "x":
            boxes += [(x0, y0, c, y1), (c, y0, x1, y1)]
        else:
            boxes += [(x0, y0, x1, c), (x0, c, x1, y1)]
    segs = set()
    for x0, y0, x1, y1 in done:
        for x in range(x0, x1):
            segs.add(((x, y0), (x + 1, y0)))
            segs.add(((x, y1), (x + 1, y1)))
        for y in range(y0, y1):
            segs.add(((x0, y), (x0, y + 1)))
            segs.add(((x1, y), (x1, y + 1)))
    return sorted(segs)


def dissection_instances(count: int, seed: int = 0, max_w: int = 5, max_h: int = 4,
                         max_edges: int = 24, damaged: bool = True) -> list[Instance]:
    """Rectangles cut recursively along grid lines, plus copies missing one edge.

    The intact dissections have a rectangular unit-length drawing by
    construction; the damaged copies (kept only if still biconnected) are
    mostly negative and probe the rejection paths.
    """
    rng = random.Random(seed)
    out = []
    seen = set()
    attempts = 0
    while len(out) < count and attempts < count * 40:
        attempts += 1
        w, h = rng.randint(1, max_w), rng.randint(1, max_h)
        segs = _dissection(rng, w, h, rng.choice((0.3, 0.5, 0.7)))
        variants = [segs]
        if damaged and len(segs) > 4:
            drop = rng.randrange(len(segs))
            variants.append(segs[:drop] + segs[drop + 1:])
        for sv in variants:
            if len(sv) > max_edges:
                continue
            pts = sorted({q for seg in sv for q in seg})
            index = {q: i for i, q in enumerate(pts)}
            g = Graph(len(pts), [(index[a], index[b]) for a, b in sv])
            if not is_biconnected(g):
                continue
            key = shape_key(g, pts, DIHEDRAL)
            if key in seen:
                continue
            seen.add(key)
            emb = PlanarEmbeddedGraph.from_coordinates(g, pts)
            out.append(Instance(f"dis{seed}_{len(out)}", emb, tuple(pts)))
    return out[:count]


def iter_small_graphs(max_vertices: int = 12, extended: bool = True) -> Iterator[tuple[str, Graph]]:
    """Named abstract graphs of at most ``max_vertices`` vertices for variable-embedding checks."""
    for inst in polyomino_instances(3, 7):
        if inst.graph.n <= max_vertices:
            yield inst.name, inst.graph
    for lens in itertools.combinations_with_replacement(range(1, 8), 3):
        if lens.count(1) > 1:
            continue
        g = families.theta(*lens)
        if g.n <= max_vertices:
            yield "theta" + "_".join(map(str, lens)), g
    for k in range(3, max_vertices + 1):
        yield f"cycle{k}", families.cycle(k).graph
    yield "k4", families.k4().graph
    yield "k4sub", families.subdivide(families.k4().graph)
    for rows in (2, 3):
        for cols in range(2, 7):
            if rows * cols <= max_vertices:
                yield f"grid{rows}x{cols}", families.grid(rows, cols)[0].graph
    if extended:
        for name, g in grid_biconnected_subgraphs(3, 4):
            if g.n <= max_vertices:
                yield name, g
        for name, g in random_biconnected(60, seed=3, n_range=(4, max_vertices)):
            yield name, g
