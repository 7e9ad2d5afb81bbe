"""Exhaustive reference engines for small instances.

Everything here is brute force: backtracking over grid placements, over
outer-walk polygons, over per-vertex rotations and over angle assignments.
None of it shares code with the fast deciders beyond the graph types and the
certificate checks in :mod:`unitrect.validate`.
"""

from __future__ import annotations

import itertools
import os
from collections import deque
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from typing import Optional

from .graph import Graph, PlanarEmbeddedGraph, faces, is_connected, unbounded_face_dart
from .result import SolveResponse
from .validate import (
    check_embedding_preserving,
    check_inner_rectangular,
    check_rectangular,
)

DEFAULT_MAX_EDGES = 16
DEFAULT_MAX_FACES = 9

Point = tuple[int, int]

# (a, b, c, d): (x, y) -> (a x + b y, c x + d y)
ROTATIONS = ((1, 0, 0, 1), (0, -1, 1, 0), (-1, 0, 0, -1), (0, 1, -1, 0))
DIHEDRAL = ROTATIONS + ((1, 0, 0, -1), (-1, 0, 0, 1), (0, 1, 1, 0), (0, -1, -1, 0))
STEPS = ((1, 0), (0, 1), (-1, 0), (0, -1))


class OracleRefused(ValueError):
    """Instance is larger than the configured brute-force bound."""


def max_edges_bound(explicit: Optional[int] = None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("UNITRECT_MAX_ORACLE_EDGES")
    return int(env) if env else DEFAULT_MAX_EDGES


def max_faces_bound(explicit: Optional[int] = None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("UNITRECT_MAX_ORACLE_FACES")
    return int(env) if env else DEFAULT_MAX_FACES


# -- canonical forms --------------------------------------------------------------


def _transform(coords: Sequence[Point], sym) -> list[Point]:
    a, b, c, d = sym
    pts = [(a * x + b * y, c * x + d * y) for x, y in coords]
    mx = min(p[0] for p in pts)
    my = min(p[1] for p in pts)
    return [(x - mx, y - my) for x, y in pts]


def canonical_drawing(coords: Sequence[Point], group=DIHEDRAL) -> tuple[Point, ...]:
    """Least coordinate sequence over the symmetry group, translated to the origin."""
    return min(tuple(_transform(coords, s)) for s in group)


def shape_key(g: Graph, coords: Sequence[Point], group=DIHEDRAL) -> tuple:
    """Canonical unlabeled image: the drawn point and segment sets."""
    best = None
    for s in group:
        pts = _transform(coords, s)
        segs = tuple(sorted(tuple(sorted((pts[u], pts[v]))) for u, v in g.edges))
        key = (tuple(sorted(pts)), segs)
        if best is None or key < best:
            best = key
    return best


@dataclass(frozen=True)
class DrawingEnumeration:
    drawings: tuple[tuple[Point, ...], ...]
    filters: tuple[str, ...]
    group: str  # "dihedral" or "rotations"
    shape_keys: tuple = ()

    def __len__(self) -> int:
        return len(self.drawings)

    @property
    def shapes(self) -> list[tuple[Point, ...]]:
        """One labeled representative per unlabeled image."""
        seen = {}
        for key, d in zip(self.shape_keys, self.drawings):
            seen.setdefault(key, d)
        return [seen[k] for k in sorted(seen)]


# -- unit drawings of a whole graph ---------------------------------------------------


def _bfs_order(g: Graph, roots: Sequence[int]) -> tuple[list[int], list[int]]:
    parent = [-2] * g.n
    order = []
    q = deque()
    for r in roots:
        parent[r] = -1
        q.append(r)
    while q:
        v = q.popleft()
        order.append(v)
        for w in sorted(g.neighbors(v)):
            if parent[w] == -2:
                parent[w] = v
                q.append(w)
    return order, parent


def _ccw_ok(dirs: Sequence[int]) -> bool:
    k = len(dirs)
    if k < 2:
        return True
    descents = 0
    for i in range(k):
        a, b = dirs[i], dirs[(i + 1) % k]
        if a == b:
            return False
        if a > b:
            descents += 1
    return descents == 1


def _direction(p: Point, q: Point) -> int:
    return STEPS.index((q[0] - p[0], q[1] - p[1]))


class _Search:
    """Backtracking placement of ``free`` vertices next to already placed ones."""

    def __init__(self, g: Graph, emb: Optional[PlanarEmbeddedGraph], fixed: dict[int, Point],
                 rect_faces: bool, box=None, span_limit=None, first_east=False):
        self.g = g
        self.emb = emb
        roots = sorted(fixed) if fixed else [0]
        order, parent = _bfs_order(g, roots)
        if len(order) != g.n:
            raise OracleRefused("the oracle handles connected graphs only")
        self.order = [v for v in order if v not in fixed] if fixed else order[1:]
        self.parent = parent
        self.fixed = dict(fixed) if fixed else {order[0]: (0, 0)}
        self.box = box
        self.span_limit = span_limit
        self.first_east = first_east and not fixed
        step_of = {v: -1 for v in self.fixed}
        for i, v in enumerate(self.order):
            step_of[v] = i
        # per step: earlier neighbors to test for unit length
        self.back_nbrs = [[w for w in g.neighbors(v) if step_of[w] < step_of[v] and w != parent[v]]
                          for v in self.order]
        self.rot_checks: list[list[int]] = [[] for _ in self.order]
        self.face_checks: list[list[int]] = [[] for _ in self.order]
        if emb is not None:
            for v in range(g.n):
                t = max([step_of[v]] + [step_of[w] for w in g.neighbors(v)])
                if t >= 0 and g.degrees[v] >= 2:
                    self.rot_checks[t].append(v)
            if rect_faces:
                fo = emb.outer_face
                for f, walk in enumerate(faces(emb)):
                    if f == fo:
                        continue
                    t = max(step_of[g.tail(d)] for d in walk.darts)
                    if t >= 0:
                        self.face_checks[t].append(f)
        self.walks = faces(emb) if emb is not None else None

    def _rotation_ok(self, v: int, pos: dict) -> bool:
        g = self.g
        dirs = [_direction(pos[v], pos[g.head(d)]) for d in self.emb.rotation[v]]
        return _ccw_ok(dirs)

    def _face_ok(self, f: int, pos: dict) -> bool:
        g = self.g
        walk = self.walks[f].darts
        dirs = [_direction(pos[g.tail(d)], pos[g.head(d)]) for d in walk]
        k = len(dirs)
        left = 0
        for i in range(k):
            t = (dirs[(i + 1) % k] - dirs[i]) & 3
            if t == 1:
                left += 1
            elif t != 0:
                return False
        return left == 4

    def run(self) -> Iterator[dict[int, Point]]:
        pos = dict(self.fixed)
        occupied = {p: v for v, p in pos.items()}
        if len(occupied) != len(pos):
            return
        # rotations and faces already complete among the fixed vertices
        g = self.g
        if self.emb is not None:
            for v in self.fixed:
                if all(w in pos for w in g.neighbors(v)) and g.degrees[v] >= 2:
                    try:
                        if not self._rotation_ok(v, pos):
                            return
                    except ValueError:
                        return
        yield from self._extend(0, pos, occupied)

    def _extend(self, i: int, pos, occupied) -> Iterator[dict[int, Point]]:
        if i == len(self.order):
            yield dict(pos)
            return
        v = self.order[i]
        px, py = pos[self.parent[v]]
        steps = STEPS[:1] if (self.first_east and i == 0) else STEPS
        for dx, dy in steps:
            p = (px + dx, py + dy)
            if p in occupied:
                continue
            if self.box is not None:
                x0, y0, x1, y1 = self.box
                if not (x0 <= p[0] <= x1 and y0 <= p[1] <= y1):
                    continue
            ok = True
            for w in self.back_nbrs[i]:
                q = pos[w]
                if abs(q[0] - p[0]) + abs(q[1] - p[1]) != 1:
                    ok = False
                    break
            if not ok:
                continue
            pos[v] = p
            occupied[p] = v
            if self.span_limit is not None:
                xs = [c[0] for c in pos.values()]
                ys = [c[1] for c in pos.values()]
                if max(xs) - min(xs) + max(ys) - min(ys) > self.span_limit:
                    ok = False
            if ok:
                for u in self.rot_checks[i]:
                    if not self._rotation_ok(u, pos):
                        ok = False
                        break
            if ok:
                for f in self.face_checks[i]:
                    if not self._face_ok(f, pos):
                        ok = False
                        break
            if ok:
                yield from self._extend(i + 1, pos, occupied)
            del pos[v]
            del occupied[p]


FILTERS = ("planar", "embedding", "inner-rect", "rect")


def _accept(g: Graph, emb: Optional[PlanarEmbeddedGraph], coords: list[Point], flt: str) -> bool:
    if emb is None:
        if flt in ("planar", "embedding"):
            return True
        induced = PlanarEmbeddedGraph.from_coordinates(g, coords)
        check = check_rectangular if flt == "rect" else check_inner_rectangular
        return check(induced, coords).ok
    if flt == "rect":
        return check_rectangular(emb, coords).ok
    if flt == "inner-rect":
        return check_inner_rectangular(emb, coords).ok
    return check_embedding_preserving(emb, coords).ok


def iter_unit_drawings(g, flt: str = "planar", emb: Optional[PlanarEmbeddedGraph] = None,
                       max_edges: Optional[int] = None) -> Iterator[list[Point]]:
    """Every unit-length grid drawing passing ``flt``, up to rotation (not deduplicated).

    With ``emb`` the drawing must respect its rotation system, and its outer
    face when one is set; the rectangle filters then refer to ``emb``.
    """
    if isinstance(g, PlanarEmbeddedGraph):
        emb, g = g, g.graph
    if flt not in FILTERS:
        raise ValueError(f"unknown filter {flt!r}")
    if flt == "embedding" and emb is None:
        raise ValueError("the embedding filter needs an embedding")
    if g.m > max_edges_bound(max_edges):
        raise OracleRefused(f"{g.m} edges exceed the oracle bound {max_edges_bound(max_edges)}")
    if g.n == 0:
        return
    if g.n == 1:
        yield [(0, 0)]
        return
    rectish = flt in ("rect", "inner-rect")
    if flt == "rect" and min(g.degrees) < 2:
        return
    if rectish and emb is not None and emb.outer_dart is None:
        # outer face free: only the rotation is enforced during the search
        search_emb = emb
        search = _Search(g, search_emb, {}, rect_faces=False, first_east=True,
                         span_limit=g.m // 2 if flt == "rect" else None)
        for pos in search.run():
            coords = [pos[v] for v in range(g.n)]
            plane = emb.with_outer(unbounded_face_dart(emb, coords))
            check = check_rectangular if flt == "rect" else check_inner_rectangular
            if check(plane, coords).ok:
                yield coords
        return
    search = _Search(g, emb, {}, rect_faces=rectish and emb is not None, first_east=True,
                     span_limit=g.m // 2 if flt == "rect" else None)
    for pos in search.run():
        coords = [pos[v] for v in range(g.n)]
        if _accept(g, emb, coords, flt):
            yield coords


def enumerate_unit_drawings(g, flt: str = "planar", emb: Optional[PlanarEmbeddedGraph] = None,
                            max_edges: Optional[int] = None) -> DrawingEnumeration:
    """All unit-length grid drawings passing ``flt``, canonical and sorted.

    Drawings are identified up to translation and the square's symmetries;
    when an embedding constrains orientation only rotations are quotiented.
    """
    if isinstance(g, PlanarEmbeddedGraph):
        emb, g = g, g.graph
    group = ROTATIONS if emb is not None else DIHEDRAL
    found = {}
    for coords in iter_unit_drawings(g, flt, emb, max_edges):
        key = canonical_drawing(coords, group)
        if key not in found:
            found[key] = shape_key(g, coords, group)
    keys = sorted(found)
    return DrawingEnumeration(
        tuple(keys),
        (flt,),
        "rotations" if emb is not None else "dihedral",
        tuple(found[k] for k in keys),
    )


# -- completions of a prescribed outer walk ----------------------------------------------


def _walk(emb: PlanarEmbeddedGraph) -> list[int]:
    return list(faces(emb)[emb.outer_face].darts)


def complete_outer(emb: PlanarEmbeddedGraph, outer, limit: Optional[int] = None,
                   max_edges: Optional[int] = None) -> list[list[Point]]:
    """Embedding-preserving inner-rectangular drawings extending a fixed outer walk.

    Returns up to ``limit`` completions (all of them when ``limit`` is None),
    in the coordinates of ``outer``.
    """
    g = emb.graph
    if g.m > max_edges_bound(max_edges) * 2:
        raise OracleRefused(f"{g.m} edges exceed the completion bound")
    if emb.outer_dart is None:
        return []
    fixed = {}
    for d in _walk(emb):
        v = g.tail(d)
        c = outer.get(v) if hasattr(outer, "get") else outer[v]
        if c is None:
            return []
        fixed[v] = (int(c[0]), int(c[1]))
    xs = [p[0] for p in fixed.values()]
    ys = [p[1] for p in fixed.values()]
    box = (min(xs), min(ys), max(xs), max(ys))
    for d in _walk(emb):
        p, q = fixed[g.tail(d)], fixed[g.head(d)]
        if abs(p[0] - q[0]) + abs(p[1] - q[1]) != 1:
            return []
    out = []
    search = _Search(g, emb, fixed, rect_faces=True, box=box)
    for pos in search.run():
        coords = [pos[v] for v in range(g.n)]
        if check_inner_rectangular(emb, coords).ok:
            out.append(coords)
            if limit is not None and len(out) >= limit:
                break
    return out


def enumerate_outer_polygons(emb: PlanarEmbeddedGraph, prune_angles: bool = True,
                             limit: Optional[int] = None) -> list[dict[int, Point]]:
    """Unit-length drawings of the outer walk with distinct points per vertex.

    The first dart of the walk points east from the origin, which removes the
    rotations. With ``prune_angles`` only polygons whose outer angles leave room
    for 90 or 180 degree internal angles at every vertex are produced, and the
    walk must turn clockwise once in total.
    """
    g = emb.graph
    walk = _walk(emb)
    L = len(walk)
    verts = [g.tail(d) for d in walk]
    appearances: dict[int, list[int]] = {}
    for i, v in enumerate(verts):
        appearances.setdefault(v, []).append(i)
    last_seen = {v: max(idx) for v, idx in appearances.items()}
    # outer angle in right angles by turn code: straight, left, back, right
    angle_of_turn = (2, 1, 4, 3)
    results: list[dict[int, Point]] = []
    pos: dict[int, Point] = {verts[0]: (0, 0)}
    occupied = {(0, 0): verts[0]}
    dirs = [0] * L
    angle_sum: dict[int, int] = {}

    def vertex_ok(v: int) -> bool:
        a = len(appearances[v])
        inner = g.degrees[v] - a
        s = angle_sum[v]
        return s + inner <= 4 <= s + 2 * inner if inner else s == 4

    def rec(i: int) -> bool:
        # walk[i] goes from verts[i] to verts[i+1]; directions 0..i-1 are set
        if i == L:
            if prune_angles:
                turn = (dirs[0] - dirs[L - 1]) & 3
                v = verts[0]
                angle_sum[v] = angle_sum.get(v, 0) + angle_of_turn[turn]
                ok = vertex_ok(v)
                total = sum(angle_sum.values())
                angle_sum[v] -= angle_of_turn[turn]
                if not ok or total != 2 * L + 4:
                    return False
            results.append(dict(pos))
            return limit is not None and len(results) >= limit
        v, w = verts[i], verts[(i + 1) % L]
        options = (0,) if i == 0 else range(4)
        for dcode in options:
            p = pos[v]
            q = (p[0] + STEPS[dcode][0], p[1] + STEPS[dcode][1])
            placed_here = False
            if w in pos:
                if pos[w] != q:
                    continue
            else:
                if q in occupied:
                    continue
                pos[w] = q
                occupied[q] = w
                placed_here = True
            dirs[i] = dcode
            ok = True
            added = 0
            if prune_angles and i > 0:
                turn = (dcode - dirs[i - 1]) & 3
                added = angle_of_turn[turn]
                angle_sum[v] = angle_sum.get(v, 0) + added
                if last_seen[v] == i and v != verts[0]:
                    ok = vertex_ok(v)
                elif angle_sum[v] > 4:
                    ok = False
            stop = ok and rec(i + 1)
            if prune_angles and i > 0:
                angle_sum[v] -= added
            if placed_here:
                del pos[w]
                del occupied[q]
            if stop:
                return True
        return False

    if L == 0:
        return []
    rec(0)
    return results


# -- angle assignments -------------------------------------------------------------------


@dataclass(frozen=True)
class AngleEnumeration:
    """Angle assignments in right angles, one entry per dart (angle at its tail, left side)."""

    assignments: tuple[tuple[int, ...], ...]
    rectangular: bool

    def __len__(self) -> int:
        return len(self.assignments)


def iter_angle_assignments(emb: PlanarEmbeddedGraph, rectangular: bool = True,
                           max_faces: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Angles per slot with vertex sums of 360 and face sums of (|f| -+ 2) * 180."""
    g = emb.graph
    walks = faces(emb)
    if len(walks) > max_faces_bound(max_faces):
        raise OracleRefused(f"{len(walks)} faces exceed the oracle bound {max_faces_bound(max_faces)}")
    if emb.outer_dart is None:
        raise ValueError("angle assignments need an outer face")
    fo = emb.outer_face
    face_of = emb.face_of_dart
    target = [2 * len(w) - 4 if f != fo else 2 * len(w) + 4 for f, w in enumerate(walks)]
    lo_hi = []
    for d in range(2 * g.m):
        if rectangular:
            lo_hi.append((2, 3) if face_of[d] == fo else (1, 2))
        else:
            lo_hi.append((1, 4))
    remaining = [len(w) for w in walks]
    acc = [0] * len(walks)
    angle = [0] * (2 * g.m)
    vertices = [v for v in range(g.n) if g.degrees[v]]
    options = []
    for v in vertices:
        darts = g.out_darts[v]
        ranges = [range(lo_hi[d][0], lo_hi[d][1] + 1) for d in darts]
        combos = [c for c in itertools.product(*ranges) if sum(c) == 4]
        options.append((darts, combos))

    def feasible(f: int) -> bool:
        lo = hi = 0
        # remaining slots may take any value in their own ranges; bounds are uniform per face
        if remaining[f]:
            sample = 2 if (rectangular and f == fo) else 1
            top = 3 if (rectangular and f == fo) else (2 if rectangular else 4)
            lo = remaining[f] * sample
            hi = remaining[f] * top
        return acc[f] + lo <= target[f] <= acc[f] + hi

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == len(options):
            yield tuple(angle)
            return
        darts, combos = options[i]
        touched = {face_of[d] for d in darts}
        for combo in combos:
            for d, a in zip(darts, combo):
                angle[d] = a
                acc[face_of[d]] += a
                remaining[face_of[d]] -= 1
            if all(feasible(f) for f in touched):
                yield from rec(i + 1)
            for d, a in zip(darts, combo):
                acc[face_of[d]] -= a
                remaining[face_of[d]] += 1
                angle[d] = 0

    if not all(feasible(f) for f in range(len(walks))):
        return
    yield from rec(0)


def enumerate_angle_assignments(emb: PlanarEmbeddedGraph, rectangular: bool = True,
                                max_faces: Optional[int] = None) -> AngleEnumeration:
    return AngleEnumeration(tuple(iter_angle_assignments(emb, rectangular, max_faces)), rectangular)


def has_angle_assignment(emb: PlanarEmbeddedGraph, rectangular: bool = True,
                         max_faces: Optional[int] = None) -> bool:
    return next(iter_angle_assignments(emb, rectangular, max_faces), None) is not None


# -- rotation systems --------------------------------------------------------------------


def all_embeddings(g: Graph) -> Iterator[PlanarEmbeddedGraph]:
    """Every rotation system of ``g`` whose faces satisfy Euler's formula."""
    per_vertex = []
    for v in range(g.n):
        darts = g.out_darts[v]
        if len(darts) <= 2:
            per_vertex.append([tuple(darts)])
        else:
            first, rest = darts[0], darts[1:]
            per_vertex.append([(first,) + p for p in itertools.permutations(rest)])
    for rot in itertools.product(*per_vertex):
        emb = PlanarEmbeddedGraph(g, rot)
        if emb.euler_ok():
            yield emb


# -- decisions ---------------------------------------------------------------------------


def decide_by_oracle(g, mode: str, outer=None, max_edges: Optional[int] = None,
                     max_faces: Optional[int] = None) -> SolveResponse:
    """Reference answer for one of the unit-length modes or ``rect``.

    ``g`` is a plane graph for ``uirfe``/``urfe``, an embedded graph (outer face
    ignored) for ``urfe-embedded``, and any graph for ``ur``/``rect``.
    """
    if mode == "uirfe":
        found = complete_outer(g, outer, limit=1, max_edges=max_edges)
        return SolveResponse(bool(found), found[0] if found else None, {"oracle": "completion"}, g)
    if mode == "urfe":
        if g.outer_dart is None:
            raise ValueError("urfe needs an outer face")
        first = next(iter_unit_drawings(g.graph, "rect", g, max_edges), None)
        return SolveResponse(first is not None, first, {"oracle": "drawings"}, g if first else None)
    if mode == "urfe-embedded":
        free = g.with_outer(None)
        first = next(iter_unit_drawings(g.graph, "rect", free, max_edges), None)
        plane = PlanarEmbeddedGraph.from_coordinates(g.graph, first) if first else None
        return SolveResponse(first is not None, first, {"oracle": "drawings"}, plane)
    graph = g.graph if isinstance(g, PlanarEmbeddedGraph) else g
    if mode == "ur":
        first = next(iter_unit_drawings(graph, "rect", None, max_edges), None)
        plane = PlanarEmbeddedGraph.from_coordinates(graph, first) if first else None
        return SolveResponse(first is not None, first, {"oracle": "drawings"}, plane)
    if mode == "rect":
        if not is_connected(graph) or graph.m == 0:
            return SolveResponse(False, witness={"oracle": "angles"})
        for emb in all_embeddings(graph):
            for f in range(len(faces(emb))):
                plane = emb.with_outer(faces(emb)[f].darts[0])
                if has_angle_assignment(plane, True, max_faces):
                    return SolveResponse(True, None, {"oracle": "angles", "outer_face": f}, plane)
        return SolveResponse(False, witness={"oracle": "angles"})
    raise ValueError(f"unknown mode {mode!r}")
