"""Inner-rectangular completion of a plane graph with a prescribed outer walk.

The sweep keeps a current graph ``H`` whose outer face grows one rectangle at
a time. Each step takes a vertex of minimum x on the outer face of ``H``, picks
an internal face ``f*`` at it, draws ``f*`` as the rectangle whose left side is
the already placed vertical path through that vertex, and merges ``f*`` into
the outer face. Placed outer vertices live in an :class:`OuterSorter`, an
array of doubly linked buckets keyed by x, so the minimum is found in
amortized constant time and the whole run is linear.

The drawing, when it exists, is unique; failures are reported as:

* ``C1``: a vertex would be given coordinates that differ from the ones it
  already has (also used when the face cannot be a rectangle at all);
* ``C2``: two distinct vertices would share a grid point;
* ``PreprocessReject``: the input is unusable before the sweep starts.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from typing import Optional, Union

from .graph import PlanarEmbeddedGraph, faces, is_connected
from .validate import Reason, check_inner_rectangular, even_faces_check

OUTER = -1
_UNPLACED = -(1 << 60)

Point = tuple[int, int]


# -- outcomes -----------------------------------------------------------------


@dataclass(frozen=True)
class C1:
    vertex: int
    old: Point
    new: Optional[Point]
    detail: str = ""
    kind = "C1"

    def to_json(self) -> dict:
        return {"kind": "C1", "vertex": self.vertex, "old": list(self.old),
                "new": None if self.new is None else list(self.new), "detail": self.detail}


@dataclass(frozen=True)
class C2:
    vertex_a: int
    vertex_b: int
    point: Point
    detail: str = ""
    kind = "C2"

    def to_json(self) -> dict:
        return {"kind": "C2", "vertices": [self.vertex_a, self.vertex_b],
                "point": list(self.point), "detail": self.detail}


@dataclass(frozen=True)
class PreprocessReject:
    reason: str
    detail: str = ""
    kind = "PreprocessReject"

    def to_json(self) -> dict:
        return {"kind": "PreprocessReject", "reason": self.reason, "detail": self.detail}


Fail = Union[C1, C2, PreprocessReject]


@dataclass
class RunStats:
    faces_drawn: int = 0
    vertex_visits: list[int] = field(default_factory=list)
    edge_touches: list[int] = field(default_factory=list)
    xmin_trace: list[int] = field(default_factory=list)


@dataclass
class RunResult:
    drawing: Optional[list[Point]] = None
    failure: Optional[Fail] = None
    stats: Optional[RunStats] = None

    @property
    def ok(self) -> bool:
        return self.drawing is not None

    def to_json(self) -> dict:
        if self.drawing is not None:
            return {"coords": [list(p) for p in self.drawing]}
        return {"failure": self.failure.to_json()}


class Rejected(Exception):
    def __init__(self, failure: PreprocessReject):
        super().__init__(failure.reason)
        self.failure = failure


# -- outer-sorter ---------------------------------------------------------------


class OuterSorter:
    """Buckets of placed vertices keyed by x, with head insertion."""

    def __init__(self, n: int, width: int):
        self.head = [-1] * (width + 1)
        self.nxt = [-1] * n
        self.prv = [-1] * n
        self.key = [-1] * n
        self.x_min = 0

    def insert(self, v: int, x: int) -> None:
        head = self.head
        if x >= len(head):
            head.extend([-1] * (x + 1 - len(head)))
        h = head[x]
        self.nxt[v] = h
        self.prv[v] = -1
        if h != -1:
            self.prv[h] = v
        head[x] = v
        self.key[v] = x

    def remove(self, v: int) -> None:
        x = self.key[v]
        if x == -1:
            return
        p, q = self.prv[v], self.nxt[v]
        if p != -1:
            self.nxt[p] = q
        else:
            self.head[x] = q
        if q != -1:
            self.prv[q] = p
        self.key[v] = -1

    def first(self) -> int:
        """Head of the first non-empty bucket, advancing x_min; -1 if empty."""
        head = self.head
        x = self.x_min
        while x < len(head) and head[x] == -1:
            x += 1
        self.x_min = x
        return head[x] if x < len(head) else -1

    def bucket(self, x: int) -> list[int]:
        out = []
        v = self.head[x] if x < len(self.head) else -1
        while v != -1:
            out.append(v)
            v = self.nxt[v]
        return out


# -- current graph ----------------------------------------------------------------


class CurrentGraph:
    """Mutable sweep state: live edges, face pointers, placements and buckets."""

    def __init__(self, emb: PlanarEmbeddedGraph, outer_coords: dict[int, Point]):
        g = emb.graph
        self.emb = emb
        self.n = g.n
        walks = faces(emb)
        self.outer_face = emb.outer_face
        tail = [0] * (2 * g.m)
        for e, (u, v) in enumerate(g.edges):
            tail[2 * e] = u
            tail[2 * e + 1] = v
        self.tail = tail
        self.rotation = emb.rotation
        self.walks = [w.darts for w in walks]
        self.walk_verts = [[tail[d] for d in w.darts] for w in walks]
        widx = [0] * (2 * g.m)
        for w in walks:
            for i, d in enumerate(w.darts):
                widx[d] = i
        self.widx = widx
        fo = self.outer_face
        self.ell = [OUTER if f == fo else f for f in emb.face_of_dart]
        self.alive = [True] * g.m
        self.deg = list(g.degrees)
        self.px = [_UNPLACED] * g.n
        self.py = [_UNPLACED] * g.n
        self.occ: dict[int, int] = {}
        xs = [p[0] for p in outer_coords.values()]
        self.ox = min(xs)
        self.oy = min(p[1] for p in outer_coords.values())
        self.sorter = OuterSorter(g.n, max(xs) - self.ox)
        self.stats = RunStats(vertex_visits=[0] * g.n, edge_touches=[0] * g.m)
        self.pending = len(walks) - 1

        ell = self.ell
        for e in range(g.m):
            if ell[2 * e] == OUTER and ell[2 * e + 1] == OUTER:
                self._kill(e, bucketed=False)
        order = sorted(outer_coords, key=lambda v: -outer_coords[v][1])
        for v in order:
            x, y = outer_coords[v]
            x -= self.ox
            y -= self.oy
            self.px[v] = x
            self.py[v] = y
            self.occ[(x << 32) + y] = v
            if self.deg[v] > 0:
                self.sorter.insert(v, x)

    def _kill(self, e: int, bucketed: bool = True) -> None:
        self.alive[e] = False
        for v in (self.tail[2 * e], self.tail[2 * e + 1]):
            self.deg[v] -= 1
            if self.deg[v] == 0 and bucketed:
                self.sorter.remove(v)

    def coord(self, v: int) -> Optional[Point]:
        if self.px[v] == _UNPLACED:
            return None
        return (self.px[v] + self.ox, self.py[v] + self.oy)

    def drawing(self) -> list[Point]:
        return [self.coord(v) for v in range(self.n)]


@dataclass(frozen=True)
class Retrieved:
    face: int
    start: int  # index in the face walk of the top of the left side
    height: int
    vertex: int

    def left_path(self, h: CurrentGraph) -> list[int]:
        verts = h.walk_verts[self.face]
        k = len(verts)
        return [verts[(self.start + i) % k] for i in range(self.height + 1)]


# -- the four steps -------------------------------------------------------------------


def _outer_map(emb: PlanarEmbeddedGraph, outer) -> dict[int, Point]:
    if isinstance(outer, Mapping):
        items = outer.items()
    else:
        items = enumerate(outer)
    out = {}
    for v, c in items:
        if c is None:
            continue
        x, y = c
        if not (hasattr(x, "__index__") and hasattr(y, "__index__")):
            raise Rejected(PreprocessReject("NonUnitOuter", f"non-integer coordinate at {v}"))
        out[int(v)] = (x.__index__(), y.__index__())
    return out


def preprocess(emb: PlanarEmbeddedGraph, outer) -> CurrentGraph:
    """Validate the instance and set up the sweep; raises :class:`Rejected`."""
    g = emb.graph
    if emb.outer_dart is None:
        raise Rejected(PreprocessReject("NoOuterFace", "the embedding has no outer face"))
    if not is_connected(g):
        raise Rejected(PreprocessReject("NotConnected", "only connected graphs are supported"))
    if g.has_multi_edges():
        raise Rejected(PreprocessReject("MultiEdge", "parallel edges bound a face of degree 2"))
    verdict = even_faces_check(emb)
    if not verdict:
        reason = "OddCycle" if verdict.failure.reason == Reason.ODD_CYCLE else "NonSimpleFace"
        raise Rejected(PreprocessReject(reason, verdict.failure.detail))
    prescribed = _outer_map(emb, outer)
    walk = faces(emb)[emb.outer_face].darts
    coords: dict[int, Point] = {}
    for d in walk:
        v = g.tail(d)
        if v not in prescribed:
            raise Rejected(PreprocessReject("DegenerateOuter", f"outer vertex {v} has no coordinate"))
        coords[v] = prescribed[v]
    for d in walk:
        (x1, y1), (x2, y2) = coords[g.tail(d)], coords[g.head(d)]
        if abs(x1 - x2) + abs(y1 - y2) != 1:
            raise Rejected(PreprocessReject("NonUnitOuter", f"outer edge {g.tail(d)}-{g.head(d)} is not a unit segment"))
    seen: dict[Point, int] = {}
    for v, c in coords.items():
        if seen.setdefault(c, v) != v:
            raise Rejected(PreprocessReject("DegenerateOuter", f"outer vertices {seen[c]} and {v} share {c}"))
    return CurrentGraph(emb, coords)


def retrieve_face(h: CurrentGraph) -> Union[Retrieved, C2, C1, None]:
    """Pick the next face to draw, or return a failure; None when H is empty."""
    sorter = h.sorter
    u = sorter.first()
    if u == -1:
        return None
    x_min = sorter.x_min
    h.stats.xmin_trace.append(x_min)
    tail = h.tail
    px, py = h.px, h.py
    alive, ell = h.alive, h.ell
    rot = h.rotation[u]
    if h.deg[u] == 4:
        others = []
        for d in rot:
            w = tail[d ^ 1]
            if not (px[w] == x_min and abs(py[w] - py[u]) == 1):
                others.append(w)
        for d in rot:
            w = tail[d ^ 1]
            if w not in others:
                others.append(w)
        return C2(others[0], others[1], (x_min + 1 + h.ox, py[u] + h.oy),
                  f"vertex {u} of degree 4 has minimum x")
    k = len(rot)
    start = -1
    for i in range(k):
        d = rot[i]
        if alive[d >> 1] and ell[d] == OUTER:
            start = i
            break
    if start == -1:
        raise AssertionError(f"vertex {u} is bucketed but not on the outer face")
    dstar = -1
    for step in range(1, k + 1):
        d = rot[(start - step) % k]
        if alive[d >> 1] and ell[d] != OUTER:
            dstar = d
            break
    if dstar == -1:
        raise AssertionError(f"vertex {u} has no internal face")
    f = ell[dstar]
    verts = h.walk_verts[f]
    n = len(verts)
    i = h.widx[dstar]
    b = i
    length = 0
    while length < n:
        j = b - 1 if b else n - 1
        if px[verts[j]] != x_min:
            break
        b = j
        length += 1
    e = i
    while length < n:
        j = e + 1 if e + 1 < n else 0
        if px[verts[j]] != x_min:
            break
        e = j
        length += 1
    here = (x_min + h.ox, py[u] + h.oy)
    if length >= n:
        return C1(u, here, None, f"every vertex of face {f} is on the line x={here[0]}")
    if length == 0:
        return C1(u, here, None, f"face {f} has no vertical side through {u}")
    if n - 2 * length <= 0:
        return C1(u, here, None, f"face {f} of degree {n} is too short for a side of length {length}")
    return Retrieved(f, b, length, u)


def draw_face(h: CurrentGraph, r: Retrieved) -> Optional[Union[C1, C2]]:
    """Place every vertex of the retrieved face on its rectangle."""
    verts = h.walk_verts[r.face]
    n = len(verts)
    hh = r.height
    w = (n - 2 * hh) // 2
    px, py, occ = h.px, h.py, h.occ
    sorter = h.sorter
    visits = h.stats.vertex_visits
    touches = h.stats.edge_touches
    walk = h.walks[r.face]
    v0 = verts[r.start]
    x0, y0 = px[v0], py[v0]
    for i in range(n):
        idx = r.start + i
        if idx >= n:
            idx -= n
        v = verts[idx]
        touches[walk[idx] >> 1] += 1
        visits[v] += 1
        if i <= hh:
            x, y = x0, y0 - i
        elif i <= hh + w:
            x, y = x0 + i - hh, y0 - hh
        elif i <= 2 * hh + w:
            x, y = x0 + w, y0 - hh + (i - hh - w)
        else:
            x, y = x0 + w - (i - 2 * hh - w), y0
        ox = px[v]
        if ox != _UNPLACED:
            if ox != x or py[v] != y:
                return C1(v, (ox + h.ox, py[v] + h.oy), (x + h.ox, y + h.oy),
                          f"face {r.face} forces a second position")
            continue
        key = (x << 32) + y
        other = occ.get(key)
        if other is not None:
            return C2(other, v, (x + h.ox, y + h.oy), f"face {r.face} lands on an occupied point")
        px[v] = x
        py[v] = y
        occ[key] = v
        sorter.insert(v, x)
    h.stats.faces_drawn += 1
    return None


def merge_face(h: CurrentGraph, f: int) -> None:
    """Turn face ``f`` into part of the outer face and drop edges buried inside it."""
    walk = h.walks[f]
    ell = h.ell
    alive = h.alive
    touches = h.stats.edge_touches
    for d in walk:
        ell[d] = OUTER
    for d in walk:
        e = d >> 1
        if alive[e] and ell[d ^ 1] == OUTER:
            touches[e] += 1
            h._kill(e)
    h.pending -= 1


def run(emb: PlanarEmbeddedGraph, outer, validate: bool = True) -> RunResult:
    """Unique inner-rectangular drawing with the prescribed outer walk, if any.

    ``outer`` maps vertices to coordinates (a mapping or a per-vertex sequence
    with ``None`` gaps); coordinates of vertices off the outer walk are ignored.
    """
    try:
        h = preprocess(emb, outer)
    except Rejected as exc:
        return RunResult(failure=exc.failure)
    while True:
        r = retrieve_face(h)
        if r is None:
            break
        if not isinstance(r, Retrieved):
            return RunResult(failure=r, stats=h.stats)
        fail = draw_face(h, r)
        if fail is not None:
            return RunResult(failure=fail, stats=h.stats)
        merge_face(h, r.face)
    if h.pending:
        raise AssertionError("sweep ended with internal faces left")
    drawing = h.drawing()
    if validate:
        verdict = check_inner_rectangular(emb, drawing)
        if not verdict:
            v = verdict.failure.vertices[0] if verdict.failure.vertices else 0
            return RunResult(
                failure=C1(v, drawing[v], None, "completed faces do not form a valid drawing: " + verdict.failure.detail),
                stats=h.stats,
            )
    return RunResult(drawing=drawing, stats=h.stats)
