"""Certificate checks for unit-length grid drawings.

Each check runs the checks it depends on first, so a single call reports the
earliest thing that is wrong with a drawing.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .graph import (
    Graph,
    PlanarEmbeddedGraph,
    StructureError,
    faces,
    unbounded_face_dart,
)

Coords = Sequence[tuple[int, int]]


class Reason(str, Enum):
    NON_UNIT_EDGE = "NonUnitEdge"
    COINCIDENT_VERTICES = "CoincidentVertices"
    ROTATION_MISMATCH = "RotationMismatch"
    OUTER_FACE_MISMATCH = "OuterFaceMismatch"
    NON_RECTANGULAR_FACE = "NonRectangularFace"
    ODD_CYCLE = "OddCycle"
    NOT_BICONNECTED = "NotBiconnected"
    DANGLING_BRIDGE = "DanglingBridge"


@dataclass(frozen=True)
class Failure:
    reason: Reason
    detail: str = ""
    face: Optional[int] = None
    vertices: tuple[int, ...] = ()

    def to_json(self) -> dict:
        out = {"reason": self.reason.value, "detail": self.detail}
        if self.face is not None:
            out["face"] = self.face
        if self.vertices:
            out["vertices"] = list(self.vertices)
        return out


@dataclass(frozen=True)
class Verdict:
    ok: bool
    failure: Optional[Failure] = field(default=None)

    def __post_init__(self):
        if self.ok != (self.failure is None):
            raise ValueError("ok must be true exactly when there is no failure")

    def __bool__(self) -> bool:
        return self.ok


OK = Verdict(True)


def _fail(reason: Reason, detail: str = "", face=None, vertices=()) -> Verdict:
    return Verdict(False, Failure(reason, detail, face, tuple(vertices)))


def normalize_coords(g: Graph, coords) -> list[tuple[int, int]]:
    """Integer pairs for every vertex, or StructureError."""
    if coords is None or len(coords) != g.n:
        raise StructureError("drawing must give a coordinate for every vertex")
    out = []
    for v, c in enumerate(coords):
        if c is None or len(c) != 2:
            raise StructureError(f"missing coordinate for vertex {v}")
        x, y = c
        # numpy integers are fine, floats are not
        if not (hasattr(x, "__index__") and hasattr(y, "__index__")):
            raise StructureError(f"non-integer coordinate for vertex {v}: {c!r}")
        out.append((x.__index__(), y.__index__()))
    return out


def _graph_of(g) -> Graph:
    return g.graph if isinstance(g, PlanarEmbeddedGraph) else g


def _unit(g: Graph, pts) -> Verdict:
    for e, (u, v) in enumerate(g.edges):
        (x1, y1), (x2, y2) = pts[u], pts[v]
        if abs(x1 - x2) + abs(y1 - y2) != 1:
            return _fail(Reason.NON_UNIT_EDGE, f"edge {e} ({u}, {v})", vertices=(u, v))
    return OK


def _planar(g: Graph, pts) -> Verdict:
    verdict = _unit(g, pts)
    if not verdict:
        return verdict
    seen: dict[tuple[int, int], int] = {}
    for v, c in enumerate(pts):
        other = seen.setdefault(c, v)
        if other != v:
            return _fail(Reason.COINCIDENT_VERTICES, f"{other} and {v} at {c}", vertices=(other, v))
    return OK


def check_unit_length(g, coords) -> Verdict:
    g = _graph_of(g)
    return _unit(g, normalize_coords(g, coords))


def check_planar_grid(g, coords) -> Verdict:
    g = _graph_of(g)
    return _planar(g, normalize_coords(g, coords))


def dart_directions(emb: PlanarEmbeddedGraph, pts) -> list[int]:
    """Direction (0=E, 1=N, 2=W, 3=S) of every dart; assumes unit edges."""
    g = emb.graph
    dirs = [0] * (2 * g.m)
    for e, (u, v) in enumerate(g.edges):
        dx = pts[v][0] - pts[u][0]
        dy = pts[v][1] - pts[u][1]
        d = 0 if dx == 1 else 2 if dx == -1 else 1 if dy == 1 else 3
        dirs[2 * e] = d
        dirs[2 * e + 1] = (d + 2) & 3
    return dirs


def _embedding(emb: PlanarEmbeddedGraph, pts, dirs) -> Verdict:
    for v, rot in enumerate(emb.rotation):
        k = len(rot)
        if k < 2:
            continue
        descents = 0
        for i in range(k):
            a, b = dirs[rot[i]], dirs[rot[(i + 1) % k]]
            if a == b:
                return _fail(Reason.ROTATION_MISMATCH, f"two edges leave {v} in one direction", vertices=(v,))
            if a > b:
                descents += 1
        if descents != 1:
            return _fail(Reason.ROTATION_MISMATCH, f"rotation at {v} is not counter-clockwise", vertices=(v,))
    if emb.outer_dart is not None and emb.graph.m:
        actual = emb.face_of_dart[unbounded_face_dart(emb, pts)]
        if actual != emb.outer_face:
            return _fail(
                Reason.OUTER_FACE_MISMATCH,
                f"unbounded face is {actual}, embedding says {emb.outer_face}",
                face=actual,
            )
    return OK


def _prepare(emb: PlanarEmbeddedGraph, coords):
    """(verdict, pts, dirs) after the unit, planar and embedding checks."""
    pts = normalize_coords(emb.graph, coords)
    verdict = _planar(emb.graph, pts)
    if not verdict:
        return verdict, pts, None
    dirs = dart_directions(emb, pts)
    return _embedding(emb, pts, dirs), pts, dirs


def check_embedding_preserving(emb: PlanarEmbeddedGraph, coords) -> Verdict:
    return _prepare(emb, coords)[0]


def _turns(walk: Sequence[int], dirs: Sequence[int]) -> tuple[int, int, int]:
    """(left, right, u-turn) counts along a closed walk of darts."""
    left = right = back = 0
    k = len(walk)
    for i in range(k):
        t = (dirs[walk[(i + 1) % k]] - dirs[walk[i]]) & 3
        if t == 1:
            left += 1
        elif t == 3:
            right += 1
        elif t == 2:
            back += 1
    return left, right, back


def _is_simple(emb: PlanarEmbeddedGraph, walk: Sequence[int]) -> bool:
    # darts leaving a vertex are 2e or 2e+1; tails come from the edge list directly
    edges = emb.graph.edges
    verts = [edges[d >> 1][d & 1] for d in walk]
    return len(set(verts)) == len(verts)


def _inner_rect(emb: PlanarEmbeddedGraph, dirs) -> Verdict:
    outer = emb.outer_face
    for f, walk in enumerate(faces(emb)):
        if f == outer:
            continue
        left, right, back = _turns(walk.darts, dirs)
        if left != 4 or right or back or not _is_simple(emb, walk.darts):
            return _fail(
                Reason.NON_RECTANGULAR_FACE,
                f"internal face {f} is not a rectangle ({left} left, {right} right, {back} reversing turns)",
                face=f,
            )
    return OK


def check_inner_rectangular(emb: PlanarEmbeddedGraph, coords) -> Verdict:
    """Every internal face is a rectangle traced counter-clockwise.

    The outer walk is only required to be embedding-consistent, so bridges and
    degree-1 vertices hanging into the outer face are accepted.
    """
    if emb.outer_dart is None:
        raise StructureError("inner-rectangularity needs a designated outer face")
    verdict, _, dirs = _prepare(emb, coords)
    if not verdict:
        return verdict
    return _inner_rect(emb, dirs)


def check_rectangular(emb: PlanarEmbeddedGraph, coords) -> Verdict:
    if emb.outer_dart is None:
        raise StructureError("rectangularity needs a designated outer face")
    verdict, _, dirs = _prepare(emb, coords)
    if not verdict:
        return verdict
    verdict = _inner_rect(emb, dirs)
    if not verdict:
        return verdict
    outer = emb.outer_face
    walk = faces(emb)[outer].darts
    left, right, back = _turns(walk, dirs)
    if back:
        k = len(walk)
        tips = [emb.graph.head(walk[i]) for i in range(k) if (dirs[walk[(i + 1) % k]] - dirs[walk[i]]) & 3 == 2]
        return _fail(Reason.DANGLING_BRIDGE, "outer walk reverses at a degree-1 vertex", face=outer, vertices=tips)
    if right != 4 or left or not _is_simple(emb, walk):
        return _fail(
            Reason.NON_RECTANGULAR_FACE,
            f"outer face is not a rectangle ({left} left, {right} right turns)",
            face=outer,
        )
    return OK


def even_faces_check(emb: PlanarEmbeddedGraph) -> Verdict:
    """Every internal face is a simple cycle of even length.

    Without a designated outer face every face is treated as internal.
    """
    outer = emb.outer_face
    for f, walk in enumerate(faces(emb)):
        if f == outer:
            continue
        if not _is_simple(emb, walk.darts):
            return _fail(Reason.NON_RECTANGULAR_FACE, f"face {f} is not bounded by a simple cycle", face=f)
        if walk.degree % 2:
            return _fail(Reason.ODD_CYCLE, f"face {f} has odd length {walk.degree}", face=f)
    return OK
