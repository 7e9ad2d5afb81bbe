"""JSON formats and SVG output.

Graph JSON::

    {"n": 4, "adj": [[1, 3], [0, 2], [1, 3], [2, 0]], "outer": [0, 1]}

``adj[v]`` lists the neighbors of ``v`` counter-clockwise; ``outer`` names the
face to the left of the dart u -> v, or is null.  Drawing JSON is
``{"coords": [[x, y], ...]}`` with integers only.
"""

from __future__ import annotations

import json
from typing import Any, Optional, Sequence

from .graph import Graph, PlanarEmbeddedGraph, StructureError


class InputError(ValueError):
    """Malformed input; ``kind`` is "json", "schema" or "euler"."""

    def __init__(self, kind: str, detail: str):
        super().__init__(f"{kind}: {detail}")
        self.kind = kind
        self.detail = detail

    def to_json(self) -> dict:
        return {"error": self.kind, "detail": self.detail}


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _load(text) -> Any:
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    if not isinstance(text, str):
        return text
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("json", str(exc)) from None


def graph_from_obj(obj: Any) -> PlanarEmbeddedGraph:
    if not isinstance(obj, dict):
        raise InputError("schema", "graph must be a JSON object")
    n = obj.get("n")
    adj = obj.get("adj")
    if not _is_int(n) or n < 0:
        raise InputError("schema", "'n' must be a non-negative integer")
    if not isinstance(adj, list) or len(adj) != n:
        raise InputError("schema", "'adj' must list one neighbor list per vertex")
    for v, row in enumerate(adj):
        if not isinstance(row, list) or not all(_is_int(w) for w in row):
            raise InputError("schema", f"adj[{v}] must be a list of integers")
        if any(not 0 <= w < n for w in row):
            raise InputError("schema", f"adj[{v}] names a vertex out of range")
    outer = obj.get("outer")
    if outer is not None:
        if not (isinstance(outer, list) and len(outer) == 2 and all(_is_int(x) for x in outer)):
            raise InputError("schema", "'outer' must be [u, v] or null")
    try:
        emb = PlanarEmbeddedGraph.from_adjacency(adj, outer)
    except StructureError as exc:
        raise InputError("schema", str(exc)) from None
    if not emb.euler_ok():
        raise InputError("euler", "rotation system is not planar (V - E + F != 2 on some component)")
    return emb


def parse_graph_json(text) -> PlanarEmbeddedGraph:
    return graph_from_obj(_load(text))


def graph_to_obj(emb: PlanarEmbeddedGraph) -> dict:
    g = emb.graph
    outer = None
    if emb.outer_dart is not None:
        outer = [g.tail(emb.outer_dart), g.head(emb.outer_dart)]
    return {"n": g.n, "adj": emb.adjacency(), "outer": outer}


def serialize_graph(emb: PlanarEmbeddedGraph) -> str:
    return json.dumps(graph_to_obj(emb))


def drawing_from_obj(obj: Any, n: Optional[int] = None) -> list[tuple[int, int]]:
    if isinstance(obj, dict):
        obj = obj.get("coords")
    if not isinstance(obj, list):
        raise InputError("schema", "drawing must be {\"coords\": [[x, y], ...]}")
    out = []
    for i, p in enumerate(obj):
        if not (isinstance(p, list) and len(p) == 2 and all(_is_int(c) for c in p)):
            raise InputError("schema", f"coords[{i}] must be a pair of integers")
        out.append((p[0], p[1]))
    if n is not None and len(out) != n:
        raise InputError("schema", f"expected {n} coordinates, got {len(out)}")
    return out


def parse_drawing_json(text, n: Optional[int] = None) -> list[tuple[int, int]]:
    return drawing_from_obj(_load(text), n)


def outer_from_obj(obj: Any) -> dict[int, tuple[int, int]]:
    """Prescribed outer drawing: a full coords list (null for free vertices) or a {vertex: [x, y]} map."""
    if isinstance(obj, dict) and "coords" in obj:
        obj = obj["coords"]
    if isinstance(obj, dict):
        items = obj.items()
    elif isinstance(obj, list):
        items = enumerate(obj)
    else:
        raise InputError("schema", "outer drawing must be a coords list or an object")
    out = {}
    for k, p in items:
        if p is None:
            continue
        try:
            v = int(k)
        except (TypeError, ValueError):
            raise InputError("schema", f"bad vertex key {k!r}") from None
        if not (isinstance(p, list) and len(p) == 2 and all(_is_int(c) for c in p)):
            raise InputError("schema", f"coordinate of vertex {v} must be a pair of integers")
        out[v] = (p[0], p[1])
    return out


def serialize_drawing(coords: Sequence[Sequence[int]]) -> str:
    return json.dumps({"coords": [[int(x), int(y)] for x, y in coords]})


def render_svg(g: Graph | PlanarEmbeddedGraph, coords: Sequence[Sequence[int]], scale: int = 40) -> str:
    """SVG of a grid drawing, y axis pointing up.

    A graph without edges renders as the bare header.
    """
    if isinstance(g, PlanarEmbeddedGraph):
        g = g.graph
    if scale < 1:
        raise ValueError("scale must be at least 1")
    s = scale
    pts = [(int(x), int(y)) for x, y in coords]
    xs = [p[0] for p in pts] or [0]
    ys = [p[1] for p in pts] or [0]
    minx, maxx, miny, maxy = min(xs), max(xs), min(ys), max(ys)

    def px(p):
        return p[0] * s, (miny + maxy - p[1]) * s

    half = s // 2 if s % 2 == 0 else s / 2
    vb = f"{minx * s - half} {miny * s - half} {(maxx - minx + 1) * s} {(maxy - miny + 1) * s}"
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{vb}">']
    if g.m:
        lines.append('<g stroke="black" stroke-width="2">')
        for u, v in g.edges:
            (x1, y1), (x2, y2) = px(pts[u]), px(pts[v])
            lines.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
        lines.append("</g>")
        r = max(1, s // 8)
        for v, p in enumerate(pts):
            cx, cy = px(p)
            lines.append(f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="white" stroke="black"/>'
                         f'<text x="{cx}" y="{cy}" font-size="{max(1, s // 4)}" text-anchor="middle" '
                         f'dominant-baseline="central">{v}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
