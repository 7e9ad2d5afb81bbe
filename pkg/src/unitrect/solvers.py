"""Deciders for the unit-length drawing problems.

``solve_uirfe_fixed_outer``     inner-rectangular, outer drawing prescribed
``solve_urfe_plane``            rectangular, plane embedding fixed
``solve_urfe_planar_embedded``  rectangular, rotation system fixed, outer face free
``solve_ur``                    rectangular, embedding free
"""

from __future__ import annotations

from typing import Optional

from . import rectholes
from .embedding import analyse, candidate_outer_rectangle, unique_unit_length_embedding
from .graph import (
    Graph,
    PlanarEmbeddedGraph,
    StructureError,
    faces,
    is_biconnected,
    is_connected,
    is_cycle,
    max_degree,
    planar_embedding,
)
from .result import SolveRequest, SolveResponse
from .spqr import is_flat
from .validate import check_inner_rectangular, check_rectangular, even_faces_check


def _negative(reason: str, **extra) -> SolveResponse:
    return SolveResponse(False, None, {"reason": reason, **extra})


def solve_uirfe_fixed_outer(emb: PlanarEmbeddedGraph, outer) -> SolveResponse:
    res = rectholes.run(emb, outer)
    if not res.ok:
        return SolveResponse(False, None, {"reason": "rect-holes", "failure": res.failure.to_json()}, emb)
    if not check_inner_rectangular(emb, res.drawing):
        raise AssertionError("rect-holes returned an invalid drawing")
    return SolveResponse(True, res.drawing, {"stats": {"faces_drawn": res.stats.faces_drawn}}, emb)


# -- fixed plane embedding ---------------------------------------------

def _outer_walk(emb: PlanarEmbeddedGraph) -> list[int]:
    return [emb.graph.tail(d) for d in faces(emb)[emb.outer_face].darts]


def outer_rectangle_coords(walk: list[int], start: int, width: int, height: int) -> dict[int, tuple[int, int]]:
    """Outer vertices on a ``width`` x ``height`` box, ``walk[start]`` at the top-left corner.

    The walk runs clockwise (outer face on its left), so from the top-left
    corner it heads east.
    """
    steps = [(1, 0)] * width + [(0, -1)] * height + [(-1, 0)] * width + [(0, 1)] * height
    x, y = 0, height
    out = {}
    k = len(walk)
    for i, (dx, dy) in enumerate(steps):
        out[walk[(start + i) % k]] = (x, y)
        x, y = x + dx, y + dy
    return out


def _try_box(emb, walk, a_idx, width, stats) -> Optional[list]:
    height = len(walk) // 2 - width
    if width < 1 or height < 1:
        return None
    stats["rect_holes_calls"] = stats.get("rect_holes_calls", 0) + 1
    res = rectholes.run(emb, outer_rectangle_coords(walk, a_idx, width, height))
    return res.drawing if res.ok else None


def _run_lengths(emb: PlanarEmbeddedGraph, f: int, outer_edges: set) -> tuple[int, int]:
    """Longest cyclic run of outer edges along face ``f`` and the index where it starts."""
    darts = faces(emb)[f].darts
    k = len(darts)
    marks = [(d >> 1) in outer_edges for d in darts]
    if all(marks):
        return k, 0
    best, best_at = 0, 0
    # start scanning right after an unmarked edge so runs never wrap
    s0 = marks.index(False) + 1
    run, at = 0, s0
    for j in range(k):
        i = (s0 + j) % k
        if marks[i]:
            if run == 0:
                at = i
            run += 1
            if run > best:
                best, best_at = run, at
        else:
            run = 0
    return best, best_at


def _face_info(emb: PlanarEmbeddedGraph):
    outer = faces(emb)[emb.outer_face]
    outer_edges = {d >> 1 for d in outer.darts}
    out = []
    for f in emb.internal_faces():
        run, at = _run_lengths(emb, f, outer_edges)
        darts = faces(emb)[f].darts
        k = len(darts)
        # vertices strictly inside the run
        inner = [emb.graph.tail(darts[(at + j) % k]) for j in range(1, run)]
        out.append((f, k, run, inner))
    return out


def solve_urfe_plane(emb: PlanarEmbeddedGraph, strategy: str = "auto") -> SolveResponse:
    """Unit-length rectangular drawing respecting a plane embedding.

    ``strategy`` is "auto" (cycle, forced faces, corner faces, then the
    general enumeration) or "general" (only the general enumeration).
    """
    if emb.outer_dart is None:
        raise StructureError("solve_urfe_plane needs an outer face")
    g = emb.graph
    if g.m == 0 or not is_biconnected(g):
        return _negative("not biconnected")
    if max_degree(g) > 4:
        return _negative("degree greater than 4")
    ev = even_faces_check(emb)
    if not ev:
        return _negative("face check", failure=ev.failure.to_json())
    walk = _outer_walk(emb)
    L = len(walk)
    stats: dict = {}

    def finish(drawing, path, **extra):
        if drawing is None:
            return SolveResponse(False, None, {"path": path, **stats, **extra}, emb)
        if not check_rectangular(emb, drawing):
            raise AssertionError("solver produced a non-rectangular drawing")
        return SolveResponse(True, drawing, {"path": path, **stats, **extra}, emb)

    if is_cycle(g):
        if L < 4:
            return _negative("cycle shorter than 4")
        return finish(_try_box(emb, walk, 0, 1, stats), "cycle")

    pos = {v: i for i, v in enumerate(walk)}
    if len(pos) != L:
        return _negative("outer walk is not a simple cycle")
    deg = g.degrees

    def attempt(a, b):
        w = (pos[b] - pos[a]) % L
        return _try_box(emb, walk, pos[a], w, stats)

    if strategy == "auto":
        info = _face_info(emb)
        forced = [x for x in info if (x[1] == 4 and x[2] >= 3) or (x[1] == 6 and x[2] >= 4)]
        if forced:
            f, k, run, inner = forced[0]
            twos = [v for v in inner if deg[v] == 2]
            for a in twos:
                for b in twos:
                    if a != b:
                        d = attempt(a, b)
                        if d is not None:
                            return finish(d, "double-face", face=f, corners=[a, b])
            return finish(None, "double-face", face=f)
        if all(k <= 6 for _, k, _, _ in info):
            corner = [x for x in info if (x[1] == 4 and x[2] == 2) or (x[1] == 6 and x[2] == 3)]
            if len(corner) != 4:
                return finish(None, "corner-faces", corner_faces=len(corner))
            options = [[v for v in inner if deg[v] == 2] for _, _, _, inner in corner]
            seen = set()
            for choice in _product(options):
                cs = sorted(set(choice), key=lambda v: pos[v])
                if len(cs) != 4 or tuple(cs) in seen:
                    continue
                seen.add(tuple(cs))
                gaps = [(pos[cs[(i + 1) % 4]] - pos[cs[i]]) % L for i in range(4)]
                if gaps[0] != gaps[2] or gaps[1] != gaps[3]:
                    continue
                d = attempt(cs[0], cs[1])
                if d is not None:
                    return finish(d, "corner-faces", corners=cs)
            return finish(None, "corner-faces")

    # general enumeration: a is the smallest-numbered corner, b the next one clockwise
    half = L // 2
    twos = sorted(v for v in walk if deg[v] == 2)
    for a in twos:
        for b in twos:
            w = (pos[b] - pos[a]) % L
            if b == a or w >= half:
                continue
            h = half - w
            c = walk[(pos[a] + w + h) % L]
            d = walk[(pos[a] + 2 * w + h) % L]
            if deg[c] != 2 or deg[d] != 2 or min(b, c, d) < a:
                continue
            drawing = attempt(a, b)
            if drawing is not None:
                return finish(drawing, "general", corners=[a, b, c, d])
    return finish(None, "general")


def _product(options):
    if not options:
        yield ()
        return
    for x in options[0]:
        for rest in _product(options[1:]):
            yield (x,) + rest


def solve_urfe_planar_embedded(emb: PlanarEmbeddedGraph) -> SolveResponse:
    """Rotation system fixed, outer face free: the outer face must be the unique largest one."""
    g = emb.graph
    if g.m == 0 or not is_connected(g):
        return _negative("not connected")
    walks = faces(emb)
    if is_cycle(g):
        return solve_urfe_plane(emb.with_outer(walks[0].darts[0]))
    top = max(len(w) for w in walks)
    big = [f for f, w in enumerate(walks) if len(w) == top]
    if len(big) != 1:
        return _negative("largest face is not unique", degree=top, faces=big)
    return solve_urfe_plane(emb.with_outer(walks[big[0]].darts[0]))


def solve_ur(g: Graph | PlanarEmbeddedGraph) -> SolveResponse:
    """Unit-length rectangular drawing with any planar embedding."""
    if isinstance(g, PlanarEmbeddedGraph):
        g = g.graph
    if g.m == 0 or not is_biconnected(g):
        return _negative("not biconnected")
    if max_degree(g) > 4:
        return _negative("degree greater than 4")
    e0 = planar_embedding(g)
    if e0 is None:
        return _negative("not planar")
    if is_cycle(g):
        return solve_urfe_plane(e0.with_outer(0))
    try:
        t, pt = analyse(g)
    except StructureError as exc:
        return _negative("structural conditions", detail=str(exc))
    if not is_flat(pt):
        cand = unique_unit_length_embedding(g, t)
        if cand is None:
            return _negative("largest face is not unique")
        res = solve_urfe_plane(cand.embedding)
        res.witness["flat"] = False
        return res
    cand = unique_unit_length_embedding(g, t)
    if cand is None:
        return _negative("no unit-length embedding candidate", flat=True)
    box = candidate_outer_rectangle(cand, t)
    if box is None:
        return _negative("no candidate outer rectangle", flat=True)
    res = rectholes.run(cand.embedding, box.coords)
    witness = {"flat": True, "outer_rectangle": box.to_json(), "path": "flat"}
    if not res.ok:
        witness["failure"] = res.failure.to_json()
        return SolveResponse(False, None, witness, cand.embedding)
    if not check_rectangular(cand.embedding, res.drawing):
        raise AssertionError("flat path produced a non-rectangular drawing")
    return SolveResponse(True, res.drawing, witness, cand.embedding)


def solve(req: SolveRequest) -> SolveResponse:
    """Dispatch a request to the solver for its mode."""
    from .flow import decide_rectangular

    if req.mode == "uirfe":
        return solve_uirfe_fixed_outer(req.graph, req.outer)
    if req.mode == "urfe":
        return solve_urfe_plane(req.graph)
    if req.mode == "urfe-embedded":
        return solve_urfe_planar_embedded(req.graph)
    if req.mode == "ur":
        return solve_ur(req.graph)
    dec = decide_rectangular(req.graph, embedded=isinstance(req.graph, PlanarEmbeddedGraph))
    witness = {"reason": dec.reason, "tried": dec.tried}
    if dec.angles is not None:
        witness["angles"] = {str(d): a for d, a in sorted(dec.angles.items())}
    return SolveResponse(dec.positive, None, witness, dec.embedding)
