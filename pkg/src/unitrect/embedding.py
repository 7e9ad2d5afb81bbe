"""Candidate plane embeddings of graphs passing the structural conditions,
and the forced outer rectangle of flat graphs.

The embedding of G is assembled from skeleton embeddings.  Along the spine
the face of each skeleton that becomes the outer face of G is tracked; the
twin rule (left of a virtual edge in one skeleton is right of its twin in the
next) then forces every interior choice, leaving only the two ends free.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .graph import (
    Graph,
    PlanarEmbeddedGraph,
    StructureError,
    embedding_key_up_to_reflection,
    faces,
    is_cycle,
    planar_embedding,
)
from .spqr import PrunedTree, Skeleton, SpqrTree, build_spqr, check_structural_conditions, is_flat, prune


@dataclass(frozen=True)
class CandidateEmbedding:
    embedding: PlanarEmbeddedGraph
    provenance: dict = field(default_factory=dict, compare=False, hash=False)

    def key(self) -> tuple:
        return embedding_key_up_to_reflection(self.embedding)


@dataclass(frozen=True)
class OuterRectangleSpec:
    u_r: int
    v_r: int
    v_l: int
    u_l: int
    width: int
    height: int
    paths: tuple  # top, right, bottom, left vertex sequences, clockwise
    coords: dict = field(compare=False, hash=False)  # outer vertex -> point
    u: int = -1
    v: int = -1
    r: int = 0
    l: int = 0

    @property
    def corners(self) -> tuple[int, int, int, int]:
        return (self.u_r, self.v_r, self.v_l, self.u_l)

    def to_json(self) -> dict:
        return {
            "corners": {"u_r": self.u_r, "v_r": self.v_r, "v_l": self.v_l, "u_l": self.u_l},
            "width": self.width,
            "height": self.height,
            "poles": [self.u, self.v],
            "r": self.r,
            "l": self.l,
        }


def analyse(g: Graph, t: SpqrTree | None = None) -> tuple[SpqrTree, PrunedTree]:
    """SPQR-tree and pruned tree of ``g``; raises if the structural conditions fail."""
    if t is None:
        t = build_spqr(g)
    pt = prune(t)
    rep = check_structural_conditions(pt, t)
    if not rep:
        raise StructureError(f"structural condition {rep.condition} violated: {rep.detail}")
    return t, pt


def _length(t: SpqrTree, s: int) -> int:
    return len(t.represented(s))


def _cycle_embedding(g: Graph) -> PlanarEmbeddedGraph:
    e0 = planar_embedding(g)
    return e0.with_outer(0)


def _mirror_rot(rot: dict[int, list[int]]) -> dict[int, list[int]]:
    return {v: list(reversed(seq)) for v, seq in rot.items()}


def _p_rotation(t: SpqrTree, node: int, order: list[int]) -> dict[int, list[int]]:
    e = t.edges[order[0]]
    return {e.u: list(order), e.v: list(reversed(order))}


def _face_with(sk: Skeleton, inside: set, outside: set) -> list[int]:
    """Faces of a skeleton containing every edge of ``inside`` and none of ``outside``."""
    out = []
    for f in range(len(sk.emb._faces[0])):
        es = {s for s, _ in sk.face_edges(f)}
        if inside <= es and not (es & outside):
            out.append(f)
    return out


class _Walk:
    """One assembly of the spine; ``first`` and ``last`` select the end choices."""

    def __init__(self, t: SpqrTree, pt: PrunedTree, base: PlanarEmbeddedGraph):
        self.t = t
        self.pt = pt
        self.base = base
        self.spine = pt.spine
        self.link = []  # (edge in node i, edge in node i+1)
        for a, b in zip(self.spine, self.spine[1:]):
            s = next(s for y, s in t.neighbors(a) if y == b)
            self.link.append((s, t.edges[s].twin))

    def side_edges(self, i: int) -> list[int]:
        """Skeleton edges of spine node i that do not lead along the spine."""
        used = set()
        if i > 0:
            used.add(self.link[i - 1][1])
        if i < len(self.link):
            used.add(self.link[i][0])
        return [s for s in self.t.nodes[self.spine[i]].edges if s not in used]

    # options for the first node: (rotation, face) pairs with a label
    def first_options(self, unit: bool) -> list[tuple[dict, int, str]]:
        t = self.t
        x = self.spine[0]
        out_edge = self.link[0][0]
        kind = t.nodes[x].kind
        sides = self.side_edges(0)
        if kind == "P":
            a, b = sides
            la, lb = _length(t, a), _length(t, b)
            mids = [a, b]
            if unit:
                if la == lb:
                    return []
                mids = [a if la < lb else b]
            res = []
            for m in mids:
                other = b if m == a else a
                rot = _p_rotation(t, x, [out_edge, m, other])
                sk = t.skeleton(x, rot)
                f = _face_with(sk, {out_edge, other}, {m})[0]
                res.append((rot, f, f"P:middle={m}"))
            return res
        if kind == "R":
            rot = t.skeleton_rotation(x, self.base)
            sk = t.skeleton(x, rot)
            u = t.edges[out_edge].u
            fa, fb = sk.left(out_edge, u), sk.right(out_edge, u)
            cands = [fa, fb]
            if unit:
                la = self._path_len(sk, fa, out_edge)
                lb = self._path_len(sk, fb, out_edge)
                if la == lb:
                    return []
                cands = [fa if la > lb else fb]
            return [(rot, f, f"R:face={'left' if f == fa else 'right'}") for f in cands]
        raise StructureError(f"spine end is an {kind}-node")

    def _path_len(self, sk: Skeleton, f: int, skip: int) -> int:
        return sum(_length(self.t, s) for s, _ in sk.face_edges(f) if s != skip)

    def next_options(self, i: int, want_left: bool, unit: bool) -> list[tuple[dict, int, str]]:
        """Options for spine node i given the side of its incoming edge the outer face must be on.

        ``want_left``: the outer face lies left of the incoming edge oriented u -> v.
        """
        t = self.t
        x = self.spine[i]
        kind = t.nodes[x].kind
        inc = self.link[i - 1][1]
        u = t.edges[inc].u
        last = i == len(self.spine) - 1
        out_edge = None if last else self.link[i][0]

        def on_side(sk):
            return sk.left(inc, u) if want_left else sk.right(inc, u)

        if kind == "S":
            rot = t.default_rotation(x)
            sk = t.skeleton(x, rot)
            return [(rot, on_side(sk), "S")]
        if kind == "P":
            sides = self.side_edges(i)
            if not last:
                (m,) = sides
                pairs = [(m, out_edge)]
            else:
                a, b = sides
                la, lb = _length(t, a), _length(t, b)
                pairs = [(a, b), (b, a)]
                if unit:
                    if la == lb:
                        return []
                    pairs = [(a, b)] if la < lb else [(b, a)]
            res = []
            for m, other in pairs:
                for order in ([inc, m, other], [inc, other, m]):
                    rot = _p_rotation(t, x, order)
                    sk = t.skeleton(x, rot)
                    f = on_side(sk)
                    if f in _face_with(sk, {inc, other}, {m}):
                        res.append((rot, f, f"P:middle={m}" if last else "P"))
            return res
        if kind == "R":
            base = t.skeleton_rotation(x, self.base)
            res = []
            for rot, tag in ((base, "base"), (_mirror_rot(base), "mirror")):
                sk = t.skeleton(x, rot)
                f = on_side(sk)
                if last:
                    res.append((rot, f, f"R:{tag}", sk))
                elif f in _face_with(sk, {inc, out_edge}, set()):
                    res.append((rot, f, "R", sk))
            if last and unit:
                lens = [self._path_len(sk, f, inc) for _, f, _, sk in res]
                if lens[0] == lens[1]:
                    return []
                res = [res[0] if lens[0] > lens[1] else res[1]]
            return [r[:3] for r in res]
        raise StructureError(f"unexpected {kind}-node on the spine")

    def assemble(self, first: tuple, unit: bool) -> list[tuple[dict, str]]:
        """All completions of the spine from one choice at its first node."""
        t = self.t
        partial = [({self.spine[0]: first[0]}, first[1], [first[2]])]
        for i in range(1, len(self.spine)):
            nxt = []
            for rots, f, labels in partial:
                prev = self.spine[i - 1]
                s, _ = self.link[i - 1]
                sk = t.skeleton(prev, rots[prev])
                left = sk.left(s, t.edges[s].u) == f
                # the face left of s is right of its twin, both oriented u -> v
                for rot, g_f, lab in self.next_options(i, not left, unit):
                    r2 = dict(rots)
                    r2[self.spine[i]] = rot
                    nxt.append((r2, g_f, labels + [lab]))
            partial = nxt
        return [(rots, labels) for rots, _, labels in partial]

    def build(self, rots: dict, first_face: int) -> PlanarEmbeddedGraph:
        t = self.t
        x = self.spine[0]
        sk = t.skeleton(x, rots[x])
        spine_edges = {self.link[0][0]} if self.link else set()
        for s, frm in sk.face_edges(first_face):
            if s not in spine_edges:
                dart = t.path_darts(s, frm)[0]
                break
        else:
            raise AssertionError("outer skeleton face has no side edge")
        emb = PlanarEmbeddedGraph(t.graph, t.glue(rots), dart)
        if not emb.euler_ok():
            raise AssertionError("glued skeletons do not form a planar embedding")
        return emb


def _single_p(t: SpqrTree, x: int, unit: bool) -> list[CandidateEmbedding]:
    a, b, c = t.nodes[x].edges
    lens = {s: _length(t, s) for s in (a, b, c)}
    mids = [a, b, c]
    if unit:
        lo = min(lens.values())
        mids = [s for s in mids if lens[s] == lo]
        if len(mids) != 1:
            return []
    out = []
    for m in mids:
        x1, y1 = [s for s in (a, b, c) if s != m]
        rot = _p_rotation(t, x, [x1, m, y1])
        sk = t.skeleton(x, rot)
        f = _face_with(sk, {x1, y1}, {m})[0]
        frm = next(fr for s, fr in sk.face_edges(f) if s == x1)
        dart = t.path_darts(x1, frm)[0]
        emb = PlanarEmbeddedGraph(t.graph, t.glue({x: rot}), dart)
        out.append(CandidateEmbedding(emb, {"spine": ["P"], "middle": m, "middle_length": lens[m]}))
    return out


def _spine_candidates(g: Graph, t: SpqrTree, pt: PrunedTree, unit: bool) -> list[CandidateEmbedding]:
    spine = pt.spine
    kinds = [t.nodes[x].kind for x in spine]
    if len(spine) == 1 and kinds[0] == "P":
        return _single_p(t, spine[0], unit)
    base = planar_embedding(g)
    w = _Walk(t, pt, base)
    out = []
    seen = set()
    for first in w.first_options(unit):
        for rots, labels in w.assemble(first, unit):
            emb = w.build(rots, first[1])
            cand = CandidateEmbedding(emb, {"spine": kinds, "choices": labels})
            k = cand.key()
            if k not in seen:
                seen.add(k)
                out.append(cand)
    return out


def rigid_embedding(g: Graph) -> PlanarEmbeddedGraph:
    """The planar embedding (up to reflection) of a graph whose spine is one R-node."""
    return planar_embedding(g)


def unique_unit_length_embedding(g: Graph, t: SpqrTree | None = None) -> Optional[CandidateEmbedding]:
    """The only embedding a unit-length rectangular drawing of ``g`` can have, or None."""
    if is_cycle(g):
        return CandidateEmbedding(_cycle_embedding(g), {"spine": ["S"]})
    t, pt = analyse(g, t)
    if not is_flat(pt):
        emb = rigid_embedding(g)
        walks = faces(emb)
        top = max(len(w) for w in walks)
        biggest = [w for w in walks if len(w) == top]
        if len(biggest) != 1:
            return None
        return CandidateEmbedding(emb.with_outer(biggest[0].darts[0]), {"spine": ["R"], "outer_degree": top})
    cands = _spine_candidates(g, t, pt, unit=True)
    if not cands:
        return None
    if len(cands) != 1:
        raise AssertionError("unit-length choices are not forced")
    return cands[0]


def flat_candidate_embeddings(g: Graph, t: SpqrTree | None = None) -> list[CandidateEmbedding]:
    """Every embedding a rectangular drawing of a flat graph can have (up to reflection)."""
    t, pt = analyse(g, t)
    if not is_flat(pt):
        raise StructureError("graph is not flat")
    return _spine_candidates(g, t, pt, unit=False)


def _outer_cycle(emb: PlanarEmbeddedGraph) -> list[int]:
    return list(faces(emb)[emb.outer_face].darts)


def candidate_outer_rectangle(cand: CandidateEmbedding | PlanarEmbeddedGraph,
                              t: SpqrTree | None = None) -> Optional[OuterRectangleSpec]:
    """Forced outer drawing of a flat graph with the given embedding, or None."""
    emb = cand.embedding if isinstance(cand, CandidateEmbedding) else cand
    g = emb.graph
    walk = _outer_cycle(emb)
    if is_cycle(g):
        # only C4 is forced; longer cycles get the thinnest box, its first edge as a side
        if g.n < 4 or g.n % 2:
            return None
        return _rectangle(g, walk, g.tail(walk[0]), g.head(walk[0]), 1)
    t, pt = analyse(g, t)
    if not is_flat(pt):
        raise StructureError("graph is not flat")
    outer_edges = {d >> 1 for d in walk}
    on_spine = set(pt.spine)
    found = None
    for x in pt.spine:
        if t.nodes[x].kind != "P":
            continue
        for s in t.nodes[x].edges:
            tw = t.edges[s].twin
            if t.edges[tw].node in on_spine:
                continue
            es = t.represented(s)
            if not outer_edges.intersection(es):
                found = (t.edges[s].u, t.edges[s].v, len(es))
                break
        if found:
            break
    if found is None:
        for x in pt.spine:
            if t.nodes[x].kind != "R":
                continue
            for y, s in t.neighbors(x):
                if y not in on_spine or t.nodes[y].kind != "S":
                    continue
                sk = t.skeleton(x, t.skeleton_rotation(x, emb))
                u = t.edges[s].u
                for f in (sk.left(s, u), sk.right(s, u)):
                    es = [r for s2, _ in sk.face_edges(f) if s2 != s for r in t.represented(s2)]
                    if not outer_edges.intersection(es):
                        found = (t.edges[s].u, t.edges[s].v, len(es))
                        break
                if found:
                    break
            if found:
                break
    if found is None:
        return None
    return _rectangle(g, walk, *found)


def _rectangle(g: Graph, walk: list[int], u: int, v: int, h: int) -> Optional[OuterRectangleSpec]:
    verts = [g.tail(d) for d in walk]
    if len(set(verts)) != len(verts):
        return None
    pos = {x: i for i, x in enumerate(verts)}
    total = len(verts)
    r = (pos[v] - pos[u]) % total
    l = total - r
    if (r - h) % 2 or (l - h) % 2 or r < h or l < h:
        return None
    width = (total - 2 * h) // 2
    if width <= 0:
        return None
    dist = [(r - h) // 2, (r + h) // 2, r + (l - h) // 2, r + (l + h) // 2]
    at = [verts[(pos[u] + k) % total] for k in dist]
    u_r, v_r, v_l, u_l = at
    start = pos[u_l]
    coords = {}
    x, y = 0, h
    steps = [(1, 0)] * width + [(0, -1)] * h + [(-1, 0)] * width + [(0, 1)] * h
    seq = [verts[(start + k) % total] for k in range(total)]
    for vert, (dx, dy) in zip(seq, steps):
        coords[vert] = (x, y)
        x, y = x + dx, y + dy
    bounds = [0, width, width + h, 2 * width + h, total]
    paths = tuple(tuple(seq[(bounds[i] + k) % total] for k in range(bounds[i + 1] - bounds[i] + 1))
                  for i in range(4))
    return OuterRectangleSpec(u_r, v_r, v_l, u_l, width, h, paths, coords, u, v, r, l)
