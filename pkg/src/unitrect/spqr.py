"""SPQR-trees of biconnected graphs.

Built by repeatedly splitting off multiple edges, chains of degree-2 vertices
and separation pairs, then merging adjacent S-S and P-P components and
finally hanging one Q-node off every real edge.  Quadratic, which is fine at
the sizes the solvers feed it.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Optional

from .graph import Graph, PlanarEmbeddedGraph, StructureError, is_biconnected


@dataclass
class SkelEdge:
    u: int
    v: int
    node: int = -1
    real: Optional[int] = None  # edge id in G for real edges
    twin: Optional[int] = None  # skeleton edge id of the twin for virtual edges

    @property
    def virtual(self) -> bool:
        return self.real is None

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


@dataclass
class SpqrNode:
    id: int
    kind: str  # "S", "P", "Q" or "R"
    edges: list[int]  # skeleton edge ids; S-nodes list theirs in cycle order
    poles: Optional[tuple[int, int]] = None


class _Registry:
    def __init__(self):
        self.eu: list[int] = []
        self.ev: list[int] = []
        self.real: list[Optional[int]] = []
        self.twin: list[Optional[int]] = []

    def add(self, u, v, real=None):
        self.eu.append(u)
        self.ev.append(v)
        self.real.append(real)
        self.twin.append(None)
        return len(self.eu) - 1

    def pair(self, u, v):
        a = self.add(u, v)
        b = self.add(u, v)
        self.twin[a] = b
        self.twin[b] = a
        return a, b


def _articulation_point(adj, verts, skip) -> Optional[int]:
    """First cut vertex of the graph on ``verts - {skip}``, or None."""
    start = next(v for v in verts if v != skip)
    disc = {start: 0}
    low = {start: 0}
    t = 1
    root_children = 0
    stack = [(start, -1, iter(adj[start]))]
    while stack:
        v, pe, it = stack[-1]
        advanced = False
        for w, e in it:
            if w == skip or e == pe:
                continue
            if w in disc:
                low[v] = min(low[v], disc[w])
            else:
                disc[w] = low[w] = t
                t += 1
                stack.append((w, e, iter(adj[w])))
                advanced = True
                break
        if advanced:
            continue
        stack.pop()
        if stack:
            p = stack[-1][0]
            low[p] = min(low[p], low[v])
            if p == start:
                root_children += 1
            elif low[v] >= disc[p]:
                return p
    if root_children > 1:
        return start
    return None


def _split(comp: list[int], reg: _Registry) -> Optional[list[list[int]]]:
    adj = defaultdict(list)
    by_pair = defaultdict(list)
    for e in comp:
        u, v = reg.eu[e], reg.ev[e]
        adj[u].append((v, e))
        adj[v].append((u, e))
        by_pair[(min(u, v), max(u, v))].append(e)
    verts = list(adj)
    if len(verts) == 2:
        return None
    for (u, v), es in by_pair.items():
        if len(es) >= 2:
            a, b = reg.pair(u, v)
            bundle = set(es)
            return [es + [b], [e for e in comp if e not in bundle] + [a]]
    if all(len(adj[v]) == 2 for v in verts):
        return None
    # a maximal chain of degree-2 vertices becomes a cycle on its own
    x = next((v for v in verts if len(adj[v]) == 2), None)
    if x is not None:
        chain = set()
        ends = []
        for w, e in adj[x]:
            prev, cur = x, w
            chain.add(e)
            last = e
            while len(adj[cur]) == 2:
                (w1, e1), (w2, e2) = adj[cur]
                nxt, ne = (w2, e2) if e1 == last else (w1, e1)
                chain.add(ne)
                prev, cur, last = cur, nxt, ne
            ends.append(cur)
        p, q = ends
        a, b = reg.pair(p, q)
        return [list(chain) + [a], [e for e in comp if e not in chain] + [b]]
    for a in verts:
        b = _articulation_point(adj, verts, a)
        if b is None:
            continue
        # one component of comp - {a, b}
        start = next(v for v in verts if v not in (a, b))
        seen = {start}
        todo = [start]
        while todo:
            v = todo.pop()
            for w, _ in adj[v]:
                if w not in seen and w not in (a, b):
                    seen.add(w)
                    todo.append(w)
        side = [e for e in comp if reg.eu[e] in seen or reg.ev[e] in seen]
        side_set = set(side)
        x, y = reg.pair(a, b)
        return [side + [x], [e for e in comp if e not in side_set] + [y]]
    return None


def _classify(comp, reg) -> str:
    deg = defaultdict(int)
    for e in comp:
        deg[reg.eu[e]] += 1
        deg[reg.ev[e]] += 1
    if len(deg) == 2:
        return "P"
    if all(d == 2 for d in deg.values()):
        return "S"
    return "R"


def _cycle_order(edge_ids, edges_uv) -> list[int]:
    inc = defaultdict(list)
    for s in edge_ids:
        u, v = edges_uv(s)
        inc[u].append(s)
        inc[v].append(s)
    first = edge_ids[0]
    order = [first]
    u, v = edges_uv(first)
    cur, last = v, first
    while len(order) < len(edge_ids):
        nxt = inc[cur][0] if inc[cur][0] != last else inc[cur][1]
        order.append(nxt)
        a, b = edges_uv(nxt)
        cur = b if a == cur else a
        last = nxt
    return order


class SpqrTree:
    """SPQR-tree of a biconnected graph ``graph``.

    ``edges`` is the flat list of skeleton edges of all nodes; a virtual edge
    and its twin live in the two adjacent nodes.  The tree is rooted at the
    Q-node of real edge 0, which fixes the poles of every other node.
    """

    def __init__(self, graph: Graph, edges: list[SkelEdge], nodes: list[SpqrNode]):
        self.graph = graph
        self.edges = edges
        self.nodes = nodes
        self.q_of_edge = {}
        for nd in nodes:
            if nd.kind == "Q":
                r = next(edges[s].real for s in nd.edges if edges[s].real is not None)
                self.q_of_edge[r] = nd.id
        self.root = self.q_of_edge[0]
        self._orient()

    # -- tree structure ------------------------------------------------
    def neighbors(self, node: int) -> list[tuple[int, int]]:
        """(neighbor node, own virtual edge leading there) pairs."""
        out = []
        for s in self.nodes[node].edges:
            t = self.edges[s].twin
            if t is not None:
                out.append((self.edges[t].node, s))
        return out

    def _orient(self):
        n = len(self.nodes)
        self.parent = [-1] * n
        self.parent_edge: list[Optional[int]] = [None] * n  # own edge towards the parent
        order = []
        todo = [self.root]
        seen = [False] * n
        seen[self.root] = True
        while todo:
            x = todo.pop()
            order.append(x)
            for y, s in self.neighbors(x):
                if not seen[y]:
                    seen[y] = True
                    self.parent[y] = x
                    self.parent_edge[y] = self.edges[s].twin
                    todo.append(y)
        if len(order) != n:
            raise AssertionError("SPQR nodes do not form a tree")
        for x in order:
            pe = self.parent_edge[x]
            if pe is not None:
                self.nodes[x].poles = (self.edges[pe].u, self.edges[pe].v)
        # preorder interval of real edges under each node
        self.real_order: list[int] = []
        self._span = [(0, 0)] * n
        kids = defaultdict(list)
        for x in order[1:]:
            kids[self.parent[x]].append(x)
        stack = [(self.root, False)]
        lo = {}
        while stack:
            x, done = stack.pop()
            if done:
                self._span[x] = (lo[x], len(self.real_order))
                continue
            lo[x] = len(self.real_order)
            if self.nodes[x].kind == "Q":
                self.real_order.append(next(self.edges[s].real for s in self.nodes[x].edges
                                            if self.edges[s].real is not None))
            stack.append((x, True))
            for y in reversed(kids[x]):
                stack.append((y, False))
        self._pos = {r: i for i, r in enumerate(self.real_order)}

    def children(self, node: int) -> list[int]:
        return [y for y, _ in self.neighbors(node) if self.parent[y] == node]

    # -- expansions ----------------------------------------------------
    def expansion_edges(self, s: int) -> list[int]:
        """Real edge ids of G represented by virtual skeleton edge ``s``."""
        e = self.edges[s]
        if e.real is not None:
            raise StructureError("expansion of a real edge")
        other = self.edges[e.twin].node
        if self.parent[other] == e.node:
            lo, hi = self._span[other]
            return sorted(self.real_order[lo:hi])
        lo, hi = self._span[e.node]
        return sorted(self.real_order[:lo] + self.real_order[hi:])

    def represented(self, s: int) -> list[int]:
        """Real edges behind ``s``: itself if real, its expansion otherwise."""
        e = self.edges[s]
        return [e.real] if e.real is not None else self.expansion_edges(s)

    def expansion_graph(self, s: int) -> Graph:
        g = self.graph
        return Graph(g.n, [g.edges[r] for r in self.expansion_edges(s)])

    def _owner(self, node: int, r: int) -> int:
        """Skeleton edge of ``node`` whose expansion contains real edge ``r``."""
        pos = self._pos[r]
        up = None
        for s in self.nodes[node].edges:
            e = self.edges[s]
            if e.real is not None:
                if e.real == r:
                    return s
                continue
            other = self.edges[e.twin].node
            if self.parent[other] == node:
                lo, hi = self._span[other]
                if lo <= pos < hi:
                    return s
            else:
                up = s
        if up is None:
            raise AssertionError("edge not represented in node")
        return up

    def path_darts(self, s: int, start: int) -> list[int]:
        """Darts of G along the expansion of ``s`` from ``start``, when that expansion is a path."""
        g = self.graph
        es = self.represented(s)
        inc = defaultdict(list)
        for r in es:
            a, b = g.edges[r]
            inc[a].append(r)
            inc[b].append(r)
        out = []
        cur, last = start, None
        end = self.edges[s].other(start)
        while cur != end:
            nxt = [r for r in inc[cur] if r != last]
            if len(nxt) != 1:
                raise StructureError("expansion is not a path")
            r = nxt[0]
            d = 2 * r if g.edges[r][0] == cur else 2 * r + 1
            out.append(d)
            cur, last = g.head(d), r
        if len(out) != len(es):
            raise StructureError("expansion is not a path")
        return out

    # -- skeleton embeddings -------------------------------------------
    def skeleton_rotation(self, node: int, emb: PlanarEmbeddedGraph) -> dict[int, list[int]]:
        """Rotation of the skeleton of ``node`` induced by an embedding of G."""
        g = self.graph
        rot = {}
        verts = {x for s in self.nodes[node].edges for x in (self.edges[s].u, self.edges[s].v)}
        for v in verts:
            seq = []
            for d in emb.rotation[v]:
                s = self._owner(node, d >> 1)
                if not seq or seq[-1] != s:
                    seq.append(s)
            while len(seq) > 1 and seq[0] == seq[-1]:
                seq.pop()
            if len(seq) != len(set(seq)):
                raise StructureError("embedding does not induce a skeleton embedding")
            rot[v] = seq
        return rot

    def default_rotation(self, node: int) -> dict[int, list[int]]:
        """Rotation of a skeleton whose vertices all have degree at most 2."""
        rot = defaultdict(list)
        for s in self.nodes[node].edges:
            rot[self.edges[s].u].append(s)
            rot[self.edges[s].v].append(s)
        return dict(rot)

    def skeleton(self, node: int, rot: dict[int, list[int]] | None = None) -> "Skeleton":
        return Skeleton(self, node, rot if rot is not None else self.default_rotation(node))

    def glue(self, rotations: dict[int, dict[int, list[int]]]) -> tuple:
        """Rotation system of G assembled from skeleton rotations.

        Nodes missing from ``rotations`` must have maximum skeleton degree 2
        (S- and Q-nodes).  At a vertex, a virtual edge is replaced by the
        rotation of the neighboring skeleton, read after the twin and up to it.
        """
        g = self.graph
        rots = dict(rotations)

        def rot_of(node):
            r = rots.get(node)
            if r is None:
                r = rots[node] = self.default_rotation(node)
            return r

        out = []
        for v in range(g.n):
            if g.degrees[v] == 0:
                out.append(())
                continue
            r0 = next(d for d in g.out_darts[v])
            q = self.q_of_edge[r0 >> 1]
            darts = []
            # explicit stack of (node, sequence, index) frames
            seq = rot_of(q)[v]
            stack = [(seq, 0, len(seq))]
            while stack:
                seq, i, k = stack.pop()
                if i == k:
                    continue
                stack.append((seq, i + 1, k))
                s = seq[i]
                e = self.edges[s]
                if e.real is not None:
                    darts.append(2 * e.real if g.edges[e.real][0] == v else 2 * e.real + 1)
                    continue
                t = e.twin
                nseq = rot_of(self.edges[t].node)[v]
                j = nseq.index(t)
                stack.append((nseq[j + 1:] + nseq[:j], 0, len(nseq) - 1))
            out.append(tuple(darts))
        return tuple(out)

    # -- diagnostics ---------------------------------------------------
    def merged_edges(self) -> list[tuple[int, int]]:
        """Real edges collected from all skeletons (round-trip check)."""
        return sorted(self.graph.edges[e.real] for e in self.edges if e.real is not None)

    def summary(self) -> dict:
        return {
            "nodes": [
                {"id": nd.id, "kind": nd.kind, "poles": list(nd.poles) if nd.poles else None,
                 "vertices": sorted({x for s in nd.edges for x in (self.edges[s].u, self.edges[s].v)}),
                 "neighbors": sorted(y for y, _ in self.neighbors(nd.id))}
                for nd in self.nodes
            ],
            "root": self.root,
        }

    def to_dot(self) -> str:
        lines = ["graph spqr {"]
        for nd in self.nodes:
            vs = sorted({x for s in nd.edges for x in (self.edges[s].u, self.edges[s].v)})
            lines.append(f'  n{nd.id} [label="{nd.kind}{nd.id} {vs}"];')
        for nd in self.nodes:
            for y, _ in self.neighbors(nd.id):
                if nd.id < y:
                    lines.append(f"  n{nd.id} -- n{y};")
        lines.append("}")
        return "\n".join(lines) + "\n"


class Skeleton:
    """Skeleton of one node as an embedded multigraph on local vertex ids.

    Local edge ``j`` is skeleton edge ``node.edges[j]`` oriented u -> v.
    """

    def __init__(self, tree: SpqrTree, node: int, rot: dict[int, list[int]]):
        self.tree = tree
        self.node = node
        ids = tree.nodes[node].edges
        self.local = {s: j for j, s in enumerate(ids)}
        verts = sorted({x for s in ids for x in (tree.edges[s].u, tree.edges[s].v)})
        self.vid = {v: i for i, v in enumerate(verts)}
        self.verts = verts
        g = Graph(len(verts), [(self.vid[tree.edges[s].u], self.vid[tree.edges[s].v]) for s in ids])
        rotation = tuple(tuple(self.dart(s, v) for s in rot[v]) for v in verts)
        self.rot = rot
        self.emb = PlanarEmbeddedGraph(g, rotation)
        self.face_of = self.emb.face_of_dart

    def dart(self, s: int, frm: int) -> int:
        e = self.tree.edges[s]
        return 2 * self.local[s] + (0 if frm == e.u else 1)

    def left(self, s: int, frm: int) -> int:
        """Face on the left of ``s`` traversed away from ``frm``."""
        return self.face_of[self.dart(s, frm)]

    def right(self, s: int, frm: int) -> int:
        return self.face_of[self.dart(s, frm) ^ 1]

    def face_edges(self, f: int) -> list[tuple[int, int]]:
        """(skeleton edge, start vertex) along face ``f``."""
        ids = self.tree.nodes[self.node].edges
        return [(ids[d >> 1], self.verts[self.emb.graph.tail(d)]) for d in self.emb._faces[0][f].darts]


def build_spqr(g: Graph) -> SpqrTree:
    if g.m < 3 or not is_biconnected(g):
        raise StructureError("SPQR-trees need a biconnected graph with at least 3 edges")
    reg = _Registry()
    for r, (u, v) in enumerate(g.edges):
        reg.add(u, v, r)
    work = [list(range(g.m))]
    comps = []
    while work:
        comp = work.pop()
        parts = _split(comp, reg)
        if parts is None:
            comps.append((_classify(comp, reg), comp))
        else:
            work.extend(parts)

    # merge adjacent components of the same kind (S-S, P-P)
    owner = {}
    for i, (_, comp) in enumerate(comps):
        for e in comp:
            owner[e] = i
    dsu = list(range(len(comps)))

    def find(x):
        while dsu[x] != x:
            dsu[x] = dsu[dsu[x]]
            x = dsu[x]
        return x

    members = [set(c) for _, c in comps]
    kinds = [k for k, _ in comps]
    for a in range(len(reg.eu)):
        b = reg.twin[a]
        if b is None or a > b:
            continue
        x, y = find(owner[a]), find(owner[b])
        if x != y and kinds[x] == kinds[y] and kinds[x] in "SP":
            members[x] |= members[y]
            members[x] -= {a, b}
            members[y] = set()
            dsu[y] = x

    edges: list[SkelEdge] = []
    remap = {}
    nodes: list[SpqrNode] = []
    for i in range(len(comps)):
        if find(i) != i:
            continue
        ids = []
        for e in sorted(members[i]):
            remap[e] = len(edges)
            edges.append(SkelEdge(reg.eu[e], reg.ev[e], len(nodes), None, None))
            ids.append(remap[e])
        nodes.append(SpqrNode(len(nodes), kinds[i], ids))
    for e, s in remap.items():
        t = reg.twin[e]
        if t is not None:
            edges[s].twin = remap[t]
    # Q-nodes: every real edge becomes a virtual edge to its own Q-node
    for e, s in remap.items():
        r = reg.real[e]
        if r is None:
            continue
        q = len(nodes)
        real_id = len(edges)
        edges.append(SkelEdge(reg.eu[e], reg.ev[e], q, r, None))
        virt = len(edges)
        edges.append(SkelEdge(reg.eu[e], reg.ev[e], q, None, s))
        edges[s].twin = virt
        nodes.append(SpqrNode(q, "Q", [real_id, virt]))
    for nd in nodes:
        if nd.kind == "S":
            nd.edges = _cycle_order(nd.edges, lambda s: (edges[s].u, edges[s].v))
    return SpqrTree(g, edges, nodes)


# -- pruned tree and the structural conditions -------------------------

@dataclass
class PrunedTree:
    tree: SpqrTree
    nodes: list[int]
    adj: dict[int, list[int]]
    spine: Optional[list[int]]  # ordered path, None if not a caterpillar

    @property
    def leaves(self) -> list[int]:
        if len(self.nodes) == 1:
            return []
        return [x for x in self.nodes if len(self.adj[x]) == 1]

    def kind(self, x: int) -> str:
        return self.tree.nodes[x].kind


def prune(t: SpqrTree) -> PrunedTree:
    keep = [nd.id for nd in t.nodes if nd.kind != "Q"]
    adj = {x: [y for y, _ in t.neighbors(x) if t.nodes[y].kind != "Q"] for x in keep}
    if len(keep) == 1:
        spine = list(keep)
    else:
        inner = [x for x in keep if len(adj[x]) >= 2]
        inner_set = set(inner)
        spine = None
        sub = {x: [y for y in adj[x] if y in inner_set] for x in inner}
        if not inner:
            spine = []
        elif all(len(v) <= 2 for v in sub.values()):
            ends = [x for x in inner if len(sub[x]) <= 1]
            start = ends[0]
            spine = [start]
            prev = None
            while True:
                nxt = [y for y in sub[spine[-1]] if y != prev]
                if not nxt:
                    break
                prev = spine[-1]
                spine.append(nxt[0])
    return PrunedTree(t, keep, adj, spine)


@dataclass(frozen=True)
class StructuralReport:
    ok: bool
    condition: Optional[str] = None  # "caterpillar", "i" .. "v"
    nodes: tuple = ()
    detail: str = ""

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        out = {"ok": self.ok}
        if not self.ok:
            out.update(condition=self.condition, nodes=list(self.nodes), detail=self.detail)
        return out


def _q_only(t: SpqrTree, s: int) -> bool:
    tw = t.edges[s].twin
    return tw is not None and t.nodes[t.edges[tw].node].kind == "Q"


def check_structural_conditions(pt: PrunedTree, t: SpqrTree) -> StructuralReport:
    if pt.spine is None:
        return StructuralReport(False, "caterpillar", (), "non-leaf nodes do not form a path")
    for x in pt.leaves:
        if pt.kind(x) != "S":
            return StructuralReport(False, "i", (x,), f"leaf {x} is an {pt.kind(x)}-node")
    spine = pt.spine
    on_spine = set(spine)
    for x in spine:
        for y in pt.adj[x]:
            if y in on_spine and x < y:
                pair = {pt.kind(x), pt.kind(y)}
                if pair == {"R"}:
                    return StructuralReport(False, "ii", (x, y), "adjacent R-nodes on the spine")
                if pair == {"P", "R"}:
                    return StructuralReport(False, "iii", (x, y), "adjacent P- and R-nodes on the spine")
    for nd in t.nodes:
        if nd.kind == "P" and len(nd.edges) != 3:
            return StructuralReport(False, "iv", (nd.id,), f"P-node with {len(nd.edges)} neighbors")
    for x in spine:
        if pt.kind(x) != "S" or len(spine) == 1:
            continue
        seq = t.nodes[x].edges
        marks = [_q_only(t, s) for s in seq]
        k = len(seq)
        heavy = [i for i in range(k) if not marks[i]]
        if len(heavy) != 2 or (heavy[1] - heavy[0]) in (1, k - 1):
            return StructuralReport(False, "v", (x,), "S-node is not two Q-chains separated by two virtual edges")
    return StructuralReport(True)


def is_flat(pt: PrunedTree) -> bool:
    spine = pt.spine or []
    return len(spine) >= 2 or any(pt.kind(x) == "P" for x in spine)
