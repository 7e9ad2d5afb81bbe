"""Rectangular angle assignments as a bounded flow problem.

Every vertex sends 4 units into the faces around it, one arc per angle.
An arc carrying k units stands for an angle of k * 90 degrees.  Internal
faces absorb 2|f| - 4 units and accept angles of 90 or 180 degrees; the
outer face absorbs 2|f| + 4 and accepts 180 or 270.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from .graph import (
    Graph,
    PlanarEmbeddedGraph,
    StructureError,
    faces,
    is_biconnected,
    is_cycle,
    max_degree,
    planar_embedding,
)

INNER_BOUNDS = (1, 2)
OUTER_BOUNDS = (2, 3)


@dataclass(frozen=True)
class Arc:
    tail: int  # vertex node
    head: int  # face node (offset by n)
    lo: int
    hi: int
    dart: int  # the angle sits between this dart and the next one counter-clockwise


@dataclass(frozen=True)
class FlowNetwork:
    emb: PlanarEmbeddedGraph
    supply: tuple[int, ...]  # positive for sources, negative for sinks; vertices first, then faces
    arcs: tuple[Arc, ...]

    @property
    def n_vertices(self) -> int:
        return self.emb.graph.n

    def face_node(self, f: int) -> int:
        return self.n_vertices + f

    def balanced(self) -> bool:
        return sum(self.supply) == 0


@dataclass(frozen=True)
class Circulation:
    flow: tuple[int, ...]  # one entry per arc

    def angles(self, net: FlowNetwork) -> dict[int, int]:
        """dart -> angle in degrees for the angle following that dart."""
        return {a.dart: 90 * k for a, k in zip(net.arcs, self.flow)}


def build_rectangular_network(emb: PlanarEmbeddedGraph) -> FlowNetwork:
    if emb.outer_dart is None:
        raise StructureError("the network needs an outer face")
    g = emb.graph
    if max_degree(g) > 4:
        raise StructureError("vertex of degree greater than 4")
    walks = faces(emb)
    fo = emb.outer_face
    supply = [4] * g.n
    for f, w in enumerate(walks):
        supply.append(-(2 * len(w) + 4) if f == fo else -(2 * len(w) - 4))
    arcs = []
    fod = emb.face_of_dart
    for d in range(2 * g.m):
        f = fod[d]
        lo, hi = OUTER_BOUNDS if f == fo else INNER_BOUNDS
        arcs.append(Arc(g.tail(d), g.n + f, lo, hi, d))
    return FlowNetwork(emb, tuple(supply), tuple(arcs))


def check_circulation(net: FlowNetwork, circ: Circulation) -> bool:
    """Bounds and conservation, checked directly on the network."""
    if len(circ.flow) != len(net.arcs):
        return False
    bal = list(net.supply)
    for a, x in zip(net.arcs, circ.flow):
        if not a.lo <= x <= a.hi:
            return False
        bal[a.tail] -= x
        bal[a.head] += x
    return all(b == 0 for b in bal)


def feasible_flow(net: FlowNetwork) -> Optional[Circulation]:
    """A flow meeting every bound, supply and demand, or None.

    Lower bounds are shifted into the node balances, leaving a plain
    max-flow problem from a super source to a super sink.
    """
    if not net.balanced():
        return None
    nn = len(net.supply)
    bal = list(net.supply)
    for a in net.arcs:
        if a.lo > a.hi:
            return None
        bal[a.tail] -= a.lo
        bal[a.head] += a.lo
    s, t = nn, nn + 1
    cap: dict[tuple[int, int], int] = {}
    for a in net.arcs:
        if a.hi > a.lo:
            key = (a.tail, a.head)
            cap[key] = cap.get(key, 0) + a.hi - a.lo
    need = 0
    for x, b in enumerate(bal):
        if b > 0:
            cap[(s, x)] = b
            need += b
        elif b < 0:
            cap[(x, t)] = -b
    if need == 0:
        flow = tuple(a.lo for a in net.arcs)
    else:
        rows, cols = zip(*cap)
        mat = csr_matrix((np.fromiter(cap.values(), dtype=np.int32), (rows, cols)), shape=(nn + 2, nn + 2))
        res = maximum_flow(mat, s, t, method="dinic")
        if res.flow_value != need:
            return None
        fm = res.flow.tocsr()
        # scipy reports net flow, skew-symmetric between opposite arcs; the
        # positive side is the flow to split back over the parallel arcs
        left = {key: max(0, int(fm[key])) for key in cap if key[0] != s and key[1] != t}
        flow = []
        for a in net.arcs:
            key = (a.tail, a.head)
            extra = min(a.hi - a.lo, left.get(key, 0))
            if extra:
                left[key] -= extra
            flow.append(a.lo + extra)
        flow = tuple(flow)
    circ = Circulation(flow)
    if not check_circulation(net, circ):
        raise AssertionError("max-flow result violates the network constraints")
    return circ


def test_rectangular_fixed(emb: PlanarEmbeddedGraph) -> bool:
    """Does the plane graph admit a rectangular drawing (edge lengths free)?"""
    return rectangular_angles(emb) is not None


test_rectangular_fixed.__test__ = False  # not a pytest test despite the name


def rectangular_angles(emb: PlanarEmbeddedGraph) -> Optional[dict[int, int]]:
    """Angle assignment of a rectangular drawing of the plane graph, or None."""
    g = emb.graph
    if g.m == 0 or not is_biconnected(g):
        return None
    net = build_rectangular_network(emb)
    circ = feasible_flow(net)
    return None if circ is None else circ.angles(net)


@dataclass
class RectDecision:
    positive: bool
    embedding: Optional[PlanarEmbeddedGraph] = None
    angles: Optional[dict[int, int]] = None
    reason: str = ""
    tried: int = 0


def decide_rectangular(g: Graph | PlanarEmbeddedGraph, embedded: bool = False) -> RectDecision:
    """Rectangular drawability over all embeddings, or over the given one with ``embedded``."""
    from .embedding import analyse, flat_candidate_embeddings, rigid_embedding
    from .spqr import is_flat

    if isinstance(g, PlanarEmbeddedGraph):
        fixed = g if embedded else None
        g = g.graph
    else:
        fixed = None
    if g.m == 0 or not is_biconnected(g):
        return RectDecision(False, reason="not biconnected")
    if max_degree(g) > 4:
        return RectDecision(False, reason="degree greater than 4")
    if fixed is not None:
        cands = [fixed] if fixed.outer_dart is not None else [fixed.with_outer(w.darts[0]) for w in faces(fixed)]
        reason = "fixed embedding"
    elif is_cycle(g):
        if g.n < 4:
            return RectDecision(False, reason="cycle shorter than 4")
        e0 = planar_embedding(g)
        cands = [e0.with_outer(0)]
        reason = "cycle"
    else:
        if planar_embedding(g) is None:
            return RectDecision(False, reason="not planar")
        try:
            t, pt = analyse(g)
        except StructureError as exc:
            return RectDecision(False, reason=str(exc))
        if is_flat(pt):
            cands = [c.embedding for c in flat_candidate_embeddings(g, t)]
            reason = "flat candidates"
        else:
            e0 = rigid_embedding(g)
            cands = [e0.with_outer(w.darts[0]) for w in faces(e0)]
            reason = "rigid embedding, every face outer"
    for i, emb in enumerate(cands, 1):
        angles = rectangular_angles(emb)
        if angles is not None:
            return RectDecision(True, emb, angles, reason, i)
    return RectDecision(False, reason=reason, tried=len(cands))


def solve_rectangular(g: Graph | PlanarEmbeddedGraph) -> bool:
    return decide_rectangular(g).positive
