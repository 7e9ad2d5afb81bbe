import random

import networkx as nx
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

import builders
from conftest import grid_subgraphs
from unitrect import families
from unitrect.corpus import random_biconnected
from unitrect.graph import PlanarEmbeddedGraph, StructureError, embedding_key, is_biconnected, planar_embedding
from unitrect.oracle import decide_by_oracle
from unitrect.spqr import build_spqr, check_structural_conditions, is_flat, prune


def _kinds(t, nodes):
    return sorted(t.nodes[x].kind for x in nodes)


@st.composite
def biconnected_graphs(draw):
    if draw(st.booleans()):
        seed = draw(st.integers(0, 10_000))
        return random_biconnected(1, seed=seed, n_range=(4, 11))[0][1]
    emb, _ = draw(grid_subgraphs())
    g = emb.graph
    assume(g.m >= 3 and is_biconnected(g))
    return g


def test_theta_is_p_with_three_s():
    t = build_spqr(families.theta(2, 2, 2))
    pt = prune(t)
    assert _kinds(t, pt.nodes) == ["P", "S", "S", "S"]
    assert pt.spine == [x for x in pt.nodes if t.nodes[x].kind == "P"]
    assert check_structural_conditions(pt, t)
    assert is_flat(pt)


def test_theta_with_direct_edge_counts_q_neighbor():
    t = build_spqr(families.theta(1, 3, 3))
    p = [nd for nd in t.nodes if nd.kind == "P"]
    assert len(p) == 1 and len(p[0].edges) == 3
    assert check_structural_conditions(prune(t), t)


def test_cycle_is_single_s():
    t = build_spqr(families.cycle(6).graph)
    pt = prune(t)
    assert _kinds(t, pt.nodes) == ["S"]
    assert sum(nd.kind == "Q" for nd in t.nodes) == 6


def test_grid_is_r_star():
    g = families.grid(3, 3)[0].graph
    t = build_spqr(g)
    pt = prune(t)
    assert _kinds(t, pt.nodes) == ["R", "S", "S", "S", "S"]
    r = next(x for x in pt.nodes if t.nodes[x].kind == "R")
    assert pt.spine == [r]
    assert not is_flat(pt)
    # corner virtual edges expand to the 2-edge corner paths
    corners = []
    for y, s in t.neighbors(r):
        if t.nodes[y].kind == "S":
            corners.append(sorted(g.edges[e] for e in t.expansion_edges(s)))
    assert sorted(corners) == [[(0, 1), (0, 3)], [(1, 2), (2, 5)], [(3, 6), (6, 7)], [(5, 8), (7, 8)]]


def test_two_by_three_grid_is_flat():
    t = build_spqr(families.grid(2, 3)[0].graph)
    pt = prune(t)
    assert [t.nodes[x].kind for x in pt.spine] == ["P"]
    assert is_flat(pt)


def test_two_by_five_spine():
    t = build_spqr(families.grid(2, 5)[0].graph)
    pt = prune(t)
    assert [t.nodes[x].kind for x in pt.spine] == ["P", "S", "P", "S", "P"]
    assert check_structural_conditions(pt, t)


def test_subdivided_k4_passes():
    t = build_spqr(families.subdivide(families.k4().graph))
    pt = prune(t)
    assert _kinds(t, pt.nodes) == ["R"] + ["S"] * 6
    assert check_structural_conditions(pt, t)


def test_expansion_of_real_edge_is_an_error():
    t = build_spqr(families.cycle(4).graph)
    real = next(i for i, e in enumerate(t.edges) if e.real is not None)
    with pytest.raises(StructureError):
        t.expansion_edges(real)


def test_q_virtual_edge_expands_to_single_edge():
    t = build_spqr(families.theta(2, 2, 2))
    for r, q in t.q_of_edge.items():
        s = next(s for s in t.nodes[q].edges if t.edges[s].virtual)
        assert t.expansion_edges(t.edges[s].twin) == [r]


def test_not_biconnected_rejected():
    with pytest.raises(StructureError):
        build_spqr(builders.relabel([(0, 1), (1, 2)]))


@pytest.mark.parametrize("builder, condition", [
    (builders.rr_pair, "ii"),
    (builders.star_of_ps, "caterpillar"),
    (builders.r_leaf, "i"),
    (builders.p_next_to_r, "iii"),
    (lambda: families.theta(2, 2, 2, 2), "iv"),
    (builders.bad_s_chain, "v"),
])
def test_condition_violations(builder, condition):
    g = builder()
    t = build_spqr(g)
    rep = check_structural_conditions(prune(t), t)
    assert not rep
    assert rep.condition == condition
    assert rep.to_json()["condition"] == condition


def test_rigid_pair_has_no_rectangular_drawing():
    g = builders.rr_pair()
    assert not decide_by_oracle(g, "rect", max_faces=12).positive


def test_two_rigid_ends():
    t = build_spqr(builders.two_blocks_joined())
    pt = prune(t)
    assert [t.nodes[x].kind for x in pt.spine] == ["R", "S", "R"]
    assert check_structural_conditions(pt, t)


@given(biconnected_graphs())
def test_tree_invariants(g):
    t = build_spqr(g)
    assert t.merged_edges() == sorted(g.edges)
    # S, P and R skeletons stay linear; each Q-node adds two more edges per real edge
    assert sum(len(nd.edges) for nd in t.nodes if nd.kind != "Q") <= 4 * g.m
    pairs = 0
    for s, e in enumerate(t.edges):
        if e.twin is None:
            assert e.real is not None
            continue
        tw = t.edges[e.twin]
        assert tw.twin == s
        assert tw.node != e.node
        assert {tw.u, tw.v} == {e.u, e.v}
        pairs += 1
    # twins are the arcs of a tree
    assert pairs // 2 == len(t.nodes) - 1
    for nd in t.nodes:
        verts = {x for s in nd.edges for x in (t.edges[s].u, t.edges[s].v)}
        if nd.kind == "Q":
            assert len(nd.edges) == 2
        elif nd.kind == "P":
            assert len(verts) == 2 and len(nd.edges) >= 3
        elif nd.kind == "S":
            assert len(verts) == len(nd.edges) >= 3
        else:
            sk = nx.Graph([(t.edges[s].u, t.edges[s].v) for s in nd.edges])
            assert sk.number_of_edges() == len(nd.edges)
            assert nx.node_connectivity(sk) >= 3
        # merged neighbors never share a kind for S and P
        for y, _ in t.neighbors(nd.id):
            if nd.kind in "SP":
                assert t.nodes[y].kind != nd.kind


@given(biconnected_graphs())
def test_expansions_split_the_edges(g):
    t = build_spqr(g)
    for s, e in enumerate(t.edges):
        if e.virtual:
            a, b = t.expansion_edges(s), t.expansion_edges(e.twin)
            assert sorted(a + b) == list(range(g.m))
            # attachments of the expansion are the virtual edge's endpoints
            sub = t.expansion_graph(s)
            touched = {x for uv in sub.edges for x in uv}
            outside = {x for r in b for x in g.edges[r]}
            assert touched & outside <= {e.u, e.v}


@given(biconnected_graphs())
def test_glue_round_trip(g):
    e0 = planar_embedding(g)
    t = build_spqr(g)
    rots = {nd.id: t.skeleton_rotation(nd.id, e0) for nd in t.nodes}
    # rotations are cyclic, so compare normalized forms
    assert embedding_key(PlanarEmbeddedGraph(g, t.glue(rots))) == embedding_key(e0)


@given(biconnected_graphs(), st.integers(0, 2**32))
def test_glue_with_random_choices_is_planar(g, seed):
    rng = random.Random(seed)
    e0 = planar_embedding(g)
    t = build_spqr(g)
    rots = {}
    for nd in t.nodes:
        r = t.skeleton_rotation(nd.id, e0)
        if nd.kind == "R" and rng.random() < 0.5:
            r = {v: list(reversed(seq)) for v, seq in r.items()}
        elif nd.kind == "P":
            a, b = sorted(r)
            order = list(nd.edges)
            rng.shuffle(order)
            r = {a: order, b: list(reversed(order))}
        rots[nd.id] = r
    emb = PlanarEmbeddedGraph(g, t.glue(rots))
    assert emb.euler_ok()
