import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import builders
from conftest import polyominoes
from unitrect import families
from unitrect.corpus import edge_deletion_instances, polyomino_instances, random_rotation_instances
from unitrect.flow import (
    Arc,
    Circulation,
    FlowNetwork,
    build_rectangular_network,
    check_circulation,
    decide_rectangular,
    feasible_flow,
    rectangular_angles,
    solve_rectangular,
    test_rectangular_fixed,
)
from unitrect.graph import Graph, StructureError, faces, is_biconnected, max_degree, planar_embedding
from unitrect.oracle import decide_by_oracle, has_angle_assignment


def test_small_cycles():
    assert test_rectangular_fixed(families.cycle(3)) is False
    angles = rectangular_angles(families.cycle(4))
    assert sorted(angles.values()) == [90] * 4 + [270] * 4
    c5 = families.cycle(5)
    net = build_rectangular_network(c5)
    circ = feasible_flow(net)
    inner = [x for a, x in zip(net.arcs, circ.flow) if a.head != net.face_node(c5.outer_face)]
    assert sorted(inner) == [1, 1, 1, 1, 2]


def test_network_shape():
    emb, _ = families.grid(2, 3)
    net = build_rectangular_network(emb)
    assert net.balanced()
    assert len(net.arcs) == 2 * emb.graph.m
    fo = net.face_node(emb.outer_face)
    for a in net.arcs:
        assert (a.lo, a.hi) == ((2, 3) if a.head == fo else (1, 2))


def test_network_preconditions():
    wheel = Graph(6, [(0, i) for i in range(1, 6)] + [(i, i % 5 + 1) for i in range(1, 6)])
    assert max_degree(wheel) == 5
    with pytest.raises(StructureError):
        build_rectangular_network(planar_embedding(wheel).with_outer(0))
    with pytest.raises(StructureError):
        build_rectangular_network(families.k4().with_outer(None))


def test_check_circulation_catches_violations():
    emb, _ = families.grid(2, 2)
    net = build_rectangular_network(emb)
    circ = feasible_flow(net)
    assert check_circulation(net, circ)
    bad = list(circ.flow)
    bad[0] += 1
    assert not check_circulation(net, Circulation(tuple(bad)))
    assert not check_circulation(net, Circulation(circ.flow[:-1]))


def _brute(net):
    ranges = [range(a.lo, a.hi + 1) for a in net.arcs]
    for flow in itertools.product(*ranges):
        if check_circulation(net, Circulation(flow)):
            return True
    return False


@st.composite
def tiny_networks(draw):
    nodes = draw(st.integers(2, 4))
    k = draw(st.integers(1, 5))
    arcs = []
    for i in range(k):
        t = draw(st.integers(0, nodes - 1))
        h = draw(st.integers(0, nodes - 1).filter(lambda x: x != t))
        lo = draw(st.integers(0, 2))
        hi = draw(st.integers(lo, 3))
        arcs.append(Arc(t, h, lo, hi, i))
    supply = [draw(st.integers(-3, 3)) for _ in range(nodes - 1)]
    supply.append(-sum(supply))
    emb = families.cycle(4)
    return FlowNetwork(emb, tuple(supply), tuple(arcs))


@given(tiny_networks())
def test_feasible_flow_matches_brute_force(net):
    circ = feasible_flow(net)
    assert (circ is not None) == _brute(net)
    if circ is not None:
        assert check_circulation(net, circ)


@given(polyominoes(max_cells=6))
def test_polyomino_outer_face_is_rectangular_iff_angles_exist(sample):
    emb, _ = sample
    if not is_biconnected(emb.graph):
        return
    for w in faces(emb):
        plane = emb.with_outer(w.darts[0])
        assert test_rectangular_fixed(plane) == has_angle_assignment(plane, True)


def test_fixed_embedding_against_angle_enumeration():
    insts = polyomino_instances(side=3, max_cells=5) + edge_deletion_instances(60, seed=5) \
        + random_rotation_instances(60, seed=6)
    checked = 0
    for inst in insts:
        emb = inst.emb
        if not is_biconnected(emb.graph) or len(faces(emb)) > 8:
            continue
        for w in faces(emb):
            plane = emb.with_outer(w.darts[0])
            assert test_rectangular_fixed(plane) == has_angle_assignment(plane, True)
            checked += 1
    assert checked > 100


@pytest.mark.parametrize("g", [
    families.theta(2, 2, 2),
    families.theta(3, 3, 3),
    families.grid(2, 3)[0].graph,
    families.grid(3, 3)[0].graph,
    families.subdivide(families.k4().graph),
    builders.two_blocks_joined(),
], ids=["theta222", "theta333", "grid2x3", "grid3x3", "k4sub", "two-blocks"])
def test_variable_embedding_against_oracle(g):
    dec = decide_rectangular(g)
    assert dec.positive == decide_by_oracle(g, "rect", max_faces=12).positive
    if dec.positive:
        assert test_rectangular_fixed(dec.embedding)


def test_structural_failure_is_negative():
    dec = decide_rectangular(builders.rr_pair())
    assert not dec.positive
    assert not solve_rectangular(builders.r_leaf())


def test_embedded_flag_keeps_embedding():
    emb, _ = families.grid(2, 3)
    dec = decide_rectangular(emb, embedded=True)
    assert dec.positive and dec.tried == 1
    assert dec.embedding.rotation == emb.rotation
