import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import polyominoes
from unitrect import families
from unitrect.graph import Graph, faces
from unitrect.oracle import (
    DIHEDRAL,
    OracleRefused,
    all_embeddings,
    canonical_drawing,
    complete_outer,
    decide_by_oracle,
    enumerate_angle_assignments,
    enumerate_outer_polygons,
    enumerate_unit_drawings,
    iter_unit_drawings,
    shape_key,
)
from unitrect.validate import check_inner_rectangular, check_planar_grid, check_rectangular


def test_square_has_one_drawing():
    res = enumerate_unit_drawings(families.cycle(4).graph, "rect")
    assert len(res.shapes) == 1


def test_hexagon_one_shape():
    # a 6-cycle is always the 1x2 box
    res = enumerate_unit_drawings(families.cycle(6).graph, "rect")
    assert len(res.shapes) == 1
    assert all(check_rectangular(families.cycle(6), d) or check_rectangular(families.cycle(6).mirror(), d)
               for d in res.drawings)


def test_odd_cycle_has_none():
    assert len(enumerate_unit_drawings(families.cycle(7).graph, "planar")) == 0


def test_path_drawings():
    # a 2-edge path: straight or bent, as shapes
    g = Graph(3, [(0, 1), (1, 2)])
    assert len(enumerate_unit_drawings(g, "planar").shapes) == 2


def test_refuses_large_inputs():
    g = families.grid(5, 5)[0].graph
    with pytest.raises(OracleRefused):
        enumerate_unit_drawings(g, "rect")
    assert enumerate_unit_drawings(families.grid(3, 3)[0].graph, "rect", max_edges=12).drawings


def test_angle_assignments_of_square():
    res = enumerate_angle_assignments(families.cycle(4))
    assert len(res) == 1
    assert res.assignments[0].count(1) == 4


def test_angle_assignments_of_small_cycles():
    assert len(enumerate_angle_assignments(families.cycle(3))) == 0
    # one of the five vertices is flat
    assert len(enumerate_angle_assignments(families.cycle(5))) == 5


def test_env_bound(monkeypatch):
    monkeypatch.setenv("UNITRECT_MAX_ORACLE_EDGES", "3")
    with pytest.raises(OracleRefused):
        enumerate_unit_drawings(families.cycle(4).graph, "rect")


def test_enumeration_is_deterministic():
    g = families.grid(2, 3)[0].graph
    a = enumerate_unit_drawings(g, "planar")
    b = enumerate_unit_drawings(g, "planar")
    assert a.drawings == b.drawings
    assert list(a.drawings) == sorted(a.drawings)


def test_embeddings_of_theta():
    # three paths between two poles: two rotation systems (mirror images)
    embs = list(all_embeddings(families.theta(2, 2, 2)))
    assert len(embs) == 2


def test_outer_polygons_of_square():
    polys = enumerate_outer_polygons(families.cycle(4))
    assert len(polys) == 1
    # the walk starts east from the origin and turns clockwise
    assert polys[0] == {1: (0, 0), 0: (1, 0), 3: (1, -1), 2: (0, -1)}


def test_decide_modes():
    emb, pts = families.grid(2, 3)
    assert decide_by_oracle(emb, "urfe").positive
    assert decide_by_oracle(emb.with_outer(None), "urfe-embedded").positive
    assert decide_by_oracle(emb.graph, "ur").positive
    assert decide_by_oracle(emb.graph, "rect").positive
    outer = {emb.graph.tail(d): pts[emb.graph.tail(d)] for d in faces(emb)[emb.outer_face].darts}
    res = decide_by_oracle(emb, "uirfe", outer)
    assert res.positive and res.drawing == pts
    with pytest.raises(ValueError):
        decide_by_oracle(emb, "nonsense")


@given(polyominoes(max_cells=5))
def test_completion_of_own_outline_is_unique(sample):
    emb, pts = sample
    outer = {emb.graph.tail(d): pts[emb.graph.tail(d)] for d in faces(emb)[emb.outer_face].darts}
    found = complete_outer(emb, outer)
    assert found == [pts]


@given(polyominoes(max_cells=5), st.integers(0, 7))
def test_shape_key_is_symmetry_invariant(sample, k):
    emb, pts = sample
    a, b, c, d = DIHEDRAL[k]
    moved = [(a * x + b * y + 3, c * x + d * y - 2) for x, y in pts]
    assert shape_key(emb.graph, moved) == shape_key(emb.graph, pts)
    assert canonical_drawing(moved) == canonical_drawing(pts)


@given(polyominoes(max_cells=4))
def test_oracle_drawings_pass_validation(sample):
    emb, _ = sample
    for d in iter_unit_drawings(emb.graph, "inner-rect", emb):
        assert check_planar_grid(emb.graph, d)
        assert check_inner_rectangular(emb, d)


@given(polyominoes(max_cells=5))
def test_outer_polygons_are_unit_walks(sample):
    emb, _ = sample
    walk = [emb.graph.tail(d) for d in faces(emb)[emb.outer_face].darts]
    for p in enumerate_outer_polygons(emb, limit=50):
        for a, b in zip(walk, walk[1:] + walk[:1]):
            assert abs(p[a][0] - p[b][0]) + abs(p[a][1] - p[b][1]) == 1
