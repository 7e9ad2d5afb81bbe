import pytest
from hypothesis import given
from hypothesis import strategies as st

import builders
from unitrect import families
from unitrect.embedding import (
    analyse,
    candidate_outer_rectangle,
    flat_candidate_embeddings,
    unique_unit_length_embedding,
)
from unitrect.graph import PlanarEmbeddedGraph, StructureError, embedding_key_up_to_reflection, faces
from unitrect.oracle import iter_unit_drawings


def drawing_corners(coords):
    xs = [p[0] for p in coords]
    ys = [p[1] for p in coords]
    box = {(min(xs), min(ys)), (min(xs), max(ys)), (max(xs), min(ys)), (max(xs), max(ys))}
    return {v for v, p in enumerate(coords) if p in box}, sorted((max(xs) - min(xs), max(ys) - min(ys)))


def oracle_drawings(g, max_edges=20):
    return list(iter_unit_drawings(g, "rect", max_edges=max_edges))


def test_theta_244_forced():
    g = families.theta(2, 4, 4)
    c = unique_unit_length_embedding(g)
    emb = c.embedding
    outer = faces(emb)[emb.outer_face]
    assert len(outer) == 8
    # the length-2 path is the middle: it never touches the outer face
    middle = {r for r, (a, b) in enumerate(g.edges) if 2 in (a, b)}
    assert not middle & {d >> 1 for d in outer.darts}
    box = candidate_outer_rectangle(c)
    assert (box.width, box.height) == (2, 2)


def test_theta_266_rectangle():
    box = candidate_outer_rectangle(unique_unit_length_embedding(families.theta(6, 6, 2)))
    assert (box.width, box.height) == (4, 2)


def test_theta_444_has_no_candidate():
    assert unique_unit_length_embedding(families.theta(4, 4, 4)) is None
    assert not oracle_drawings(families.theta(4, 4, 4))


def test_cycle_embedding():
    c = unique_unit_length_embedding(families.cycle(6).graph)
    assert [len(f) for f in faces(c.embedding)] == [6, 6]
    box = candidate_outer_rectangle(c)
    assert (box.width, box.height) == (2, 1)
    assert candidate_outer_rectangle(unique_unit_length_embedding(families.cycle(5).graph)) is None


def test_two_by_three_grid_rectangle():
    g = families.grid(2, 3)[0].graph
    box = candidate_outer_rectangle(unique_unit_length_embedding(g))
    assert {box.u, box.v} == {1, 4}
    assert (box.width, box.height, box.r, box.l) == (2, 1, 3, 3)
    assert set(box.corners) == {0, 2, 3, 5}


def test_two_by_three_candidates():
    g = families.grid(2, 3)[0].graph
    cands = flat_candidate_embeddings(g)
    assert len(cands) == 3
    # up to the grid's own symmetry only two are different
    shapes = set()
    for c in cands:
        e = c.embedding
        shapes.add(tuple(sorted(len(f) for f in faces(e))) + (len(faces(e)[e.outer_face]),))
    assert len(shapes) <= 2


def test_single_p_has_three_candidates():
    cands = flat_candidate_embeddings(families.theta(2, 3, 5))
    assert len(cands) == 3
    assert len({c.key() for c in cands}) == 3


def test_two_rigid_ends_give_four_candidates():
    g = builders.two_blocks_joined()
    cands = flat_candidate_embeddings(g)
    assert len(cands) == 4
    for c in cands:
        assert c.embedding.euler_ok()


def test_two_by_five_grid():
    g = families.grid(2, 5)[0].graph
    assert len(flat_candidate_embeddings(g)) <= 4
    box = candidate_outer_rectangle(unique_unit_length_embedding(g))
    assert (box.width, box.height) == (4, 1)


def test_rigid_graph_is_not_flat():
    g = families.grid(3, 3)[0].graph
    with pytest.raises(StructureError):
        flat_candidate_embeddings(g)
    c = unique_unit_length_embedding(g)
    assert len(faces(c.embedding)[c.embedding.outer_face]) == 8


def test_structural_failure_raises():
    with pytest.raises(StructureError):
        analyse(builders.rr_pair())


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_grid_corners_match_oracle(k):
    g = families.grid(2, k)[0].graph
    box = candidate_outer_rectangle(unique_unit_length_embedding(g))
    for d in oracle_drawings(g):
        corners, dims = drawing_corners(d)
        assert set(box.corners) == corners
        assert sorted((box.width, box.height)) == dims


@pytest.mark.parametrize("lengths", [(2, 4, 4), (2, 6, 6)])
def test_theta_corners_match_oracle(lengths):
    g = families.theta(*lengths)
    box = candidate_outer_rectangle(unique_unit_length_embedding(g))
    ds = oracle_drawings(g)
    assert ds
    for d in ds:
        corners, dims = drawing_corners(d)
        assert set(box.corners) == corners
        assert sorted((box.width, box.height)) == dims


@given(st.integers(2, 6), st.integers(2, 7), st.integers(2, 7))
def test_theta_candidate_count(a, b, c):
    g = families.theta(a, b, c)
    cands = flat_candidate_embeddings(g)
    assert 1 <= len(cands) <= 3
    keys = {embedding_key_up_to_reflection(x.embedding) for x in cands}
    assert len(keys) == len(cands)
    u = unique_unit_length_embedding(g)
    lengths = sorted((a, b, c))
    if lengths[0] == lengths[1]:
        assert u is None
    else:
        assert u is not None
        assert u.key() in {x.key() for x in cands}


@given(st.integers(3, 7))
def test_ladder_outer_rectangle(k):
    g = families.grid(2, k)[0].graph
    box = candidate_outer_rectangle(unique_unit_length_embedding(g))
    assert 2 * (box.width + box.height) == 2 * k
    assert len(box.coords) == 2 * k
    # the prescribed outer walk is a unit-length box
    pts = set(box.coords.values())
    assert len(pts) == len(box.coords)


def test_candidate_is_plane():
    g = builders.two_blocks_joined()
    for c in flat_candidate_embeddings(g):
        assert isinstance(c.embedding, PlanarEmbeddedGraph)
        assert c.embedding.outer_dart is not None
