import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from unitrect import families
from unitrect.graph import Graph, is_connected

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def _connected_cells(cells):
    cells = set(cells)
    if not cells:
        return False
    start = next(iter(cells))
    seen, stack = {start}, [start]
    while stack:
        x, y = stack.pop()
        for q in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if q in cells and q not in seen:
                seen.add(q)
                stack.append(q)
    return len(seen) == len(cells)


@st.composite
def polyominoes(draw, side=4, max_cells=8):
    """Edge-connected unions of unit squares; returns (emb, coords)."""
    all_cells = [(x, y) for x in range(side) for y in range(side)]
    cells = draw(st.lists(st.sampled_from(all_cells), min_size=1, max_size=max_cells, unique=True))
    # grow into an edge-connected set from the first cell
    grown = {cells[0]}
    for c in cells[1:]:
        if any(abs(c[0] - x) + abs(c[1] - y) == 1 for x, y in grown):
            grown.add(c)
    return families.polyomino(grown)


@st.composite
def grid_subgraphs(draw, rows=4, cols=4):
    """Connected edge subsets of a grid with their induced drawing: (emb, coords)."""
    base, pts = families.grid(rows, cols)
    edges = list(base.graph.edges)
    keep = draw(st.lists(st.booleans(), min_size=len(edges), max_size=len(edges)))
    chosen = [e for e, k in zip(edges, keep) if k]
    if not chosen:
        chosen = edges[:1]
    used = sorted({v for e in chosen for v in e})
    index = {v: i for i, v in enumerate(used)}
    g = Graph(len(used), [(index[u], index[v]) for u, v in chosen])
    coords = [pts[v] for v in used]
    if not is_connected(g):
        # keep the component of vertex 0
        comp = _component(g, 0)
        index2 = {v: i for i, v in enumerate(sorted(comp))}
        g = Graph(len(comp), [(index2[u], index2[v]) for u, v in g.edges if u in comp])
        coords = [coords[v] for v in sorted(comp)]
    return families.from_points(coords, g.edges)


def _component(g, s):
    seen, stack = {s}, [s]
    while stack:
        v = stack.pop()
        for w in g.neighbors(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


@pytest.fixture
def rng():
    return random.Random(12345)
