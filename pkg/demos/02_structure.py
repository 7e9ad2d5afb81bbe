"""Why some graphs can never be drawn as unit-square rectangles.

Before any geometry, a biconnected graph must pass a purely combinatorial
test on its SPQR-tree.  We print the decomposition for a few theta graphs
(three paths between two poles) and a pair of glued grids, then show which
embeddings survive.
"""
from unitrect import families
from unitrect.embedding import candidate_outer_rectangle, flat_candidate_embeddings, unique_unit_length_embedding
from unitrect.graph import Graph, faces
from unitrect.spqr import build_spqr, check_structural_conditions, is_flat, prune


def describe(name, g):
    t = build_spqr(g)
    pt = prune(t)
    rep = check_structural_conditions(pt, t)
    kinds = "-".join(t.nodes[x].kind for x in (pt.spine or []))
    print(f"{name}: n={g.n} m={g.m}, spine {kinds or '(none)'}")
    if not rep:
        print(f"  rejected by condition {rep.condition}: {rep.detail}")
        return
    if is_flat(pt):
        print(f"  flat, {len(flat_candidate_embeddings(g, t))} candidate embeddings")
    c = unique_unit_length_embedding(g, t)
    if c is None:
        print("  no embedding can carry a unit-length rectangular drawing")
        return
    if not is_flat(pt):
        print(f"  rigid: one embedding, outer face of length {len(faces(c.embedding)[c.embedding.outer_face])}")
        return
    box = candidate_outer_rectangle(c)
    print(f"  forced outer box {box.width} x {box.height}, corners {sorted(box.corners)}")


describe("theta(2,4,4)", families.theta(2, 4, 4))
describe("theta(2,6,6)", families.theta(2, 6, 6))
describe("theta(4,4,4)", families.theta(4, 4, 4))
describe("theta(2,2,2,2)", families.theta(2, 2, 2, 2))
describe("3x3 grid", families.grid(3, 3)[0].graph)

# two rigid 3x3 grids side by side, top and bottom corners joined by 2-paths:
# the spine is rigid, series, rigid
a, pts = families.grid(3, 3)
at = {p: v for v, p in enumerate(pts)}
edges = list(a.graph.edges) + [(u + 9, v + 9) for u, v in a.graph.edges]
edges += [(at[2, 0], 18), (18, at[0, 0] + 9), (at[2, 2], 19), (19, at[0, 2] + 9)]
describe("two grids joined", Graph(20, edges))
