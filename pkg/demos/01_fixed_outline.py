"""Filling in a drawing when the outline is already fixed.

We take a 4x5 grid, pin its outer boundary to the coordinates it has in the
plane, and ask rect-holes to place every interior vertex.  Then we nudge one
boundary vertex and watch the algorithm refuse, with a reason attached.
"""
from _ascii import ascii_drawing

from unitrect import families, rectholes
from unitrect.graph import faces

emb, pts = families.grid(4, 5)
g = emb.graph
outline = {g.tail(d): pts[g.tail(d)] for d in faces(emb)[emb.outer_face].darts}
print(f"grid with {g.n} vertices, {len(outline)} of them pinned on the outline\n")

res = rectholes.run(emb, outline)
print("completed drawing:")
print(ascii_drawing(g, res.drawing))
print("\nsame as the reference coordinates:", res.drawing == pts)
print("faces drawn one by one:", res.stats.faces_drawn)

# moving a corner outward breaks unit length along the outline
bent = dict(outline)
bent[0] = (-1, -1)
res = rectholes.run(emb, bent)
print("\nafter moving vertex 0 to (-1, -1):")
print("  ok =", res.ok)
print("  failure =", res.failure.to_json())

# a polyomino with a notch: the outline is not a box, but the inner faces can still be squares
emb, pts = families.polyomino([(0, 0), (1, 0), (2, 0), (0, 1), (2, 1)])
outline = {emb.graph.tail(d): pts[emb.graph.tail(d)] for d in faces(emb)[emb.outer_face].darts}
res = rectholes.run(emb, outline)
print("\nU-shaped polyomino, every vertex on the outline:")
print(ascii_drawing(emb.graph, res.drawing))
