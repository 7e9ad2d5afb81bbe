"""Rectangular drawings without coordinates: angles from a flow.

When edge lengths are free, a plane graph has a rectangular drawing exactly
when every vertex-face angle can be chosen as 90, 180 or 270 degrees so that
inner faces turn four times and the outer face turns the other way.  That
choice is a bounded circulation, which we solve with max-flow.
"""
from unitrect import families
from unitrect.flow import build_rectangular_network, decide_rectangular, feasible_flow, rectangular_angles
from unitrect.graph import faces

for k in (3, 4, 5, 6):
    c = families.cycle(k)
    angles = rectangular_angles(c)
    if angles is None:
        print(f"C{k}: no rectangular drawing")
        continue
    outer = set(faces(c)[c.outer_face].darts)
    inner = sorted(a for d, a in angles.items() if d not in outer)
    print(f"C{k}: inner angles {inner}")

emb, _ = families.grid(2, 3)
net = build_rectangular_network(emb)
circ = feasible_flow(net)
print(f"\n2x3 grid: {len(net.arcs)} angle slots, flow {circ.flow}")

# the theta graph with three equal paths is not unit-length drawable,
# but with free lengths it is: the flow ignores lengths entirely
dec = decide_rectangular(families.theta(4, 4, 4))
print("\ntheta(4,4,4) rectangular with free edge lengths:", dec.positive)
print("outer face length in the chosen embedding:", len(faces(dec.embedding)[dec.embedding.outer_face]))
