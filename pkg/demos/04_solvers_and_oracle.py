"""The four decision problems side by side, checked against brute force.

For a handful of small graphs we ask the fast solvers and the exhaustive
oracle the same question and print both answers.  The oracle only scales to
about twenty edges; the solvers are linear.
"""
import time

from _ascii import ascii_drawing

from unitrect import families
from unitrect.graph import faces
from unitrect.oracle import decide_by_oracle
from unitrect.solvers import solve_ur, solve_urfe_planar_embedded, solve_urfe_plane

cases = {
    "theta(2,4,4)": families.theta(2, 4, 4),
    "theta(4,4,4)": families.theta(4, 4, 4),
    "2x4 grid": families.grid(2, 4)[0].graph,
    "C8": families.cycle(8).graph,
}
print(f"{'graph':14} {'solve_ur':>9} {'oracle':>7}")
for name, g in cases.items():
    print(f"{name:14} {str(solve_ur(g).positive):>9} {str(decide_by_oracle(g, 'ur').positive):>7}")

emb, _ = families.grid(3, 3)
print("\n3x3 grid, each face as the outer face:")
for w in faces(emb):
    plane = emb.with_outer(w.darts[0])
    res = solve_urfe_plane(plane)
    print(f"  face of length {len(w):2}: solver {res.positive}, oracle {decide_by_oracle(plane, 'urfe').positive}")

res = solve_urfe_planar_embedded(emb.with_outer(None))
print("\nembedding fixed, outer face free:", res.positive)

res = solve_ur(families.theta(2, 4, 4))
print("\ntheta(2,4,4) as drawn by solve_ur:")
print(ascii_drawing(families.theta(2, 4, 4), res.drawing))

emb, pts = families.grid(150, 150)
t0 = time.perf_counter()
res = solve_urfe_plane(emb)
print(f"\n150x150 grid ({emb.graph.n} vertices) solved in {time.perf_counter() - t0:.2f}s:", res.positive)
