"""Tiny text renderer shared by the demos."""


def ascii_drawing(g, coords):
    xs = [p[0] for p in coords]
    ys = [p[1] for p in coords]
    x0, y0 = min(xs), min(ys)
    w, h = 2 * (max(xs) - x0) + 1, 2 * (max(ys) - y0) + 1
    cells = [[" "] * w for _ in range(h)]
    for u, v in g.edges:
        (ax, ay), (bx, by) = coords[u], coords[v]
        cx, cy = ax + bx - 2 * x0, ay + by - 2 * y0
        cells[cy][cx] = "-" if ay == by else "|"
    for x, y in coords:
        cells[2 * (y - y0)][2 * (x - x0)] = "o"
    # row 0 is the lowest y, so print top down
    return "\n".join("".join(r).rstrip() for r in reversed(cells))
