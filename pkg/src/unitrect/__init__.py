"""Unit-length rectangular grid drawings of planar graphs.

Recognition and construction of drawings in which every vertex sits on an
integer point, every edge has length one and every face is a rectangle.
"""

from .flow import decide_rectangular, feasible_flow, solve_rectangular, test_rectangular_fixed
from .graph import Graph, PlanarEmbeddedGraph, StructureError, faces, planar_embedding
from .io import InputError, parse_drawing_json, parse_graph_json, render_svg, serialize_drawing, serialize_graph
from .result import SolveRequest, SolveResponse
from .solvers import (
    solve,
    solve_uirfe_fixed_outer,
    solve_ur,
    solve_urfe_planar_embedded,
    solve_urfe_plane,
)
from .spqr import build_spqr, check_structural_conditions, prune
from .validate import (
    check_embedding_preserving,
    check_inner_rectangular,
    check_planar_grid,
    check_rectangular,
    check_unit_length,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "InputError",
    "PlanarEmbeddedGraph",
    "SolveRequest",
    "SolveResponse",
    "StructureError",
    "build_spqr",
    "check_embedding_preserving",
    "check_inner_rectangular",
    "check_planar_grid",
    "check_rectangular",
    "check_structural_conditions",
    "check_unit_length",
    "decide_rectangular",
    "faces",
    "feasible_flow",
    "parse_drawing_json",
    "parse_graph_json",
    "planar_embedding",
    "prune",
    "render_svg",
    "serialize_drawing",
    "serialize_graph",
    "solve",
    "solve_rectangular",
    "solve_uirfe_fixed_outer",
    "solve_ur",
    "solve_urfe_planar_embedded",
    "solve_urfe_plane",
    "test_rectangular_fixed",
]
