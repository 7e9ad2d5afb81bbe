"""Command-line entry point.

Exit codes: 0 positive / success, 1 negative decision or failed check,
2 usage or input error (diagnostics as JSON on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import validate
from .graph import StructureError, max_degree
from .io import InputError, outer_from_obj, parse_drawing_json, parse_graph_json, render_svg
from .oracle import OracleRefused, decide_by_oracle, enumerate_unit_drawings
from .result import SolveRequest
from .solvers import solve

EXIT_OK, EXIT_NEGATIVE, EXIT_INVALID = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(json.dumps({"error": "usage", "detail": message}), file=sys.stderr)
        raise SystemExit(EXIT_INVALID)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError("io", str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="unitrect", description="Unit-length rectangular grid drawings of planar graphs.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("check", help="validate a drawing against a graph")
    c.add_argument("--graph", required=True)
    c.add_argument("--drawing", required=True)
    c.add_argument("--level", choices=["unit", "planar", "embedding", "inner-rect", "rect"], default="rect")

    s = sub.add_parser("solve", help="decide drawability and print a drawing")
    s.add_argument("form", nargs="?", choices=["fixed-outer"], help="shorthand for --mode uirfe")
    s.add_argument("--mode", choices=["uirfe", "urfe", "urfe-embedded", "ur", "rect"])
    s.add_argument("--graph", required=True)
    s.add_argument("--outer", help="prescribed outer drawing (uirfe)")
    s.add_argument("--svg")
    s.add_argument("--scale", type=int, default=40)
    s.add_argument("--embedded", action="store_true", help="rect mode: keep the given embedding")
    s.add_argument("-v", "--verbose", action="store_true")

    t = sub.add_parser("spqr", help="SPQR-tree summary and structural conditions")
    t.add_argument("--graph", required=True)
    t.add_argument("--dot", action="store_true")

    o = sub.add_parser("oracle", help="brute-force reference answers")
    o.add_argument("--graph", required=True)
    o.add_argument("--mode", choices=["enumerate", "decide"], default="enumerate")
    o.add_argument("--filter", choices=["planar", "embedding", "inner-rect", "rect"], default="planar")
    o.add_argument("--problem", choices=["uirfe", "urfe", "urfe-embedded", "ur", "rect"], default="ur")
    o.add_argument("--outer")
    o.add_argument("--max-edges", type=int)

    f = sub.add_parser("flow", help="alias of solve --mode rect")
    f.add_argument("--graph", required=True)
    f.add_argument("--embedded", action="store_true")
    f.add_argument("-v", "--verbose", action="store_true")
    return p


def _emit(obj) -> None:
    print(json.dumps(obj))


def _cmd_check(args) -> int:
    emb = parse_graph_json(_read(args.graph))
    coords = parse_drawing_json(_read(args.drawing), emb.graph.n)
    steps = [("unit", lambda: validate.check_unit_length(emb.graph, coords)),
             ("planar", lambda: validate.check_planar_grid(emb.graph, coords)),
             ("embedding", lambda: validate.check_embedding_preserving(emb, coords)),
             ("inner-rect", lambda: validate.check_inner_rectangular(emb, coords)),
             ("rect", lambda: validate.check_rectangular(emb, coords))]
    report = {}
    for name, fn in steps:
        if name in ("inner-rect", "rect") and emb.outer_dart is None:
            raise InputError("schema", "rectangularity checks need an outer face in the graph JSON")
        v = fn()
        report[name] = True if v else v.failure.to_json()
        if not v or name == args.level:
            break
    ok = all(x is True for x in report.values())
    _emit({"ok": ok, "checks": report})
    return EXIT_OK if ok else EXIT_NEGATIVE


def _cmd_solve(args, mode=None) -> int:
    mode = mode or ("uirfe" if args.form == "fixed-outer" else args.mode)
    if mode is None:
        raise InputError("usage", "solve needs --mode or the fixed-outer form")
    emb = parse_graph_json(_read(args.graph))
    if max_degree(emb.graph) > 4:
        print(json.dumps({"warning": "vertex of degree greater than 4; no grid drawing exists"}), file=sys.stderr)
    outer = None
    if mode == "uirfe":
        if not args.outer:
            raise InputError("usage", "uirfe needs --outer")
        outer = outer_from_obj(json.loads(_read(args.outer)))
        if emb.outer_dart is None:
            raise InputError("schema", "uirfe needs an outer face in the graph JSON")
    if mode == "urfe" and emb.outer_dart is None:
        raise InputError("schema", "urfe needs an outer face in the graph JSON")
    if mode == "urfe-embedded":
        emb = emb.with_outer(None)
    graph = emb
    if mode in ("ur",):
        graph = emb.graph
    if mode == "rect" and not getattr(args, "embedded", False):
        graph = emb.graph
    res = solve(SolveRequest(mode, graph, outer))
    out = res.to_json()
    if not getattr(args, "verbose", False):
        out.get("witness", {}).pop("angles", None)
    _emit(out)
    svg = getattr(args, "svg", None)
    if svg and res.drawing is not None:
        if args.scale < 1:
            raise InputError("usage", "--scale must be at least 1")
        Path(svg).write_text(render_svg(emb.graph, res.drawing, args.scale), encoding="utf-8")
    return EXIT_OK if res.positive else EXIT_NEGATIVE


def _cmd_spqr(args) -> int:
    from .graph import is_biconnected
    from .spqr import build_spqr, check_structural_conditions, is_flat, prune

    emb = parse_graph_json(_read(args.graph))
    g = emb.graph
    if g.m < 3 or not is_biconnected(g):
        raise InputError("schema", "SPQR-trees need a biconnected graph with at least 3 edges")
    t = build_spqr(g)
    if args.dot:
        sys.stdout.write(t.to_dot())
        return EXIT_OK
    pt = prune(t)
    rep = check_structural_conditions(pt, t)
    out = t.summary()
    out["pruned"] = {"nodes": pt.nodes, "spine": pt.spine}
    out["structural"] = rep.to_json()
    out["flat"] = is_flat(pt) if rep else None
    _emit(out)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    emb = parse_graph_json(_read(args.graph))
    if args.mode == "enumerate":
        use_emb = emb if args.filter in ("embedding", "inner-rect", "rect") else None
        if args.filter == "rect" and emb.outer_dart is None:
            use_emb = None
        res = enumerate_unit_drawings(emb.graph, args.filter, use_emb, args.max_edges)
        _emit({"count": len(res.drawings), "shapes": len(res.shapes),
               "drawings": [[list(p) for p in d] for d in res.drawings]})
        return EXIT_OK
    outer = outer_from_obj(json.loads(_read(args.outer))) if args.outer else None
    target = emb
    if args.problem == "urfe-embedded":
        target = emb.with_outer(None)
    res = decide_by_oracle(target, args.problem, outer, args.max_edges)
    _emit(res.to_json())
    return EXIT_OK if res.positive else EXIT_NEGATIVE


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID
    try:
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "flow":
            return _cmd_solve(args, mode="rect")
        if args.command == "spqr":
            return _cmd_spqr(args)
        return _cmd_oracle(args)
    except InputError as exc:
        print(json.dumps(exc.to_json()), file=sys.stderr)
    except (StructureError, OracleRefused, json.JSONDecodeError) as exc:
        print(json.dumps({"error": type(exc).__name__, "detail": str(exc)}), file=sys.stderr)
    return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
