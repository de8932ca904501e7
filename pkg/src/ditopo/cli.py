"""Command-line front end.

JSON on stdout is the single interchange format; DOT and SVG are
export-only.  Exit codes: 0 success, 1 usage errors (bad arguments or
unreadable input files), 2 domain errors (unreachable pairs, infinite
trace spaces, ...) with a machine-readable error object on stdout.
Identical argv and seed produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import check_patch_continuity, check_section, dumps, parse_point
from .errors import DitopoError
from .graph import DirectedGraph, build_planner, ditc, gamma
from .nathom import factorization_diagram, is_bisimilar_to_point
from .product import parse_torus_point, torus_planner
from .pv import forbidden_regions, parse_pv, render_svg, schedule
from .sphere import sphere_gamma
from . import sphere as sphere_mod


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _load_graph(path: str) -> DirectedGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return DirectedGraph.from_json(json.load(fh))


def _parse_xy(text: str) -> tuple:
    return tuple(float(c) for c in text.split(","))


def _build_parser() -> _Parser:
    top = _Parser(prog="ditopo", description=__doc__)
    top.add_argument("--seed", type=int, default=0, help="seed for all sampling")
    top.add_argument("--json", action="store_true", help="JSON output (the default)")
    sub = top.add_subparsers(dest="command", required=True)

    g = sub.add_parser("graph", parents=[], help="directed graph operations")
    gsub = g.add_subparsers(dest="graph_command", required=True)
    p = gsub.add_parser("ditc", help="directed complexity report")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true", help="emit the graph as DOT instead")
    p = gsub.add_parser("plan", help="plan a path between two points")
    p.add_argument("file")
    p.add_argument("--from", dest="src", required=True, help="point, e.g. v:b or e:top:0.5")
    p.add_argument("--to", dest="dst", required=True)
    p = gsub.add_parser("gamma", help="reachability membership")
    p.add_argument("file")
    p.add_argument("--from", dest="src", required=True)
    p.add_argument("--to", dest="dst", required=True)

    t = sub.add_parser("torus", help="directed torus operations")
    tsub = t.add_subparsers(dest="torus_command", required=True)
    p = tsub.add_parser("plan", help="plan on the n-torus")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--from", dest="src", required=True, help="angles in turns, e.g. 0.25,0.5")
    p.add_argument("--to", dest="dst", required=True)

    v = sub.add_parser("pv", help="two-process PV programs")
    vsub = v.add_subparsers(dest="pv_command", required=True)
    p = vsub.add_parser("schedule", help="schedule between two positions")
    p.add_argument("program", help='e.g. "Pa.Va.Pb.Vb|Pa.Va.Pb.Vb"')
    p.add_argument("--from", dest="src", required=True, help="x1,x2 in step units")
    p.add_argument("--to", dest="dst", required=True)
    p.add_argument("--resolution", type=int, default=8)
    p.add_argument("--svg", help="also write an SVG rendering to this file")
    p = vsub.add_parser("regions", help="forbidden rectangles")
    p.add_argument("program")
    p.add_argument("--svg", help="write an SVG rendering to this file")

    s = sub.add_parser("sphere", help="directed sphere boundaries")
    ssub = s.add_subparsers(dest="sphere_command", required=True)
    p = ssub.add_parser("reach", help="boundary-monotone reachability")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--from", dest="src", required=True, help="comma-separated coordinates")
    p.add_argument("--to", dest="dst", required=True)
    p.add_argument("--grid", type=int, default=sphere_mod.QUANT)

    n = sub.add_parser("nathom", help="natural homology over trace diagrams")
    nsub = n.add_subparsers(dest="nathom_command", required=True)
    p = nsub.add_parser("build", help="build the sampled trace diagram")
    p.add_argument("file")
    p.add_argument("--samples", required=True, help="comma-separated points, e.g. v:b,v:e")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--degree", type=int, default=1)
    p = nsub.add_parser("point-check", help="bisimulation with the constant-Z diagram")
    p.add_argument("file")
    p.add_argument("--samples", required=True)

    c = sub.add_parser("check", help="planner certification")
    csub = c.add_subparsers(dest="check_command", required=True)
    p = csub.add_parser("section", help="partition + section exactness")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=1000)
    p = csub.add_parser("continuity", help="sampled Lipschitz certificate")
    p.add_argument("file")
    p.add_argument("--patch", required=True)
    p.add_argument("--pairs", type=int, default=200)
    p.add_argument("--eps", type=float, default=0.01)

    return top


def _run(args) -> str:
    if args.command == "graph":
        g = _load_graph(args.file)
        if args.graph_command == "ditc":
            if getattr(args, "dot", False):
                return g.to_dot()
            return dumps(ditc(g).to_json())
        if args.graph_command == "plan":
            planner = build_planner(g)
            x, y = parse_point(args.src), parse_point(args.dst)
            path = planner.plan(x, y)
            patch = planner.claiming_patches(x, y)[0]
            return dumps({"patch": patch.id, "path": path.to_json()})
        oracle = gamma(g)
        member = oracle.membership(parse_point(args.src), parse_point(args.dst))
        return dumps({"member": member})

    if args.command == "torus":
        planner, report = torus_planner(args.n)
        x = parse_torus_point(args.src, args.n)
        y = parse_torus_point(args.dst, args.n)
        path = planner.plan(x, y)
        patch = planner.claiming_patches(x, y)[0]
        return dumps({
            "ditc": report.to_json(),
            "patch": patch.id,
            "paths": [p.to_json() for p in path.components],
        })

    if args.command == "pv":
        prog = parse_pv(args.program)
        if args.pv_command == "regions":
            doc = forbidden_regions(prog).to_json()
            if args.svg:
                with open(args.svg, "w", encoding="utf-8") as fh:
                    fh.write(render_svg(prog))
                doc["svg"] = args.svg
            return dumps(doc)
        sched = schedule(prog, _parse_xy(args.src), _parse_xy(args.dst), args.resolution)
        doc = sched.to_json()
        if args.svg:
            with open(args.svg, "w", encoding="utf-8") as fh:
                fh.write(render_svg(prog, sched))
            doc["svg"] = args.svg
        return dumps(doc)

    if args.command == "sphere":
        member = sphere_gamma(args.n, _parse_xy(args.src), _parse_xy(args.dst), args.grid)
        return dumps({"member": member})

    if args.command == "nathom":
        g = _load_graph(args.file)
        samples = [parse_point(s) for s in args.samples.split(",")]
        diagram = factorization_diagram(g, samples)
        if args.nathom_command == "build":
            from .nathom import h_n
            diagram = h_n(diagram, args.degree)
            if args.dot:
                return diagram.to_dot()
            return dumps(diagram.to_json())
        ok, certificate = is_bisimilar_to_point(diagram)
        return dumps({"bisimilar_to_point": ok, "certificate": certificate})

    if args.command == "check":
        g = _load_graph(args.file)
        planner = build_planner(g)
        if args.check_command == "section":
            report = check_section(planner, planner.space, args.samples, seed=args.seed)
            return dumps(report.to_json())
        report = check_patch_continuity(planner, args.patch, args.pairs,
                                        args.eps, seed=args.seed)
        return dumps(report.to_json())

    raise AssertionError("unhandled command")


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        output = _run(args)
    except DitopoError as exc:
        print(dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}))
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"ditopo: cannot read input: {exc}", file=sys.stderr)
        return 1
    print(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
