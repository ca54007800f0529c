# main.py (command-line entry)
from __future__ import annotations
import argparse
import json
import sys
from typing import List, Optional

from config import ANNEAL_RESTARTS, ANNEAL_STEPS, CHECKPOINT_DIR, DEFAULT_JOBS, VERBOSE
from distgraph import distance_k_graph, g2_pairs, g2_rows, rows_pair_count, rows_triangle_free
from errors import (
    CapExceeded, Dist2Error, Graph6Error, IterationCapExceeded,
)
from families import (
    FamilyParams, build_family_gp, build_family_gpp, find_spindle, move_vd,
    reduce_to_diameter_2,
)
from graph6 import decode_graph6, encode_graph6, iter_graph6_file, iter_graph6_lines
from graphcore import UNREACHABLE, Graph, diameter, is_connected
from reports import ReportDocument, render_report, to_dot, write_report
from searchlab import anneal_search, check_lemma_claims, verify_bound
from structcheck import (
    C6_VARIANTS, find_induced_c6_variant, find_induced_claw,
    theorem_hypothesis_holds, two_clique_cover,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATION = 2
EXIT_USAGE = 64
EXIT_PARSE = 65


def _debug(msg: str) -> None:
    if VERBOSE:
        print(f"[CLI] {msg}", file=sys.stderr, flush=True)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports usage problems instead of exiting with 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


# ---------- helpers ----------
def _emit_document(doc: ReportDocument, out: Optional[str]) -> None:
    if out:
        path = write_report(doc, out)
        _debug(f"report written to {path}")
    sys.stdout.write(render_report(doc))


def graph_summary(g: Graph) -> dict:
    """Per-graph facts printed by `check`."""
    connected = is_connected(g)
    d = diameter(g)
    rows2 = g2_rows(g)
    claw = find_induced_claw(g)
    covers = []
    for v in range(g.n):
        cover = two_clique_cover(g, v)
        covers.append(None if cover is None else cover.to_dict())
    c6 = {}
    for p in C6_VARIANTS:
        hit = find_induced_c6_variant(g, p)
        c6[p.value] = None if hit is None else list(hit.vertices)
    return {
        "graph6": encode_graph6(g),
        "n": g.n,
        "connected": connected,
        "diameter": None if d is UNREACHABLE else d,
        "g2_pairs": rows_pair_count(rows2),
        "g2_triangle_free": rows_triangle_free(rows2),
        "claw": None if claw is None else list(claw.vertices),
        "c6_variants": c6,
        "two_clique_covers": covers,
        "hypothesis_vertex": theorem_hypothesis_holds(g),
    }


# ---------- subcommands ----------
def cmd_verify(args) -> int:
    checkpoint = None
    if args.long:
        suffix = "-diam2" if args.diam2_only else ""
        checkpoint = CHECKPOINT_DIR / f"verify-n{args.n}{suffix}.json"
    report = verify_bound(
        args.n, diam2_only=args.diam2_only, workers=args.jobs,
        source=args.from_file, long_run=args.long, checkpoint=checkpoint,
    )
    params = {"n": args.n, "diam2_only": args.diam2_only, "long": args.long,
              "source": "builtin" if args.from_file is None else "graph6"}
    doc = ReportDocument.build("verify", params, report.to_dict(timing=args.timing), stamp=args.timing)
    _emit_document(doc, args.out)
    if not report.bound_holds:
        print(f"[CLI] bound violated at n={args.n}: e(G_2)={report.max_pairs} > {report.bound_value}; "
              f"counterexample {report.extremal_certs[0]}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_claims(args) -> int:
    report = check_lemma_claims(args.n, workers=args.jobs, force=args.force)
    doc = ReportDocument.build("claims", {"n": args.n}, report.to_dict(timing=args.timing), stamp=args.timing)
    _emit_document(doc, args.out)
    return EXIT_OK if report.asserted_hold else EXIT_VIOLATION


def cmd_anneal(args) -> int:
    report = anneal_search(args.n, steps=args.steps, seed=args.seed, restarts=args.restarts,
                           workers=args.jobs, init=args.init)
    params = {"n": args.n, "steps": args.steps, "seed": args.seed,
              "restarts": args.restarts, "init": args.init}
    doc = ReportDocument.build("anneal", params, report.to_dict(timing=args.timing), stamp=args.timing)
    _emit_document(doc, args.out)
    return EXIT_OK if report.bound_holds else EXIT_VIOLATION


def cmd_check(args) -> int:
    if (args.graph is None) == (args.file is None):
        raise UsageError("check: give exactly one of GRAPH6 or --file")
    if args.file is not None:
        stream = (g for _, g in iter_graph6_file(args.file))
    else:
        stream = (g for _, g in iter_graph6_lines([args.graph]))
    for g in stream:
        print(json.dumps(graph_summary(g)))
    return EXIT_OK


def cmd_construct(args) -> int:
    p = FamilyParams(args.x, args.y)
    g = build_family_gpp(p) if args.family == "gpp" else build_family_gp(p)
    if args.dot:
        sys.stdout.write(to_dot(g))
    else:
        print(encode_graph6(g))
    return EXIT_OK


def cmd_transform_move(args) -> int:
    g = decode_graph6(args.input)
    if args.trace:
        try:
            trace = reduce_to_diameter_2(g)
        except IterationCapExceeded as e:
            print(json.dumps({"partial_pairs": e.trace}), file=sys.stderr)
            raise
        out = {"graph6": encode_graph6(trace.graph), **trace.to_dict()}
    else:
        s = find_spindle(g)
        h = move_vd(g, s)
        out = {"graph6": encode_graph6(h), "spindle": list(s.path),
               "before": g2_pairs(g), "after": g2_pairs(h)}
    print(json.dumps(out))
    return EXIT_OK


def cmd_dist_graph(args) -> int:
    gk = distance_k_graph(decode_graph6(args.input), args.k).graph
    if args.dot:
        sys.stdout.write(to_dot(gk))
    else:
        print(encode_graph6(gk))
    return EXIT_OK


# ---------- parser ----------
def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dist2", description="Distance-two Turán laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_jobs(p):
        p.add_argument("--jobs", type=_positive, default=DEFAULT_JOBS,
                       help="worker processes (default: DIST2_JOBS or 1)")

    def add_report(p):
        p.add_argument("--out", default=None, help="also write the JSON report here")
        p.add_argument("--timing", action="store_true",
                       help="include wall time, worker count and a timestamp (breaks byte-stability)")

    p = sub.add_parser("verify", help="exhaustive check of e(G_2) <= floor((n-1)^2/4)+1")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--diam2-only", action="store_true")
    p.add_argument("--long", action="store_true", help="allow n above the default ceiling (checkpointed)")
    p.add_argument("--from-file", default=None, help="graph6 stream to use instead of the generator")
    add_jobs(p)
    add_report(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("claims", help="sweep the structural claims over all connected graphs")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--force", action="store_true")
    add_jobs(p)
    add_report(p)
    p.set_defaults(func=cmd_claims)

    p = sub.add_parser("check", help="structural facts about one graph or a graph6 file")
    p.add_argument("graph", nargs="?", default=None, help="graph6 string")
    p.add_argument("--file", default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("construct", help="emit a G' or G'' family graph")
    p.add_argument("--family", choices=["gpp", "gp"], required=True)
    p.add_argument("--x", type=_positive, required=True)
    p.add_argument("--y", type=_positive, required=True)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--g6", action="store_true", help="graph6 output (default)")
    fmt.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("transform", help="diameter-lowering moves")
    tsub = p.add_subparsers(dest="transform", required=True)
    m = tsub.add_parser("move", help="one spindle move, or the full reduction with --trace")
    m.add_argument("--input", required=True, help="graph6 string")
    m.add_argument("--trace", action="store_true")
    m.set_defaults(func=cmd_transform_move)

    p = sub.add_parser("dist-graph", help="emit G_k")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--input", required=True, help="graph6 string")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_dist_graph)

    p = sub.add_parser("anneal", help="edge-flip annealing for large n")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--steps", type=int, default=ANNEAL_STEPS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=_positive, default=ANNEAL_RESTARTS)
    p.add_argument("--init", choices=["path", "family"], default="path")
    add_jobs(p)
    add_report(p)
    p.set_defaults(func=cmd_anneal)
    return parser


def cli_dispatch(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"[CLI] {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else EXIT_OK
    except Graph6Error as e:
        print(f"[CLI] graph6 error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (CapExceeded, ValueError) as e:
        print(f"[CLI] {e}", file=sys.stderr)
        return EXIT_USAGE
    except (Dist2Error, OSError) as e:
        print(f"[CLI] error: {e}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
