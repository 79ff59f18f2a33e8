"""Command-line front end.

Exit codes: 0 on success, 1 on usage errors, 2 when the input is rejected
(unreadable files, malformed graphs, degree preconditions, oversized oracle
instances).  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import chromatic, graphhom, hardcore, oracle, sinkfree
from .graph import GraphError, read_graph
from .parallel import THREADS_ENV, default_threads
from .series import EXACT, FLOAT, SeriesError, TruncSeries
from .trees import Anchor, EdgeOrder, TreeError, count_subtrees

USAGE_ERROR = 1
INPUT_ERROR = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; we reserve 2 for bad input
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _add_common(p, series=True, order=True):
    p.add_argument("--graph", required=True, help="edge-list file ('n m' header, then 'u v' lines)")
    if order:
        p.add_argument("--order", type=int, required=True, help="truncation order m")
    if series:
        kind = p.add_mutually_exclusive_group()
        kind.add_argument("--exact", dest="kind", action="store_const", const=EXACT, help="rational arithmetic (default)")
        kind.add_argument("--float", dest="kind", action="store_const", const=FLOAT, help="double precision")
        p.set_defaults(kind=EXACT)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--threads", type=int, default=None, help=f"worker processes (default: ${THREADS_ENV} or CPU count)")


def _add_edge_order(p):
    p.add_argument("--edge-order", metavar="PATH", help="edge order file: one 'u v' pair per line, smallest first")
    p.add_argument("--seed", type=int, default=None, help="draw a random edge order from this seed")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="polylog", description="Truncated log-expansions of graph partition functions.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    logz = sub.add_parser("logz", help="log of the independence polynomial")
    logz_sub = logz.add_subparsers(dest="model", required=True, parser_class=_Parser)
    _add_common(logz_sub.add_parser("hardcore", help="hard-core model / independence polynomial"))

    sfo = sub.add_parser("sfo", help="approximate count of sink-free orientations")
    _add_common(sfo, series=False, order=False)
    sfo.add_argument("--epsilon", type=float, required=True, help="additive error allowed on the log")
    sfo.add_argument("--delta-override", type=int, default=None, help="use this degree bound (<= min degree)")

    logp = sub.add_parser("logp", help="log of P(G; z) = (-z)^n chi(G; -1/z)")
    logp_sub = logp.add_subparsers(dest="model", required=True, parser_class=_Parser)
    p = logp_sub.add_parser("chromatic", help="chromatic polynomial")
    _add_common(p)
    _add_edge_order(p)

    logh = sub.add_parser("logh", help="log of the homomorphism partition function")
    logh_sub = logh.add_subparsers(dest="model", required=True, parser_class=_Parser)
    p = logh_sub.add_parser("hom", help="H(G; x) = q^-n hom(G, J + x(A - J))")
    _add_common(p)
    _add_edge_order(p)
    p.add_argument("--matrix", required=True, metavar="PATH", help="'q' line, then q rows of rationals")

    trees = sub.add_parser("trees", help="subtree enumeration diagnostics")
    trees_sub = trees.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = trees_sub.add_parser("count", help="count subtrees containing an anchor, by size")
    p.add_argument("--graph", required=True)
    p.add_argument("--anchor", type=int, required=True, help="anchor vertex (or edge index with --edge-anchor)")
    p.add_argument("--edge-anchor", action="store_true", help="treat --anchor as an edge index")
    p.add_argument("--max-edges", type=int, required=True)
    p.add_argument("--json", action="store_true")

    orc = sub.add_parser("oracle", help="brute-force reference polynomials")
    orc_sub = orc.add_subparsers(dest="which", required=True, parser_class=_Parser)
    for name, text in [
        ("independence", "independence polynomial"),
        ("sfo-poly", "sink-free orientation polynomial Z_sfo(t)"),
        ("chromatic", "chromatic polynomial chi(G; q) by deletion-contraction"),
        ("p-poly", "P(G; z) from the chromatic polynomial"),
        ("hom", "H(G; x) by summing over all colourings"),
    ]:
        p = orc_sub.add_parser(name, help=text)
        p.add_argument("--graph", required=True)
        p.add_argument("--log-order", type=int, default=None, help="also print the order-m Taylor polynomial of the log")
        p.add_argument("--json", action="store_true")
        if name == "hom":
            p.add_argument("--matrix", required=True, metavar="PATH")
    p = orc_sub.add_parser("sfo-count", help="count sink-free orientations over all 2^m orientations")
    p.add_argument("--graph", required=True)
    p.add_argument("--json", action="store_true")
    return ap


def _threads(args) -> int:
    if args.threads is not None:
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        return args.threads
    return default_threads()


def _check_order(args):
    if args.order < 0:
        raise UsageError("--order must be non-negative")


def _edge_order(args, G):
    if args.edge_order:
        pairs = []
        for lineno, raw in enumerate(Path(args.edge_order).read_text().splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise GraphError(f"{args.edge_order}: line {lineno}: expected 'u v'")
            pairs.append((int(parts[0]), int(parts[1])))
        order = EdgeOrder.from_pairs(G, pairs)
        if len(order) != G.m:
            raise GraphError(f"edge order lists {len(order)} edges, graph has {G.m}")
        return order
    if args.seed is not None:
        return EdgeOrder.shuffled(G, random.Random(args.seed))
    return None


def _emit_series(args, name, var, s: TruncSeries):
    if args.json:
        print(json.dumps({"quantity": name, "order": s.order, "kind": s.kind, "coefficients": s.coeff_strings()}))
    else:
        print(f"{name} = {s.to_text(var)}")


def _emit_poly(args, name, var, coeffs):
    s = TruncSeries(coeffs if coeffs else [0], EXACT)
    if args.json:
        print(json.dumps({"quantity": name, "coefficients": s.coeff_strings()}))
    else:
        print(f"{name} = {s.to_text(var)}")


def _run_logz(args):
    _check_order(args)
    G = read_graph(args.graph)
    s = hardcore.log_z_hc(G, args.order, args.kind, _threads(args))
    _emit_series(args, "log Z_hc", "x", s)


def _run_sfo(args):
    if args.epsilon <= 0:
        raise UsageError("--epsilon must be positive")
    G = read_graph(args.graph)
    est = sinkfree.approx_sfo(G, args.epsilon, args.delta_override, _threads(args))
    d = est.to_dict()
    if args.json:
        print(json.dumps(d))
    else:
        for key, value in d.items():
            print(f"{key}: {value}")


def _run_logp(args):
    _check_order(args)
    G = read_graph(args.graph)
    order = _edge_order(args, G)
    s = chromatic.log_p(G, args.order, order, args.kind, _threads(args))
    _emit_series(args, "log P", "z", s)


def _run_logh(args):
    _check_order(args)
    G = read_graph(args.graph)
    A = graphhom.read_matrix(args.matrix, args.kind)
    order = _edge_order(args, G)
    s = graphhom.log_h(G, A, args.order, order, args.kind, _threads(args))
    _emit_series(args, "log H", "x", s)


def _run_trees(args):
    if args.max_edges < 0:
        raise UsageError("--max-edges must be non-negative")
    G = read_graph(args.graph)
    anchor = Anchor.edge(args.anchor) if args.edge_anchor else Anchor.vertex(args.anchor)
    counts = count_subtrees(G, anchor, args.max_edges)
    sizes = {k: counts.get(k, 0) for k in range(1, args.max_edges + 1)}
    if args.json:
        print(json.dumps({"anchor": {"kind": anchor.kind, "index": anchor.index}, "counts": sizes}))
    else:
        for k, c in sizes.items():
            print(f"{k} edges: {c}")
        print(f"total: {sum(sizes.values())}")


def _run_oracle(args):
    G = read_graph(args.graph)
    if args.which == "sfo-count":
        c = oracle.count_sfo(G)
        print(json.dumps({"sfo": c}) if args.json else c)
        return
    if args.which == "independence":
        p, name, var = oracle.exact_independence_poly(G), "Z_hc", "x"
    elif args.which == "sfo-poly":
        p, name, var = oracle.exact_sfo_poly(G), "Z_sfo", "t"
    elif args.which == "chromatic":
        p, name, var = oracle.exact_chromatic(G), "chi", "q"
    elif args.which == "p-poly":
        p, name, var = oracle.exact_p_poly(G), "P", "z"
    else:
        A = graphhom.read_matrix(args.matrix)
        p, name, var = oracle.exact_hom_poly(G, A.rows), "H", "x"
    _emit_poly(args, name, var, p)
    if args.log_order is not None:
        if args.log_order < 0:
            raise UsageError("--log-order must be non-negative")
        _emit_series(args, f"log {name}", var, oracle.formal_log(p, args.log_order))


_DISPATCH = {
    "logz": _run_logz,
    "sfo": _run_sfo,
    "logp": _run_logp,
    "logh": _run_logh,
    "trees": _run_trees,
    "oracle": _run_oracle,
}

_INPUT_ERRORS = (
    OSError,
    GraphError,
    TreeError,
    SeriesError,
    sinkfree.DegreeError,
    graphhom.MatrixError,
    oracle.OracleRefusal,
    ValueError,
)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _DISPATCH[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return USAGE_ERROR
    except _INPUT_ERRORS as exc:
        print(f"polylog: error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    return 0


if __name__ == "__main__":
    sys.exit(main())
