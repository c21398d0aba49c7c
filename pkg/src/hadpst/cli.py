"""Command-line interface: ``hadpst <group> <command> ...``.

Graphs travel between commands as JSON on stdin/stdout. Exit codes: 0 on
success or a positive verdict, 1 when a check finds no transfer, 2 for
usage and domain errors, 3 for numeric and capacity failures.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import analysis, cubelike, families, pgst
from . import graphs as _graphs
from . import hadamard as _hadamard
from . import pst as _pst
from . import spectral
from .errors import (CapacityError, CertificationError, DomainError, HorizonError,
                     InvariantError, NumericError)
from .spectral import PiTime

EXIT_OK, EXIT_NONE, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


# -- I/O helpers ---------------------------------------------------------------

def _read_text(path):
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _read_json(path):
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"input is not valid JSON: {exc}") from None


def _read_graph(path):
    obj = _read_json(path)
    if isinstance(obj, dict) and "graph" in obj and "edges" not in obj:
        obj = obj["graph"]
    return _graphs.from_json_obj(obj)


def _emit(args, text):
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, obj):
    _emit(args, json.dumps(obj))


def _hadamard_arg(spec, n):
    if spec and spec not in ("auto",) and os.path.exists(spec):
        return _hadamard.parse_text(_read_text(spec))
    return _hadamard.resolve(spec, n)


def _graph_with_report(g, rep, **extra):
    obj = _graphs.to_json_obj(g)
    obj["report"] = rep.to_json_obj()
    obj.update(extra)
    return obj


def _verdict_code(rep):
    return EXIT_NONE if rep.verdict == "NONE" else EXIT_OK


# -- hadamard ------------------------------------------------------------------

def cmd_hadamard_gen(args):
    h = _hadamard.resolve(args.spec, args.order)
    if args.normalize:
        h = _hadamard.normalize(h)[0]
    _emit(args, _hadamard.format_text(h))
    return EXIT_OK


def cmd_hadamard_check(args):
    try:
        h = _hadamard.parse_text(_read_text(args.file))
    except DomainError as exc:
        print(f"not a Hadamard matrix: {exc}", file=sys.stderr)
        return EXIT_NONE
    _emit_json(args, {"hadamard": True, "order": h.order, "normalized": h.is_normalized()})
    return EXIT_OK


def cmd_hadamard_normalize(args):
    h, cols, rows = _hadamard.normalize(_hadamard.parse_text(_read_text(args.file)))
    _emit(args, _hadamard.format_text(h))
    return EXIT_OK


# -- graph ---------------------------------------------------------------------

_NAMED = {"complete": _graphs.complete, "cycle": _graphs.cycle, "path": _graphs.path,
          "matching": _graphs.perfect_matching, "empty": _graphs.empty}


def _parse_edges(text):
    """``1-2,2-3:3/2`` (1-based, optional weight after a colon)."""
    out = []
    for tok in filter(None, text.replace(" ", "").split(",")):
        pair, _, w = tok.partition(":")
        a, b = pair.split("-")
        out.append((int(a) - 1, int(b) - 1, w or "1"))
    return out


def cmd_graph_build(args):
    if args.edges is not None:
        if args.n is None:
            raise DomainError("--n is required with --edges")
        g = _graphs.from_edges(args.n, [(a, b, _exact_weight(w)) for a, b, w in _parse_edges(args.edges)])
    else:
        if args.n is None:
            raise DomainError("--n is required")
        g = _NAMED[args.family](args.n)
    _emit_json(args, _graphs.to_json_obj(g))
    return EXIT_OK


def _exact_weight(text):
    return Fraction(text)


def cmd_graph_unary(args):
    g = _read_graph(args.graph)
    if args.command == "complement":
        out = _graphs.complement(g)
    else:
        out = _graphs.scale(g, _exact_weight(args.by))
    _emit_json(args, _graphs.to_json_obj(out))
    return EXIT_OK


def cmd_graph_binary(args):
    g1, g2 = _read_graph(args.first), _read_graph(args.second)
    op = args.command
    if op == "join":
        out = _graphs.join(g1, g2)
    elif op == "product":
        out = _graphs.cartesian_product(g1, g2)
    elif op == "add":
        out = _graphs.add(g1, g2)
    else:
        loops = [_exact_weight(v) for v in args.loops.split(",")] if args.loops else None
        out = _graphs.merge(g1, g2, _exact_weight(args.w1), _exact_weight(args.w2), loops)
    _emit_json(args, _graphs.to_json_obj(out))
    return EXIT_OK


# -- certify / pst -------------------------------------------------------------

def cmd_certify(args):
    g = _read_graph(args.graph)
    cert = spectral.certify(g, _hadamard_arg(args.hadamard, g.n))
    _emit_json(args, spectral.certificate_to_json_obj(cert))
    return EXIT_OK


def cmd_pst_pairs(args):
    g = _read_graph(args.graph)
    rep = _pst.pst_report(g, _hadamard_arg(args.hadamard, g.n), check=not args.no_oracle)
    _emit_json(args, rep.to_json_obj())
    return _verdict_code(rep)


def cmd_pst_check(args):
    g = _read_graph(args.graph)
    j, k = args.pair
    if not (1 <= j <= g.n and 1 <= k <= g.n) or j == k:
        raise DomainError("pair must be two distinct vertices in range")
    rep = _pst.pst_report(g, _hadamard_arg(args.hadamard, g.n), check=not args.no_oracle)
    pair = (min(j, k), max(j, k))
    if rep.verdict == "PST" and pair in rep.pairs:
        out = _pst.PstReport("PST", (pair,), rep.time, rep.rule, rep.fidelity)
    else:
        out = _pst.PstReport("NONE", (), rep.time, rep.rule)
    _emit_json(args, out.to_json_obj())
    return _verdict_code(out)


def cmd_pst_merge(args):
    g1, g2 = _read_graph(args.first), _read_graph(args.second)
    h = _hadamard_arg(args.hadamard, g1.n)
    rep = _pst.merge_pst_graphs(g1, g2, int(args.w1), int(args.w2), h)
    _emit_json(args, rep.to_json_obj())
    return _verdict_code(rep)


# -- cubelike ------------------------------------------------------------------

def _read_set(args):
    if args.set is not None:
        return cubelike.parse_set(args.set, args.d)
    return cubelike.loads_set(_read_text(args.file))


def cmd_cubelike_build(args):
    c = _read_set(args)
    obj = _graphs.to_json_obj(cubelike.build(c))
    obj["connection_set"] = c.bitstrings()
    _emit_json(args, obj)
    return EXIT_OK


def cmd_cubelike_sigma(args):
    c = _read_set(args)
    rep = cubelike.pst_by_sigma(c)
    _emit_json(args, {"sigma": format(cubelike.sigma(c), f"0{c.d}b"), "report": rep.to_json_obj()})
    return EXIT_OK


def cmd_cubelike_enum(args):
    pred = _FlagPredicate(args)
    if args.parallel > 1 and args.degree is not None:
        sets = cubelike.enumerate_parallel(args.d, pred, args.degree, args.parallel)
    else:
        sets = list(cubelike.enumerate_sets(args.d, pred, args.degree))
    if args.count:
        _emit_json(args, {"d": args.d, "count": len(sets)})
    else:
        _emit(args, "".join(str(c) + "\n" for c in sets) or "\n")
    return EXIT_OK


class _FlagPredicate:
    """Predicate built from flags; picklable so worker processes can use it."""

    def __init__(self, args):
        self.flags = (args.connected, args.pst, args.bipartite, args.non_bipartite)

    def __call__(self, c):
        connected, pst, bip, nonbip = self.flags
        return ((not connected or cubelike.is_connected_set(c))
                and (not pst or cubelike.has_sigma(c))
                and (not bip or cubelike.is_bipartite_set(c))
                and (not nonbip or not cubelike.is_bipartite_set(c)))


def cmd_cubelike_random(args):
    rng = np.random.default_rng(args.seed)
    universe = np.arange(1, 1 << args.d)
    if not 0 <= args.size <= universe.size:
        raise DomainError("size out of range")
    c = cubelike.ConnectionSet(args.d, rng.choice(universe, size=args.size, replace=False).tolist())
    _emit(args, cubelike.dumps_set(c))
    return EXIT_OK


def cmd_cubelike_decompose(args):
    g = _read_graph(args.graph)
    if not g.is_unweighted():
        raise DomainError("decomposition needs an unweighted graph")
    a = np.array([[int(v) for v in row] for row in g.adjacency()], dtype=np.int64)
    c, loops = cubelike.decompose_standard(a)
    text = cubelike.dumps_set(c)
    if loops:
        text = "# loops on every vertex\n" + text
    _emit(args, text)
    return EXIT_OK


def cmd_cubelike_family(args):
    g, c = cubelike.regular_pst_family(args.k, args.deg)
    rep = cubelike.pst_by_sigma(c)
    _emit_json(args, _graph_with_report(g, rep, connection_set=c.bitstrings()))
    return EXIT_OK


# -- families ------------------------------------------------------------------

def cmd_family_regular(args):
    g, rep = families.regular_family(args.k, args.deg, args.case)
    _emit_json(args, _graph_with_report(g, rep))
    return _verdict_code(rep)


def cmd_family_hypercube(args):
    weights = [int(v) for v in args.weights.split(",")]
    g, rep = families.weighted_hypercube(weights)
    _emit_json(args, _graph_with_report(g, rep))
    return EXIT_OK


def cmd_family_order12(args):
    g, rep, cert = families.order12_pst_merge()
    _emit_json(args, _graph_with_report(
        g, rep, eigenvalues=[str(v) for v in cert.eigenvalues]))
    return _verdict_code(rep)


# -- pgst ----------------------------------------------------------------------

def cmd_pgst_approx(args):
    w = pgst.parse_quadratic(args.w)
    try:
        found = pgst.pgst_approximants(w, args.cls, args.count, args.horizon)
    except HorizonError as exc:
        _emit_json(args, {"w": str(w), "class": args.cls, "approximants": exc.partial,
                          "complete": False})
        raise
    _emit_json(args, {"w": str(w), "class": args.cls, "approximants": [list(p) for p in found],
                      "complete": len(found) == args.count})
    return EXIT_OK


def cmd_pgst_sequence(args):
    g1, g2 = _read_graph(args.first), _read_graph(args.second)
    h = _hadamard_arg(args.hadamard, g1.n)
    c1, c2 = spectral.certify(g1, h), spectral.certify(g2, h)
    w1, w2 = pgst.parse_quadratic(args.w1), pgst.parse_quadratic(args.w2)
    p, q = args.pair
    pts = pgst.pgst_sequence(c1, c2, w1, w2, p, q, args.count, args.horizon)
    _emit_json(args, {"pair": [p, q], "points": [
        {"u": pt.u, "v": pt.v, "time": str(pt.time), "fidelity": pt.fidelity,
         "lower_bound": pt.lower_bound} for pt in pts]})
    return EXIT_OK


# -- analysis / fidelity -------------------------------------------------------

def cmd_analyze_timing(args):
    g = _read_graph(args.graph)
    cert = spectral.certify(g, _hadamard_arg(args.hadamard, g.n))
    res = analysis.timing_drop(cert, PiTime.parse(args.t0), args.h,
                               tuple(args.pair) if args.pair else None)
    _emit_json(args, {"drop": res.drop, "ring_sum": res.ring_sum,
                      "predicted_drop": res.predicted, "pair": list(res.pair)})
    return EXIT_OK


def cmd_analyze_sparsity(args):
    rep = analysis.verify_sparsity_corpus(args.r, args.max_k, args.parallel)
    _emit(args, analysis.dumps_report(rep))
    return EXIT_OK if not rep["violations"] else EXIT_NONE


def cmd_analyze_eigencount(args):
    _emit_json(args, analysis.eigencount_solve(args.r).to_json_obj())
    return EXIT_OK


def cmd_fidelity_curve(args):
    g = _read_graph(args.graph)
    j, k = args.pair
    t_max = float(PiTime.parse(args.t_max)) if "pi" in args.t_max else float(args.t_max)
    pts = spectral.fidelity_curve(g, j, k, t_max, args.steps, hamiltonian=args.hamiltonian)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            spectral.write_fidelity_csv(pts, fh)
    else:
        spectral.write_fidelity_csv(pts, sys.stdout)
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def _add_out(p):
    p.add_argument("--out", help="write output to this file instead of stdout")


def _add_graph(p, flag="--graph"):
    p.add_argument(flag, default="-", help="graph JSON file ('-' or omitted: stdin)")


def _add_hadamard(p):
    p.add_argument("--hadamard", default="auto",
                   help="sylvester:k, catalog:N, auto, or a file in the text format")


def _add_set(p):
    p.add_argument("--set", help="comma list: e1,e2,e1+e3 or bitstrings")
    p.add_argument("--d", type=int, help="dimension (defaults from --set)")
    p.add_argument("--file", default="-", help="connection-set file when --set is absent")


def build_parser():
    parser = argparse.ArgumentParser(prog="hadpst", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized generators")
    groups = parser.add_subparsers(dest="group", required=True)

    # hadamard
    hg = groups.add_parser("hadamard", help="generate and check Hadamard matrices")
    hs = hg.add_subparsers(dest="command", required=True)
    p = hs.add_parser("gen")
    p.add_argument("--spec", default="auto")
    p.add_argument("--order", type=int)
    p.add_argument("--normalize", action="store_true")
    _add_out(p)
    p.set_defaults(func=cmd_hadamard_gen)
    for name, func in (("check", cmd_hadamard_check), ("normalize", cmd_hadamard_normalize)):
        p = hs.add_parser(name)
        p.add_argument("file", nargs="?", default="-")
        _add_out(p)
        p.set_defaults(func=func)

    # graph
    gg = groups.add_parser("graph", help="build and combine graphs")
    gs = gg.add_subparsers(dest="command", required=True)
    p = gs.add_parser("build")
    p.add_argument("--family", choices=sorted(_NAMED), default="empty")
    p.add_argument("--n", type=int)
    p.add_argument("--edges", help="1-based edge list, e.g. '1-2,2-3:3/2'")
    _add_out(p)
    p.set_defaults(func=cmd_graph_build)
    p = gs.add_parser("complement")
    _add_graph(p)
    _add_out(p)
    p.set_defaults(func=cmd_graph_unary)
    p = gs.add_parser("scale")
    _add_graph(p)
    p.add_argument("--by", required=True)
    _add_out(p)
    p.set_defaults(func=cmd_graph_unary)
    for name in ("join", "product", "add", "merge"):
        p = gs.add_parser(name)
        p.add_argument("first")
        p.add_argument("second")
        if name == "merge":
            p.add_argument("--w1", default="1")
            p.add_argument("--w2", default="1")
            p.add_argument("--loops", help="comma list of loop weights for the second graph")
        _add_out(p)
        p.set_defaults(func=cmd_graph_binary)

    # certify
    p = groups.add_parser("certify", help="exact spectral certificate under a Hadamard matrix")
    _add_graph(p)
    _add_hadamard(p)
    _add_out(p)
    p.set_defaults(func=cmd_certify, command="certify")

    # pst
    pg = groups.add_parser("pst", help="exact PST decisions")
    ps = pg.add_subparsers(dest="command", required=True)
    for name, func in (("pairs", cmd_pst_pairs), ("check", cmd_pst_check)):
        p = ps.add_parser(name)
        _add_graph(p)
        _add_hadamard(p)
        if name == "check":
            p.add_argument("--pair", nargs=2, type=int, required=True, metavar=("J", "K"))
        p.add_argument("--no-oracle", action="store_true", help="skip the numeric cross-check")
        _add_out(p)
        p.set_defaults(func=func)
    p = ps.add_parser("merge")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--w1", default="1")
    p.add_argument("--w2", default="1")
    _add_hadamard(p)
    _add_out(p)
    p.set_defaults(func=cmd_pst_merge)

    # cubelike
    cg = groups.add_parser("cubelike", help="Cayley graphs of Z_2^d")
    cs = cg.add_subparsers(dest="command", required=True)
    for name, func in (("build", cmd_cubelike_build), ("sigma", cmd_cubelike_sigma)):
        p = cs.add_parser(name)
        _add_set(p)
        _add_out(p)
        p.set_defaults(func=func)
    p = cs.add_parser("enum")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--degree", type=int)
    p.add_argument("--connected", action="store_true")
    p.add_argument("--pst", action="store_true", help="sigma != 0")
    p.add_argument("--bipartite", action="store_true")
    p.add_argument("--non-bipartite", action="store_true")
    p.add_argument("--count", action="store_true", help="print only the number of sets")
    p.add_argument("--parallel", type=int, default=1)
    _add_out(p)
    p.set_defaults(func=cmd_cubelike_enum)
    p = cs.add_parser("random")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    _add_out(p)
    p.set_defaults(func=cmd_cubelike_random)
    p = cs.add_parser("decompose")
    _add_graph(p)
    _add_out(p)
    p.set_defaults(func=cmd_cubelike_decompose)
    p = cs.add_parser("family")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--deg", type=int, required=True)
    _add_out(p)
    p.set_defaults(func=cmd_cubelike_family)

    # family
    fg = groups.add_parser("family", help="named PST constructions")
    fs = fg.add_subparsers(dest="command", required=True)
    p = fs.add_parser("regular", aliases=["thm4.6"], help="d-regular PST graph on 2^k vertices")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--deg", type=int, required=True)
    p.add_argument("--case", help="force a construction: matching, 1, 2, join")
    _add_out(p)
    p.set_defaults(func=cmd_family_regular)
    p = fs.add_parser("hypercube", help="weighted hypercube")
    p.add_argument("--weights", required=True, help="comma list of nonzero integers")
    _add_out(p)
    p.set_defaults(func=cmd_family_hypercube)
    p = fs.add_parser("order12", aliases=["example4.4"],
                      help="order-12 Hadamard graph merged with K12 at weights (5, 2)")
    _add_out(p)
    p.set_defaults(func=cmd_family_order12)

    # pgst
    qg = groups.add_parser("pgst", help="pretty good state transfer")
    qs = qg.add_subparsers(dest="command", required=True)
    p = qs.add_parser("approx")
    p.add_argument("--w", required=True, help="quadratic irrational, e.g. 'sqrt(2)'")
    p.add_argument("--class", dest="cls", required=True, choices=["oe", "eo", "oo"])
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--horizon", type=int, default=5000)
    _add_out(p)
    p.set_defaults(func=cmd_pgst_approx)
    p = qs.add_parser("sequence")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--w1", required=True)
    p.add_argument("--w2", required=True)
    p.add_argument("--pair", nargs=2, type=int, required=True, metavar=("P", "Q"))
    p.add_argument("--count", type=int, default=8)
    p.add_argument("--horizon", type=int, default=5000)
    _add_hadamard(p)
    _add_out(p)
    p.set_defaults(func=cmd_pgst_sequence)

    # analyze
    ag = groups.add_parser("analyze", help="timing errors and sparsity bounds")
    asub = ag.add_subparsers(dest="command", required=True)
    p = asub.add_parser("timing")
    _add_graph(p)
    _add_hadamard(p)
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--t0", default="1/2pi")
    p.add_argument("--pair", nargs=2, type=int)
    _add_out(p)
    p.set_defaults(func=cmd_analyze_timing)
    p = asub.add_parser("sparsity")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--max-k", type=int, default=4)
    p.add_argument("--parallel", type=int, default=1)
    _add_out(p)
    p.set_defaults(func=cmd_analyze_sparsity)
    p = asub.add_parser("eigencount")
    p.add_argument("--r", type=int, required=True)
    _add_out(p)
    p.set_defaults(func=cmd_analyze_eigencount)

    # fidelity
    tg = groups.add_parser("fidelity", help="numeric fidelity curves")
    ts = tg.add_subparsers(dest="command", required=True)
    p = ts.add_parser("curve")
    _add_graph(p)
    p.add_argument("--pair", nargs=2, type=int, required=True, metavar=("J", "K"))
    p.add_argument("--t-max", default="pi")
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--hamiltonian", choices=["laplacian", "adjacency"], default="laplacian")
    _add_out(p)
    p.set_defaults(func=cmd_fidelity_curve)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, CertificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericError, CapacityError, HorizonError, InvariantError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
