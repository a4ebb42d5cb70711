"""Command-line interface.

Exit codes: 0 success, 1 rejected or not found, 2 internal verification
failure, 64 malformed input or usage, 65 size limit.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional

from . import io as tio
from .driver import DriverConfig, partition, power_lift_back, power_reduce, verify_certificate
from .errors import (
    HypothesisViolation, InternalError, InvalidArgument, ParseError, SizeLimitError,
    TransversalStuck,
)
from .hypergraph import EXACT_ALPHA_LIMIT, independence_number
from .lemmas import group_blocks, independent_transversal, posa_cycle_cover
from .oracles import colouring_scan
from .search import SearchBudget, find_mono_crown
from .tight import build_crown

EXIT_OK, EXIT_REJECT, EXIT_INTERNAL, EXIT_PARSE, EXIT_SIZE = 0, 1, 2, 64, 65


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", path) from None


def _write(text: str, path: Optional[str]):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit(obj: dict, path: Optional[str] = None):
    _write(tio.dumps(obj), path)


def _fraction(text: str) -> Fraction:
    return tio.parse_fraction(text, "rational argument")


# -- subcommands ---------------------------------------------------------------

def cmd_gen(args) -> int:
    G = tio.generate(args.k, args.n, args.r, args.model, args.p, args.seed)
    _write(tio.dump_instance(tio.InstanceFile(G, args.alpha), compact=args.compact), args.out)
    return EXIT_OK


def _driver_config(path: Optional[str], seed: int) -> DriverConfig:
    if path is None:
        return DriverConfig(seed=seed)
    obj = tio._parse_json(_read(path), "config")
    known = {"eps", "beta", "gamma", "search_nodes", "crown_nodes", "fallback_nodes",
             "fallback_bound", "use_crowns", "spanning_shortcut", "max_greedy_cycles"}
    unknown = set(obj) - known
    if unknown:
        raise ParseError(f"unknown config fields {sorted(unknown)}", "$")
    kw: dict = {"seed": seed}
    for key in ("eps", "beta", "gamma"):
        if key in obj:
            kw[key] = tio.parse_fraction(str(obj[key]), f"$.{key}")
    for key, target in (("search_nodes", "search_budget"), ("crown_nodes", "crown_budget"),
                        ("fallback_nodes", "fallback_budget")):
        if key in obj:
            kw[target] = SearchBudget(node_limit=tio._field(obj, key, int))
    for key, kind in (("fallback_bound", int), ("use_crowns", bool), ("spanning_shortcut", bool),
                      ("max_greedy_cycles", int)):
        if key in obj:
            kw[key] = tio._field(obj, key, kind)
    return DriverConfig(**kw)


def cmd_partition(args) -> int:
    inst = tio.load_instance(_read(args.input))
    alpha = args.alpha if args.alpha is not None else inst.alpha
    cert = partition(inst.graph, alpha, _driver_config(args.config, args.seed))
    verdict = verify_certificate(inst.graph, cert)
    _write(tio.dump_certificate(cert), args.out)
    hist = ", ".join(f"{tag}={count}" for tag, count in cert.histogram().items())
    print(f"cycles: {len(cert)} ({hist})", file=sys.stderr)
    if not verdict:
        print(f"internal verification failure: {verdict.reason}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = tio.load_instance(_read(args.input))
    cert = tio.load_certificate(_read(args.cert), inst.graph.k)
    verdict = verify_certificate(inst.graph, cert)
    if verdict:
        print(f"accept: {len(cert)} cycles")
        return EXIT_OK
    print(f"reject: {verdict.reason}")
    return EXIT_REJECT


def cmd_crown(args) -> int:
    if args.embed_in is None:
        crown = build_crown(args.k, args.t)
        _emit({"k": crown.k, "t": crown.t, "base": list(crown.base), "rim": list(crown.rim),
               "vertices": len(crown.vertices), "edge_count": len(crown.edges),
               "edges": [list(e) for e in sorted(crown.edges)]})
        return EXIT_OK
    inst = tio.load_instance(_read(args.embed_in))
    if inst.graph.k != args.k:
        raise InvalidArgument(f"instance is {inst.graph.k}-uniform, not {args.k}-uniform")
    hit = find_mono_crown(inst.graph, args.t, budget=SearchBudget(node_limit=args.nodes))
    if hit is None:
        print("no monochromatic crown found", file=sys.stderr)
        return EXIT_REJECT
    crown, colour = hit
    _emit({"k": crown.k, "t": crown.t, "colour": colour, "base": list(crown.base),
           "rim": list(crown.rim), "edge_count": len(crown.edges)})
    return EXIT_OK


def cmd_posa(args) -> int:
    G = tio.load_instance(_read(args.graph)).graph
    cycles = posa_cycle_cover(G)
    out = {"n": G.n, "count": len(cycles), "cycles": [list(c) for c in cycles]}
    if G.n <= EXACT_ALPHA_LIMIT:
        out["alpha"] = independence_number(G)
    _emit(out)
    return EXIT_OK


def cmd_blocks(args) -> int:
    F = tio.load_family(_read(args.family))
    result = group_blocks(F, args.eps)
    _emit({
        "blocks": [{"owners": list(b.owners), "intersection_size": len(b.intersection)}
                   for b in result.blocks],
        "leftover": list(result.leftover),
        "delta": str(result.delta),
        "leftover_bound": str(result.leftover_bound),
    })
    return EXIT_OK


def cmd_transversal(args) -> int:
    G = tio.load_instance(_read(args.input)).graph
    blocks = tio.parse_blocks(args.blocks)
    try:
        chosen = independent_transversal(G, blocks, checked=not args.unchecked)
    except HypothesisViolation as exc:
        i, idx, v = exc.witness
        _emit({"status": "hypothesis-violation", "block": i, "earlier_blocks": list(idx), "vertex": v})
        return EXIT_REJECT
    except TransversalStuck as exc:
        _emit({"status": "stuck", "block": exc.block})
        return EXIT_REJECT
    _emit({"status": "ok", "transversal": chosen})
    return EXIT_OK


def cmd_scan(args) -> int:
    rep = colouring_scan(args.k, args.r, args.n, args.graph_convention, args.prune,
                         max_classes=args.max_classes)
    _emit({"k": rep.k, "r": rep.r, "n": rep.n, "graph_convention": rep.graph_convention,
           "pruned": rep.pruned, "colourings": rep.colourings, "classes": rep.classes,
           "worst": rep.worst, "witness": list(rep.witness) if rep.witness else None,
           "complete": rep.complete, "lehel_ok": rep.lehel_ok})
    return EXIT_OK


def cmd_power(args) -> int:
    inst = tio.load_instance(_read(args.input))
    G = inst.graph
    if args.action == "reduce":
        _write(tio.dump_instance(tio.InstanceFile(power_reduce(G, args.p))), args.out)
        return EXIT_OK
    H = power_reduce(G, args.p)
    cert = partition(H, None, DriverConfig(seed=args.seed))
    if not verify_certificate(H, cert):
        return EXIT_INTERNAL
    lifted = [power_lift_back(G, c, col, args.p) for c, col in cert.cycles]
    _emit(tio.power_certificate_to_dict(G, args.p, lifted), args.out)
    print(f"powers of cycles: {len(lifted)}", file=sys.stderr)
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--threads", type=int, default=1,
                        help="accepted for compatibility; all work is single-threaded")

    p = _Parser(prog="tightcycles", description="Monochromatic tight cycle partitions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="generate a random coloured instance")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--r", type=int, required=True)
    g.add_argument("--model", choices=["complete-random", "density"], default="complete-random")
    g.add_argument("--p", type=float, default=1.0, help="edge probability for --model density")
    g.add_argument("--alpha", type=int, help="declared independence bound to store")
    g.add_argument("--compact", action="store_true", help="use the complete_with_colouring form")
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    q = sub.add_parser("partition", parents=[common], help="partition an instance and certify it")
    q.add_argument("--in", dest="input", required=True)
    q.add_argument("--alpha", type=int)
    q.add_argument("--config")
    q.add_argument("--out")
    q.set_defaults(func=cmd_partition)

    v = sub.add_parser("verify", parents=[common], help="check a certificate against an instance")
    v.add_argument("--in", dest="input", required=True)
    v.add_argument("--cert", required=True)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("crown", parents=[common], help="describe or embed a crown")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--embed-in")
    c.add_argument("--nodes", type=int, default=200_000, help="search node budget")
    c.set_defaults(func=cmd_crown)

    ps = sub.add_parser("posa", parents=[common], help="cycle cover of a graph")
    ps.add_argument("--graph", required=True)
    ps.set_defaults(func=cmd_posa)

    b = sub.add_parser("blocks", parents=[common], help="group a set family into blocks of four")
    b.add_argument("--family", required=True)
    b.add_argument("--eps", type=_fraction, required=True)
    b.set_defaults(func=cmd_blocks)

    t = sub.add_parser("transversal", parents=[common], help="independent transversal of blocks")
    t.add_argument("--in", dest="input", required=True)
    t.add_argument("--blocks", required=True, help='e.g. "0-2;3,4,5"')
    t.add_argument("--unchecked", action="store_true", help="skip the hypothesis check")
    t.set_defaults(func=cmd_transversal)

    s = sub.add_parser("scan", parents=[common], help="worst case over all colourings")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--prune", action="store_true", help="solve one colouring per isomorphism class")
    s.add_argument("--graph-convention", action="store_true", help="allow single edges as cycles (k=2)")
    s.add_argument("--max-classes", type=int)
    s.set_defaults(func=cmd_scan)

    w = sub.add_parser("power", parents=[common], help="powers of tight cycles")
    w.add_argument("--in", dest="input", required=True)
    w.add_argument("--p", type=int, required=True)
    w.add_argument("action", choices=["reduce", "partition"])
    w.add_argument("--out")
    w.set_defaults(func=cmd_power)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SizeLimitError as exc:
        print(f"size limit: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except InvalidArgument as exc:
        print(f"invalid argument: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
