"""Batch command-line front end.

Machine-readable JSON on stdout, graph6 on stdin/stdout for pipelines,
stable exit codes: 0 success/holds, 1 violation found, 2 usage or parse
error, 3 resource cap (order cap, exhausted search budget).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time

from . import __version__
from .corpus import parse_graph6, stream_graph6, write_graph6
from .errors import Graph6Error, InvalidArgument, InvalidVertex, OrderCap, SpexError
from .graphs import basic, book, snk, theta, turan
from .patterns import Book, Theta123, booksize, find_witness, parse_pattern
from .search import DEFAULT_BUDGET, hill_climb
from .spectral import DEFAULT_TOL, spectral_radius
from .verify import TARGETS, run_scan

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _envelope(target: str, params: dict, payload: dict, t0: float) -> dict:
    return {
        "tool_version": __version__,
        "target": target,
        "params": params,
        "elapsed": time.perf_counter() - t0,
        **payload,
    }


def _emit(doc: dict, json_path: str | None, out=sys.stdout):
    line = json.dumps(doc, sort_keys=True)
    print(line, file=out)
    if json_path:
        with open(json_path, "a", encoding="ascii") as fh:
            fh.write(line + "\n")


def _input_graphs(source: str):
    """Graphs from a file, stdin ('-'), or a literal graph6 token."""
    if source == "-" or os.path.exists(source):
        stream = stream_graph6(source)
        yield from stream
        for diag in stream.diagnostics:
            print(str(diag), file=sys.stderr)
    else:
        yield parse_graph6(source)


def _cmd_rho(args) -> int:
    for g in _input_graphs(args.input):
        t0 = time.perf_counter()
        est = spectral_radius(g, args.tol)
        doc = _envelope(
            "rho",
            {"tol": args.tol, "input": args.input},
            {"g6": write_graph6(g), "n": g.n, "e": g.e, "rho": est.as_dict()},
            t0,
        )
        _emit(doc, args.json)
    return EXIT_OK


def _cmd_booksize(args) -> int:
    for g in _input_graphs(args.input):
        t0 = time.perf_counter()
        doc = _envelope(
            "booksize",
            {"input": args.input},
            {"g6": write_graph6(g), "n": g.n, "booksize": booksize(g)},
            t0,
        )
        _emit(doc, args.json)
    return EXIT_OK


def _cmd_contains(args) -> int:
    pattern = parse_pattern(args.pattern)
    for g in _input_graphs(args.input):
        t0 = time.perf_counter()
        witness = find_witness(g, pattern)
        payload = {
            "g6": write_graph6(g),
            "pattern": args.pattern,
            "contains": witness is not None,
        }
        if witness is not None:
            payload["witness"] = [list(edge) for edge in witness]
        doc = _envelope(
            "contains", {"pattern": args.pattern, "input": args.input}, payload, t0
        )
        _emit(doc, args.json)
    return EXIT_OK


def _cmd_gen(args) -> int:
    if args.turan is not None:
        g = turan(args.turan[0], args.turan[1])
    elif args.book is not None:
        g = book(args.book)
    elif args.theta is not None:
        lengths = [int(part) for part in args.theta.split(",")]
        g = theta(lengths)
    elif args.snk is not None:
        g = snk(args.snk)
    elif args.cycle is not None:
        g = basic("cycle", args.cycle)
    elif args.path is not None:
        g = basic("path", args.path)
    elif args.complete is not None:
        g = basic("complete", args.complete)
    else:
        g = basic("empty", args.empty)
    print(write_graph6(g))
    return EXIT_OK


_PATTERN_TARGETS = {"spectral-book": Book, "spectral-theta": Theta123}


def _verify_kwargs(args) -> dict:
    target = args.target
    kw: dict = {}
    if target in ("spectral-book", "spectral-theta"):
        kw["n"] = _need(args, "n")
        if args.pattern:
            kw["pattern"] = parse_pattern(args.pattern)
        elif args.r is not None:
            kw["pattern"] = _PATTERN_TARGETS[target](args.r + 1)
        else:
            raise InvalidArgument(f"{target} needs --r or --pattern")
        if args.stream:
            kw["stream"] = args.stream
        kw["tol"] = args.tol
    elif target == "booksize-cor":
        kw["n"] = _need(args, "n")
        kw["divisor"] = args.divisor if args.divisor is not None else 6.5
        kw["tol"] = args.tol
    elif target == "cycle-cor":
        kw["n"] = _need(args, "n")
        if args.stream:
            kw["stream"] = args.stream
        kw["tol"] = args.tol
    elif target == "edge-book":
        kw["n"] = _need(args, "n")
        kw["tol"] = args.tol
    elif target == "erdos-gallai":
        kw["n"] = _need(args, "n")
        kw["r"] = _need(args, "r")
    elif target == "bipartite-path":
        kw["x_max"] = _need(args, "x_max")
        kw["y_max"] = _need(args, "y_max")
        kw["r"] = _need(args, "r")
    elif target == "gamma":
        kw["n"] = _need(args, "n")
        kw["tol"] = args.tol
    elif target == "fact-chain":
        kw["k_max"] = args.k_max if args.k_max is not None else _need(args, "k")
        kw["n_max"] = args.n_max if args.n_max is not None else _need(args, "n")
    elif target == "turan-number":
        kw["n"] = _need(args, "n")
        if not args.pattern:
            raise InvalidArgument("turan-number needs --pattern")
        kw["pattern"] = parse_pattern(args.pattern)
        kw["tol"] = args.tol
    elif target == "snk":
        kw["n"] = _need(args, "n")
        kw["assert_rho"] = args.assert_rho
        kw["tol"] = args.tol
    if args.shards is not None and target != "snk":
        kw["shard_count"] = args.shards
        if args.shard is not None:
            kw["shard_index"] = args.shard
    if args.no_prefilters:
        kw["prefilters"] = False
    return kw


def _need(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise InvalidArgument(f"--{name.replace('_', '-')} is required for {args.target}")
    return value


def _cmd_verify(args) -> int:
    kw = _verify_kwargs(args)
    threads = args.threads if args.threads else 1
    if args.shard is not None:
        threads = 1  # explicit shard selection runs exactly that shard
    report = run_scan(args.target, threads=threads, **kw)
    doc = {"tool_version": __version__, **report.to_dict()}
    _emit(doc, args.json)
    if args.csv:
        row = report.csv_row()
        exists = os.path.exists(args.csv)
        with open(args.csv, "a", newline="", encoding="ascii") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(row))
            if not exists:
                writer.writeheader()
            writer.writerow(row)
    return EXIT_OK if report.verdict == "holds" else EXIT_VIOLATION


def _cmd_search(args) -> int:
    result = hill_climb(
        n=args.n,
        pattern=parse_pattern(args.pattern),
        restarts=args.restarts,
        seed=args.seed,
        budget=args.budget,
        threads=args.threads if args.threads else 1,
    )
    t0 = time.perf_counter()
    doc = _envelope(
        "search",
        {
            "n": args.n,
            "pattern": args.pattern,
            "restarts": args.restarts,
            "seed": args.seed,
            "budget": args.budget,
        },
        result.to_dict(),
        t0,
    )
    _emit(doc, args.json)
    return EXIT_RESOURCE if result.budget_exhausted else EXIT_OK


def _cmd_convert(args) -> int:
    stream = stream_graph6(args.check)
    graphs = 0
    for _ in stream:
        graphs += 1
    for diag in stream.diagnostics:
        print(str(diag), file=sys.stderr)
    doc = {
        "tool_version": __version__,
        "target": "convert",
        "params": {"check": args.check},
        "graphs": graphs,
        "malformed": len(stream.diagnostics),
    }
    print(json.dumps(doc, sort_keys=True))
    return EXIT_OK if not stream.diagnostics else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spexkit",
        description="Spectral extremal graph toolkit: compute, generate, verify, search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rho", help="certified spectral radius bracket")
    p.add_argument("input", help="graph6 string, file, or - for stdin")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--json", help="also append JSON lines to this file")
    p.set_defaults(fn=_cmd_rho)

    p = sub.add_parser("booksize", help="largest book size")
    p.add_argument("input")
    p.add_argument("--json")
    p.set_defaults(fn=_cmd_booksize)

    p = sub.add_parser("contains", help="pattern containment with witness")
    p.add_argument("input")
    p.add_argument("--pattern", required=True, help="book:Q | theta:L | cycle:T | path:K")
    p.add_argument("--json")
    p.set_defaults(fn=_cmd_contains)

    p = sub.add_parser("gen", help="emit a named graph as graph6")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--turan", nargs=2, type=int, metavar=("N", "K"))
    group.add_argument("--book", type=int, metavar="Q")
    group.add_argument("--theta", metavar="L1,L2,...")
    group.add_argument("--snk", type=int, metavar="N")
    group.add_argument("--cycle", type=int, metavar="T")
    group.add_argument("--path", type=int, metavar="K")
    group.add_argument("--complete", type=int, metavar="N")
    group.add_argument("--empty", type=int, metavar="N")
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("verify", help="run one verification target")
    p.add_argument("--target", required=True, choices=sorted(TARGETS))
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--k-max", type=int, dest="k_max")
    p.add_argument("--n-max", type=int, dest="n_max")
    p.add_argument("--x-max", type=int, dest="x_max")
    p.add_argument("--y-max", type=int, dest="y_max")
    p.add_argument("--divisor", type=float)
    p.add_argument("--pattern")
    p.add_argument("--stream", help="graph6 file or - for stdin")
    p.add_argument("--shards", type=int)
    p.add_argument("--shard", type=int)
    p.add_argument("--threads", type=int, default=os.cpu_count())
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--assert-rho", action="store_true", dest="assert_rho")
    p.add_argument("--no-prefilters", action="store_true", dest="no_prefilters")
    p.add_argument("--json")
    p.add_argument("--csv")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("search", help="hill-climb the spectral radius over pattern-free graphs")
    p.add_argument("--pattern", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--restarts", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--threads", type=int, default=os.cpu_count())
    p.add_argument("--json")
    p.set_defaults(fn=_cmd_search)

    p = sub.add_parser("convert", help="check a graph6 corpus line by line")
    p.add_argument("--check", required=True, metavar="FILE")
    p.set_defaults(fn=_cmd_convert)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except OrderCap as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (Graph6Error, InvalidArgument, InvalidVertex) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SpexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
