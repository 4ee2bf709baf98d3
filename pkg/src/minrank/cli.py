"""Command line front end: ``minrank <command> ...``.

Exit status 0 on success, 1 when a check answers no (``witness verify``, a
``witness lift`` or ``search`` that finds nothing), 2 on usage errors and 3 on
computational failures.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import catalog
from .enumerate import generate_connected
from .forcing import LoopConfig, forcing_number, forts, zero_forcing_number, zhat
from .graph import Graph, GraphError, members
from .graph6 import decode, encode, read_file, write_file
from .linalg import MatrixError, SymRatMatrix, inertia, rank
from .pipeline import (
    Pipeline,
    PipelineError,
    UnresolvedError,
    census,
    classify_exceptional,
    seed_witness_layers,
    write_census,
)
from .witness import (
    WitnessError,
    WitnessStore,
    default_store_path,
    gram_witness,
    lift_generic,
    search_rank3_witness,
    verify_witness,
)

USAGE = 2
FAILURE = 3


class UsageError(Exception):
    pass


def _graph(text: str) -> Graph:
    try:
        return decode(text.strip())
    except GraphError as exc:
        raise UsageError(f"bad graph6 string {text!r}: {exc}") from None


def _matrix(path: str) -> SymRatMatrix:
    try:
        return SymRatMatrix.from_text(Path(path).read_text())
    except OSError as exc:
        raise UsageError(str(exc)) from None
    except MatrixError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _set(mask: int) -> str:
    return "{" + ",".join(map(str, members(mask))) + "}"


def _store(args) -> WitnessStore:
    return WitnessStore(args.store if args.store else default_store_path())


def cmd_decode(args) -> int:
    g = _graph(args.graph6)
    print(g.n)
    print(" ".join(f"{u}-{v}" for u, v in g.edges()))
    return 0


def cmd_encode(args) -> int:
    edges = []
    for tok in args.edges:
        try:
            u, v = (int(x) for x in tok.split("-"))
        except ValueError:
            raise UsageError(f"edges are written u-v, got {tok!r}") from None
        edges.append((u, v))
    try:
        print(encode(Graph.from_edges(args.n, edges)))
    except GraphError as exc:
        raise UsageError(str(exc)) from None
    return 0


def cmd_zf(args) -> int:
    g = _graph(args.graph6)
    if args.psd and args.loops:
        raise UsageError("--psd and --loops are exclusive")
    if args.psd:
        k, s = forcing_number(g, "psd")
    elif args.loops:
        try:
            cfg = LoopConfig.parse(args.loops)
        except GraphError as exc:
            raise UsageError(str(exc)) from None
        if cfg.n != g.n:
            raise UsageError(f"loop configuration has {cfg.n} entries for {g.n} vertices")
        k, s = forcing_number(g, "looped", cfg)
    else:
        k, s = zero_forcing_number(g)
    print(k)
    print(_set(s))
    return 0


def cmd_zhat(args) -> int:
    print(zhat(_graph(args.graph6)))
    return 0


def cmd_forts(args) -> int:
    for f in forts(_graph(args.graph6)):
        print(_set(f))
    return 0


def _resolve(p: Pipeline, g: Graph):
    try:
        return p.compute(g)
    except UnresolvedError:
        # lifting needs witnesses one order down
        seed_witness_layers(min(g.n - 1, 7), p)
        return p.compute(g)


def cmd_mr(args) -> int:
    g = _graph(args.graph6)
    p = Pipeline(_store(args))
    m, ledger = _resolve(p, g)
    if not args.ledger:
        print(g.n - m)
        return 0
    print(f"mr = {g.n - m}, M = {m}, Z = {p.z(g)}, stage = {ledger.stage}")
    for tag, kind, value in ledger.provenance:
        print(f"  {tag}: {kind} {value}")
    return 0


def cmd_witness(args) -> int:
    g = _graph(args.graph6)
    if args.action == "verify":
        a = _matrix(args.matrix)
        if a.n != g.n:
            raise UsageError(f"matrix order {a.n} does not match {g.n} vertices")
        ok = verify_witness(g, a, args.nullity)
        print("valid" if ok else "invalid")
        return 0 if ok else 1
    if args.action == "lift":
        a = _matrix(args.matrix)
        if not 0 <= args.vertex < g.n:
            raise UsageError(f"vertex {args.vertex} out of range")
        b = lift_generic(a, g, args.vertex)
        if b is None:
            print("absent")
            return 1
        sys.stdout.write(b.to_text())
        return 0
    rep = search_rank3_witness(g, args.bound)
    if rep is None:
        print("absent")
        return 1
    a = gram_witness(rep, g)
    sys.stdout.write(a.to_text())
    print(f"# rank {rank(a)}, inertia {inertia(a)}")
    return 0


def cmd_census(args) -> int:
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    try:
        graphs = list(read_file(args.file))
    except OSError as exc:
        raise UsageError(str(exc)) from None
    p = Pipeline(_store(args))
    records, report = census(
        graphs, p, with_zhat=args.with_zhat, with_zplus=args.with_zplus, jobs=args.jobs
    )
    out, summary = write_census(records, report, args.out)
    print(report.summary())
    print(f"records in {out}, summary in {summary}")
    if report.exceptional:
        for g6, name in sorted(classify_exceptional(records).items(), key=lambda kv: kv[1]):
            print(f"  {name} {g6}")
    if report.unresolved or report.errors:
        print(f"{len(report.unresolved)} unresolved, {len(report.errors)} errors", file=sys.stderr)
        return FAILURE
    return 0


def cmd_catalog(args) -> int:
    for e in catalog.load():
        print(f"{e.name} {encode(e.graph)}")
    return 0


def cmd_generate(args) -> int:
    if not 1 <= args.n <= 9:
        raise UsageError("order must be between 1 and 9")
    graphs = generate_connected(args.n)
    if args.out:
        write_file(args.out, graphs)
        print(f"{len(graphs)} graphs written to {args.out}")
    else:
        for g in graphs:
            print(encode(g))
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="minrank", description="Zero forcing and minimum rank of small graphs.")
    ap.add_argument("-v", "--verbose", action="store_true")
    ap.add_argument("--store", help="witness store path (default: $MINRANK_WITNESS_STORE)")
    # also accepted after the subcommand; SUPPRESS keeps an absent flag from clobbering the global one
    store = argparse.ArgumentParser(add_help=False)
    store.add_argument("--store", default=argparse.SUPPRESS, help="witness store path")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("decode", help="graph6 to order and edge list")
    s.add_argument("graph6")
    s.set_defaults(fn=cmd_decode)

    s = sub.add_parser("encode", help="order and edges u-v to graph6")
    s.add_argument("n", type=int)
    s.add_argument("edges", nargs="*")
    s.set_defaults(fn=cmd_encode)

    s = sub.add_parser("zf", help="zero forcing number and a minimum forcing set")
    s.add_argument("graph6")
    s.add_argument("--loops", metavar="CONFIG", help="one of 1/0/* per vertex")
    s.add_argument("--psd", action="store_true")
    s.set_defaults(fn=cmd_zf)

    s = sub.add_parser("zhat", help="looped zero forcing number")
    s.add_argument("graph6")
    s.set_defaults(fn=cmd_zhat)

    s = sub.add_parser("forts", help="all forts, one per line")
    s.add_argument("graph6")
    s.set_defaults(fn=cmd_forts)

    s = sub.add_parser("mr", parents=[store], help="exact minimum rank")
    s.add_argument("graph6")
    s.add_argument("--ledger", action="store_true")
    s.set_defaults(fn=cmd_mr)

    s = sub.add_parser("witness", help="verify, lift or search witnesses")
    wsub = s.add_subparsers(dest="action", required=True, parser_class=_Parser)
    w = wsub.add_parser("verify")
    w.add_argument("graph6")
    w.add_argument("matrix", help="matrix file: order, then rows")
    w.add_argument("nullity", type=int)
    w.set_defaults(fn=cmd_witness)
    w = wsub.add_parser("lift")
    w.add_argument("graph6")
    w.add_argument("matrix", help="witness for the graph with the vertex removed")
    w.add_argument("vertex", type=int)
    w.set_defaults(fn=cmd_witness)
    w = wsub.add_parser("search")
    w.add_argument("graph6")
    w.add_argument("--bound", type=int, default=4)
    w.set_defaults(fn=cmd_witness)

    s = sub.add_parser("census", parents=[store], help="classify every graph in a graph6 file")
    s.add_argument("file")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out", default="census.jsonl")
    s.add_argument("--with-zhat", action="store_true")
    s.add_argument("--with-zplus", action="store_true")
    s.set_defaults(fn=cmd_census)

    s = sub.add_parser("catalog", help="named graphs")
    csub = s.add_subparsers(dest="action", required=True, parser_class=_Parser)
    c = csub.add_parser("list")
    c.set_defaults(fn=cmd_catalog)

    s = sub.add_parser("generate", help="all connected graphs of one order")
    s.add_argument("n", type=int)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_generate)
    return ap


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(
            level=logging.INFO if args.verbose else logging.WARNING,
            format="%(levelname)s %(message)s",
        )
        return args.fn(args)
    except UsageError as exc:
        print(f"minrank: {exc}", file=sys.stderr)
        return USAGE
    except (PipelineError, WitnessError, GraphError, MatrixError) as exc:
        print(f"minrank: {exc}", file=sys.stderr)
        return FAILURE


if __name__ == "__main__":
    sys.exit(main())
