"""The ``ttr`` command line: info, tau, enumerate, freeze, reduce, check."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from . import formats
from .algebra import BoundQuiverAlgebra
from .complexes import minimize
from .errors import IncompleteGraph, IncompleteInterval, NotPresilting, TTRError
from .exchange import DEFAULT_CAP, MutationGraph, enumerate_sttilt, freeze_enumerate
from .invariants import run_checks
from .modules import tau
from .reduction import reduce, verify_against
from .representation import injective, projective
from .silting import basic_reduct, is_presilting, summands

log = logging.getLogger("ttr")


def _flag(value: bool) -> str:
    return "true" if value else "false"


def _key(key) -> str:
    return ";".join(",".join(map(str, g)) for g in key)


def _graph(alg: BoundQuiverAlgebra, args) -> MutationGraph:
    """Enumerate, going through the cache directory when one is given."""
    if args.cache:
        cached = formats.load_graph(args.cache, alg)
        if cached is not None and (cached.complete and len(cached.nodes) <= args.cap or len(cached.nodes) == args.cap):
            log.info("loaded %d nodes from cache", len(cached.nodes))
            return cached
    graph = enumerate_sttilt(alg, args.cap, args.seed)
    if args.cache:
        formats.save_graph(args.cache, graph)
    return graph


def _module_arg(alg: BoundQuiverAlgebra, args):
    if not args.module:
        raise TTRError("this command needs --module")
    graph = _graph(alg, args) if "g:" in args.module else None
    return formats.module_complex(alg, args.module, graph)


def _exports(graph: MutationGraph, args, extra: dict | None = None) -> None:
    if args.dot:
        with open(args.dot, "w") as out:
            formats.write_dot(graph, out)
    if args.records:
        with open(args.records, "w") as out:
            formats.write_records(graph, out, extra)


def cmd_info(alg: BoundQuiverAlgebra, args) -> int:
    print(f"dim={alg.dim}")
    print("cartan=" + " ".join(",".join(map(str, row)) for row in alg.cartan_matrix().tolist()))
    for i in range(1, alg.n + 1):
        p, q = projective(alg, i), injective(alg, i)
        print(f"P{i}=" + ",".join(map(str, p.dims)) + f" I{i}=" + ",".join(map(str, q.dims)))
    return 0


def cmd_tau(alg: BoundQuiverAlgebra, args) -> int:
    if not args.module:
        raise TTRError("tau needs --module")
    m = formats.module_of(alg, args.module)
    sys.stdout.write(formats.format_rep(tau(m)))
    return 0


def cmd_enumerate(alg: BoundQuiverAlgebra, args) -> int:
    graph = _graph(alg, args)
    _exports(graph, args)
    if graph.complete:
        print(f"nodes={len(graph.nodes)} arrows={len(graph.hasse_arrows)} complete=true")
        return 0
    print(f"nodes={len(graph.nodes)} complete=false")
    print(f"arrows={len(graph.hasse_arrows)}")
    return IncompleteGraph.exit_code


def cmd_freeze(alg: BoundQuiverAlgebra, args) -> int:
    u = _module_arg(alg, args)
    if not is_presilting(u):
        raise NotPresilting("U is not presilting")
    parts = basic_reduct(summands(minimize(u), args.seed))
    graph = freeze_enumerate(alg, parts, args.cap, args.seed)
    _exports(graph, args)
    print(f"interval={len(graph.nodes)} complete={_flag(graph.complete)}")
    if graph.complete:
        print("max=" + ";".join(_key(k) for k in graph.maximum))
        print("min=" + ";".join(_key(k) for k in graph.minimum))
        return 0
    return IncompleteGraph.exit_code


def cmd_reduce(alg: BoundQuiverAlgebra, args) -> int:
    u = _module_arg(alg, args)
    try:
        report = reduce(alg, u, args.cap, args.seed)
    except IncompleteInterval as exc:
        report = exc.report
        _exports(report.interval, args, {"reduced_dim": report.reduced_dims})
        print(f"interval={report.size} complete=false")
        return exc.exit_code
    _exports(report.interval, args, {"reduced_dim": report.reduced_dims})
    lines = formats.report_lines(report)
    status = 0
    if args.against:
        verdict = verify_against(report, formats.load_algebra(args.against, args.field), args.cap, args.seed)
        lines[0] += f" poset_iso={_flag(verdict.poset_iso)}"
        lines.append(f"count_match={_flag(verdict.count_match)} dim_match={_flag(verdict.dim_match)}")
        status = 0 if verdict.ok else 1
    for key in sorted(report.reduced_dims):
        lines.append(f"node {_key(key)} reduced_dim={report.reduced_dims[key]}")
    print("\n".join(lines))
    return status


def cmd_check(alg: BoundQuiverAlgebra, args) -> int:
    graph = _graph(alg, args)
    if not graph.complete:
        print(f"nodes={len(graph.nodes)} complete=false")
        return IncompleteGraph.exit_code
    print(f"nodes={len(graph.nodes)} arrows={len(graph.hasse_arrows)} complete=true")
    failed = False
    for name, violations in run_checks(graph).items():
        print(f"{name}: " + ("ok" if not violations else f"{len(violations)} violations"))
        for v in violations[:5]:
            print(f"  {v}")
        failed = failed or bool(violations)
    return 3 if failed else 0


COMMANDS = {
    "info": cmd_info,
    "tau": cmd_tau,
    "enumerate": cmd_enumerate,
    "freeze": cmd_freeze,
    "reduce": cmd_reduce,
    "check": cmd_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ttr", description="support tau-tilting enumeration and reduction")
    parser.add_argument("verb", choices=sorted(COMMANDS))
    parser.add_argument("algebra", help=".alg file, or the name of a bundled algebra")
    parser.add_argument("--module", help=".rep file, shorthand (P3, S2, I1, P2[1]), g:1,-1, or a '+'-joined list")
    parser.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum number of nodes")
    parser.add_argument("--field", type=int, default=None, help="prime p (overrides the .alg file; default 101)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--dot", help="write the Hasse quiver in DOT format")
    parser.add_argument("--records", help="write one JSON record per node")
    parser.add_argument("--against", help="candidate algebra C to verify a reduction against")
    parser.add_argument("--cache", help="directory for cached enumerations")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        alg = formats.load_algebra(args.algebra, args.field)
        print(f"p={alg.field.p}")
        return COMMANDS[args.verb](alg, args)
    except TTRError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
