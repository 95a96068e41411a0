"""``hatgraph`` command line.

Exit status: 0 on success, 1 on usage errors, 2 on unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import constructions as cons
from .digraph import GraphError, family
from .game import StrategyShapeError, evaluate
from .graph_io import FormatError, format_graph, read_graph, to_dot
from .solver import DEFAULT_MAX_NODES, DEFAULT_TIME_LIMIT, Budget, bounds, solve
from .strategy_io import format_code, format_strategy, read_strategy

EXIT_USAGE = 1
EXIT_INPUT = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


CONSTRUCTS = {
    "star": (1, lambda m: format_strategy(cons.star_strategy(m))),
    "code": (1, lambda m: format_strategy(cons.code_strategy(cons.lexicode(m)))),
    "lexicode": (1, lambda m: format_code(cons.lexicode(m).words, m)),
    "d_family_strategy": (1, lambda n: format_strategy(cons.d_family_strategy(n))),
    "chain_strategy": (2, lambda m, n: format_strategy(cons.chain_strategy(m, n))),
}


def _emit(text: str, output) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_eval(args) -> None:
    d = read_graph(args.graph)
    s = read_strategy(args.strategy, d)
    rep = evaluate(d, s, workers=args.threads)
    if args.quiet:
        print(rep.probability.exact_str())
        return
    print(f"wins = {rep.wins}")
    print(f"wrong_losses = {rep.wrong_losses}")
    print(f"silent_losses = {rep.silent_losses}")
    print(f"P = {rep.probability}")


def cmd_solve(args) -> None:
    d = read_graph(args.graph)
    res = solve(d, Budget(args.max_nodes, args.time_limit), symmetry=not args.no_symmetry,
                workers=args.threads)
    if args.output:
        Path(args.output).write_text(format_strategy(res.strategy), encoding="utf-8")
    if args.quiet:
        print(res.value.exact_str())
        return
    print(f"h = {res.value}, status={res.status.value}")
    if res.bounds is not None:
        b = res.bounds
        print(f"lower = {b.lower.exact_str()}, upper = {b.upper.exact_str()}, omega = {b.omega}")
    print(f"removed_blind = {' '.join(map(str, res.removed)) or '-'}")
    print(f"nodes = {res.stats.nodes}")
    print(f"seconds = {res.stats.seconds:.3f}")


def cmd_bounds(args) -> None:
    d = read_graph(args.graph)
    rep = bounds(d, workers=args.threads)
    tag = "matched" if rep.matched else "unmatched"
    if args.quiet:
        print(f"{rep.lower.exact_str()} {rep.upper.exact_str()}")
        return
    print(f"lower = {rep.lower.exact_str()}, upper = {rep.upper.exact_str()}, {tag}")
    print(f"decimal: lower = {rep.lower.decimal_str()}, upper = {rep.upper.decimal_str()}")
    print(f"omega = {rep.omega}")


def cmd_construct(args) -> None:
    arity, fn = CONSTRUCTS[args.name]
    if len(args.params) != arity:
        raise UsageError(f"{args.name} takes {arity} integer parameter(s)")
    try:
        text = fn(*args.params)
    except (cons.ConstructionError, GraphError) as exc:
        raise UsageError(str(exc)) from None
    _emit(text, args.output)


def cmd_family(args) -> None:
    params = list(args.params)
    if args.kind == "random_tournament":
        if args.seed is None:
            raise UsageError("random_tournament needs an explicit --seed")
        params.append(args.seed)
    elif args.seed is not None:
        raise UsageError("--seed only applies to random_tournament")
    try:
        d = family(args.kind, *params)
    except GraphError as exc:
        raise UsageError(str(exc)) from None
    _emit(format_graph(d), args.output)


def cmd_dot(args) -> None:
    _emit(to_dot(read_graph(args.graph)), args.output)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hatgraph", description="Exact analysis of the hat guessing game on digraphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, threads=True):
        sp.add_argument("-q", "--quiet", action="store_true", help="print the value only")
        if threads:
            sp.add_argument("--threads", type=int, default=1, help="worker cap for evaluation")

    sp = sub.add_parser("eval", help="evaluate a strategy exactly")
    sp.add_argument("graph")
    sp.add_argument("strategy")
    common(sp)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("solve", help="compute the hat number")
    sp.add_argument("graph")
    sp.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    sp.add_argument("--time-limit", type=float, default=DEFAULT_TIME_LIMIT, help="seconds")
    sp.add_argument("--no-symmetry", action="store_true", help="disable symmetry breaking")
    sp.add_argument("-o", "--output", help="write the optimal strategy here")
    common(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("bounds", help="constructive lower bound and clique upper bound")
    sp.add_argument("graph")
    common(sp)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("construct", help="emit a constructed strategy or code")
    sp.add_argument("name", choices=sorted(CONSTRUCTS))
    sp.add_argument("params", type=int, nargs="*")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("family", help="emit a digraph from a named family")
    sp.add_argument("kind", choices=["complete", "d_family", "chain", "directed_cycle", "random_tournament"])
    sp.add_argument("params", type=int, nargs="*")
    sp.add_argument("--seed", type=int)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("dot", help="export Graphviz DOT")
    sp.add_argument("graph")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_dot)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        args.func(args)
    except UsageError as exc:
        print(f"hatgraph: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, FormatError, StrategyShapeError) as exc:
        print(f"hatgraph: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
