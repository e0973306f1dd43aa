"""Command-line front end; every subcommand writes TSV to stdout.

Exit codes: 0 success, 1 invalid input, 2 resource bound exceeded.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence, TextIO

from . import annihilation, classical, heaps, loopy, nimania, octal, partizan
from .digraph import is_acyclic, parse_graph_document
from .errors import BoundExceeded, GameError, InvalidInput


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise InvalidInput(message)


def _emit(rows: Sequence[Sequence[object]], out: TextIO, pretty: bool) -> None:
    cells = [[str(c) for c in row] for row in rows]
    if pretty and cells:
        width = max(len(r) for r in cells)
        widths = [max((len(r[i]) for r in cells if i < len(r)), default=0) for i in range(width)]
        for r in cells:
            out.write("  ".join(c.rjust(widths[i]) for i, c in enumerate(r)).rstrip() + "\n")
    else:
        for r in cells:
            out.write("\t".join(r) + "\n")


def _read_graph(args) -> tuple:
    if args.json is not None:
        text = args.json
    elif args.graph in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(args.graph, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InvalidInput(f"cannot read {args.graph}: {exc}") from exc
    return parse_graph_document(text)


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def _vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad removal vector {text!r}") from None


def _namer(extra: dict):
    names = extra.get("names")
    return (lambda u: names[u]) if names else (lambda u: u)


def cmd_graph_solve(args, out: TextIO) -> None:
    g, extra = _read_graph(args)
    use_gamma = args.method == "gamma" or (args.method == "auto" and not is_acyclic(g))
    rows: list[list[object]] = []
    pos = extra.get("tokens")
    name = _namer(extra)
    if use_gamma:
        lab = loopy.gamma(g)
        if pos is None or args.table:
            rows.append(["vertex", "gamma", "label", "counter"])
            for u in range(g.n):
                rows.append([name(u), lab[u], loopy.classify_value(lab[u]), lab.counter.get(u, "-")])
        if pos is not None:
            rows.append([loopy.classify_position(g, pos, lab)])
    else:
        values = classical.grundy(g)
        if pos is None or args.table:
            rows.append(["vertex", "g", "label"])
            for u in range(g.n):
                rows.append([name(u), values[u], classical.PN.P if values[u] == 0 else classical.PN.N])
        if pos is not None:
            rows.append([classical.classify_sum(g, pos, values)])
    _emit(rows, out, args.pretty)


def cmd_sum_move(args, out: TextIO) -> None:
    g, extra = _read_graph(args)
    pos = extra.get("tokens")
    if pos is None:
        raise InvalidInput("sum-move needs a 'tokens' list in the graph document")
    lab = loopy.gamma(g)
    label = loopy.classify_position(g, pos, lab)
    mv = loopy.next_move(g, pos, lab)
    if mv is None:
        _emit([[label, "-"]], out, args.pretty)
        return
    i, v = mv
    after = loopy.classify_position(g, pos.moved(i, v), lab)
    name = _namer(extra)
    _emit([[label, i, name(pos.tokens[i]), name(v), after]], out, args.pretty)


def cmd_annihilate(args, out: TextIO) -> None:
    g, extra = _read_graph(args)
    if "occupancy" in extra:
        mask = annihilation.occupancy_mask(g, bits=extra["occupancy"])
    elif "tokens" in extra:
        mask = annihilation.occupancy_mask(g, tokens=extra["tokens"].tokens)
    else:
        raise InvalidInput("annihilate needs 'occupancy' or 'tokens' in the graph document")
    label = annihilation.ann_classify(g, mask, args.max_states)
    mv = annihilation.ann_best_move(g, mask, args.max_states)
    name = _namer(extra)
    _emit([[label, "-"] if mv is None else [label, name(mv[0]), name(mv[1])]], out, args.pretty)


def _grid(moves: heaps.MoveSet, rows: int, cols: int, max_positions: int) -> list[list[int]]:
    table = heaps.take_table(moves, (rows - 1, cols - 1), max_positions)
    return table.tolist()


def cmd_wythoff(args, out: TextIO) -> None:
    if args.pairs is not None:
        _emit([[i, *heaps.wythoff_p_pair(i)] for i in range(args.pairs)], out, args.pretty)
        return
    _emit(_grid(heaps.wythoff_moves(), args.rows, args.cols, args.max_positions), out, args.pretty)


def cmd_nimhoff(args, out: TextIO) -> None:
    rows, cols = args.rows, args.cols
    if args.variant == "cyclic":
        if args.brute:
            grid = _grid(heaps.cyclic_nimhoff_moves(2, args.h), rows, cols, args.max_positions)
        else:
            grid = [[heaps.cyclic_nimhoff_g((a, b), args.h) for b in range(cols)] for a in range(rows)]
        _emit(grid, out, args.pretty)
    elif args.variant == "pow2k":
        if args.brute:
            grid = _grid(heaps.pow2k_nimhoff_moves(2, args.k), rows, cols, args.max_positions)
        else:
            grid = [[heaps.pow2k_nimhoff_g((a, b), args.k) for b in range(cols)] for a in range(rows)]
        _emit(grid, out, args.pretty)
    else:
        families = tuple(heaps.Family(f) for f in args.family or ())
        moves = heaps.MoveSet(2, tuple(args.vector or ()), families)
        if args.verdict:
            v = heaps.nimdi_verdict(moves, args.bound, args.max_positions)
            witness = "-" if v.witness is None else ",".join(map(str, v.witness))
            wg = "-" if v.witness_g is None else v.witness_g
            _emit(
                [["criterion", "brute_force_agrees", "witness", "witness_g"],
                 [str(v.criterion).lower(), str(v.brute_force_agrees).lower(), witness, wg]],
                out,
                args.pretty,
            )
        else:
            _emit(_grid(moves, rows, cols, args.max_positions), out, args.pretty)


def cmd_wythoff3(args, out: TextIO) -> None:
    triples = sorted(heaps.wythoff3_p(args.limit, args.max_limit))
    if args.smallest is not None:
        triples = [t for t in triples if t[0] == args.smallest]
    _emit(triples, out, args.pretty)


def cmd_octal(args, out: TextIO) -> None:
    seq = octal.octal_g_sequence(args.code, args.max, args.max_heap)
    per = octal.find_period(seq)
    rows: list[list[object]] = [seq]
    rows.append(["period", "none"] if per is None else ["preperiod", per[0], "period", per[1]])
    _emit(rows, out, args.pretty)


def cmd_nimania(args, out: TextIO) -> None:
    f = nimania.replicator(args.f)
    if args.action == "solve":
        sol = nimania.solve(args.n, f, args.move_cap, args.max_states)
        _emit(
            [["winner", sol.winner], ["length", sol.length], ["line", ",".join(map(str, sol.optimal_line))]],
            out,
            args.pretty,
        )
    else:
        tr = nimania.simulate(args.n, f, args.policy, args.policy_ii, args.seed, args.move_cap)
        rows: list[list[object]] = [["stage", "player", "counts", "choice"]]
        rows += [[k, p, ",".join(map(str, c)), m] for k, p, c, m in tr.moves]
        rows.append(["winner", "capped" if tr.capped else tr.winner])
        _emit(rows, out, args.pretty)


def cmd_partizan(args, out: TextIO) -> None:
    if args.action == "domineering":
        g = partizan.domineering_value(partizan.parse_board(args.input), args.max_cells)
    else:
        g = partizan.parse_game(args.input)
    if args.action == "outcome":
        _emit([[partizan.outcome(g)]], out, args.pretty)
    elif args.action == "eval":
        _emit([[partizan.format_game(g)]], out, args.pretty)
    else:
        _emit([[partizan.format_game(g), partizan.outcome(g)]], out, args.pretty)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cgsolve", description="Combinatorial game solver; TSV on stdout.")
    p.add_argument("--pretty", action="store_true", help="align columns instead of tab-separating")
    # --pretty is accepted after the subcommand as well; SUPPRESS keeps the
    # subparser from resetting a value given before it
    common = _Parser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help="align columns")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_args(sp):
        sp.add_argument("graph", nargs="?", help="graph JSON file ('-' or omitted: stdin)")
        sp.add_argument("--json", help="inline graph JSON instead of a file")

    sp = sub.add_parser("graph-solve", parents=[common], help="g or gamma labels; P/N/D of the token position if given")
    graph_args(sp)
    sp.add_argument("--method", choices=["auto", "grundy", "gamma"], default="auto")
    sp.add_argument("--table", action="store_true", help="print the vertex table even when tokens are given")
    sp.set_defaults(func=cmd_graph_solve)

    sp = sub.add_parser("sum-move", parents=[common], help="optimal next move for a token sum (label, index, from, to, label after)")
    graph_args(sp)
    sp.set_defaults(func=cmd_sum_move)

    sp = sub.add_parser("annihilate", parents=[common], help="classify an annihilation position and give an optimal move")
    graph_args(sp)
    sp.add_argument("--max-states", type=_positive_int, default=annihilation.DEFAULT_MAX_STATES)
    sp.set_defaults(func=cmd_annihilate)

    sp = sub.add_parser("wythoff", parents=[common], help="Wythoff Grundy grid (or P-pairs with --pairs)")
    sp.add_argument("--rows", type=_positive_int, default=7)
    sp.add_argument("--cols", type=_positive_int, default=12)
    sp.add_argument("--pairs", type=_nonneg_int, help="list the first N P-position pairs instead")
    sp.add_argument("--max-positions", type=_positive_int, default=heaps.DEFAULT_MAX_POSITIONS)
    sp.set_defaults(func=cmd_wythoff)

    sp = sub.add_parser("nimhoff", parents=[common], help="Nimhoff/Take grids and Nimdi verdicts")
    sp.add_argument("variant", choices=["cyclic", "pow2k", "take"])
    sp.add_argument("--rows", type=_positive_int, default=4)
    sp.add_argument("--cols", type=_positive_int, default=12)
    sp.add_argument("--h", type=_positive_int, default=3, help="cyclic: sum bound h")
    sp.add_argument("--k", type=_positive_int, default=1, help="pow2k: remove 2^k from two piles")
    sp.add_argument("--brute", action="store_true", help="cyclic/pow2k: brute force instead of closed form")
    sp.add_argument("--vector", type=_vector, action="append", help="take: removal vector like 1,3 (repeatable)")
    sp.add_argument("--family", choices=["diag", "shift"], action="append", help="take: vector family")
    sp.add_argument("--verdict", action="store_true", help="take: odd-set criterion vs brute force")
    sp.add_argument("--bound", type=_nonneg_int, default=12, help="take --verdict: pile bound")
    sp.add_argument("--max-positions", type=_positive_int, default=heaps.DEFAULT_MAX_POSITIONS)
    sp.set_defaults(func=cmd_nimhoff)

    sp = sub.add_parser("wythoff3", parents=[common], help="P-positions a<=b<=c<=limit of three-pile Wythoff")
    sp.add_argument("--limit", type=_nonneg_int, default=40)
    sp.add_argument("--smallest", type=_nonneg_int, help="keep only triples with this smallest pile")
    sp.add_argument("--max-limit", type=_positive_int, default=120)
    sp.set_defaults(func=cmd_wythoff3)

    sp = sub.add_parser("octal", parents=[common], help="octal game g-sequence and period report")
    sp.add_argument("--code", required=True, help="octal code, e.g. 0.07 or 07")
    sp.add_argument("--max", type=_nonneg_int, required=True, help="largest heap size")
    sp.add_argument("--max-heap", type=_positive_int, default=octal.DEFAULT_MAX_HEAP)
    sp.set_defaults(func=cmd_octal)

    sp = sub.add_parser("nimania", parents=[common], help="solve or simulate Nimania")
    sp.add_argument("action", choices=["solve", "simulate"])
    sp.add_argument("--n", type=_positive_int, required=True)
    sp.add_argument("--f", default="nimania", help="replicator: nimania, zero, constant-C")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--policy", default="random", choices=["random", "optimal", "smallest", "largest"],
                    help="player I policy")
    sp.add_argument("--policy-ii", default="random", choices=["random", "optimal", "smallest", "largest"],
                    help="player II policy")
    sp.add_argument("--move-cap", type=_positive_int, default=nimania.DEFAULT_MOVE_CAP)
    sp.add_argument("--max-states", type=_positive_int, default=nimania.DEFAULT_MAX_STATES)
    sp.set_defaults(func=cmd_nimania)

    sp = sub.add_parser("partizan", parents=[common], help="partizan game value, outcome, or Domineering board")
    sp.add_argument("action", choices=["eval", "outcome", "domineering"])
    sp.add_argument("input", help="game like '{-1|99}', or board like '##/##' or '0,0;1,0'")
    sp.add_argument("--max-cells", type=_positive_int, default=partizan.DEFAULT_MAX_CELLS)
    sp.set_defaults(func=cmd_partizan)
    return p


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        args.func(args, out)
    except BoundExceeded as exc:
        err.write(f"cgsolve: resource bound exceeded: {exc}\n")
        return 2
    except (GameError, ValueError) as exc:
        err.write(f"cgsolve: invalid input: {exc}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
