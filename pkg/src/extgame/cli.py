"""Command-line front end: ``extgame <command> <file> [flags]``.

Exit status is 0 on success, 1 on parse or validation failure and 2 when
the requested method does not apply to the input.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence, TextIO

from . import gdt
from .model import GameTree, NormalFormGame, is_perfect_information, validate_tree
from .normal import to_normal_form
from .render import RenderOptions, format_payoffs, render_matrix, render_tree
from .solvers import (
    ImperfectInformationError,
    backward_induction,
    dominance,
    mixed_nash_2p,
    pure_nash,
)
from .strategies import enumerate_pure

EXIT_OK, EXIT_INVALID, EXIT_MISMATCH = 0, 1, 2


class _Mismatch(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="extgame", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="validate a GDT file and print the report")
    p.add_argument("file")

    p = sub.add_parser("strategies", help="list a player's pure strategies")
    p.add_argument("file")
    p.add_argument("--player", type=int, choices=(1, 2), required=True)

    p = sub.add_parser("normalize", help="print the normal form as GDT")
    p.add_argument("file")

    p = sub.add_parser("solve", help="compute equilibria")
    p.add_argument("file")
    p.add_argument("--method", choices=("backward", "pure", "mixed", "all"), default="all")

    p = sub.add_parser("dominance", help="list dominated strategies")
    p.add_argument("file")
    p.add_argument("--kind", choices=("weak", "strict"), default="weak")

    p = sub.add_parser("render", help="draw a tree (dot or ascii) or a matrix")
    p.add_argument("file")
    p.add_argument("--format", choices=("dot", "ascii"), default="ascii")
    p.add_argument("--infosets", action="store_true", help="draw information sets")
    return parser


def _load(path: str, validate: bool = True) -> GameTree | NormalFormGame:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if gdt.detect_kind(text) == "normal":
        return gdt.parse_normal(text)
    return gdt.parse_extensive(text, validate=validate)


def _as_normal(game: GameTree | NormalFormGame) -> NormalFormGame:
    return to_normal_form(game) if isinstance(game, GameTree) else game


def _fmt_support(labels: Sequence[str], support: Sequence[int]) -> str:
    return "{" + ",".join(labels[i] for i in support) + "}"


def _cmd_parse(args, out: TextIO, err: TextIO) -> int:
    game = _load(args.file, validate=False)
    if isinstance(game, NormalFormGame):
        n, m = game.shape
        out.write(f"ok: normal form {game.name!r} {n}x{m}\n")
        return EXIT_OK
    report = validate_tree(game)
    for d in report.diagnostics:
        err.write(f"{args.file}: {d}\n")
    if report.ok:
        kind = "perfect" if is_perfect_information(game) else "imperfect"
        out.write(
            f"ok: extensive form {game.name!r}, {len(game.nodes)} nodes, "
            f"{len(game.infosets)} infosets, {kind} information\n"
        )
        return EXIT_OK
    return EXIT_INVALID


def _cmd_strategies(args, out: TextIO, err: TextIO) -> int:
    game = _load(args.file)
    if isinstance(game, NormalFormGame):
        for label in game.strategies[args.player - 1]:
            out.write(f"{label}\n")
        return EXIT_OK
    for s in enumerate_pure(game, args.player):
        choices = " ".join(f"{iid}={a}" for iid, a in s.choices)
        out.write(f"{s.label}\t{choices}".rstrip() + "\n")
    return EXIT_OK


def _cmd_normalize(args, out: TextIO, err: TextIO) -> int:
    out.write(gdt.serialize_normal(_as_normal(_load(args.file))))
    return EXIT_OK


def _cmd_solve(args, out: TextIO, err: TextIO) -> int:
    game = _load(args.file)
    methods = ["backward", "pure", "mixed"] if args.method == "all" else [args.method]
    if "backward" in methods:
        if isinstance(game, GameTree) and is_perfect_information(game):
            for prof, payoffs in backward_induction(game):
                labels = ", ".join(s.label for s in prof)
                out.write(f"backward ({labels}) payoffs={format_payoffs(payoffs)}\n")
        elif args.method == "backward":
            if isinstance(game, NormalFormGame):
                raise _Mismatch("backward induction requires an extensive-form input")
            raise ImperfectInformationError()
    normal = _as_normal(game)
    rows, cols = normal.strategies
    if "pure" in methods:
        for eq in pure_nash(normal):
            out.write(f"pure ({eq.labels[0]}, {eq.labels[1]}) payoffs={format_payoffs(eq.payoffs)}\n")
    if "mixed" in methods:
        for eq in mixed_nash_2p(normal):
            support = f"support=({_fmt_support(rows, eq.support[0])},{_fmt_support(cols, eq.support[1])})"
            if eq.degenerate:
                out.write(f"mixed {support} degenerate\n")
                continue
            weights = "/".join(
                "(" + ",".join(str(w) for w in s.weights) + ")" for s in eq.profile.strategies
            )
            out.write(f"mixed {support} weights={weights} payoffs={format_payoffs(eq.payoffs)}\n")
    return EXIT_OK


def _cmd_dominance(args, out: TextIO, err: TextIO) -> int:
    normal = _as_normal(_load(args.file))
    adverb = "weakly" if args.kind == "weak" else "strictly"
    for rec in dominance(normal, args.kind):
        labels = normal.strategies[rec.player - 1]
        name = normal.players[rec.player - 1]
        out.write(
            f"player {rec.player} {name}: {labels[rec.dominated]} {adverb} dominated by "
            f"{labels[rec.dominator]}\n"
        )
    return EXIT_OK


def _cmd_render(args, out: TextIO, err: TextIO) -> int:
    game = _load(args.file)
    if isinstance(game, NormalFormGame):
        if args.format == "dot":
            raise _Mismatch("dot rendering requires an extensive-form input")
        out.write(render_matrix(game))
        return EXIT_OK
    out.write(render_tree(game, RenderOptions(format=args.format, show_infosets=args.infosets)))
    return EXIT_OK


_COMMANDS = {
    "parse": _cmd_parse,
    "strategies": _cmd_strategies,
    "normalize": _cmd_normalize,
    "solve": _cmd_solve,
    "dominance": _cmd_dominance,
    "render": _cmd_render,
}


def run(argv: Sequence[str], stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    args = build_parser().parse_args(list(argv))
    try:
        return _COMMANDS[args.command](args, stdout, stderr)
    except gdt.ParseError as exc:
        stderr.write(f"{args.file}:{exc.span}: error: expected {exc.expected}, found {exc.found}\n")
        return EXIT_INVALID
    except OSError as exc:
        stderr.write(f"{args.file}: error: {exc.strerror or exc}\n")
        return EXIT_INVALID
    except (ImperfectInformationError, _Mismatch) as exc:
        stderr.write(f"{args.file}: error: {exc}\n")
        return EXIT_MISMATCH


def main() -> None:
    sys.exit(run(sys.argv[1:]))
