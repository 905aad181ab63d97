"""Text and Graphviz depictions of game trees and payoff matrices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .model import Decision, GameTree, NormalFormGame, require_valid

FORMATS = ("dot", "ascii")


@dataclass(frozen=True)
class RenderOptions:
    format: str = "ascii"
    show_infosets: bool = True
    payoff_unit_suffix: str = ""

    def __post_init__(self) -> None:
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.format!r}")


def format_payoffs(payoffs: Sequence[Fraction], suffix: str = "") -> str:
    return "(" + ", ".join(f"{p}{suffix}" for p in payoffs) + ")"


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_tree(tree: GameTree, opts: RenderOptions = RenderOptions()) -> str:
    require_valid(tree)
    if opts.format == "dot":
        return _tree_dot(tree, opts)
    return _tree_ascii(tree, opts)


def _tree_dot(tree: GameTree, opts: RenderOptions) -> str:
    lines = [f"digraph {_dot_quote(tree.name)} {{"]
    for node in tree.nodes:
        if isinstance(node, Decision):
            label = tree.players[node.owner - 1]
            lines.append(f"  {_dot_quote(node.id)} [label={_dot_quote(label)}];")
        else:
            label = format_payoffs(node.payoffs, opts.payoff_unit_suffix)
            lines.append(f"  {_dot_quote(node.id)} [label={_dot_quote(label)}, shape=box];")
    for node in tree.decisions():
        for action, child in node.edges:
            lines.append(
                f"  {_dot_quote(node.id)} -> {_dot_quote(child)} [label={_dot_quote(action)}];"
            )
    if opts.show_infosets:
        for info in tree.infosets:
            for a, b in zip(info.members, info.members[1:]):
                lines.append(
                    f"  {_dot_quote(a)} -> {_dot_quote(b)} "
                    f"[style=dashed, dir=none, constraint=false, label={_dot_quote(info.id)}];"
                )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _tree_ascii(tree: GameTree, opts: RenderOptions) -> str:
    lines: list[str] = []
    shared = {i.id for i in tree.infosets if len(i.members) > 1}

    def describe(nid: str) -> str:
        node = tree.node(nid)
        if not isinstance(node, Decision):
            return f"{nid} {format_payoffs(node.payoffs, opts.payoff_unit_suffix)}"
        text = f"{nid} [{tree.players[node.owner - 1]}]"
        if opts.show_infosets and node.infoset in shared:
            text += f" infoset={node.infoset}"
        return text

    def walk(nid: str, depth: int) -> None:
        node = tree.node(nid)
        if not isinstance(node, Decision):
            return
        for action, child in node.edges:
            lines.append("  " * (depth + 1) + f"{action} -> {describe(child)}")
            walk(child, depth + 1)

    lines.append(describe(tree.root))
    walk(tree.root, 0)
    return "\n".join(lines) + "\n"


def render_matrix(game: NormalFormGame) -> str:
    """Fixed-width table; row player's strategies down, column player's across."""
    rows, cols = game.strategies
    corner = f"{game.players[0]}\\{game.players[1]}"
    cells = [[f"{a},{b}" for a, b in row] for row in game.payoffs]
    first = max([len(corner)] + [len(r) for r in rows])
    widths = [max([len(c)] + [len(row[j]) for row in cells]) for j, c in enumerate(cols)]
    out = [corner.ljust(first) + "".join("  " + c.rjust(w) for c, w in zip(cols, widths))]
    for label, row in zip(rows, cells):
        out.append(label.ljust(first) + "".join("  " + v.rjust(w) for v, w in zip(row, widths)))
    return "\n".join(line.rstrip() for line in out) + "\n"
