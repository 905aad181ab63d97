"""Pure strategies over a game tree: enumeration, labels and play-out."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .model import Decision, GameTree, Terminal

EMPTY_LABEL = "_"


@dataclass(frozen=True)
class PureStrategy:
    """One action per information set of ``owner``, including unreachable ones."""

    owner: int
    choices: tuple[tuple[str, str], ...]  # (infoset id, action), infoset order
    label: str

    def action(self, infoset_id: str) -> str:
        for iid, action in self.choices:
            if iid == infoset_id:
                return action
        raise KeyError(f"strategy {self.label!r} has no choice at infoset {infoset_id!r}")

    def as_dict(self) -> dict[str, str]:
        return dict(self.choices)


StrategyProfile = tuple[PureStrategy, ...]


def _separator(tree: GameTree, player: int) -> str:
    infosets = tree.infosets_of(player)
    if all(len(a) == 1 for i in infosets for a in i.actions):
        return ""
    return "."


def make_label(tree: GameTree, player: int, actions: tuple[str, ...]) -> str:
    if not actions:
        return EMPTY_LABEL
    return _separator(tree, player).join(actions)


def enumerate_pure(tree: GameTree, player: int) -> list[PureStrategy]:
    """All pure strategies of ``player``.

    Lexicographic in (infoset declaration order, action order), so the first
    infoset's choice varies slowest. A player without infosets has exactly
    one (empty) strategy.
    """
    infosets = tree.infosets_of(player)
    out = []
    for combo in itertools.product(*(i.actions for i in infosets)):
        choices = tuple(zip((i.id for i in infosets), combo))
        out.append(PureStrategy(player, choices, make_label(tree, player, combo)))
    return out


def decode_label(tree: GameTree, player: int, label: str) -> PureStrategy:
    """Inverse of the labeling used by :func:`enumerate_pure`."""
    infosets = tree.infosets_of(player)
    if not infosets:
        if label != EMPTY_LABEL:
            raise ValueError(f"player {player} has only the strategy {EMPTY_LABEL!r}")
        return PureStrategy(player, (), EMPTY_LABEL)
    sep = _separator(tree, player)
    parts = list(label) if sep == "" else label.split(sep)
    if len(parts) != len(infosets):
        raise ValueError(f"label {label!r} does not name one action per infoset")
    for info, action in zip(infosets, parts):
        if action not in info.actions:
            raise ValueError(f"{action!r} is not an action at infoset {info.id!r}")
    return PureStrategy(player, tuple(zip((i.id for i in infosets), parts)), label)


def profile(tree: GameTree, *labels: str) -> StrategyProfile:
    """Build a profile from one strategy label per player."""
    return tuple(decode_label(tree, p, lab) for p, lab in enumerate(labels, start=1))


def path(tree: GameTree, prof: StrategyProfile, start: str | None = None) -> list[str]:
    """Node ids visited from ``start`` (default root) to a terminal."""
    nid = tree.root if start is None else start
    visited = [nid]
    node = tree.node(nid)
    while isinstance(node, Decision):
        action = prof[node.owner - 1].action(node.infoset)
        nid = node.child(action)
        visited.append(nid)
        node = tree.node(nid)
    return visited


def play_out(
    tree: GameTree, prof: StrategyProfile, start: str | None = None
) -> tuple[Fraction, ...]:
    leaf = tree.node(path(tree, prof, start)[-1])
    assert isinstance(leaf, Terminal)
    return leaf.payoffs
