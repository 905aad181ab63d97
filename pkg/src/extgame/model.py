"""Immutable data model for finite games in extensive and normal form.

Payoffs and probabilities are :class:`fractions.Fraction` throughout.
Player indices are 1-based and match payoff-tuple order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Union

ERROR = "error"
WARNING = "warning"


def as_fraction(value: int | str | Fraction) -> Fraction:
    if isinstance(value, float):
        raise TypeError("payoffs must be exact; got float %r" % value)
    return Fraction(value)


@dataclass(frozen=True)
class Decision:
    """A node where ``owner`` picks one of ``edges`` (label, child id)."""

    id: str
    owner: int
    infoset: str
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple((str(a), str(c)) for a, c in self.edges))

    @property
    def actions(self) -> tuple[str, ...]:
        return tuple(a for a, _ in self.edges)

    def child(self, action: str) -> str:
        for label, child in self.edges:
            if label == action:
                return child
        raise KeyError(f"node {self.id!r} has no action {action!r}")


@dataclass(frozen=True)
class Terminal:
    id: str
    payoffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "payoffs", tuple(as_fraction(p) for p in self.payoffs))


Node = Union[Decision, Terminal]


@dataclass(frozen=True)
class InformationSet:
    """Decision nodes the owner cannot tell apart; all offer ``actions``."""

    id: str
    owner: int
    members: tuple[str, ...]
    actions: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", tuple(self.members))
        object.__setattr__(self, "actions", tuple(self.actions))


@dataclass(frozen=True)
class GameTree:
    """A rooted game tree.

    Node and infoset order is significant: strategy enumeration and
    serialization follow it. Lookups tolerate malformed input (duplicate ids
    resolve to the first occurrence) so that :func:`validate_tree` can report
    on arbitrary candidates.
    """

    name: str
    players: tuple[str, ...]
    root: str
    nodes: tuple[Node, ...]
    infosets: tuple[InformationSet, ...]
    _node_index: dict = field(init=False, repr=False, compare=False, hash=False)
    _infoset_index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "players", tuple(self.players))
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "infosets", tuple(self.infosets))
        nodes: dict[str, Node] = {}
        for n in self.nodes:
            nodes.setdefault(n.id, n)
        infosets: dict[str, InformationSet] = {}
        for i in self.infosets:
            infosets.setdefault(i.id, i)
        object.__setattr__(self, "_node_index", nodes)
        object.__setattr__(self, "_infoset_index", infosets)

    def node(self, node_id: str) -> Node:
        return self._node_index[node_id]

    def has_node(self, node_id: str) -> bool:
        return node_id in self._node_index

    def infoset(self, infoset_id: str) -> InformationSet:
        return self._infoset_index[infoset_id]

    def has_infoset(self, infoset_id: str) -> bool:
        return infoset_id in self._infoset_index

    def decisions(self) -> Iterator[Decision]:
        return (n for n in self.nodes if isinstance(n, Decision))

    def terminals(self) -> Iterator[Terminal]:
        return (n for n in self.nodes if isinstance(n, Terminal))

    def infosets_of(self, player: int) -> tuple[InformationSet, ...]:
        return tuple(i for i in self.infosets if i.owner == player)


@dataclass(frozen=True)
class NormalFormGame:
    """Two-player strategic form; ``payoffs[r][c]`` is (row payoff, column payoff)."""

    name: str
    players: tuple[str, str]
    strategies: tuple[tuple[str, ...], tuple[str, ...]]
    payoffs: tuple[tuple[tuple[Fraction, Fraction], ...], ...]

    def __post_init__(self) -> None:
        players = tuple(self.players)
        strategies = tuple(tuple(s) for s in self.strategies)
        if len(players) != 2 or len(strategies) != 2:
            raise ValueError("normal-form games have exactly two players")
        rows, cols = strategies
        if not rows or not cols:
            raise ValueError("every player needs at least one strategy")
        for labels in strategies:
            if len(set(labels)) != len(labels):
                raise ValueError(f"duplicate strategy labels in {labels!r}")
        payoffs = tuple(
            tuple(tuple(as_fraction(v) for v in cell) for cell in row) for row in self.payoffs
        )
        if len(payoffs) != len(rows):
            raise ValueError(f"expected {len(rows)} payoff rows, got {len(payoffs)}")
        for r, row in enumerate(payoffs):
            if len(row) != len(cols):
                raise ValueError(f"row {rows[r]!r}: expected {len(cols)} cells, got {len(row)}")
            for cell in row:
                if len(cell) != 2:
                    raise ValueError(f"row {rows[r]!r}: every cell holds exactly two payoffs")
        object.__setattr__(self, "players", players)
        object.__setattr__(self, "strategies", strategies)
        object.__setattr__(self, "payoffs", payoffs)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.strategies[0]), len(self.strategies[1])

    def payoff(self, player: int, row: int, col: int) -> Fraction:
        return self.payoffs[row][col][player - 1]


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    where: str
    message: str

    def __str__(self) -> str:
        loc = f" [{self.where}]" if self.where else ""
        return f"{self.severity}{loc}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    diagnostics: tuple[Diagnostic, ...] = ()

    @property
    def ok(self) -> bool:
        return not any(d.severity == ERROR for d in self.diagnostics)

    @property
    def errors(self) -> tuple[Diagnostic, ...]:
        return tuple(d for d in self.diagnostics if d.severity == ERROR)


class InvalidGameError(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("; ".join(str(d) for d in report.errors))


def validate_tree(tree: GameTree) -> ValidationReport:
    """Check every structural invariant of a two-player game tree.

    Never raises on malformed structure; each violation becomes a diagnostic.
    """
    diags: list[Diagnostic] = []

    def err(where: str, msg: str) -> None:
        diags.append(Diagnostic(ERROR, where, msg))

    n_players = len(tree.players)
    if n_players != 2:
        err("", f"expected 2 players, got {n_players}")
    if len(set(tree.players)) != n_players:
        diags.append(Diagnostic(WARNING, "", "player names are not distinct"))

    seen: set[str] = set()
    for n in tree.nodes:
        if n.id in seen:
            err(n.id, f"duplicate node id {n.id!r}")
        seen.add(n.id)

    if not tree.has_node(tree.root):
        err(tree.root, f"root {tree.root!r} does not resolve to a node")

    parents: dict[str, list[str]] = {n.id: [] for n in tree.nodes}
    for n in tree.nodes:
        if isinstance(n, Terminal):
            if len(n.payoffs) != n_players:
                err(n.id, f"terminal has {len(n.payoffs)} payoffs, expected {n_players}")
            continue
        if not 1 <= n.owner <= max(n_players, 1):
            err(n.id, f"owner {n.owner} is not a player index")
        if not n.edges:
            err(n.id, "decision node has no actions")
        labels = [a for a, _ in n.edges]
        if len(set(labels)) != len(labels):
            err(n.id, "duplicate action labels at node")
        for label, child in n.edges:
            if not label:
                err(n.id, "empty action label")
            if child not in parents:
                err(n.id, f"action {label!r} points to undeclared node {child!r}")
            else:
                parents[child].append(n.id)

    for node_id, ps in parents.items():
        if node_id == tree.root:
            if ps:
                err(node_id, "root has a parent")
        elif len(ps) != 1:
            err(node_id, f"node has {len(ps)} parents, expected 1")

    # Reachability doubles as a cycle check: in a graph where every non-root
    # node has one parent, an unreachable node lies on a cycle or a detached part.
    reachable: set[str] = set()
    if tree.has_node(tree.root):
        stack = [tree.root]
        while stack:
            nid = stack.pop()
            if nid in reachable:
                continue
            reachable.add(nid)
            node = tree.node(nid)
            if isinstance(node, Decision):
                stack.extend(c for _, c in node.edges if tree.has_node(c))
    for n in tree.nodes:
        if n.id not in reachable:
            err(n.id, "node is not reachable from the root")

    seen_infosets: set[str] = set()
    membership: dict[str, list[str]] = {}
    for info in tree.infosets:
        if info.id in seen_infosets:
            err(info.id, f"duplicate infoset id {info.id!r}")
        seen_infosets.add(info.id)
        if not info.members:
            err(info.id, "information set has no members")
        for m in info.members:
            membership.setdefault(m, []).append(info.id)
            if not tree.has_node(m) or not isinstance(tree.node(m), Decision):
                err(info.id, f"member {m!r} is not a decision node")
                continue
            node = tree.node(m)
            if node.owner != info.owner:
                err(info.id, f"member {m!r} is owned by player {node.owner}, not {info.owner}")
            if node.infoset != info.id:
                err(info.id, f"member {m!r} names infoset {node.infoset!r}")
            if node.actions != info.actions:
                if sorted(node.actions) == sorted(info.actions):
                    err(info.id, f"action order mismatch at member {m!r}")
                else:
                    err(info.id, f"action mismatch at member {m!r}")
        for a, b in _ancestral_pairs(info.members, parents):
            err(info.id, f"member {a!r} is an ancestor of member {b!r}")

    for d in tree.decisions():
        sets = membership.get(d.id, [])
        if len(sets) != 1:
            err(d.id, f"decision node belongs to {len(sets)} information sets, expected 1")
        if not tree.has_infoset(d.infoset):
            err(d.id, f"infoset {d.infoset!r} is not declared")

    return ValidationReport(tuple(diags))


def _ancestral_pairs(members, parents):
    member_set = set(members)
    for m in members:
        if m not in parents:
            continue
        cur, hops = m, 0
        while parents.get(cur) and hops <= len(parents):
            cur = parents[cur][0]
            hops += 1
            if cur in member_set:
                yield cur, m


def require_valid(tree: GameTree) -> None:
    report = validate_tree(tree)
    if not report.ok:
        raise InvalidGameError(report)


def is_perfect_information(tree: GameTree) -> bool:
    return all(len(i.members) == 1 for i in tree.infosets)
