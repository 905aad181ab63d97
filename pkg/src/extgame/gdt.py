"""Line-oriented game description text ("GDT") for extensive and normal form.

Extensive form::

    game "agent1-first"
    players: A1 A2
    infoset h player=2            # optional
    node n0 player=1 [infoset=h]
      action P -> n1
    terminal t1 payoffs=(0, 0)

Normal form::

    nfgame "simultaneous"
    players: A1 A2
    rows: S P
    cols: S P
    row S: (10,6) (8,8)
    row P: (18,2) (0,0)

``#`` starts a comment, blank lines are ignored and indentation is cosmetic.
The first declared node is the root. Payoffs are ``a`` or ``a/b`` integers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .model import (
    Decision,
    GameTree,
    InformationSet,
    NormalFormGame,
    Terminal,
    validate_tree,
)

IDENT = r"[A-Za-z0-9_]+"
LABEL = r"[A-Za-z0-9_.]+"
RATIONAL = r"-?[0-9]+(?:/[0-9]+)?"

_ident_re = re.compile(IDENT)
_label_re = re.compile(LABEL)
_rational_re = re.compile(RATIONAL)


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class ParseError(ValueError):
    """Raised on the first syntax or structure violation in GDT text."""

    def __init__(self, span: SourceSpan, expected: str, found: str):
        self.span = span
        self.expected = expected
        self.found = found
        super().__init__(f"{span}: expected {expected}, found {found}")


# --- tokenizer ----------------------------------------------------------------


class _Line:
    """One significant source line with a column-tracking cursor."""

    def __init__(self, number: int, text: str):
        self.number = number
        self.text = text
        self.pos = 0
        self.skip_ws()

    def span(self, pos: int | None = None) -> SourceSpan:
        return SourceSpan(self.number, (self.pos if pos is None else pos) + 1)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def found(self) -> str:
        if self.at_end():
            return "end of line"
        m = re.match(r"\S+", self.text[self.pos :])
        return repr(m.group(0)) if m else repr(self.text[self.pos])

    def fail(self, expected: str):
        raise ParseError(self.span(), expected, self.found())

    def literal(self, lit: str) -> None:
        if not self.text.startswith(lit, self.pos):
            self.fail(repr(lit))
        self.pos += len(lit)
        self.skip_ws()

    def peek(self, lit: str) -> bool:
        return self.text.startswith(lit, self.pos)

    def keyword(self, word: str) -> None:
        m = _ident_re.match(self.text, self.pos)
        if not m or m.group(0) != word:
            self.fail(repr(word))
        self.pos = m.end()
        self.skip_ws()

    def token(self, pattern: re.Pattern, what: str) -> tuple[str, SourceSpan]:
        m = pattern.match(self.text, self.pos)
        if not m:
            self.fail(what)
        span = self.span()
        self.pos = m.end()
        self.skip_ws()
        return m.group(0), span

    def rational(self) -> Fraction:
        text, span = self.token(_rational_re, "rational payoff")
        if "/" in text and int(text.split("/")[1]) == 0:
            raise ParseError(span, "nonzero denominator", repr(text))
        return Fraction(text)

    def quoted(self) -> str:
        if not self.peek('"'):
            self.fail("quoted name")
        i = self.pos + 1
        out = []
        while i < len(self.text):
            ch = self.text[i]
            if ch == "\\" and i + 1 < len(self.text):
                out.append(self.text[i + 1])
                i += 2
                continue
            if ch == '"':
                self.pos = i + 1
                self.skip_ws()
                return "".join(out)
            out.append(ch)
            i += 1
        raise ParseError(self.span(), "closing '\"'", "end of line")

    def end(self) -> None:
        if not self.at_end():
            self.fail("end of line")


def _lines(text: str) -> list[_Line]:
    out = []
    for number, raw in enumerate(text.split("\n"), start=1):
        raw = raw.rstrip("\r")
        body = _strip_comment(raw).rstrip()
        if body.strip():
            out.append(_Line(number, body))
    return out


def _strip_comment(raw: str) -> str:
    in_quote = False
    i = 0
    while i < len(raw):
        ch = raw[i]
        if in_quote and ch == "\\":
            i += 2
            continue
        if ch == '"':
            in_quote = not in_quote
        elif ch == "#" and not in_quote:
            return raw[:i]
        i += 1
    return raw


def _end_span(text: str) -> SourceSpan:
    lines = text.split("\n")
    return SourceSpan(len(lines), len(lines[-1]) + 1)


def _header(lines: list[_Line], text: str, keyword: str) -> tuple[str, tuple[str, ...]]:
    if not lines:
        raise ParseError(SourceSpan(1, 1), "game header", "end of input")
    head = lines[0]
    m = _ident_re.match(head.text, head.pos)
    if not m or m.group(0) != keyword:
        raise ParseError(head.span(), "game header", head.found())
    head.keyword(keyword)
    name = head.quoted()
    head.end()
    if len(lines) < 2:
        raise ParseError(_end_span(text), "'players:' line", "end of input")
    pl = lines[1]
    pl.keyword("players")
    pl.literal(":")
    players = []
    while not pl.at_end():
        players.append(pl.token(_ident_re, "player name")[0])
    if not players:
        pl.fail("player name")
    return name, tuple(players)


def detect_kind(text: str) -> str:
    """Return ``"extensive"`` or ``"normal"`` from the header keyword."""
    lines = _lines(text)
    if lines:
        m = _ident_re.match(lines[0].text, lines[0].pos)
        if m and m.group(0) == "nfgame":
            return "normal"
        if m and m.group(0) == "game":
            return "extensive"
        raise ParseError(lines[0].span(), "game header", lines[0].found())
    raise ParseError(SourceSpan(1, 1), "game header", "end of input")


# --- extensive form -------------------------------------------------------------


def _player_index(line: _Line, n_players: int) -> int:
    line.keyword("player")
    line.literal("=")
    text, span = line.token(re.compile(r"[0-9]+"), "player index")
    idx = int(text)
    if not 1 <= idx <= n_players:
        raise ParseError(span, f"player index in 1..{n_players}", repr(text))
    return idx


def parse_extensive(text: str, *, validate: bool = True) -> GameTree:
    """Parse extensive-form GDT into a :class:`GameTree`.

    With ``validate`` (the default) the first structural problem found by
    :func:`validate_tree` is raised as a :class:`ParseError` located at the
    offending declaration. Syntax and dangling references always raise.
    """
    lines = _lines(text)
    name, players = _header(lines, text, "game")

    node_order: list[str] = []
    node_spans: dict[str, SourceSpan] = {}
    node_owner: dict[str, int] = {}
    node_infoset: dict[str, str] = {}
    node_edges: dict[str, list[tuple[str, str, SourceSpan]]] = {}
    terminals: dict[str, tuple[Fraction, ...]] = {}
    infoset_order: list[str] = []
    infoset_owner: dict[str, int] = {}
    infoset_spans: dict[str, SourceSpan] = {}
    infoset_members: dict[str, list[str]] = {}
    explicit: set[str] = set()
    current: str | None = None

    def declare_node(ident: str, span: SourceSpan) -> None:
        if ident in node_spans:
            raise ParseError(span, "unique node id", f"duplicate {ident!r}")
        node_order.append(ident)
        node_spans[ident] = span

    n_players = len(players)
    for line in lines[2:]:
        m = _ident_re.match(line.text, line.pos)
        kw = m.group(0) if m else None
        if kw == "infoset":
            line.keyword("infoset")
            iid, span = line.token(_ident_re, "infoset id")
            if iid in infoset_owner:
                raise ParseError(span, "unique infoset id", f"duplicate {iid!r}")
            owner = _player_index(line, n_players)
            line.end()
            infoset_order.append(iid)
            infoset_owner[iid] = owner
            infoset_spans[iid] = span
            infoset_members[iid] = []
            explicit.add(iid)
            current = None
        elif kw == "node":
            line.keyword("node")
            nid, span = line.token(_ident_re, "node id")
            declare_node(nid, span)
            owner = _player_index(line, n_players)
            if line.peek("infoset"):
                line.keyword("infoset")
                line.literal("=")
                iid, ispan = line.token(_ident_re, "infoset id")
                if iid not in explicit:
                    raise ParseError(ispan, "declared infoset", f"undeclared {iid!r}")
                if infoset_owner[iid] != owner:
                    raise ParseError(
                        ispan,
                        f"infoset owned by player {owner}",
                        f"{iid!r} owned by player {infoset_owner[iid]}",
                    )
            else:
                iid = nid
                if iid in infoset_owner:
                    raise ParseError(span, "node id distinct from infoset ids", repr(nid))
                infoset_order.append(iid)
                infoset_owner[iid] = owner
                infoset_spans[iid] = span
                infoset_members[iid] = []
            line.end()
            infoset_members[iid].append(nid)
            node_owner[nid] = owner
            node_infoset[nid] = iid
            node_edges[nid] = []
            current = nid
        elif kw == "action":
            if current is None:
                raise ParseError(line.span(), "'action' inside a node block", "'action'")
            line.keyword("action")
            label, lspan = line.token(_ident_re, "action label")
            if any(a == label for a, _, _ in node_edges[current]):
                raise ParseError(lspan, "unique action label", f"duplicate {label!r}")
            line.literal("->")
            child, cspan = line.token(_ident_re, "child node id")
            line.end()
            node_edges[current].append((label, child, cspan))
        elif kw == "terminal":
            line.keyword("terminal")
            tid, span = line.token(_ident_re, "terminal id")
            declare_node(tid, span)
            line.keyword("payoffs")
            line.literal("=")
            line.literal("(")
            pays = [line.rational()]
            while line.peek(","):
                line.literal(",")
                pays.append(line.rational())
            line.literal(")")
            line.end()
            if len(pays) != n_players:
                raise ParseError(span, f"{n_players} payoffs", f"{len(pays)}")
            terminals[tid] = tuple(pays)
            current = None
        else:
            line.fail("'infoset', 'node', 'action' or 'terminal'")

    if not node_order:
        raise ParseError(_end_span(text), "at least one node", "end of input")

    for nid in node_order:
        for label, child, cspan in node_edges.get(nid, ()):
            if child not in node_spans:
                raise ParseError(cspan, "declared node id", f"dangling id {child!r}")
    for iid in infoset_order:
        if not infoset_members[iid]:
            raise ParseError(infoset_spans[iid], "infoset with members", f"empty infoset {iid!r}")

    nodes = []
    for nid in node_order:
        if nid in terminals:
            nodes.append(Terminal(nid, terminals[nid]))
        else:
            edges = tuple((a, c) for a, c, _ in node_edges[nid])
            nodes.append(Decision(nid, node_owner[nid], node_infoset[nid], edges))
    infosets = []
    for iid in infoset_order:
        first = infoset_members[iid][0]
        actions = tuple(a for a, _, _ in node_edges[first])
        infosets.append(InformationSet(iid, infoset_owner[iid], tuple(infoset_members[iid]), actions))

    tree = GameTree(name, players, node_order[0], tuple(nodes), tuple(infosets))
    report = validate_tree(tree)
    if validate and not report.ok:
        diag = report.errors[0]
        span = node_spans.get(diag.where) or infoset_spans.get(diag.where) or SourceSpan(1, 1)
        raise ParseError(span, "well-formed game tree", diag.message)
    return tree


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _fmt(x: Fraction) -> str:
    return str(x)


def serialize_extensive(tree: GameTree) -> str:
    """Render a tree as GDT that :func:`parse_extensive` maps back to it."""
    out = [f"game {_quote(tree.name)}", "players: " + " ".join(tree.players)]
    ordered = [tree.node(tree.root)] + [n for n in tree.nodes if n.id != tree.root]

    implicit = {
        i.id for i in tree.infosets if len(i.members) == 1 and i.members[0] == i.id
    }

    # Auto infosets come into being where their node is declared, so the
    # emission order interleaves explicit declarations and nodes to keep the
    # infoset sequence. When that is impossible, declare every infoset up front.
    body: list[str] = []
    pending = list(ordered)
    declared: set[str] = set()
    feasible = True
    for info in tree.infosets:
        if info.id not in implicit:
            body.append(f"infoset {info.id} player={info.owner}")
            declared.add(info.id)
            continue
        while feasible and pending:
            node = pending[0]
            if isinstance(node, Decision):
                if node.infoset in implicit and node.id != info.id:
                    feasible = False
                    break
                if node.infoset not in implicit and node.infoset not in declared:
                    feasible = False
                    break
            body.extend(
                _node_lines(node, explicit=isinstance(node, Decision) and node.infoset not in implicit)
            )
            pending.pop(0)
            if node.id == info.id:
                break
        if not feasible:
            break
    for node in pending if feasible else ():
        if isinstance(node, Decision) and (node.infoset in implicit or node.infoset not in declared):
            feasible = False
            break
        body.extend(_node_lines(node, explicit=True))
    if not feasible:
        body = [f"infoset {i.id} player={i.owner}" for i in tree.infosets]
        for node in ordered:
            body.extend(_node_lines(node, explicit=True))
    out.extend(body)
    return "\n".join(out) + "\n"


def _node_lines(node, explicit: bool) -> list[str]:
    if isinstance(node, Terminal):
        pays = ", ".join(_fmt(p) for p in node.payoffs)
        return [f"terminal {node.id} payoffs=({pays})"]
    head = f"node {node.id} player={node.owner}"
    if explicit:
        head += f" infoset={node.infoset}"
    return [head] + [f"  action {a} -> {c}" for a, c in node.edges]


# --- normal form ----------------------------------------------------------------


def _labels(line: _Line) -> list[tuple[str, SourceSpan]]:
    out = []
    while not line.at_end():
        out.append(line.token(_label_re, "strategy label"))
    if not out:
        line.fail("strategy label")
    return out


def parse_normal(text: str) -> NormalFormGame:
    """Parse normal-form GDT into a :class:`NormalFormGame`."""
    lines = _lines(text)
    name, players = _header(lines, text, "nfgame")
    if len(players) != 2:
        raise ParseError(lines[1].span(0), "exactly 2 players", str(len(players)))
    rows: list[str] | None = None
    cols: list[str] | None = None
    cells: dict[str, tuple] = {}
    for line in lines[2:]:
        m = _ident_re.match(line.text, line.pos)
        kw = m.group(0) if m else None
        if kw in ("rows", "cols"):
            if (rows if kw == "rows" else cols) is not None:
                line.fail(f"a single '{kw}:' line")
            line.keyword(kw)
            line.literal(":")
            labels = _labels(line)
            seen = set()
            for label, span in labels:
                if label in seen:
                    raise ParseError(span, "unique strategy label", f"duplicate {label!r}")
                seen.add(label)
            if kw == "rows":
                rows = [lab for lab, _ in labels]
            else:
                cols = [lab for lab, _ in labels]
        elif kw == "row":
            if rows is None or cols is None:
                line.fail("'rows:' and 'cols:' before matrix rows")
            line.keyword("row")
            label, span = line.token(_label_re, "row label")
            if label not in rows:
                raise ParseError(span, "declared row label", repr(label))
            if label in cells:
                raise ParseError(span, "each row once", f"duplicate row {label!r}")
            line.literal(":")
            row = []
            while not line.at_end():
                line.literal("(")
                a = line.rational()
                line.literal(",")
                b = line.rational()
                line.literal(")")
                row.append((a, b))
            if len(row) != len(cols):
                raise ParseError(span, f"{len(cols)} cells (row length mismatch)", str(len(row)))
            cells[label] = tuple(row)
        else:
            line.fail("'rows:', 'cols:' or 'row'")
    if rows is None or cols is None:
        raise ParseError(_end_span(text), "'rows:' and 'cols:' lines", "end of input")
    missing = [r for r in rows if r not in cells]
    if missing:
        raise ParseError(_end_span(text), f"matrix row {missing[0]!r}", "end of input")
    return NormalFormGame(name, players, (tuple(rows), tuple(cols)), tuple(cells[r] for r in rows))


def serialize_normal(game: NormalFormGame) -> str:
    rows, cols = game.strategies
    out = [
        f"nfgame {_quote(game.name)}",
        "players: " + " ".join(game.players),
        "rows: " + " ".join(rows),
        "cols: " + " ".join(cols),
    ]
    for label, row in zip(rows, game.payoffs):
        cells = " ".join(f"({_fmt(a)},{_fmt(b)})" for a, b in row)
        out.append(f"row {label}: {cells}")
    return "\n".join(out) + "\n"


def parse(text: str) -> GameTree | NormalFormGame:
    """Parse either form, dispatching on the header keyword."""
    if detect_kind(text) == "normal":
        return parse_normal(text)
    return parse_extensive(text)
