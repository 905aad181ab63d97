import random
from fractions import Fraction
from pathlib import Path

import pytest

from extgame import Decision, GameTree, InformationSet, NormalFormGame, Terminal, parse

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# Agent-1-first tree with agent 2's actions listed P before S.
FIG1_PRINTED = """\
game "agent1-first"
players: A1 A2
node n0 player=1
  action P -> n1
  action S -> n2
node n1 player=2
  action P -> t1
  action S -> t2
node n2 player=2
  action P -> t3
  action S -> t4
terminal t1 payoffs=(0, 0)
terminal t2 payoffs=(18, 2)
terminal t3 payoffs=(8, 8)
terminal t4 payoffs=(10, 6)
"""


def load(name):
    return parse((FIXTURES / name).read_text(encoding="utf-8"))


@pytest.fixture
def fig1():
    return load("fig1.gdt")


@pytest.fixture
def fig3():
    return load("fig3.gdt")


@pytest.fixture
def fig5():
    return load("fig5.gdt")


@pytest.fixture
def fig2():
    return load("fig2.gdt")


@pytest.fixture
def fig4():
    return load("fig4.gdt")


@pytest.fixture
def fig6():
    return load("fig6.gdt")


def matrix(rows):
    """Shorthand: ``matrix([[(1, 2), (3, 4)]])`` with labels r0.., c0.."""
    n, m = len(rows), len(rows[0])
    return NormalFormGame(
        "m",
        ("A", "B"),
        (tuple(f"r{i}" for i in range(n)), tuple(f"c{j}" for j in range(m))),
        tuple(tuple(tuple(Fraction(v) for v in cell) for cell in row) for row in rows),
    )


def random_tree(rng, max_depth=3, max_actions=3, lo=-9, hi=9, imperfect=False):
    """A random valid two-player tree.

    With ``imperfect``, same-depth nodes of one owner with equal action
    labels are randomly merged into shared information sets.
    """
    nodes = []
    counter = {"n": 0, "t": 0}
    depth_of = {}

    def fresh(prefix):
        counter[prefix] += 1
        return f"{prefix}{counter[prefix]}"

    def build(depth):
        if depth >= max_depth or (depth > 0 and rng.random() < 0.3):
            tid = fresh("t")
            nodes.append(Terminal(tid, (rng.randint(lo, hi), rng.randint(lo, hi))))
            return tid
        nid = fresh("n")
        owner = rng.randint(1, 2)
        k = rng.randint(1, max_actions)
        labels = ["a", "b", "c", "d"][:k] if rng.random() < 0.7 else rng.sample("PQRSXYZ", k)
        idx = len(nodes)
        nodes.append(None)
        edges = tuple((label, build(depth + 1)) for label in labels)
        nodes[idx] = Decision(nid, owner, nid, edges)
        depth_of[nid] = depth
        return nid

    root = build(0)
    decisions = [n for n in nodes if isinstance(n, Decision)]
    groups = {}
    if imperfect:
        for d in decisions:
            groups.setdefault((d.owner, depth_of[d.id], d.actions), []).append(d)
    infoset_of = {}
    infosets = []
    for d in decisions:
        if d.id in infoset_of:
            continue
        peers = [p for p in groups.get((d.owner, depth_of[d.id], d.actions), [d]) if p.id not in infoset_of]
        members = [d] + [p for p in peers if p is not d and rng.random() < 0.5]
        iid = d.id if len(members) == 1 else f"h{len(infosets)}"
        for m in members:
            infoset_of[m.id] = iid
        infosets.append(InformationSet(iid, d.owner, tuple(m.id for m in members), d.actions))
    nodes = [
        Decision(n.id, n.owner, infoset_of[n.id], n.edges) if isinstance(n, Decision) else n
        for n in nodes
    ]
    if rng.random() < 0.5:
        rng.shuffle(infosets)
    return GameTree(f"g{rng.randint(0, 999)}", ("P1", "P2"), root, tuple(nodes), tuple(infosets))


def random_matrix(rng, n, m, lo=-9, hi=9):
    return matrix([[(rng.randint(lo, hi), rng.randint(lo, hi)) for _ in range(m)] for _ in range(n)])


@pytest.fixture
def rng():
    return random.Random(20240611)


# --- acceptance reporting ------------------------------------------------------

_CRITERIA: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and report.passed:
        return
    n, title = marker.args
    entry = _CRITERIA.setdefault(n, [title, True])
    entry[1] = entry[1] and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, ok = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}")
