import itertools
import random
from math import prod

import pytest

from conftest import FIG1_PRINTED, random_tree
from extgame import decode_label, enumerate_pure, parse_extensive, play_out, profile
from extgame.strategies import path


def labels(tree, player):
    return [s.label for s in enumerate_pure(tree, player)]


def test_fig1_strategy_labels(fig1):
    assert labels(fig1, 1) == ["P", "S"]
    assert labels(fig1, 2) == ["SS", "SP", "PS", "PP"]


def test_printed_action_order_gives_product_order():
    tree = parse_extensive(FIG1_PRINTED)
    assert labels(tree, 2) == ["PP", "PS", "SP", "SS"]


def test_first_letter_is_the_reply_to_planning(fig1):
    sp = decode_label(fig1, 2, "SP")
    assert sp.action("n1") == "S"  # agent 1 planned
    assert sp.action("n2") == "P"  # agent 1 signed


def test_fig5_one_infoset_two_strategies(fig5):
    assert labels(fig5, 2) == ["S", "P"]
    assert set(labels(fig5, 2)) == {"P", "S"}


@pytest.mark.parametrize(
    "name, strategies, expected",
    [
        ("fig1", ("P", "SP"), (18, 2)),
        ("fig1", ("S", "SP"), (8, 8)),
        # Agent 2 is model player 1 in the role-swapped game: agent 2 plays P, agent 1 plays SP.
        ("fig3", ("P", "SP"), (8, 8)),
    ],
)
def test_play_out(name, strategies, expected, request):
    tree = request.getfixturevalue(name)
    assert play_out(tree, profile(tree, *strategies)) == expected


def test_unreachable_infosets_still_get_choices(fig1):
    for s in enumerate_pure(fig1, 2):
        assert {iid for iid, _ in s.choices} == {"n1", "n2"}


def test_multi_character_labels_are_separated():
    text = (
        'game "x"\nplayers: A B\nnode r player=1\n  action up -> a\n  action dn -> b\n'
        "node a player=1\n  action L -> t1\n  action R -> t2\n"
        "terminal t1 payoffs=(0, 0)\nterminal t2 payoffs=(0, 0)\nterminal b payoffs=(0, 0)\n"
    )
    tree = parse_extensive(text)
    assert labels(tree, 1) == ["up.L", "up.R", "dn.L", "dn.R"]
    assert labels(tree, 2) == ["_"]
    assert decode_label(tree, 1, "dn.R").as_dict() == {"r": "dn", "a": "R"}


def test_properties_on_random_trees():
    rng = random.Random(11)
    for _ in range(200):
        tree = random_tree(rng, imperfect=rng.random() < 0.5)
        leaves = {t.id for t in tree.terminals()}
        per_player = []
        for player in (1, 2):
            strategies = enumerate_pure(tree, player)
            expected = prod(len(i.actions) for i in tree.infosets_of(player))
            assert len(strategies) == expected
            assert len({s.label for s in strategies}) == len(strategies)
            for s in strategies:
                assert decode_label(tree, player, s.label) == s
            per_player.append(strategies)
        for prof in itertools.product(*per_player):
            visited = path(tree, prof)
            assert visited[0] == tree.root and visited[-1] in leaves
            for parent, child in zip(visited, visited[1:]):
                assert child in {c for _, c in tree.node(parent).edges}
            assert play_out(tree, prof) == tree.node(visited[-1]).payoffs


def test_decode_rejects_unknown_labels(fig1):
    with pytest.raises(ValueError):
        decode_label(fig1, 2, "SX")
    with pytest.raises(ValueError):
        decode_label(fig1, 2, "S")
