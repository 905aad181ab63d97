import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import FIG1_PRINTED, FIXTURES, matrix, random_tree
from extgame import (
    GameTree,
    ParseError,
    Terminal,
    parse_extensive,
    parse_normal,
    serialize_extensive,
    serialize_normal,
    validate_tree,
)
from extgame.gdt import detect_kind


def test_fig1_printed_text_parses():
    tree = parse_extensive(FIG1_PRINTED)
    assert tree.root == "n0"
    assert len(list(tree.decisions())) == 3
    leaves = list(tree.terminals())
    assert len(leaves) == 4
    assert [t.payoffs for t in leaves] == [(0, 0), (18, 2), (8, 8), (10, 6)]
    assert validate_tree(tree).ok


def test_declaration_order_is_preserved():
    tree = parse_extensive(FIG1_PRINTED)
    assert [n.id for n in tree.nodes] == ["n0", "n1", "n2", "t1", "t2", "t3", "t4"]
    assert tree.node("n1").actions == ("P", "S")
    assert [i.id for i in tree.infosets] == ["n0", "n1", "n2"]


def test_empty_input():
    with pytest.raises(ParseError) as info:
        parse_extensive("")
    assert (info.value.span.line, info.value.span.column) == (1, 1)
    assert info.value.expected == "game header"


def test_dangling_child_names_the_id():
    text = FIG1_PRINTED.replace("action S -> t4", "action S -> t9")
    with pytest.raises(ParseError) as info:
        parse_extensive(text)
    assert "t9" in str(info.value)
    assert (info.value.span.line, info.value.span.column) == (11, 15)


def test_fig6_normal_form(fig6):
    assert fig6.strategies == (("S", "P"), ("S", "P"))
    assert fig6.payoffs == (((10, 6), (8, 8)), ((18, 2), (0, 0)))


def test_row_length_mismatch():
    text = (FIXTURES / "fig6.gdt").read_text().replace("row S: (10,6) (8,8)", "row S: (10,6)")
    with pytest.raises(ParseError, match="row length mismatch"):
        parse_normal(text)


def test_rational_payoff():
    game = parse_normal('nfgame "r"\nplayers: A B\nrows: x\ncols: y\nrow x: (7/2,-3/6)\n')
    assert game.payoffs[0][0] == (Fraction(7, 2), Fraction(-1, 2))


def test_zero_denominator_rejected():
    with pytest.raises(ParseError, match="nonzero denominator"):
        parse_normal('nfgame "r"\nplayers: A B\nrows: x\ncols: y\nrow x: (1/0,1)\n')


def test_comments_blank_lines_and_crlf():
    text = "# lead comment\r\n\r\n" + FIG1_PRINTED.replace("\n", "  # note\r\n")
    assert parse_extensive(text) == parse_extensive(FIG1_PRINTED)
    assert parse_extensive(FIG1_PRINTED.rstrip("\n")) == parse_extensive(FIG1_PRINTED)


def test_hash_inside_name_is_not_a_comment():
    tree = parse_extensive('game "a#b \\"q\\""\nplayers: A B\nterminal t payoffs=(1, 2)\n')
    assert tree.name == 'a#b "q"'
    assert parse_extensive(serialize_extensive(tree)) == tree


@pytest.mark.parametrize(
    "text, fragment",
    [
        ('game "x"\nplayers: A B\nnode n player=3\n', "player index in 1..2"),
        ('game "x"\nplayers: A B\naction P -> t\n', "inside a node block"),
        ('game "x"\nplayers: A B\nnode n player=1 infoset=h\n', "undeclared 'h'"),
        ('game "x"\nplayers: A B\nterminal t payoffs=(1, 2, 3)\n', "2 payoffs"),
        ('game "x"\nplayers: A B\nterminal t payoffs=(1; 2)\n', "')'"),
        ('game "x"\nplayers: A B\nfrobnicate\n', "'infoset', 'node'"),
        ('game "x"\nplayers: A B\nterminal t payoffs=(1, 2)\nterminal t payoffs=(1, 2)\n', "duplicate 't'"),
        ('game "x"\nplayers: A B\nnode n player=1\n', "no actions"),
        ('game x\n', "quoted name"),
        ('nfgame "x"\nplayers: A B C\n', "exactly 2 players"),
        ('nfgame "x"\nplayers: A B\nrows: a\ncols: b\n', "matrix row 'a'"),
        ('nfgame "x"\nplayers: A B\nrows: a\ncols: b\nrow z: (1,1)\n', "declared row label"),
    ],
)
def test_errors_point_inside_the_input(text, fragment):
    with pytest.raises(ParseError) as info:
        if detect_kind(text) == "normal":
            parse_normal(text)
        else:
            parse_extensive(text)
    assert fragment in str(info.value)
    span = info.value.span
    lines = text.split("\n")
    assert 1 <= span.line <= len(lines)
    assert 1 <= span.column <= len(lines[span.line - 1]) + 1


def test_infoset_owner_must_match():
    text = 'game "x"\nplayers: A B\ninfoset h player=2\nnode n player=1 infoset=h\n  action a -> t\nterminal t payoffs=(0, 0)\n'
    with pytest.raises(ParseError, match="owned by player 2"):
        parse_extensive(text)


def test_validation_failure_is_located():
    text = (
        'game "x"\nplayers: A B\ninfoset h player=2\nnode r player=1\n  action L -> u\n  action R -> v\n'
        "node u player=2 infoset=h\n  action P -> t1\n  action S -> t2\n"
        "node v player=2 infoset=h\n  action S -> t3\n  action P -> t4\n"
        + "".join(f"terminal t{i} payoffs=(0, 0)\n" for i in range(1, 5))
    )
    with pytest.raises(ParseError) as info:
        parse_extensive(text)
    assert "action order mismatch" in str(info.value)
    assert info.value.span.line == 3
    tree = parse_extensive(text, validate=False)
    assert not validate_tree(tree).ok


def test_serialize_fig1_round_trip(fig1):
    assert parse_extensive(serialize_extensive(fig1)) == fig1


def test_serialize_fig5_declares_one_shared_infoset(fig5):
    text = serialize_extensive(fig5)
    infoset_lines = [line for line in text.splitlines() if line.startswith("infoset ")]
    assert infoset_lines == ["infoset h2 player=2"]
    assert text.count("infoset=h2") == 2
    assert parse_extensive(text) == fig5


def test_single_terminal_game_serializes_minimally():
    tree = GameTree("solo", ("A", "B"), "t", (Terminal("t", (3, 7)),), ())
    text = serialize_extensive(tree)
    assert text.splitlines() == ['game "solo"', "players: A B", "terminal t payoffs=(3, 7)"]
    assert parse_extensive(text) == tree


@pytest.mark.parametrize("name", ["fig2.gdt", "fig4.gdt", "fig6.gdt"])
def test_normal_round_trip(name):
    game = parse_normal((FIXTURES / name).read_text())
    assert parse_normal(serialize_normal(game)) == game


def test_one_by_one_normal_round_trip():
    game = matrix([[(3, 7)]])
    text = serialize_normal(game)
    assert len(text.splitlines()) == 5
    assert parse_normal(text) == game


def test_round_trip_random_trees_with_infosets():
    rng = random.Random(7)
    for _ in range(200):
        tree = random_tree(rng, imperfect=True)
        assert validate_tree(tree).ok
        again = parse_extensive(serialize_extensive(tree))
        assert again == tree


def test_determinism(fig1):
    text = (FIXTURES / "fig1.gdt").read_text()
    assert parse_extensive(text) == parse_extensive(text)
    assert serialize_extensive(fig1) == serialize_extensive(parse_extensive(text))


rationals = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 10**6)


@given(st.lists(st.lists(st.tuples(rationals, rationals), min_size=3, max_size=3), min_size=1, max_size=4))
def test_normal_round_trip_any_rationals(rows):
    game = matrix(rows)
    assert parse_normal(serialize_normal(game)) == game
