import itertools
import random
from importlib.resources import files

import pytest

from bullygame.efg import ParseError, format_game, parse_game
from bullygame.game_tree import playout
from bullygame.generate import random_tree
from bullygame.model import baseline_game, build_game
from bullygame.strategies import enumerate_strategies, induce_normal_form
from oracles import plans, walk

BASELINE_TEXT = files("bullygame").joinpath("assets/baseline.efg").read_text()


def same_playouts(a, b):
    """Every complete plan of ``a`` yields identical payoffs in ``b``."""
    for r, c in itertools.product(plans(a, 0), plans(a, 1)):
        if walk(a, {**r, **c}) != walk(b, {**r, **c}):
            return False
    return True


def test_shipped_baseline_leaves():
    t = parse_game(BASELINE_TEXT)
    assert same_playouts(t, baseline_game()) and same_playouts(baseline_game(), t)
    assert [s.label for s in enumerate_strategies(t, 0)] == ["IR", "ID", "ER", "ED"]
    assert t.player(1).name == "bully"


def test_single_terminal():
    t = parse_game("root t0\nleaf t0 0 0\n")
    assert t.root == "t0" and t.nodes["t0"].payoffs == (0, 0)


def test_comments_and_indentation():
    text = "  # header\nroot n   # trailing\n\tnode n decision 0 infoset N\n  edge n a t\n leaf t 1.5 -2\n"
    t = parse_game(text)
    assert t.nodes["t"].payoffs == (1.5, -2)


def test_unknown_node_is_positioned():
    text = "root n\nnode n decision 0 infoset N\nedge n a t\nedge n b n9\nleaf t 0 0\n"
    with pytest.raises(ParseError) as err:
        parse_game(text)
    assert err.value.line == 4 and err.value.column == 10
    assert "n9" in str(err.value) and "line 4" in str(err.value)


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("root t\nleaf t 0 0\nleaf t 1 1\n", 3, "duplicate node id"),
        ("root t\nleaf t 0 0 0\n", 2, "payoff arity mismatch"),
        ("leaf t 0 0\n", 1, "missing root"),
        ("root t\nleaf t 0 x\n", 2, "expected a number"),
        ("root t\nfoo t\nleaf t 0 0\n", 2, "unknown directive"),
        ("root n\nnode n choice 0 infoset N\n", 2, "expected `decision`"),
        ("root n\nnode n decision 0 infoset N\nleaf t 0 0\n", 2, "decision node without actions"),
        ("root n\nnode n decision 0 infoset N\nedge n a t\nedge t a n\nleaf t 0 0\n", 4, "edge from leaf"),
        ("root n\nnode n decision 0 infoset S\nedge n a m\nnode m decision 1 infoset S\nedge m b t\nleaf t 0 0\n",
         4, "infoset 'S' owned by player 0"),
        ("root n\nnode n decision 0 infoset N\nedge n a t\nedge n a u\nleaf t 0 0\nleaf u 0 0\n", 2,
         "duplicate action label"),
    ],
)
def test_errors(text, line, fragment):
    with pytest.raises(ParseError) as err:
        parse_game(text)
    assert err.value.line == line
    assert fragment in err.value.message


@pytest.mark.parametrize("tree", [baseline_game(), build_game(0.6).game, build_game(10).game])
def test_round_trip_model_games(tree):
    back = parse_game(format_game(tree))
    assert same_playouts(tree, back)
    assert format_game(back) == format_game(tree)
    assert (induce_normal_form(back).payoffs == induce_normal_form(tree).payoffs).all()


def test_round_trip_random():
    for seed in range(200):
        t = random_tree(random.Random(seed))
        back = parse_game(format_game(t))
        assert same_playouts(t, back), seed


def test_irrational_payoffs_survive():
    t = build_game(0.6).game
    back = parse_game(format_game(t))
    assert back.nodes["tRr"].payoffs == t.nodes["tRr"].payoffs
    assert playout(back, {"V1": "E", "B2": "E", "V3": "R", "B3": "r"}).payoffs[1] == t.nodes["tRr"].payoffs[1]
