"""Exit criteria, one test each. The summary section lists PASS/FAIL per criterion."""

import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from bullygame import reproduce as repro
from bullygame.cli import main
from bullygame.efg import format_game, parse_game
from bullygame.equilibria import pure_nash, solve, spne_backward, spne_filter
from bullygame.game_tree import playout
from bullygame.generate import TreeShape, random_tree
from bullygame.model import (
    attrition_game,
    baseline_game,
    build_game,
    regime_boundary,
    stage1_critical_radicand,
    stage1_utility,
    stage3_utility,
)
from bullygame.strategies import induce_normal_form
from oracles import affine, as_assignments, bisect_root, brute_force_nash, plans, walk

SIX = {("IR", "Er"), ("IR", "Ed"), ("ID", "Er"), ("ID", "Ed"), ("ED", "Wr"), ("ED", "Wd")}
EIGHT = SIX | {("ER", "Wr"), ("ER", "Wd")}


@contextmanager
def within(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.2f}s, limit {seconds}s"


def nash_labels(tree):
    return {p.labels for p in pure_nash(induce_normal_form(tree))}


@pytest.mark.acceptance("C1: stage III Nash set is {(R,r),(D,d)}")
def test_c1_attrition():
    with within(1):
        assert nash_labels(attrition_game()) == {("R", "r"), ("D", "d")}


@pytest.mark.acceptance("C2: baseline Nash set is the six marked cells, checked by brute force")
def test_c2_baseline():
    with within(1):
        t = baseline_game()
        found = pure_nash(induce_normal_form(t))
        assert {p.labels for p in found} == SIX
        assert as_assignments(found) == brute_force_nash(t)


@pytest.mark.acceptance("C3: low control a in {0.4, 0.6, 0.89} keeps the six-profile Nash set")
def test_c3_low():
    with within(1):
        for a in (0.4, 0.6, 0.89):
            t = build_game(a).game
            assert nash_labels(t) == SIX, a
            assert as_assignments(pure_nash(induce_normal_form(t))) == brute_force_nash(t)


@pytest.mark.acceptance("C4: high control a in {0.95, 5, 10} gives the eight-profile Nash set")
def test_c4_high():
    with within(1):
        for a in (0.95, 5, 10):
            t = build_game(a).game
            assert nash_labels(t) == EIGHT, a
            assert as_assignments(pure_nash(induce_normal_form(t))) == brute_force_nash(t)


@pytest.mark.acceptance("C5: high control SPNE outcomes all (30,-30); a in {0, 0.6} has several")
def test_c5_reduction():
    with within(1):
        for a in (0.95, 5, 10):
            rep = solve(build_game(a).game)
            assert rep.spne
            assert {rep.outcomes[s.profile].payoffs for s in rep.spne} == {(30.0, -30.0)}, a
        for a in (0, 0.6):
            rep = solve(build_game(a).game)
            assert len({rep.outcomes[s.profile].payoffs for s in rep.spne}) > 1, a


@pytest.mark.acceptance("C6: utility endpoints 1.85, 1.35, -20.0918, -100.459")
def test_c6_endpoints():
    assert abs(stage1_utility(1, 0.4) - 1.85) <= 1e-12
    assert abs(stage1_utility(1, 0.9) - 1.35) <= 1e-12
    assert abs(stage3_utility(-1, 0.4) - (-20.0918)) <= 1e-3
    assert abs(stage3_utility(-1, 10) - (-100.459)) <= 1e-3


@pytest.mark.acceptance("C7: regime boundary 0.89181 +- 1e-4, bisection oracle")
def test_c7_boundary():
    a = regime_boundary()
    assert abs(a - 0.89181) <= 1e-4
    oracle = bisect_root(lambda v: stage3_utility(-1, v) + 30, 0.4, 10)
    assert abs(a - oracle) <= 1e-9


@pytest.mark.acceptance("C8: radicands 8/135 and 2/15 exact; decimals flagged with both values")
def test_c8_critical_audit():
    assert stage1_critical_radicand(0.4) == Fraction(8, 135)
    assert stage1_critical_radicand(0.9) == Fraction(2, 15)
    (rep,) = repro.run("low")
    text = repro.render([rep])
    flagged = {c.name: c for c in rep.checks if c.status == repro.DISCREPANCY}
    for a, (_, x, u) in repro.PRINTED_CRITICAL.items():
        for name, printed in ((f"critical point location at a={a}", x), (f"critical value at a={a}", u)):
            check = flagged[name]
            assert check.published == printed and check.derived != printed
            block = text[text.index(name):]
            assert f"published: {printed:g}" in block and "derived:" in block


@pytest.mark.acceptance("C9: 1000 random trees, backward == filter, SPNE in NE, affine, cells == playout")
def test_c9_properties():
    rng = random.Random(20260101)
    shape = TreeShape(max_infosets=3, max_actions=3, payoff_range=(-10, 10))
    with within(60):
        for k in range(1000):
            t = random_tree(random.Random(rng.getrandbits(64)), shape)
            nf = induce_normal_form(t)
            nash = pure_nash(nf)
            back = {s.profile for s in spne_backward(t)}
            assert as_assignments(back) == as_assignments(spne_filter(t)), k
            assert back <= nash, k
            player, scale, shift = rng.randrange(2), rng.choice([0.5, 2.0, 5.0]), rng.randint(-10, 10)
            moved = affine(t, player, scale, shift)
            assert {p.labels for p in pure_nash(induce_normal_form(moved))} == {p.labels for p in nash}, k
            assert {s.profile.labels for s in spne_backward(moved)} == {p.labels for p in back}, k
            for i in range(len(nf.row_strategies)):
                for j in range(len(nf.col_strategies)):
                    assert tuple(nf.payoffs[i, j]) == playout(t, nf.profile(i, j)).payoffs


def _isomorphic(a, b):
    for r in plans(a, 0):
        for c in plans(a, 1):
            if walk(a, {**r, **c}) != walk(b, {**r, **c}):
                return False
    return True


@pytest.mark.acceptance("C10: format/parse round trip; malformed files exit 2 with positions")
def test_c10_round_trip_and_errors(tmp_path, capsys):
    shipped = [baseline_game(), attrition_game()] + [build_game(a).game for a in (0.2, 0.6, 0.95, 10)]
    randoms = [random_tree(random.Random(s)) for s in range(300)]
    for t in shipped + randoms:
        assert _isomorphic(t, parse_game(format_game(t)))

    bad = {
        "unknown.efg": ("root n\nnode n decision 0 infoset N\nedge n a n9\n", "line 3, column 10"),
        "dup.efg": ("root t\nleaf t 0 0\nleaf t 1 1\n", "line 3, column 6"),
        "arity.efg": ("root t\nleaf t 0 0 0\n", "line 2, column 12"),
        "noroot.efg": ("leaf t 0 0\n", "line 1, column 1"),
    }
    for name, (text, where) in bad.items():
        path = tmp_path / name
        path.write_text(text)
        assert main(["solve", "--file", str(path)]) == 2, name
        assert where in capsys.readouterr().err, name
