import pytest

from bullygame.equilibria import best_responses, pure_nash, solve, spne_backward, spne_filter
from bullygame.game_tree import Decision, GameTree, InformationSet, PlayerId, Terminal
from bullygame.model import attrition_game, baseline_game, build_game
from bullygame.strategies import NormalFormGame, induce_normal_form, strategy_by_label
from oracles import as_assignments, brute_force_nash
from test_game_tree import one_decision, perfect_info

SIX = {("IR", "Er"), ("IR", "Ed"), ("ID", "Er"), ("ID", "Ed"), ("ED", "Wr"), ("ED", "Wd")}


def labels(profiles):
    return {p.labels for p in profiles}


def test_victim_best_response_to_withdraw(baseline_nf):
    br = best_responses(baseline_nf, 0, strategy_by_label(baseline_nf, "Wr"))
    assert {s.label for s in br} == {"ER", "ED"}


def test_bully_indifferent_after_ignore(baseline_nf):
    br = best_responses(baseline_nf, 1, strategy_by_label(baseline_nf, "IR"))
    assert {s.label for s in br} == {"Wr", "Wd", "Er", "Ed"}


def test_one_by_one():
    nf = NormalFormGame.from_matrix(["a"], ["b"], [[[1, 2]]])
    assert {s.label for s in best_responses(nf, 0, nf.col_strategies[0])} == {"a"}
    assert labels(pure_nash(nf)) == {("a", "b")}


def test_baseline_nash(baseline, baseline_nf):
    found = pure_nash(baseline_nf)
    assert labels(found) == SIX
    assert as_assignments(found) == brute_force_nash(baseline)


def test_attrition_nash(attrition_nf):
    assert labels(pure_nash(attrition_nf)) == {("R", "r"), ("D", "d")}


def test_strict_deviation_threshold():
    # a gain of exactly tol does not break an equilibrium, anything above does
    nf = NormalFormGame.from_matrix(["a", "b"], ["c"], [[[0, 0]], [[1e-3, 0]]])
    assert labels(pure_nash(nf, tol=1e-3)) == {("a", "c"), ("b", "c")}
    assert labels(pure_nash(nf, tol=9e-4)) == {("b", "c")}


def spne_with_trace(tree):
    return {s.profile.labels: [str(step) for step in s.trace] for s in spne_backward(tree)}


def test_baseline_spne_branches():
    got = spne_with_trace(baseline_game())
    assert got == {
        ("IR", "Er"): ["v3:R,r", "b2:E", "v1:I"],
        ("ED", "Wd"): ["v3:D,d", "b2:W", "v1:E"],
    }


def test_high_control_spne():
    got = spne_with_trace(build_game(5).game)
    assert got == {
        ("ER", "Wr"): ["v3:R,r", "b2:W", "v1:E"],
        ("ED", "Wd"): ["v3:D,d", "b2:W", "v1:E"],
    }


def test_high_control_spne_at_clamp():
    # y(10) is clamped onto -100, so the bully is indifferent after R and a third branch opens
    rep = solve(build_game(10).game)
    assert labels(rep.spne_profiles) == {("ER", "Wr"), ("ER", "Wd"), ("ED", "Wd")}
    assert {rep.outcomes[p].payoffs for p in rep.spne_profiles} == {(30, -30)}


def test_perfect_information_unique():
    t = perfect_info()  # payoffs (i, -i) at t1..t4, all distinct
    (only,) = spne_backward(t)
    # col picks l at both nodes (-1 > -2, -3 > -4); row then prefers R (3 > 1)
    assert only.profile.labels == ("R", "ll")
    assert spne_filter(t) == {only.profile}


def test_filter_matches_backward_on_model_games():
    for tree in (baseline_game(), attrition_game(), build_game(0.6).game, build_game(10).game):
        assert {s.profile for s in spne_backward(tree)} == spne_filter(tree)


def test_single_node_spne_is_nash():
    t = one_decision()
    assert spne_filter(t) == pure_nash(induce_normal_form(t))


def test_attrition_as_whole_game():
    assert labels(spne_filter(attrition_game())) == {("R", "r"), ("D", "d")}


def matching_pennies_subgame():
    """Root offers an outside option; the inside is matching pennies, which has no pure equilibrium."""
    P = (PlayerId(0, "row"), PlayerId(1, "col"))
    nodes = {
        "r": Decision("r", 0, (("out", "t0"), ("in", "m"))),
        "t0": Terminal("t0", (0.0, 0.0)),
        "m": Decision("m", 1, (("S", "p"),)),  # singleton subgame root wrapping the simultaneous part
        "p": Decision("p", 0, (("H", "qH"), ("T", "qT"))),
        "qH": Decision("qH", 1, (("h", "a"), ("t", "b"))),
        "qT": Decision("qT", 1, (("h", "c"), ("t", "d"))),
        "a": Terminal("a", (1.0, -1.0)), "b": Terminal("b", (-1.0, 1.0)),
        "c": Terminal("c", (-1.0, 1.0)), "d": Terminal("d", (1.0, -1.0)),
    }
    isets = (
        InformationSet("R", 0, frozenset({"r"})),
        InformationSet("M", 1, frozenset({"m"})),
        InformationSet("P", 0, frozenset({"p"})),
        InformationSet("Q", 1, frozenset({"qH", "qT"})),
    )
    return GameTree(P, "r", nodes, isets)


def test_empty_continuation_is_reported_not_raised():
    t = matching_pennies_subgame()
    rep = solve(t)
    assert rep.spne == []
    assert {e.subgame for e in rep.empty} == {"p"}
    assert spne_filter(t) == frozenset()


def test_report_invariants(baseline):
    rep = solve(baseline)
    assert rep.spne_profiles <= rep.nash
    assert set(rep.outcomes) == set(rep.nash) | rep.spne_profiles
    assert rep.tolerance == pytest.approx(1e-9)


def test_deterministic(baseline):
    a, b = solve(baseline), solve(baseline)
    assert [s.profile for s in a.spne] == [s.profile for s in b.spne]
    assert a.nash == b.nash
