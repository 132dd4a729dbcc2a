"""Pure Nash and subgame-perfect equilibria.

Two independent routes to subgame perfection live here:

* :func:`spne_backward` solves subgames deepest first, collapses each solved
  subgame into a terminal per equilibrium, and branches on every equilibrium
  (and every tie) it meets.
* :func:`spne_filter` enumerates every profile and keeps those whose
  restriction to each subgame is a Nash equilibrium of that subgame.

Both use weak deviations: a deviation must gain more than ``tol``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .game_tree import (
    DEFAULT_TOL,
    Decision,
    GameTree,
    Outcome,
    ensure_valid,
    playout,
    replace_with_terminals,
    subgame_roots,
    subtree,
)
from .strategies import (
    NormalFormGame,
    PureStrategy,
    StrategyProfile,
    induce_normal_form,
    make_strategy,
)


def best_responses(
    nf: NormalFormGame, player: int, opponent_strategy: PureStrategy, tol: float = DEFAULT_TOL
) -> frozenset[PureStrategy]:
    if player == 0:
        u = nf.payoffs[:, nf.index(opponent_strategy), 0]
    else:
        u = nf.payoffs[nf.index(opponent_strategy), :, 1]
    own = nf.strategies(player)
    return frozenset(own[k] for k in np.flatnonzero(u >= u.max() - tol))


def best_response_mask(nf: NormalFormGame, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Boolean (rows, cols, 2): is each payoff entry a best response for its player."""
    pay = nf.payoffs
    mask = np.empty(pay.shape, dtype=bool)
    mask[..., 0] = pay[..., 0] >= pay[..., 0].max(axis=0, keepdims=True) - tol
    mask[..., 1] = pay[..., 1] >= pay[..., 1].max(axis=1, keepdims=True) - tol
    return mask


def pure_nash(nf: NormalFormGame, tol: float = DEFAULT_TOL) -> frozenset[StrategyProfile]:
    mask = best_response_mask(nf, tol)
    both = mask[..., 0] & mask[..., 1]
    return frozenset(nf.profile(i, j) for i, j in zip(*np.nonzero(both)))


@dataclass(frozen=True)
class TraceStep:
    """One solved subgame on the way to an SPNE: its root and the local equilibrium chosen."""

    subgame: str
    choice: tuple[tuple[str, str], ...]  # (infoset id, action) fixed inside this subgame
    value: tuple[float, ...]

    def __str__(self) -> str:
        acts = ",".join(a for _, a in self.choice) or "-"
        return f"{self.subgame}:{acts}"


@dataclass(frozen=True)
class SPNE:
    profile: StrategyProfile
    trace: tuple[TraceStep, ...]


@dataclass(frozen=True)
class EmptyContinuation:
    """A backward-induction branch that died because a reduced subgame had no pure equilibrium."""

    subgame: str
    trace: tuple[TraceStep, ...]


@dataclass
class EquilibriumReport:
    nf: NormalFormGame
    nash: frozenset[StrategyProfile]
    spne: list[SPNE]
    outcomes: dict[StrategyProfile, Outcome]
    tolerance: float
    empty: list[EmptyContinuation] = field(default_factory=list)

    @property
    def spne_profiles(self) -> frozenset[StrategyProfile]:
        return frozenset(s.profile for s in self.spne)


@dataclass(frozen=True)
class _Branch:
    assignment: tuple[tuple[str, str], ...]
    value: tuple[float, ...]
    trace: tuple[TraceStep, ...]


def _children_subgames(tree: GameTree, root: str, roots: set[str]) -> list[str]:
    """Maximal proper subgames strictly below ``root``, in pre-order."""
    node = tree.nodes[root]
    if not isinstance(node, Decision):
        return []
    out = []
    stack = [c for _, c in reversed(node.actions)]
    while stack:
        nid = stack.pop()
        if nid in roots:
            out.append(nid)
            continue
        node = tree.nodes[nid]
        if isinstance(node, Decision):
            stack.extend(c for _, c in reversed(node.actions))
    return out


def _solve_subgame(tree, root, roots, tol, empty) -> list[_Branch]:
    kids = _children_subgames(tree, root, roots)
    solved = [_solve_subgame(tree, k, roots, tol, empty) for k in kids]
    local = subtree(tree, root)
    branches = []
    for combo in itertools.product(*solved):
        carried = tuple(kv for b in combo for kv in b.assignment)
        trace = tuple(step for b in combo for step in b.trace)
        reduced = replace_with_terminals(local, {k: b.value for k, b in zip(kids, combo)})
        nf = induce_normal_form(reduced)
        eqs = sorted(pure_nash(nf, tol), key=lambda p: (nf.index(p[0]), nf.index(p[1])))
        if not eqs:
            empty.append(EmptyContinuation(root, trace))
            continue
        for eq in eqs:
            choice = eq[0].assignment + eq[1].assignment
            value = nf.cell(eq)
            step = TraceStep(root, choice, value)
            branches.append(_Branch(carried + choice, value, trace + (step,)))
    return branches


def spne_backward(tree: GameTree, tol: float = DEFAULT_TOL, empty: list | None = None) -> list[SPNE]:
    """Subgame-perfect equilibria by backward induction over subgames.

    Each maximal proper subgame is solved first; the enclosing game is then
    solved once per combination of subgame equilibria, with those subgames
    collapsed to terminals. Dead branches are appended to ``empty``.
    """
    ensure_valid(tree)
    roots = subgame_roots(tree)
    sink = [] if empty is None else empty
    out = []
    for b in _solve_subgame(tree, tree.root, set(roots), tol, sink):
        a = dict(b.assignment)
        profile = StrategyProfile((make_strategy(tree, 0, a), make_strategy(tree, 1, a)))
        out.append(SPNE(profile, b.trace))
    return out


def restrict(profile: StrategyProfile, nf: NormalFormGame) -> StrategyProfile:
    """Project a full-game profile onto the strategies of a subgame's normal form."""
    full = profile.assignment()
    picked = []
    for player in (0, 1):
        for s in nf.strategies(player):
            if all(full.get(k) == v for k, v in s.assignment):
                picked.append(s)
                break
    return StrategyProfile(tuple(picked))


def spne_filter(tree: GameTree, tol: float = DEFAULT_TOL) -> frozenset[StrategyProfile]:
    """Profiles whose restriction to every subgame is a Nash equilibrium there."""
    ensure_valid(tree)
    full = induce_normal_form(tree)
    checks = []
    for root in subgame_roots(tree):
        sub_nf = induce_normal_form(subtree(tree, root))
        checks.append((sub_nf, pure_nash(sub_nf, tol)))
    keep = set()
    for i, j in itertools.product(range(len(full.row_strategies)), range(len(full.col_strategies))):
        profile = full.profile(i, j)
        if all(restrict(profile, nf) in eqs for nf, eqs in checks):
            keep.add(profile)
    return frozenset(keep)


def solve(tree: GameTree, tol: float = DEFAULT_TOL) -> EquilibriumReport:
    nf = induce_normal_form(tree)
    nash = pure_nash(nf, tol)
    empty: list[EmptyContinuation] = []
    spne = spne_backward(tree, tol, empty)
    outcomes = {p: playout(tree, p) for p in nash | {s.profile for s in spne}}
    return EquilibriumReport(nf, nash, spne, outcomes, tol, empty)


def sort_profiles(nf: NormalFormGame, profiles) -> list[StrategyProfile]:
    return sorted(profiles, key=lambda p: (nf.index(p[0]), nf.index(p[1])))
