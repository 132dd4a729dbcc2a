"""Pure strategies, profiles, and the induced normal form."""

from __future__ import annotations

import itertools
from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from .game_tree import GameError, GameTree, ensure_valid, playout

MAX_PROFILES = 10**6


@dataclass(frozen=True)
class PureStrategy:
    owner: int
    assignment: tuple[tuple[str, str], ...]  # (infoset id, action), infoset pre-order
    label: str

    def action(self, infoset_id: str) -> str:
        return dict(self.assignment)[infoset_id]

    def __str__(self) -> str:
        return self.label or "-"


@dataclass(frozen=True)
class StrategyProfile:
    strategies: tuple[PureStrategy, PureStrategy]

    def __post_init__(self):
        owners = [s.owner for s in self.strategies]
        if sorted(owners) != [0, 1]:
            raise GameError(f"profile needs one strategy per player, got owners {owners}")

    def __getitem__(self, player: int) -> PureStrategy:
        return self.strategies[player]

    def assignment(self) -> dict[str, str]:
        return {k: v for s in self.strategies for k, v in s.assignment}

    @property
    def labels(self) -> tuple[str, str]:
        return (str(self.strategies[0]), str(self.strategies[1]))

    def __str__(self) -> str:
        return "({}, {})".format(*self.labels)


def _labels(choices: list[tuple[str, ...]]) -> list[str]:
    plain = ["".join(c) for c in choices]
    if len(set(plain)) == len(plain):
        return plain
    return [".".join(c) for c in choices]


def enumerate_strategies(tree: GameTree, player: int) -> list[PureStrategy]:
    """Cartesian product of actions over the player's infosets.

    Infosets are ordered by first pre-order visit and actions by their order
    at the node, so the baseline victim gets IR, ID, ER, ED.
    """
    ensure_valid(tree)
    tree.player(player)
    isets = tree.player_infosets(player)
    options = [tree.actions_at(iset.id) for iset in isets]
    choices = list(itertools.product(*options))
    labels = _labels(choices)
    ids = [iset.id for iset in isets]
    return [
        PureStrategy(player, tuple(zip(ids, choice)), label)
        for choice, label in zip(choices, labels)
    ]


def make_strategy(tree: GameTree, player: int, assignment: Mapping[str, str]) -> PureStrategy:
    """Build the strategy of ``tree`` that matches an infoset-to-action mapping."""
    ids = [iset.id for iset in tree.player_infosets(player)]
    missing = [i for i in ids if i not in assignment]
    if missing:
        raise GameError(f"incomplete strategy: no action for {missing}")
    want = tuple((i, assignment[i]) for i in ids)
    for s in enumerate_strategies(tree, player):
        if s.assignment == want:
            return s
    raise GameError(f"invalid action in {dict(want)}")


@dataclass(frozen=True, eq=False)
class NormalFormGame:
    row_strategies: tuple[PureStrategy, ...]
    col_strategies: tuple[PureStrategy, ...]
    payoffs: np.ndarray  # shape (rows, cols, 2)
    player_names: tuple[str, str] = ("player 0", "player 1")

    def __post_init__(self):
        shape = (len(self.row_strategies), len(self.col_strategies), 2)
        if self.payoffs.shape != shape:
            raise GameError(f"payoff matrix shape {self.payoffs.shape} != {shape}")

    def strategies(self, player: int) -> tuple[PureStrategy, ...]:
        return self.row_strategies if player == 0 else self.col_strategies

    def index(self, strategy: PureStrategy) -> int:
        return self.strategies(strategy.owner).index(strategy)

    def profile(self, i: int, j: int) -> StrategyProfile:
        return StrategyProfile((self.row_strategies[i], self.col_strategies[j]))

    def cell(self, profile: StrategyProfile) -> tuple[float, float]:
        i, j = self.index(profile[0]), self.index(profile[1])
        return float(self.payoffs[i, j, 0]), float(self.payoffs[i, j, 1])

    @classmethod
    def from_matrix(cls, row_labels, col_labels, cells, player_names=("player 0", "player 1")):
        """Bare matrix game; each strategy is one choice at a synthetic infoset."""
        rows = tuple(PureStrategy(0, (("row", lab),), lab) for lab in row_labels)
        cols = tuple(PureStrategy(1, (("col", lab),), lab) for lab in col_labels)
        return cls(rows, cols, np.asarray(cells, dtype=float), tuple(player_names))


def induce_normal_form(tree: GameTree) -> NormalFormGame:
    ensure_valid(tree)
    rows = enumerate_strategies(tree, 0)
    cols = enumerate_strategies(tree, 1)
    if len(rows) * len(cols) > MAX_PROFILES:
        raise GameError(f"{len(rows) * len(cols)} profiles exceeds the limit of {MAX_PROFILES}")
    pay = np.empty((len(rows), len(cols), 2))
    for i, r in enumerate(rows):
        for j, c in enumerate(cols):
            pay[i, j] = playout(tree, StrategyProfile((r, c))).payoffs
    names = (tree.player(0).name, tree.player(1).name)
    return NormalFormGame(tuple(rows), tuple(cols), pay, names)


def strategy_by_label(nf: NormalFormGame, label: str) -> PureStrategy:
    hits = [s for s in nf.row_strategies + nf.col_strategies if s.label == label]
    if not hits:
        raise GameError(f"unknown strategy label {label!r}")
    if len(hits) > 1:
        raise GameError(f"ambiguous strategy label {label!r}")
    return hits[0]


def profile_by_labels(nf: NormalFormGame, row: str, col: str) -> StrategyProfile:
    r = [s for s in nf.row_strategies if s.label == row]
    c = [s for s in nf.col_strategies if s.label == col]
    if len(r) != 1 or len(c) != 1:
        raise GameError(f"no unique profile ({row}, {col})")
    return StrategyProfile((r[0], c[0]))
