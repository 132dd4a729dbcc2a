"""Pure-strategy equilibria of finite two-player extensive-form games, with the
three-stage bully / war-of-attrition game family built in."""

from .equilibria import (
    EquilibriumReport,
    best_responses,
    pure_nash,
    solve,
    spne_backward,
    spne_filter,
)
from .game_tree import (
    DEFAULT_TOL,
    Decision,
    GameError,
    GameTree,
    InformationSet,
    PlayerId,
    Terminal,
    playout,
    subgame_roots,
    validate,
)
from .model import baseline_game, build_game
from .strategies import (
    NormalFormGame,
    PureStrategy,
    StrategyProfile,
    enumerate_strategies,
    induce_normal_form,
    strategy_by_label,
)

__all__ = [
    "DEFAULT_TOL", "Decision", "EquilibriumReport", "GameError", "GameTree", "InformationSet",
    "NormalFormGame", "PlayerId", "PureStrategy", "StrategyProfile", "Terminal", "baseline_game",
    "best_responses", "build_game", "enumerate_strategies", "induce_normal_form", "playout",
    "pure_nash", "solve", "spne_backward", "spne_filter", "strategy_by_label", "subgame_roots",
    "validate",
]
