"""The three-stage narcissist-bully game and its control-parameter family.

Stage I: the victim ignores (I) or escalates (E). Stage II: the bully
withdraws (W) or escalates (E). Stage III is a simultaneous war of attrition:
the victim retreats or destructs (R/D) and the bully, without seeing that
choice, retreats or destructs (r/d).

The control level ``a`` deforms two bully payoffs: the stage-I success payoff
``z(a)`` and the stage-III mutual-retreat payoff ``y(a)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .game_tree import Decision, GameError, GameTree, InformationSet, PlayerId, Terminal, subtree

VICTIM, BULLY = 0, 1

A_MAX = 10.0
LOW_START = 0.4
LOW_END = 0.9


@dataclass(frozen=True)
class Payoffs:
    """Leaf payoffs of the uncontrolled game as (victim, bully)."""

    ignore: tuple[float, float] = (-10.0, 10.0)
    withdraw: tuple[float, float] = (30.0, -30.0)
    retreat: tuple[float, float] = (-20.0, -20.0)
    destruct: tuple[float, float] = (-100.0, -100.0)


@dataclass(frozen=True)
class UtilityConstants:
    """Shape constants of the bully's control-dependent utilities.

    Stage I is ``cubic * x**3 - a * x`` on [0, 1]; stage III is
    ``-root_coef * sqrt(root_scale * a * (-x))`` on [-1, 0].
    """

    cubic: float = 2.25
    root_coef: float = 5.8
    root_scale: float = 30.0


DEFAULT_PAYOFFS = Payoffs()
DEFAULT_CONSTANTS = UtilityConstants()

# node and infoset ids of the built-in tree
ROOT, STAGE2, STAGE3, B3_AFTER_R, B3_AFTER_D = "v1", "b2", "v3", "b3R", "b3D"
LEAF_I, LEAF_W, LEAF_RR, LEAF_RD, LEAF_DR, LEAF_DD = "tI", "tW", "tRr", "tRd", "tDr", "tDd"
IS_V1, IS_B2, IS_V3, IS_B3 = "V1", "B2", "V3", "B3"


class Regime(enum.Enum):
    NEGLIGIBLE = "negligible"
    LOW = "low"
    HIGH = "high"


def _check_a(a: float) -> float:
    a = float(a)
    if not (0.0 <= a <= A_MAX) or math.isnan(a):
        raise GameError(f"control level a={a} outside [0, {A_MAX:g}]")
    return a


def classify(a: float) -> Regime:
    a = _check_a(a)
    if a < LOW_START:
        return Regime.NEGLIGIBLE
    if a <= LOW_END:
        return Regime.LOW
    return Regime.HIGH


@dataclass(frozen=True)
class ControlLevel:
    a: float

    def __post_init__(self):
        _check_a(self.a)

    @property
    def regime(self) -> Regime:
        return classify(self.a)


def stage1_utility(x: float, a: float, constants: UtilityConstants = DEFAULT_CONSTANTS) -> float:
    if not 0.0 <= x <= 1.0:
        raise GameError(f"stage I bullying level x={x} outside [0, 1]")
    if a < 0:
        raise GameError(f"control level a={a} is negative")
    return constants.cubic * x**3 - a * x


def stage1_critical_radicand(a: float, constants: UtilityConstants = DEFAULT_CONSTANTS) -> Fraction:
    """``a / (3 * cubic)`` as an exact rational, read from the decimal text of the inputs."""
    return Fraction(str(a)) / (3 * Fraction(str(constants.cubic)))


def stage1_critical_point(
    a: float, constants: UtilityConstants = DEFAULT_CONSTANTS
) -> tuple[float, float]:
    """Interior minimiser of the stage-I utility and its value."""
    slope_max = 3 * constants.cubic
    if not 0.0 < a <= slope_max:
        raise GameError(f"critical point outside domain for a={a} (needs 0 < a <= {slope_max:g})")
    x = math.sqrt(a / slope_max)
    return x, stage1_utility(x, a, constants)


def stage3_utility(x: float, a: float, constants: UtilityConstants = DEFAULT_CONSTANTS) -> float:
    if not -1.0 <= x <= 0.0:
        raise GameError(f"stage III bullying level x={x} outside [-1, 0]")
    if a < 0:
        raise GameError(f"control level a={a} is negative")
    return -constants.root_coef * math.sqrt(constants.root_scale * a * -x) + 0.0


def derive_payoffs(
    a: float,
    constants: UtilityConstants = DEFAULT_CONSTANTS,
    payoffs: Payoffs = DEFAULT_PAYOFFS,
) -> tuple[float, float]:
    """Bully's (stage-I success payoff z, stage-III retreat payoff y) at control level ``a``."""
    if classify(a) is Regime.NEGLIGIBLE:
        return payoffs.ignore[BULLY], payoffs.retreat[BULLY]
    z = max(0.0, stage1_utility(1.0, a, constants))
    y = stage3_utility(-1.0, a, constants)
    y = min(max(y, payoffs.destruct[BULLY]), payoffs.retreat[BULLY])
    return z, y


def regime_boundary(
    constants: UtilityConstants = DEFAULT_CONSTANTS, payoffs: Payoffs = DEFAULT_PAYOFFS
) -> float:
    """Control level where the unclamped retreat payoff equals the withdraw payoff."""
    level = -payoffs.withdraw[BULLY] / constants.root_coef
    return level**2 / constants.root_scale


def bully_game(payoffs: Payoffs = DEFAULT_PAYOFFS) -> GameTree:
    nodes = {
        ROOT: Decision(ROOT, VICTIM, (("I", LEAF_I), ("E", STAGE2))),
        LEAF_I: Terminal(LEAF_I, payoffs.ignore),
        STAGE2: Decision(STAGE2, BULLY, (("W", LEAF_W), ("E", STAGE3))),
        STAGE3: Decision(STAGE3, VICTIM, (("R", B3_AFTER_R), ("D", B3_AFTER_D))),
        B3_AFTER_R: Decision(B3_AFTER_R, BULLY, (("r", LEAF_RR), ("d", LEAF_RD))),
        LEAF_RR: Terminal(LEAF_RR, payoffs.retreat),
        LEAF_RD: Terminal(LEAF_RD, payoffs.destruct),
        B3_AFTER_D: Decision(B3_AFTER_D, BULLY, (("r", LEAF_DR), ("d", LEAF_DD))),
        LEAF_DR: Terminal(LEAF_DR, payoffs.destruct),
        LEAF_DD: Terminal(LEAF_DD, payoffs.destruct),
        LEAF_W: Terminal(LEAF_W, payoffs.withdraw),
    }
    infosets = (
        InformationSet(IS_V1, VICTIM, frozenset({ROOT})),
        InformationSet(IS_B2, BULLY, frozenset({STAGE2})),
        InformationSet(IS_V3, VICTIM, frozenset({STAGE3})),
        InformationSet(IS_B3, BULLY, frozenset({B3_AFTER_R, B3_AFTER_D})),
    )
    players = (PlayerId(VICTIM, "victim"), PlayerId(BULLY, "bully"))
    return GameTree(players, ROOT, nodes, infosets)


def baseline_game() -> GameTree:
    return bully_game(DEFAULT_PAYOFFS)


def attrition_game(payoffs: Payoffs = DEFAULT_PAYOFFS) -> GameTree:
    """The stage-III war of attrition played on its own."""
    return subtree(bully_game(payoffs), STAGE3)


@dataclass(frozen=True, eq=False)
class ControlledModel:
    level: ControlLevel
    z: float
    y: float
    game: GameTree

    @property
    def regime(self) -> Regime:
        return self.level.regime


def controlled_payoffs(a: float, constants: UtilityConstants = DEFAULT_CONSTANTS,
                       base: Payoffs = DEFAULT_PAYOFFS) -> Payoffs:
    z, y = derive_payoffs(a, constants, base)
    return Payoffs(
        ignore=(base.ignore[VICTIM], z),
        withdraw=base.withdraw,
        retreat=(base.retreat[VICTIM], y),
        destruct=base.destruct,
    )


def build_game(a: float, constants: UtilityConstants = DEFAULT_CONSTANTS) -> ControlledModel:
    level = ControlLevel(a)
    pay = controlled_payoffs(a, constants)
    return ControlledModel(level, pay.ignore[BULLY], pay.retreat[BULLY], bully_game(pay))


@dataclass(frozen=True)
class BullyUtilityCurve:
    stage: str  # "I" or "III"
    a: float
    x: np.ndarray
    u: np.ndarray

    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.x.tolist(), self.u.tolist()))


def sample_curves(
    a: float, n: int, constants: UtilityConstants = DEFAULT_CONSTANTS
) -> tuple[BullyUtilityCurve, BullyUtilityCurve]:
    _check_a(a)
    if n < 2:
        raise GameError(f"need at least 2 samples per curve, got {n}")
    x1 = np.linspace(0.0, 1.0, n)
    x3 = np.linspace(-1.0, 0.0, n)
    u1 = np.array([stage1_utility(float(x), a, constants) for x in x1])
    u3 = np.array([stage3_utility(float(x), a, constants) for x in x3])
    return BullyUtilityCurve("I", a, x1, u1), BullyUtilityCurve("III", a, x3, u3)
