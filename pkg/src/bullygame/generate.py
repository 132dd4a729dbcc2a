"""Random valid game trees for property tests and sweeps."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .game_tree import Decision, GameTree, InformationSet, PlayerId, Terminal


@dataclass(frozen=True)
class TreeShape:
    max_infosets: int = 3  # per player
    max_actions: int = 3
    max_members: int = 2  # nodes per information set
    payoff_range: tuple[int, int] = (-10, 10)


def random_tree(rng: random.Random, shape: TreeShape = TreeShape()) -> GameTree:
    """Grow a tree by dropping infoset members onto open leaves.

    Each information set gets a fixed action count and 1..max_members nodes.
    Members are placed in random order, each on a randomly chosen open leaf
    slot, so sets can span branches (imperfect information) or even nest.
    Remaining slots become terminals with integer payoffs.
    """
    plan = []  # (infoset id, owner, n actions)
    for player in (0, 1):
        for k in range(rng.randint(0, shape.max_infosets)):
            plan.append((f"p{player}s{k}", player, rng.randint(1, shape.max_actions)))
    if not plan:
        plan.append(("p0s0", 0, rng.randint(1, shape.max_actions)))

    members = [(iset, owner, n) for iset, owner, n in plan
               for _ in range(rng.randint(1, shape.max_members))]
    rng.shuffle(members)

    nodes: dict[str, Decision | Terminal] = {}
    children: dict[str, list[tuple[str, str]]] = {}
    owners: dict[str, tuple[int, int]] = {}
    groups: dict[str, set[str]] = {}
    open_slots = ["n0"]
    counter = 0
    for iset, owner, n in members:
        slot = open_slots.pop(rng.randrange(len(open_slots)))
        kids = []
        for a in range(n):
            counter += 1
            kid = f"n{counter}"
            kids.append((chr(ord("a") + a) if owner == 0 else chr(ord("A") + a), kid))
            open_slots.append(kid)
        children[slot] = kids
        owners[slot] = (owner, n)
        groups.setdefault(iset, set()).add(slot)

    lo, hi = shape.payoff_range
    for nid, kids in children.items():
        nodes[nid] = Decision(nid, owners[nid][0], tuple(kids))
    for nid in open_slots:
        nodes[nid] = Terminal(nid, (float(rng.randint(lo, hi)), float(rng.randint(lo, hi))))

    owner_of = {iset: owner for iset, owner, _ in plan}
    infosets = tuple(InformationSet(i, owner_of[i], frozenset(m)) for i, m in groups.items())
    return GameTree((PlayerId(0, "row"), PlayerId(1, "col")), "n0", nodes, infosets)
