"""Finite two-player extensive-form games with explicit information sets.

A :class:`GameTree` is a plain immutable container. Nothing is checked at
construction time; call :func:`validate` to get the list of broken rules, or
:func:`ensure_valid` to raise on the first report that is not clean.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Union

if TYPE_CHECKING:
    from .strategies import StrategyProfile

DEFAULT_TOL = 1e-9


class GameError(ValueError):
    """Base class for malformed games and bad solver inputs."""


class InvalidGameError(GameError):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("invalid game: " + "; ".join(str(v) for v in report.violations))


class IncompleteStrategyError(GameError):
    pass


@dataclass(frozen=True)
class PlayerId:
    index: int
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Decision:
    id: str
    owner: int
    actions: tuple[tuple[str, str], ...]  # (label, child id), in display order

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.actions)

    def child(self, label: str) -> str:
        for lab, child in self.actions:
            if lab == label:
                return child
        raise KeyError(label)


@dataclass(frozen=True)
class Terminal:
    id: str
    payoffs: tuple[float, ...]


Node = Union[Decision, Terminal]


@dataclass(frozen=True)
class InformationSet:
    id: str
    owner: int
    members: frozenset[str]


@dataclass(frozen=True)
class Violation:
    subject: str
    rule: str
    detail: str = ""

    def __str__(self) -> str:
        text = f"{self.subject}: {self.rule}"
        return f"{text} ({self.detail})" if self.detail else text


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}


@dataclass(frozen=True, eq=False)
class GameTree:
    players: tuple[PlayerId, ...]
    root: str
    nodes: Mapping[str, Node]
    infosets: tuple[InformationSet, ...] = field(default=())

    # Structural lookups. Safe to cache because the tree never changes.

    @cached_property
    def infoset_of(self) -> dict[str, InformationSet]:
        out = {}
        for iset in self.infosets:
            for m in iset.members:
                out.setdefault(m, iset)
        return out

    @cached_property
    def infoset_by_id(self) -> dict[str, InformationSet]:
        return {iset.id: iset for iset in self.infosets}

    @cached_property
    def parent(self) -> dict[str, str]:
        out = {}
        for node in self.nodes.values():
            if isinstance(node, Decision):
                for _, child in node.actions:
                    out.setdefault(child, node.id)
        return out

    @cached_property
    def preorder(self) -> tuple[str, ...]:
        """Node ids in pre-order, children visited in action order."""
        order, stack, seen = [], [self.root], set()
        while stack:
            nid = stack.pop()
            if nid in seen or nid not in self.nodes:
                continue
            seen.add(nid)
            order.append(nid)
            node = self.nodes[nid]
            if isinstance(node, Decision):
                stack.extend(child for _, child in reversed(node.actions))
        return tuple(order)

    @cached_property
    def depth(self) -> dict[str, int]:
        out = {self.root: 0}
        for nid in self.preorder:
            node = self.nodes[nid]
            if isinstance(node, Decision):
                for _, child in node.actions:
                    out.setdefault(child, out[nid] + 1)
        return out

    def player_infosets(self, player: int) -> tuple[InformationSet, ...]:
        """The player's information sets in order of first pre-order visit."""
        seen: dict[str, InformationSet] = {}
        for nid in self.preorder:
            iset = self.infoset_of.get(nid)
            if iset is not None and iset.owner == player and iset.id not in seen:
                seen[iset.id] = iset
        return tuple(seen.values())

    def actions_at(self, infoset_id: str) -> tuple[str, ...]:
        iset = self.infoset_by_id[infoset_id]
        node = self.nodes[min(iset.members, key=self.preorder.index)]
        assert isinstance(node, Decision)
        return node.labels

    def subtree_ids(self, node_id: str) -> list[str]:
        out, stack = [], [node_id]
        while stack:
            nid = stack.pop()
            out.append(nid)
            node = self.nodes[nid]
            if isinstance(node, Decision):
                stack.extend(child for _, child in node.actions)
        return out

    def player(self, index: int) -> PlayerId:
        for p in self.players:
            if p.index == index:
                return p
        raise GameError(f"player {index} not in game")


def validate(tree: GameTree) -> ValidationReport:
    out: list[Violation] = []
    bad = out.append

    indices = [p.index for p in tree.players]
    if len(tree.players) != 2:
        bad(Violation("players", "exactly two players", f"got {len(tree.players)}"))
    if len(set(indices)) != len(indices) or not set(indices) <= {0, 1}:
        bad(Violation("players", "player indices must be distinct and in {0, 1}", str(indices)))
    n_players = len(tree.players)

    if tree.root not in tree.nodes:
        bad(Violation(tree.root, "root does not exist"))
        return ValidationReport(tuple(out))

    parents: dict[str, list[str]] = {}
    for nid, node in tree.nodes.items():
        if node.id != nid:
            bad(Violation(nid, "node id mismatch", f"keyed as {nid!r}, named {node.id!r}"))
        if isinstance(node, Terminal):
            if len(node.payoffs) != n_players:
                bad(Violation(nid, "payoff arity mismatch",
                              f"{len(node.payoffs)} payoffs for {n_players} players"))
            continue
        if node.owner not in indices:
            bad(Violation(nid, "unknown owner", str(node.owner)))
        if not node.actions:
            bad(Violation(nid, "decision node without actions"))
        labels = node.labels
        if any(not lab for lab in labels):
            bad(Violation(nid, "empty action label"))
        if len(set(labels)) != len(labels):
            bad(Violation(nid, "duplicate action label", ",".join(labels)))
        for label, child in node.actions:
            if child not in tree.nodes:
                bad(Violation(nid, "unknown child", f"{label} -> {child}"))
            else:
                parents.setdefault(child, []).append(nid)

    for child, ps in parents.items():
        if child == tree.root:
            bad(Violation(child, "root has a parent", ",".join(ps)))
        elif len(ps) > 1:
            bad(Violation(child, "node has several parents", ",".join(ps)))

    # reachability + cycle check, tolerant of the broken edges reported above
    reached: set[str] = set()
    stack = [tree.root]
    cyclic = False
    while stack:
        nid = stack.pop()
        if nid in reached:
            cyclic = True
            continue
        reached.add(nid)
        node = tree.nodes[nid]
        if isinstance(node, Decision):
            stack.extend(c for _, c in node.actions if c in tree.nodes)
    if cyclic:
        bad(Violation(tree.root, "node graph is not a tree", "cycle or shared child"))
    for nid in tree.nodes:
        if nid not in reached:
            bad(Violation(nid, "unreachable from root"))

    membership: dict[str, list[str]] = {}
    seen_ids: set[str] = set()
    for iset in tree.infosets:
        if iset.id in seen_ids:
            bad(Violation(iset.id, "duplicate infoset id"))
        seen_ids.add(iset.id)
        if not iset.members:
            bad(Violation(iset.id, "empty infoset"))
            continue
        label_lists = set()
        for m in sorted(iset.members):
            node = tree.nodes.get(m)
            if node is None:
                bad(Violation(iset.id, "unknown infoset member", m))
                continue
            if not isinstance(node, Decision):
                bad(Violation(iset.id, "terminal node in infoset", m))
                continue
            membership.setdefault(m, []).append(iset.id)
            if node.owner != iset.owner:
                bad(Violation(iset.id, "infoset owner mismatch",
                              f"{m} belongs to player {node.owner}"))
            label_lists.add(node.labels)
        if len(label_lists) > 1:
            bad(Violation(iset.id, "infoset action mismatch",
                          " vs ".join("(" + ",".join(ls) + ")" for ls in sorted(label_lists))))

    for nid, node in tree.nodes.items():
        if isinstance(node, Decision):
            n = len(membership.get(nid, ()))
            if n == 0:
                bad(Violation(nid, "decision node in no infoset"))
            elif n > 1:
                bad(Violation(nid, "decision node in several infosets",
                              ",".join(membership[nid])))

    return ValidationReport(tuple(out))


def ensure_valid(tree: GameTree) -> GameTree:
    report = validate(tree)
    if not report.ok:
        raise InvalidGameError(report)
    return tree


def subgame_roots(tree: GameTree) -> list[str]:
    """Decision nodes that root a subgame, deepest first.

    A node qualifies when its information set is a singleton and every
    information set touching its subtree lies entirely inside it. The root
    always qualifies. Ties in depth keep pre-order.
    """
    roots = []
    for nid in tree.preorder:
        node = tree.nodes[nid]
        if not isinstance(node, Decision):
            continue
        if nid != tree.root and tree.infoset_of[nid].members != frozenset({nid}):
            continue
        inside = set(tree.subtree_ids(nid))
        if all(tree.infoset_of[m].members <= inside
               for m in inside if isinstance(tree.nodes[m], Decision)):
            roots.append(nid)
    return sorted(roots, key=lambda n: -tree.depth[n])  # stable sort keeps pre-order


def subtree(tree: GameTree, node_id: str) -> GameTree:
    """The game rooted at ``node_id``, with information sets clipped to it."""
    keep = set(tree.subtree_ids(node_id))
    nodes = {nid: tree.nodes[nid] for nid in tree.preorder if nid in keep}
    infosets = []
    for iset in tree.infosets:
        members = iset.members & keep
        if members:
            infosets.append(InformationSet(iset.id, iset.owner, frozenset(members)))
    return GameTree(tree.players, node_id, nodes, tuple(infosets))


def replace_with_terminals(tree: GameTree, values: Mapping[str, tuple[float, ...]]) -> GameTree:
    """Collapse each listed node's subtree into a single terminal carrying the given payoffs."""
    dropped: set[str] = set()
    for nid in values:
        dropped.update(tree.subtree_ids(nid))
        dropped.discard(nid)
    nodes: dict[str, Node] = {}
    for nid in tree.preorder:
        if nid in dropped:
            continue
        nodes[nid] = Terminal(nid, tuple(values[nid])) if nid in values else tree.nodes[nid]
    gone = dropped | set(values)
    infosets = []
    for iset in tree.infosets:
        members = iset.members - gone
        if members:
            infosets.append(InformationSet(iset.id, iset.owner, frozenset(members)))
    return GameTree(tree.players, tree.root, nodes, tuple(infosets))


@dataclass(frozen=True)
class Outcome:
    payoffs: tuple[float, ...]
    path: tuple[str, ...]


def playout(tree: GameTree, profile: StrategyProfile | Mapping[str, str]) -> Outcome:
    """Follow the profile from the root to a terminal node.

    ``profile`` is a :class:`StrategyProfile` or a plain infoset-id to
    action-label mapping covering both players.
    """
    choice = profile if isinstance(profile, Mapping) else profile.assignment()
    nid = tree.root
    path = [nid]
    for _ in range(len(tree.nodes)):
        node = tree.nodes[nid]
        if isinstance(node, Terminal):
            return Outcome(tuple(node.payoffs), tuple(path))
        iset = tree.infoset_of[nid]
        if iset.id not in choice:
            raise IncompleteStrategyError(f"incomplete strategy: no action for infoset {iset.id!r}")
        try:
            nid = node.child(choice[iset.id])
        except KeyError:
            raise IncompleteStrategyError(
                f"incomplete strategy: {choice[iset.id]!r} is not an action at {iset.id!r}"
            ) from None
        path.append(nid)
    raise GameError("playout did not reach a terminal node")  # only on an unvalidated cyclic graph
