"""EFG-LITE: a line-oriented text format for two-player game trees.

Directives, one per line, ``#`` starts a comment::

    player <index> <name>
    root <id>
    node <id> decision <player> infoset <infoset-id>
    edge <parent> <label> <child>
    leaf <id> <payoff-0> <payoff-1>

Edges are listed in action order. Every decision node names its infoset;
nodes sharing an infoset id form one information set.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

from .game_tree import (
    Decision,
    GameError,
    GameTree,
    InformationSet,
    PlayerId,
    Terminal,
    validate,
)

_TOKEN = re.compile(r"\S+")


class ParseError(GameError):
    def __init__(self, line: int, column: int, message: str):
        self.line, self.column, self.message = line, column, message
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass
class _Tok:
    text: str
    line: int
    col: int


@dataclass
class _Pending:
    players: dict[int, str] = field(default_factory=dict)
    root: _Tok | None = None
    decisions: dict[str, tuple[_Tok, int, _Tok]] = field(default_factory=dict)  # id -> (tok, owner, infoset)
    leaves: dict[str, tuple[_Tok, tuple[float, ...]]] = field(default_factory=dict)
    edges: dict[str, list[tuple[_Tok, _Tok]]] = field(default_factory=dict)  # parent -> [(label, child)]
    where: dict[str, _Tok] = field(default_factory=dict)


def _number(tok: _Tok) -> float:
    try:
        v = float(tok.text)
    except ValueError:
        raise ParseError(tok.line, tok.col, f"expected a number, got {tok.text!r}") from None
    if not math.isfinite(v):
        raise ParseError(tok.line, tok.col, f"payoff {tok.text!r} is not finite")
    return v


def _integer(tok: _Tok) -> int:
    try:
        return int(tok.text)
    except ValueError:
        raise ParseError(tok.line, tok.col, f"expected an integer, got {tok.text!r}") from None


def parse_game(text: str) -> GameTree:
    p = _Pending()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = [_Tok(m.group(), lineno, m.start() + 1) for m in _TOKEN.finditer(line)]
        if toks:
            _directive(p, toks)
    return _assemble(p)


def _expect(toks: list[_Tok], n: int, usage: str) -> None:
    if len(toks) != n:
        t = toks[min(len(toks), n) - 1] if len(toks) > n else toks[-1]
        raise ParseError(t.line, t.col, f"expected `{usage}`")


def _declare(p: _Pending, tok: _Tok) -> None:
    if tok.text in p.where:
        first = p.where[tok.text]
        raise ParseError(tok.line, tok.col, f"duplicate node id {tok.text!r} (first declared on line {first.line})")
    p.where[tok.text] = tok


def _directive(p: _Pending, toks: list[_Tok]) -> None:
    kw = toks[0]
    if kw.text == "player":
        if len(toks) < 3:
            _expect(toks, 3, "player <index> <name>")
        idx = _integer(toks[1])
        if idx in p.players:
            raise ParseError(toks[1].line, toks[1].col, f"duplicate player index {idx}")
        p.players[idx] = " ".join(t.text for t in toks[2:])
    elif kw.text == "root":
        _expect(toks, 2, "root <id>")
        if p.root is not None:
            raise ParseError(kw.line, kw.col, f"root already set on line {p.root.line}")
        p.root = toks[1]
    elif kw.text == "node":
        _expect(toks, 6, "node <id> decision <player> infoset <infoset-id>")
        if toks[2].text != "decision":
            raise ParseError(toks[2].line, toks[2].col, f"expected `decision`, got {toks[2].text!r}")
        if toks[4].text != "infoset":
            raise ParseError(toks[4].line, toks[4].col, f"expected `infoset`, got {toks[4].text!r}")
        _declare(p, toks[1])
        p.decisions[toks[1].text] = (toks[1], _integer(toks[3]), toks[5])
    elif kw.text == "edge":
        _expect(toks, 4, "edge <parent> <label> <child>")
        p.edges.setdefault(toks[1].text, []).append((toks[2], toks[3]))
        p.where.setdefault("edge:" + toks[1].text, toks[1])
    elif kw.text == "leaf":
        if len(toks) < 2:
            _expect(toks, 2, "leaf <id> <payoff-0> <payoff-1>")
        _declare(p, toks[1])
        pays = tuple(_number(t) for t in toks[2:])
        if len(pays) != 2:
            t = toks[-1]
            raise ParseError(t.line, t.col, f"payoff arity mismatch: leaf {toks[1].text!r} has {len(pays)} payoffs, expected 2")
        p.leaves[toks[1].text] = (toks[1], pays)
    else:
        raise ParseError(kw.line, kw.col, f"unknown directive {kw.text!r}")


def _assemble(p: _Pending) -> GameTree:
    if p.root is None:
        raise ParseError(1, 1, "missing root directive")
    if p.root.text not in p.where:
        raise ParseError(p.root.line, p.root.col, f"unknown node {p.root.text!r}")
    for idx in p.players:
        if idx not in (0, 1):
            raise ParseError(1, 1, f"player index {idx} not in {{0, 1}}")
    players = tuple(PlayerId(i, p.players.get(i, f"player {i}")) for i in (0, 1))

    nodes = {}
    for parent, edges in p.edges.items():
        if parent not in p.decisions:
            tok = p.where["edge:" + parent]
            what = "leaf" if parent in p.leaves else "unknown node"
            raise ParseError(tok.line, tok.col, f"edge from {what} {parent!r}")
        for _, child in edges:
            if child.text not in p.where:
                raise ParseError(child.line, child.col, f"unknown node {child.text!r}")

    isets: dict[str, tuple[_Tok, int, set[str]]] = {}
    for nid, (tok, owner, iset) in p.decisions.items():
        if owner not in (0, 1):
            raise ParseError(tok.line, tok.col, f"unknown player {owner} for node {nid!r}")
        acts = tuple((lab.text, child.text) for lab, child in p.edges.get(nid, []))
        nodes[nid] = Decision(nid, owner, acts)
        if iset.text in isets:
            first, first_owner, members = isets[iset.text]
            if first_owner != owner:
                raise ParseError(iset.line, iset.col,
                                 f"infoset {iset.text!r} owned by player {first_owner} on line {first.line}")
            members.add(nid)
        else:
            isets[iset.text] = (iset, owner, {nid})
    for nid, (_, pays) in p.leaves.items():
        nodes[nid] = Terminal(nid, pays)

    infosets = tuple(InformationSet(k, owner, frozenset(m)) for k, (_, owner, m) in isets.items())
    tree = GameTree(players, p.root.text, nodes, infosets)
    report = validate(tree)
    if not report.ok:
        v = report.violations[0]
        tok = p.where.get(v.subject) or (isets[v.subject][0] if v.subject in isets else p.root)
        raise ParseError(tok.line, tok.col, str(v))
    return tree


def _num(v: float) -> str:
    return str(int(v)) if float(v).is_integer() and abs(v) < 1e15 else repr(float(v))


def format_game(tree: GameTree) -> str:
    lines = []
    for pl in sorted(tree.players, key=lambda q: q.index):
        lines.append(f"player {pl.index} {pl.name}")
    lines.append(f"root {tree.root}")
    for nid in tree.preorder:
        node = tree.nodes[nid]
        if isinstance(node, Terminal):
            lines.append(f"leaf {nid} " + " ".join(_num(v) for v in node.payoffs))
        else:
            lines.append(f"node {nid} decision {node.owner} infoset {tree.infoset_of[nid].id}")
            for label, child in node.actions:
                lines.append(f"  edge {nid} {label} {child}")
    return "\n".join(lines) + "\n"
