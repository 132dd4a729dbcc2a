"""Text, CSV and JSON renderings of equilibrium reports and utility curves."""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile

from .equilibria import EquilibriumReport, best_response_mask, sort_profiles
from .model import BullyUtilityCurve
from .strategies import NormalFormGame

SOLVE_CSV_COLUMNS = ("concept", "row", "col", "u0", "u1", "path", "trace")
CURVE_CSV_COLUMNS = ("stage", "a", "x", "u")
JSON_KEYS = ("players", "strategies", "matrix", "nash", "spne", "outcomes", "tolerance")


def human(v: float) -> str:
    return format(float(v) + 0.0, ".6g")


def machine(v: float) -> str:
    return format(float(v) + 0.0, ".12g")


def normal_form_table(nf: NormalFormGame, tol: float) -> str:
    mask = best_response_mask(nf, tol)
    cells = []
    for i in range(len(nf.row_strategies)):
        row = []
        for j in range(len(nf.col_strategies)):
            parts = [human(nf.payoffs[i, j, k]) + ("*" if mask[i, j, k] else "") for k in (0, 1)]
            row.append(", ".join(parts))
        cells.append(row)
    heads = [str(s) for s in nf.col_strategies]
    rows = [str(s) for s in nf.row_strategies]
    width = max([len(c) for r in cells for c in r] + [len(h) for h in heads])
    lead = max(len(r) for r in rows)
    out = [f"{nf.player_names[0]} rows x {nf.player_names[1]} columns (* = best response)"]
    out.append(" " * lead + "  " + "  ".join(h.rjust(width) for h in heads))
    for label, row in zip(rows, cells):
        out.append(label.ljust(lead) + "  " + "  ".join(c.rjust(width) for c in row))
    return "\n".join(out)


def _pay(p) -> str:
    return "(" + ", ".join(human(v) for v in p) + ")"


def render_table(rep: EquilibriumReport, concept: str = "both") -> str:
    nf = rep.nf
    out = [normal_form_table(nf, rep.tolerance), ""]
    if concept in ("nash", "both"):
        out.append(f"Nash equilibria ({len(rep.nash)}):")
        for p in sort_profiles(nf, rep.nash):
            o = rep.outcomes[p]
            out.append(f"  {p}  payoffs {_pay(o.payoffs)}  path {' > '.join(o.path)}")
        out.append("")
    if concept in ("spne", "both"):
        out.append(f"Subgame-perfect equilibria ({len(rep.spne)}):")
        for s in rep.spne:
            o = rep.outcomes[s.profile]
            out.append(f"  {s.profile}  payoffs {_pay(o.payoffs)}")
            out.append("    via " + " > ".join(str(step) for step in s.trace))
        for e in rep.empty:
            via = " > ".join(str(step) for step in e.trace) or "-"
            out.append(f"  empty continuation at {e.subgame} (via {via})")
        out.append("")
    out.append(f"tolerance {rep.tolerance:g}")
    return "\n".join(out) + "\n"


def render_csv(rep: EquilibriumReport, concept: str = "both") -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SOLVE_CSV_COLUMNS)
    if concept in ("nash", "both"):
        for p in sort_profiles(rep.nf, rep.nash):
            o = rep.outcomes[p]
            w.writerow(["nash", *p.labels, *(machine(v) for v in o.payoffs), " ".join(o.path), ""])
    if concept in ("spne", "both"):
        for s in rep.spne:
            o = rep.outcomes[s.profile]
            w.writerow(["spne", *s.profile.labels, *(machine(v) for v in o.payoffs),
                        " ".join(o.path), " ".join(str(t) for t in s.trace)])
    return buf.getvalue()


def _round(v: float) -> float:
    return float(machine(v))


def report_dict(rep: EquilibriumReport, concept: str = "both") -> dict:
    nf = rep.nf
    outcomes = {}
    for p in sort_profiles(nf, rep.outcomes):
        o = rep.outcomes[p]
        outcomes[",".join(p.labels)] = {"payoffs": [_round(v) for v in o.payoffs], "path": list(o.path)}
    nash = [list(p.labels) for p in sort_profiles(nf, rep.nash)] if concept != "spne" else None
    spne = None
    if concept != "nash":
        spne = [
            {
                "profile": list(s.profile.labels),
                "trace": [
                    {"subgame": t.subgame, "choice": dict(t.choice), "value": [_round(v) for v in t.value]}
                    for t in s.trace
                ],
            }
            for s in rep.spne
        ]
    return {
        "players": list(nf.player_names),
        "strategies": {
            nf.player_names[0]: [s.label for s in nf.row_strategies],
            nf.player_names[1]: [s.label for s in nf.col_strategies],
        },
        "matrix": [[[_round(v) for v in cell] for cell in row] for row in nf.payoffs.tolist()],
        "nash": nash,
        "spne": spne,
        "outcomes": outcomes,
        "tolerance": rep.tolerance,
    }


def render_json(rep: EquilibriumReport, concept: str = "both") -> str:
    return json.dumps(report_dict(rep, concept), indent=2) + "\n"


def curves_csv(curves: tuple[BullyUtilityCurve, ...]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CURVE_CSV_COLUMNS)
    for c in curves:
        for x, u in c.samples():
            w.writerow([c.stage, machine(c.a), machine(x), machine(u)])
    return buf.getvalue()


def write_atomic(path: str, text: str) -> None:
    """Write via a temp file in the target directory, then rename over ``path``."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
