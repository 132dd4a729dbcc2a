"""Sweep the control level and tabulate how the equilibrium structure changes.

    python3 scripts/sweep_control.py --lo 0 --hi 10 --steps 201 --out sweep.csv
"""

import argparse
import csv
import sys

import numpy as np

from bullygame.equilibria import solve
from bullygame.model import build_game
from bullygame.report import machine

COLUMNS = ("a", "regime", "z", "y", "n_nash", "n_spne", "spne_outcomes")


def sweep(lo: float, hi: float, steps: int, tol: float):
    for a in np.linspace(lo, hi, steps):
        model = build_game(float(a))
        rep = solve(model.game, tol)
        outcomes = sorted({rep.outcomes[s.profile].payoffs for s in rep.spne})
        yield (machine(a), model.regime.value, machine(model.z), machine(model.y),
               len(rep.nash), len(rep.spne),
               " ".join("(" + ",".join(machine(v) for v in o) + ")" for o in outcomes))


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--lo", type=float, default=0.0)
    p.add_argument("--hi", type=float, default=10.0)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--out")
    args = p.parse_args(argv)
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(COLUMNS)
    w.writerows(sweep(args.lo, args.hi, args.steps, args.tol))
    if args.out:
        fh.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
