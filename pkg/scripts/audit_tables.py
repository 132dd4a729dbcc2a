"""Run every reproduction case over a grid of control levels and summarize the verdicts.

    python3 scripts/audit_tables.py            # counts per case and level
    python3 scripts/audit_tables.py --details  # full report per level
"""

import argparse
import sys
from collections import Counter

from bullygame import reproduce as repro

GRID = {
    "attrition": [None],
    "baseline": [None],
    "low": [0.4, 0.5, 0.6, 0.7, 0.8, 0.89, 0.9],
    "high": [0.95, 1, 2, 5, 8, 10],
}


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--details", action="store_true")
    args = p.parse_args(argv)
    failed = False
    for case, levels in GRID.items():
        for a in levels:
            (rep,) = repro.run(case, a)
            failed |= rep.failed
            if args.details:
                print(repro.render([rep]))
            counts = Counter(c.status for c in rep.checks)
            print(f"{case:9s} a={rep.a:<5g} " + "  ".join(f"{s} {counts[s]}" for s in
                  (repro.MATCH, repro.DISCREPANCY, repro.MISMATCH)))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
