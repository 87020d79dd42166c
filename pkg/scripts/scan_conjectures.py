"""Evidence tables for the open maximal-rank questions.

Tabulates x L^m verdicts for general lines beyond the proven range and the
genericity of flat fat points of multiplicity 4 and 5.  Nothing here is a
proof: failures carry the probabilistic caveat, successes are evidence.

    python scripts/scan_conjectures.py [--r-max 16] [--m-max 5] [--trials 3]
"""

import argparse
import json

from raolab import report as rpt
from raolab.lefschetz import conjecture_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--r-max", type=int, default=16)
    ap.add_argument("--m-max", type=int, default=5)
    ap.add_argument("--trials", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true", help="print raw JSON instead of tables")
    args = ap.parse_args()
    lines = conjecture_scan("lines", range(3, args.r_max + 1), range(1, args.m_max + 1),
                            args.trials, args.seed)
    points = conjecture_scan("flatfat", [(s, m) for m in (4, 5) for s in range(1, 13)],
                             trials=args.trials, seed=args.seed)
    if args.json:
        print(json.dumps({"lines": lines, "flatfat": points}, indent=1))
        return 0
    print(rpt.md_scan({"kind": "lines", "table": lines}))
    print(rpt.md_scan({"kind": "flatfat", "table": points}))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
