"""Run every reproduction pipeline at two primes and print a pass/fail table.

    python scripts/reproduce_all.py [--out reports/] [--seed 0]
"""

import argparse
import time
from pathlib import Path

from raolab import report as rpt
from raolab import reproduce as rp
from raolab.gf import DEFAULT_PRIME, SECOND_PRIME


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=None)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rows = []
    for tag in rp.PIPELINES:
        t = time.perf_counter()
        a = rp.run(tag, DEFAULT_PRIME, args.seed)
        b = rp.run(tag, SECOND_PRIME, args.seed)
        diffs = rp.compare(a, rp.expected(tag))
        rows.append((tag, not diffs, a == b, f"{time.perf_counter() - t:.1f}s"))
        if args.out:
            rpt.atomic_write(args.out / f"{tag}.json", rpt.to_json_text(
                rpt.stamp({"tag": tag, "computed": a, "computed_second": b, "mismatches": diffs})))
    print(rpt.md_table(["tag", "matches goldens", "primes agree", "time"], rows))
    return 0 if all(r[1] and r[2] for r in rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
