#!/usr/bin/env python3
"""Run the exhaustive lower-bound scans and print one summary table per field.

Defaults reproduce the default runs: reduced forms over GF(2) (degree 4)
and GF(3) (degree 3), short forms over GF(5) and GF(7) with deg A <= 2 and
deg B <= 3.
"""

import argparse
import json
import sys
import time

from ellfun.search import SearchConfig, parse_degree_bound, verify_bounds

DEFAULT_RUNS = [
    ("GF(2)", "reduced", "4"),
    ("GF(3)", "reduced", "3"),
    ("GF(5)", "short", "A=2,B=3"),
    ("GF(7)", "short", "A=2,B=3"),
]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--run", action="append", metavar="FIELD:FORM:DEG",
                    help="e.g. GF(5):short:A=1,B=2; repeatable, replaces the defaults")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--check-structure", action="store_true")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    runs = [tuple(r.split(":", 2)) for r in args.run] if args.run else DEFAULT_RUNS
    worst = 0
    for tag, form, deg in runs:
        cfg = SearchConfig(tag, form, parse_degree_bound(deg), check_structure=args.check_structure)
        t0 = time.time()
        s = verify_bounds(cfg, workers=args.workers)
        sec = time.time() - t0
        if args.json:
            print(json.dumps(dict(s.to_json(), seconds=round(sec, 2))))
        else:
            print(s.table())
            print(f"seconds  {sec:.1f}\n", flush=True)
        worst = max(worst, s.exit_code())
    return worst


if __name__ == "__main__":
    sys.exit(main())
