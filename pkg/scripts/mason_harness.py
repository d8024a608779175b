#!/usr/bin/env python3
"""Random falsification run of the Mason-Stothers check over several fields."""

import argparse
import sys

from ellfun.algebra import field_from_tag
from ellfun.height_mason import mason_check, mason_harness


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fields", default="Q,GF(2),GF(3),GF(5)")
    ap.add_argument("-n", "--triples", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--max-degree", type=int, default=4)
    args = ap.parse_args(argv)

    failed = False
    for tag in args.fields.split(","):
        F = field_from_tag(tag.strip())
        res = mason_harness(F, args.triples, seed=args.seed, max_degree=args.max_degree)
        print(f"{F.tag}: {res.triples} triples  exemptions {res.exempt}  min slack {res.min_slack}")
        if res.tight is not None:
            v = mason_check(res.tight)
            print(f"  tight: {res.tight.gamma1} + ({res.tight.gamma2}) + ({res.tight.gamma3}) = 0, "
                  f"|V| = {v.v_size}, H = {v.height}")
        for t, msg in res.violations[:5]:
            print(f"  VIOLATION {msg}")
        failed |= bool(res.violations)
    return 2 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
