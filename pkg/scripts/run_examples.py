#!/usr/bin/env python3
"""Check the named example curves against their known invariants."""

import sys

from ellfun.cli import main

if __name__ == "__main__":
    sys.exit(main(["examples"] + sys.argv[1:]))
