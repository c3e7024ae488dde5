#!/usr/bin/env python3
"""Run the exhaustive algebra checks and print one line per identity.

Usage: python scripts/selfcheck.py [seed]
"""

import sys

from bdecat.selfcheck import run_selfcheck


def main() -> int:
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
    failures = run_selfcheck(verbose=True, seed=seed)
    if failures:
        print(f"\n{len(failures)} failures: {failures}")
        return 1
    print("\nall identities hold")
    return 0


if __name__ == "__main__":
    sys.exit(main())
