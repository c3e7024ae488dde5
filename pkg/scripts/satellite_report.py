#!/usr/bin/env python3
"""Tabulate the satellite Alexander polynomial for every shipped
(pattern, companion) pair and confirm the product formula on each."""

import glob
import os
import sys

from bdecat import serialize as ser
from bdecat.cfk2cfd import build_cfd, verify_a1
from bdecat.satellite import check_satellite_formula, decompose

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def main() -> int:
    patterns = sorted(glob.glob(os.path.join(FIXTURES, "cfa_*.json")))
    companions = sorted(glob.glob(os.path.join(FIXTURES, "cfk_*.json")))
    failures = 0
    for ppath in patterns:
        pc = ser.pattern_from_json(ser.load_file(ppath))
        q, p = decompose(pc)
        print(f"pattern {os.path.basename(ppath)}: Q = {q}, P = {p}, "
              f"winding {pc.winding}")
        for cpath in companions:
            cfk = ser.cfk_from_json(ser.load_file(cpath))
            delta = verify_a1(build_cfd(cfk), cfk)
            try:
                res = check_satellite_formula(pc, cfk)
                verdict = "OK"
            except Exception as exc:  # pragma: no cover - report then fail
                verdict, res = f"FAIL ({exc})", None
                failures += 1
            name = os.path.basename(cpath).removeprefix("cfk_").removesuffix(".json")
            print(f"    {name:<24} Delta_K = {str(delta):<28} "
                  f"satellite = {res.poly if res else '-'}   {verdict}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
