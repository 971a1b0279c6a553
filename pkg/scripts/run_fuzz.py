#!/usr/bin/env python3
"""Run the randomized claims campaign and optionally save the JSON report.

Exit code 0 iff every claim is confirmed on every trial.
"""

import argparse
import sys
from pathlib import Path

from bsig import FuzzConfig, fuzz_claims, summarize_report, write_report


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", default=None, metavar="PATH")
    args = ap.parse_args()

    report = fuzz_claims(FuzzConfig(trials=args.trials, seed=args.seed))
    sys.stdout.write(summarize_report(report))
    if args.json:
        Path(args.json).write_text(write_report(report))
        print(f"wrote {args.json}")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
