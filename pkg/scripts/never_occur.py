"""Randomised never-occur suite: slice-curve cusp types per singular case.

Each trial draws polynomial curvature data, pushes it through the Frenet
system from a point on the axis, forces case I, II or III, and classifies
the slice curve.  Types outside the allowed set for the case are counted as
violations.
"""

import argparse
import os
import sys
import time

from helifront.sampling import ALLOWED, never_occur_suite


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=int(os.environ.get("SEED", "0")))
    args = p.parse_args()

    bad = 0
    for case in ("I", "II", "III"):
        t0 = time.perf_counter()
        res = never_occur_suite(case, args.trials, args.seed)
        bad += res.violations
        allowed = ", ".join(sorted(t.value for t in ALLOWED[case]))
        counts = ", ".join(f"{k}={v}" for k, v in sorted(res.counts.items()))
        print(f"case {case:<3} allowed {{{allowed}}}")
        print(f"         seen {counts}; violations {res.violations}; {time.perf_counter() - t0:.1f}s")
    sys.exit(1 if bad else 0)


if __name__ == "__main__":
    main()
