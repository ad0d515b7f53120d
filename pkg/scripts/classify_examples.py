"""Print the classification table of the four built-in examples at u = 0,
followed by the singular points found by a scan of each domain."""

import argparse
import time

from helifront.fixtures import EXAMPLES
from helifront.singularity import classify_helicoid_singularity, singular_locus_scan

WITNESS_KEYS = ("x", "b", "beta", "beta_dot", "ell", "ell_dot", "ell_beta_dot")


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--scan-points", type=int, default=257)
    args = p.parse_args()

    t0 = time.perf_counter()
    head = f"{'example':<10} {'case':<5} {'tag':<18} " + " ".join(f"{k:>13}" for k in WITNESS_KEYS)
    print(head)
    print("-" * len(head))
    for name, ex in EXAMPLES.items():
        edge = classify_helicoid_singularity(ex.helicoid(), 0.0)
        wit = " ".join(f"{edge.witnesses[k]:>13.6g}" for k in WITNESS_KEYS)
        print(f"{name:<10} {edge.criterion or '-':<5} {edge.label:<18} {wit}")
    print(f"\nclassification: {time.perf_counter() - t0:.3f}s\n")

    for name, ex in EXAMPLES.items():
        pts = singular_locus_scan(ex.helicoid(), None, args.scan_points)
        found = ", ".join(f"u*={pt.u_star:+.3g} ({pt.edge.label})" for pt in pts) or "none"
        print(f"{name}: {found}")


if __name__ == "__main__":
    main()
