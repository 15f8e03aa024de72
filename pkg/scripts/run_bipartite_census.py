"""Enumerate small bipartite graphs and list the classes where the edge-star bound is tight."""

import argparse
import sys

from llyconn.bipartite import enumerate_bipartite_census


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-edges", type=int, default=8)
    args = parser.parse_args()

    report = enumerate_bipartite_census(args.max_edges)
    print(f"non-star classes: {len(report.rows)}, stars: {report.stars}")
    print(f"violations: {len(report.violations)}, mismatches: {len(report.mismatches)}")
    print("tight classes:")
    for row in sorted(report.equality_rows, key=lambda r: (r.r, str(r.cls))):
        print(f"  {str(row.cls):>8}  p={row.p} q={row.q} edges={row.r}")
    return 0 if report.ok else 2


if __name__ == "__main__":
    sys.exit(main())
