"""Run the connected-graph census and print a per-n table plus the cut-check tallies."""

import argparse
import sys

from llyconn.census import DEFAULT_MAX_N, run_census


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    parser.add_argument("--extended", action="store_true")
    parser.add_argument("--all-cuts", action="store_true")
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()

    report = run_census(args.max_n, extended=args.extended, jobs=args.jobs, all_cuts=args.all_cuts)
    summary = report.summary()
    print(f"{'n':>3} {'graphs':>7} {'nonneg':>7}")
    for row in summary["per_n"]:
        print(f"{row['n']:>3} {row['graphs']:>7} {row['nonnegative']:>7}")
    print(f"counterexamples: {len(summary['counterexamples'])}")
    for name, check in summary["cut_checks"].items():
        print(f"{name:>20}: {check['passed']} held, {len(check['failures'])} failed")
    return 0 if report.ok else 2


if __name__ == "__main__":
    sys.exit(main())
