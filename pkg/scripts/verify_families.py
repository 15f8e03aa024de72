"""Verify a batch of family truncations and print one line per spec."""

import argparse
import sys
import time

from llyconn.families import FamilySpec, Insert, load_spec, verify_family


def default_specs(layers):
    specs = [FamilySpec("Gn", n, layers) for n in range(1, 7)]
    for n in range(2, 7):
        specs.append(FamilySpec("Gn", n, layers, (Insert("P", 4),)))
        specs.append(FamilySpec("Gn", n, layers, (Insert("P", 2), Insert("P", 6))))
    specs += [FamilySpec("Gn", 4, layers, (Insert("K", 4, m),)) for m in (1, 2, 3)]
    specs += [FamilySpec("G3Star", layers=layers), FamilySpec("G42", layers=max(8, layers - 2))]
    return specs


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("specs", nargs="*", help="spec JSON files (default: the built-in batch)")
    parser.add_argument("--layers", type=int, default=10)
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()

    specs = [load_spec(p) for p in args.specs] if args.specs else default_specs(args.layers)
    failed = 0
    for spec in specs:
        start = time.perf_counter()
        report = verify_family(spec, jobs=args.jobs)
        classes = sorted({c["class"] for c in report.cuts})
        bad = [k for k, c in report.checks.items() if not c.ok]
        failed += bool(bad)
        print(f"{'ok ' if report.ok else 'BAD'} {spec.label():<28} delta={report.delta} "
              f"min_kappa={report.min_curvature} cuts={','.join(classes)} "
              f"{time.perf_counter() - start:.1f}s {' '.join(bad)}")
    return 2 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
