"""Try all nine left/right pairings of a K_4 chain inserted into G_4."""

import argparse
import sys

from llyconn.families import FamilySpec, Insert, pairing_sweep


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--m", type=int, default=1, help="number of K_4 blocks in the chain")
    parser.add_argument("--layers", type=int, default=9)
    args = parser.parse_args()

    spec = FamilySpec("Gn", 4, args.layers, (Insert("K", args.layers // 2 - 1, args.m),))
    rows = pairing_sweep(spec)
    for row in rows:
        kappa = row["min_interior_curvature"]
        print(f"{row['pairings']}  ok={row['ok']}  min_kappa={kappa['num']}/{kappa['den']}")
    return 0 if all(r["ok"] for r in rows) else 2


if __name__ == "__main__":
    sys.exit(main())
