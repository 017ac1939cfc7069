"""Exhaustive census of small algebras: axioms vs full PR vs membership.

    python scripts/run_census.py --out census.json --shards 4
"""

import argparse
import json
import time

from updown.lab import census

SHAPES = [
    ("action", (2, 2)), ("action", (2, 3)), ("action", (3, 2)),
    ("biaction", (2, 1, 1)), ("biaction", (2, 2, 1)), ("biaction", (3, 1, 1)),
    ("setband", (1,)), ("setband", (2,)), ("setband", (3,)),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--shards", type=int, default=1)
    ap.add_argument("--with-bands4", action="store_true", help="also run right regular bands of order 4")
    ap.add_argument("--out")
    args = ap.parse_args()
    shapes = SHAPES + ([("setband", (4,))] if args.with_bands4 else [])
    rows = []
    for kind, sizes in shapes:
        t0 = time.perf_counter()
        r = census(kind, sizes, shards=args.shards, bands_only=sizes == (4,))
        r["seconds"] = round(time.perf_counter() - t0, 3)
        rows.append(r)
        print(f"{kind:9} {str(sizes):10} total={r['total']:6} eq={r['eq_pass']:4} full={r['full_pass']:4} "
              f"member={r['member']:4} disagree={len(r['disagreements'])} "
              f"eq_not_member={len(r['eq_not_member'])} {r['seconds']}s")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            json.dump(rows, f, indent=2)


if __name__ == "__main__":
    main()
