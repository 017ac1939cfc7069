"""Smallest set band satisfying the axioms but outside the class."""

import argparse
import json

from updown.formats import algebra_to_json
from updown.lab import setband_gap


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=4)
    args = ap.parse_args()
    r = setband_gap(args.max_n)
    for n, c in sorted(r["counts"].items()):
        print(f"order {n}: {c['bands']} pass the axioms, {c['set_bands']} are members")
    if r["min_order"] is None:
        print("no gap found")
        return
    print(f"minimal gap order: {r['min_order']}")
    print(json.dumps(algebra_to_json(r["example"]), indent=2, ensure_ascii=False))


if __name__ == "__main__":
    main()
