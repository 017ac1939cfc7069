"""Bounded check that the worlds and facts models agree on admissible words."""

import argparse

from updown.homs import is_member
from updown.lab import fixture, worlds_facts_agreement


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-len", type=int, default=4)
    args = ap.parse_args()
    r = worlds_facts_agreement(args.max_len)
    print(f"admissible words: {r['admissible_words']}")
    print(f"distinct states: worlds {r['world_states']}, facts {r['fact_states']}")
    print(f"conflicts: {len(r['conflicts'])}")
    print(f"facts algebra is a member: {is_member(fixture('facts-updown').algebra).member}")


if __name__ == "__main__":
    main()
