"""Exhaustive and random algebras, censuses of the characterization
theorems, and the worked examples as fixtures."""

from __future__ import annotations

import random
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import islice, product
from math import prod
from typing import Callable, Iterator, Sequence

from .axioms import EQUATIONAL, check_axioms
from .core import (Action, Biaction, FiniteAlgebra, LimitError, SetBand, SetRepresentation,
                   algebra_from_representation, disjoint_union, mask_of)
from .homs import is_member

DEFAULT_ENUM_CAP = 10**7


# --- exhaustive enumeration ----------------------------------------------------


def _shape(kind: str, sizes: Sequence[int]) -> tuple[int, int]:
    """(number of table cells, number of values per cell)."""
    if kind == "action":
        nc, ns = sizes
        return nc * ns, nc
    if kind == "biaction":
        nc, nd, nu = sizes
        return nc * (nd + nu), nc
    if kind == "setband":
        (n,) = sizes
        return n * n, n
    raise ValueError(f"unknown kind {kind!r}")


def count_algebras(kind: str, sizes: Sequence[int]) -> int:
    cells, base = _shape(kind, sizes)
    return base**cells


def _build(kind: str, sizes: Sequence[int], flat: Sequence[int]) -> FiniteAlgebra:
    if kind == "action":
        nc, ns = sizes
        return Action([f"c{i}" for i in range(nc)], [f"s{i}" for i in range(ns)],
                      [flat[i * ns:(i + 1) * ns] for i in range(nc)])
    if kind == "biaction":
        nc, nd, nu = sizes
        down, up = flat[:nc * nd], flat[nc * nd:]
        return Biaction([f"c{i}" for i in range(nc)], [f"s{i}" for i in range(nd)],
                        [f"t{i}" for i in range(nu)],
                        [down[i * nd:(i + 1) * nd] for i in range(nc)],
                        [up[i * nu:(i + 1) * nu] for i in range(nc)])
    (n,) = sizes
    return SetBand([f"x{i}" for i in range(n)], [flat[i * n:(i + 1) * n] for i in range(n)])


def enumerate_algebras(kind: str, sizes: Sequence[int], start: int = 0, stop: int | None = None,
                       cap: int = DEFAULT_ENUM_CAP) -> Iterator[FiniteAlgebra]:
    """Every labeled table of the given sizes, in mixed-radix order of the
    flattened table (first cell most significant)."""
    total = count_algebras(kind, sizes)
    if total > cap:
        raise LimitError(f"{total} tables exceed the enumeration cap {cap}")
    cells, base = _shape(kind, sizes)
    for flat in islice(product(range(base), repeat=cells), start, stop):
        yield _build(kind, sizes, flat)


def table_rank(alg: FiniteAlgebra) -> int:
    """Position of ``alg``'s table in enumerate_algebras (labels ignored)."""
    if isinstance(alg, Action):
        flat, base = [v for row in alg.table for v in row], alg.n_states
    elif isinstance(alg, Biaction):
        flat = [v for row in alg.table_down for v in row] + [v for row in alg.table_up for v in row]
        base = alg.n_states
    else:
        flat, base = [v for row in alg.mul for v in row], len(alg.s_labels)
    r = 0
    for v in flat:
        r = r * base + v
    return r


def sizes_of(alg: FiniteAlgebra) -> tuple[int, ...]:
    if isinstance(alg, Action):
        return (alg.n_states, len(alg.s_labels))
    if isinstance(alg, Biaction):
        return (alg.n_states, alg.n_down, len(alg.sup_labels))
    return (len(alg.s_labels),)


def random_algebra(kind: str, sizes: Sequence[int], seed: int) -> FiniteAlgebra:
    """A uniformly random table; the same seed always gives the same table."""
    rng = random.Random(seed)
    cells, base = _shape(kind, sizes)
    return _build(kind, sizes, [rng.randrange(base) for _ in range(cells)])


def enumerate_bands(n: int, right_regular: bool = True) -> Iterator[SetBand]:
    """Idempotent associative tables on n elements (optionally right regular),
    by backtracking with partial-table pruning, in mixed-radix table order."""
    mul: list[list[int | None]] = [[x if x == y else None for y in range(n)] for x in range(n)]
    cells = [(x, y) for x in range(n) for y in range(n) if x != y]

    def consistent() -> bool:
        for x in range(n):
            for y in range(n):
                xy = mul[x][y]
                if xy is None:
                    continue
                if right_regular:
                    xyx, yx = mul[xy][x], mul[y][x]
                    if xyx is not None and yx is not None and xyx != yx:
                        return False
                for z in range(n):
                    yz = mul[y][z]
                    if yz is None:
                        continue
                    left, right = mul[xy][z], mul[x][yz]
                    if left is not None and right is not None and left != right:
                        return False
        return True

    def fill(k: int) -> Iterator[SetBand]:
        if k == len(cells):
            yield SetBand([f"x{i}" for i in range(n)], mul)
            return
        x, y = cells[k]
        for v in range(n):
            mul[x][y] = v
            if consistent():
                yield from fill(k + 1)
        mul[x][y] = None

    yield from fill(0)


# --- census ------------------------------------------------------------------------


def classify(alg: FiniteAlgebra) -> tuple[bool, bool, bool]:
    """(equational axioms pass, all axioms pass, member of the class)."""
    verdicts = check_axioms(alg).verdicts()
    eq = all(verdicts[a] for a in EQUATIONAL[alg.kind])
    return eq, all(verdicts.values()), is_member(alg).member


def _empty_counts() -> dict:
    return {"total": 0, "eq_pass": 0, "full_pass": 0, "member": 0,
            "disagreements": [], "eq_not_member": []}


def _tally(counts: dict, rank: int, flags: tuple[bool, bool, bool]) -> None:
    eq, full, member = flags
    counts["total"] += 1
    counts["eq_pass"] += eq
    counts["full_pass"] += full
    counts["member"] += member
    if full != member:
        counts["disagreements"].append(rank)
    if eq and not member:
        counts["eq_not_member"].append(rank)


def _census_shard(args) -> dict:
    kind, sizes, start, stop = args
    counts = _empty_counts()
    for offset, alg in enumerate(enumerate_algebras(kind, sizes, start, stop)):
        _tally(counts, start + offset, classify(alg))
    return counts


def _merge(parts: list[dict]) -> dict:
    out = _empty_counts()
    for p in parts:
        for k in ("total", "eq_pass", "full_pass", "member"):
            out[k] += p[k]
        out["disagreements"] += p["disagreements"]
        out["eq_not_member"] += p["eq_not_member"]
    out["disagreements"].sort()
    out["eq_not_member"].sort()
    return out


def census(kind: str, sizes: Sequence[int], shards: int = 1, bands_only: bool = False) -> dict:
    """Run the axiom checkers and the membership decision on every table.

    Ranks in ``disagreements`` and ``eq_not_member`` are positions in
    enumerate_algebras. With ``bands_only`` (set bands) only idempotent,
    associative, right regular tables are visited.
    """
    sizes = tuple(sizes)
    if kind == "setband" and bands_only:
        counts = _empty_counts()
        for band in enumerate_bands(sizes[0]):
            _tally(counts, table_rank(band), classify(band))
        parts = [counts]
    else:
        total = count_algebras(kind, sizes)
        if total > DEFAULT_ENUM_CAP:
            raise LimitError(f"{total} tables exceed the enumeration cap {DEFAULT_ENUM_CAP}")
        shards = max(1, min(shards, total))
        bounds = [total * i // shards for i in range(shards + 1)]
        jobs = [(kind, sizes, bounds[i], bounds[i + 1]) for i in range(shards)]
        if shards == 1:
            parts = [_census_shard(jobs[0])]
        else:
            with ProcessPoolExecutor(max_workers=shards) as pool:
                parts = list(pool.map(_census_shard, jobs))
    report = {"kind": kind, "sizes": list(sizes)}
    report.update(_merge(parts))
    return report


def setband_gap(max_n: int = 4) -> dict:
    """Smallest order of a right regular band that is not a set band."""
    counts = {}
    for n in range(1, max_n + 1):
        bands = members = 0
        first = None
        for band in enumerate_bands(n):
            bands += 1
            if is_member(band).member:
                members += 1
            elif first is None:
                first = band
        counts[n] = {"bands": bands, "set_bands": members}
        if first is not None:
            return {"min_order": n, "counts": counts, "example": first}
    return {"min_order": None, "counts": counts, "example": None}


# --- fixtures ------------------------------------------------------------------------


@dataclass(frozen=True)
class Fixture:
    name: str
    algebra: FiniteAlgebra
    representation: SetRepresentation | None = None
    note: str = ""


SENTENCES = ("s1", "s2", "t1", "u1", "t2", "u2")
WORLDS = ("00", "01", "10", "11")
FACTS = ("R", "¬R", "H", "¬H")


def _reachable(start, ops: Sequence[Callable]) -> list:
    seen = [start]
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for op in ops:
            d = op(c)
            if d not in seen:
                seen.append(d)
                queue.append(d)
    return seen


def _action_from_ops(states: list, ops: Sequence[Callable], label: Callable, s_labels) -> Action:
    index = {c: i for i, c in enumerate(states)}
    return Action([label(c) for c in states], s_labels, [[index[op(c)] for op in ops] for c in states])


def world_ops() -> list[Callable[[frozenset], frozenset]]:
    """The six sentences acting on sets of possible worlds, in SENTENCES order."""
    def cyl(i):
        def op(c):
            return frozenset(c) | {w[:i] + str(1 - int(w[i])) + w[i + 1:] for w in c}
        return op

    def meet(ws):
        return lambda c: frozenset(c) & frozenset(ws)

    return [cyl(0), cyl(1), meet({"10", "11"}), meet({"00", "01"}),
            meet({"01", "11"}), meet({"00", "10"})]


def fact_pairs() -> list[tuple[set, set]]:
    """(down, up) sets of facts per sentence, in SENTENCES order."""
    X = set(FACTS)
    return [(X, {"R", "¬R"}), (X, {"H", "¬H"}), (X - {"¬R"}, set()),
            (X - {"R"}, set()), (X - {"¬H"}, set()), (X - {"H"}, set())]


def _worlds_label(c) -> str:
    return "{" + ",".join(w for w in WORLDS if w in c) + "}"


def _facts_label(c) -> str:
    return "{" + ",".join(f for f in FACTS if f in c) + "}"


def _cylindrify_worlds() -> Fixture:
    ops = world_ops()
    states = _reachable(frozenset(WORLDS), ops)
    return Fixture("cylindrify-worlds", _action_from_ops(states, ops, _worlds_label, SENTENCES),
                   note="possible worlds with cylindrification; states reachable from W")


def _facts_updown() -> Fixture:
    pairs = fact_pairs()
    ops = [lambda c, d=frozenset(d), u=frozenset(u): (c & d) | u for d, u in pairs]
    states = _reachable(frozenset(FACTS), ops)
    alg = _action_from_ops(states, ops, _facts_label, SENTENCES)
    rep = SetRepresentation("action", FACTS,
                            c_sets={_facts_label(c): mask_of(c, FACTS) for c in states},
                            s_pairs={s: (mask_of(d, FACTS), mask_of(u, FACTS))
                                     for s, (d, u) in zip(SENTENCES, pairs)})
    return Fixture("facts-updown", alg, rep, note="possible facts; states reachable from W'")


def _example_47() -> Fixture:
    return Fixture("example-4.7", Action("cde", "st", [[0, 1], [0, 1], [2, 2]]),
                   note="cs=ds=c, ct=dt=d, es=et=e: a nontrivial strong link")


def _separating_sorts() -> Fixture:
    U = ("1", "2", "3")
    rep = SetRepresentation(
        "action", U,
        c_sets={"c": mask_of("1", U), "d": mask_of("2", U), "e": mask_of("3", U)},
        s_pairs={f"s_{x}": (mask_of(a, U), mask_of(a, U)) for x, a in zip("cde", "123")})
    return Fixture("separating-sorts", algebra_from_representation(rep), rep,
                   note="three constants; no split into S-down and S-up works")


def _biaction_2pt() -> Fixture:
    return Fixture("biaction-2pt-fail", Biaction("cd", ["s"], ["t"], [[1], [1]], [[1], [1]]),
                   note="cs=ct=ds=dt=d satisfies the equations but not the basic subset axiom")


def _biaction_from_sets(universe, c_sets: dict, down: dict, up: dict) -> Biaction:
    """Tables of the biaction realized by named sets (set data may repeat)."""
    masks = {k: mask_of(v, universe) for k, v in c_sets.items()}
    back = {m: k for k, m in masks.items()}
    C = list(c_sets)

    def table(ops: dict, act) -> list[list[int]]:
        return [[C.index(back[act(masks[c], mask_of(v, universe))]) for v in ops.values()] for c in C]

    return Biaction(C, list(down), list(up), table(down, lambda c, d: c & d),
                    table(up, lambda c, u: c | u))


def _words_component(k: int) -> Fixture:
    if k == 1:
        U = ("#", "$")
        rep = SetRepresentation(
            "biaction", U,
            c_sets={"c": mask_of("#", U), "d": mask_of("$", U), "e": 0, "f": mask_of("#$", U)},
            down_sets={"s": 0}, up_sets={"t": mask_of("$", U), "u": mask_of("#", U)})
        alg = algebra_from_representation(rep)
    else:
        # t and u are realized by the same set here, so there is no injective representation
        rep = None
        alg = _biaction_from_sets(("%",), {"1": "%", "2": ""}, {"s": ""}, {"t": "%", "u": "%"})
    return Fixture(f"words-are-needed-{k}", alg, rep,
                   note=f"component {k} of words-are-needed")


def _words_are_needed() -> Fixture:
    alg = disjoint_union(_words_component(1).algebra, _words_component(2).algebra)
    return Fixture("words-are-needed", alg,
                   note="basic subset axiom holds, an extra subset axiom fails")


def _f1(kind: str) -> Callable[[], Fixture]:
    def build() -> Fixture:
        from .core import full_algebra
        alg, rep = full_algebra(kind, ("*",))
        return Fixture(f"f1-{kind}", alg, rep, note=f"the generator F(1) for {kind}s")
    return build


FIXTURES: dict[str, Callable[[], Fixture]] = {
    "example-4.7": _example_47,
    "separating-sorts": _separating_sorts,
    "biaction-2pt-fail": _biaction_2pt,
    "words-are-needed": _words_are_needed,
    "words-are-needed-1": lambda: _words_component(1),
    "words-are-needed-2": lambda: _words_component(2),
    "cylindrify-worlds": _cylindrify_worlds,
    "facts-updown": _facts_updown,
    "f1-action": _f1("action"),
    "f1-biaction": _f1("biaction"),
    "f1-setband": _f1("setband"),
}


def fixture(name: str) -> Fixture:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}") from None


def worlds_facts_agreement(max_len: int = 4) -> dict:
    """Compare the worlds and facts models on non-contradictory words.

    A word is admissible when every prefix leaves a nonempty set of worlds.
    The models agree when W w1 = W w2 exactly when W' w1 = W' w2 for all
    admissible w1, w2; the pairs map is then a bijection between the state
    sets reached.
    """
    wops = world_ops()
    fops = [lambda c, d=frozenset(d), u=frozenset(u): (c & d) | u for d, u in fact_pairs()]
    W, F = frozenset(WORLDS), frozenset(FACTS)
    forward: dict = {}
    backward: dict = {}
    conflicts = []
    admissible = 0
    frontier = [((), W, F)]
    for _ in range(max_len + 1):
        nxt = []
        for word, w_state, f_state in frontier:
            admissible += 1
            for other, key, table in ((f_state, w_state, forward), (w_state, f_state, backward)):
                if key in table and table[key][0] != other:
                    conflicts.append((list(table[key][1]), list(word)))
                table.setdefault(key, (other, word))
            for i, name in enumerate(SENTENCES):
                w2 = wops[i](w_state)
                if w2:
                    nxt.append((word + (name,), w2, fops[i](f_state)))
        frontier = nxt
    return {"admissible_words": admissible, "world_states": len(forward),
            "fact_states": len(backward), "conflicts": conflicts}


# --- random word pairs -----------------------------------------------------------------

WORD_LETTERS = {
    "action": {"s": "down", "t": "down", "u": "down"},
    "biaction": {"s": "down", "u": "down", "t": "up", "v": "up"},
    "setband": {"x": "down", "y": "down", "z": "down"},
}


def _rewrite(kind: str, word: list[str], sorts: dict[str, str], rng: random.Random) -> list[str]:
    """An equivalent word: insert a copy of a letter before one of its later
    occurrences, or (biactions) swap adjacent letters of the same sort."""
    w = list(word)
    for _ in range(rng.randint(1, 3)):
        swaps = [i for i in range(len(w) - 1) if kind == "biaction" and sorts[w[i]] == sorts[w[i + 1]]]
        if swaps and rng.random() < 0.5:
            i = rng.choice(swaps)
            w[i], w[i + 1] = w[i + 1], w[i]
        elif w:
            j = rng.randrange(len(w))
            w.insert(rng.randint(0, j), w[j])
    return w


def random_word_pairs(kind: str, count: int, seed: int, max_len: int = 6):
    """Seeded pairs of words; half are rewrites of each other, half independent."""
    rng = random.Random(seed)
    sorts = WORD_LETTERS[kind]
    letters = list(sorts)
    lo = 1 if kind == "setband" else 0
    for _ in range(count):
        a = [rng.choice(letters) for _ in range(rng.randint(lo, max_len))]
        if rng.random() < 0.5:
            b = _rewrite(kind, a, sorts, rng)
        else:
            b = [rng.choice(letters) for _ in range(rng.randint(lo, max_len))]
        yield tuple(a), tuple(b)
