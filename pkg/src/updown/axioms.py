"""Axiom checkers with witnesses, and the transformation monoid of an action.

Quantifiers over words in S are replaced by quantifiers over the finite
monoid of maps ``c -> cw``; every axiom here mentions a word only through
the map it induces, so the two readings agree.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterator, Sequence

from .core import Action, Biaction, FiniteAlgebra, LimitError, SetBand

DEFAULT_MONOID_CAP = 10**6

Map = tuple  # tuple[int, ...]: image of each C index


@dataclass(frozen=True)
class TransformationMonoid:
    """Closure of the generator maps under composition, identity first.

    ``words[i]`` is a shortest generating word (generator indices) for
    ``maps[i]``; maps appear in breadth-first order over generator index.
    """

    maps: tuple[Map, ...]
    words: tuple[tuple[int, ...], ...]
    letter_names: tuple[str, ...]
    includes_identity: bool = True

    @cached_property
    def index(self) -> dict[Map, int]:
        return {m: i for i, m in enumerate(self.maps)}

    def __len__(self) -> int:
        return len(self.maps)

    def word_labels(self, i: int) -> list[str]:
        return [self.letter_names[g] for g in self.words[i]]

    def then(self, i: int, j: int) -> int:
        """Index of the map 'apply maps[i], then maps[j]'."""
        m, n = self.maps[i], self.maps[j]
        return self.index[tuple(n[x] for x in m)]


def closure(generators: Sequence[Map], n: int, cap: int = DEFAULT_MONOID_CAP,
            with_identity: bool = True) -> tuple[list[Map], list[tuple[int, ...]]]:
    """Breadth-first closure of ``generators`` under 'then'.

    With ``with_identity`` the search starts from the identity map (monoid);
    otherwise from the generators themselves (semigroup).
    """
    maps: list[Map] = []
    words: list[tuple[int, ...]] = []
    seen: set[Map] = set()
    queue: deque[int] = deque()

    def add(m: Map, w: tuple[int, ...]) -> None:
        if m in seen:
            return
        if len(maps) >= cap:
            raise LimitError(f"transformation monoid exceeds {cap} maps")
        seen.add(m)
        maps.append(m)
        words.append(w)
        queue.append(len(maps) - 1)

    if with_identity:
        add(tuple(range(n)), ())
    else:
        for g, gen in enumerate(generators):
            add(tuple(gen), (g,))
    while queue:
        i = queue.popleft()
        m, w = maps[i], words[i]
        for g, gen in enumerate(generators):
            add(tuple(gen[x] for x in m), w + (g,))
    return maps, words


def transformation_monoid(alg: FiniteAlgebra, cap: int = DEFAULT_MONOID_CAP) -> TransformationMonoid:
    maps, words = closure(alg.generator_maps, alg.n_states, cap)
    return TransformationMonoid(tuple(maps), tuple(words), alg.letter_names)


# --- reports ----------------------------------------------------------------


@dataclass
class AxiomResult:
    axiom: str
    passed: bool
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {"axiom": self.axiom, "verdict": "pass" if self.passed else "fail"}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class AxiomReport:
    results: list[AxiomResult] = field(default_factory=list)

    def __getitem__(self, axiom: str) -> AxiomResult:
        for r in self.results:
            if r.axiom == axiom:
                return r
        raise KeyError(axiom)

    def __contains__(self, axiom: str) -> bool:
        return any(r.axiom == axiom for r in self.results)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def verdicts(self) -> dict[str, bool]:
        return {r.axiom: r.passed for r in self.results}

    def to_json(self) -> list[dict]:
        return [r.to_json() for r in self.results]


def _result(axiom: str, witness: dict | None) -> AxiomResult:
    return AxiomResult(axiom, witness is None, witness)


def _first(it: Iterator[dict]) -> dict | None:
    return next(it, None)


# --- strong links -------------------------------------------------------------


def strong_link_witness(n: int, candidates: Sequence[tuple[Map, list[str]]]) -> dict | None:
    """Search for a nontrivial strong link among ``n`` states.

    ``candidates`` lists the available maps (with the word shown in a
    witness), in preference order. For each pair c < d the graph joining
    a and b whenever some map m fixes both with cm = dm is searched
    breadth-first from c; the first pair connected yields the witness
    (shortest chain, smallest indices).
    """
    fixed = [[a for a in range(n) if m[a] == a] for m, _ in candidates]
    for c, d in combinations(range(n), 2):
        usable = [k for k, (m, _) in enumerate(candidates) if m[c] == m[d]]
        if not usable:
            continue
        parent: dict[int, tuple[int, int] | None] = {c: None}
        queue = deque([c])
        while queue and d not in parent:
            a = queue.popleft()
            for k in usable:
                if candidates[k][0][a] != a:
                    continue
                for b in fixed[k]:
                    if b not in parent:
                        parent[b] = (a, k)
                        queue.append(b)
        if d in parent:
            chain, words = [d], []
            b = d
            while parent[b] is not None:
                a, k = parent[b]
                chain.append(a)
                words.append(candidates[k][1])
                b = a
            return {"chain": chain[::-1], "words": words[::-1]}
    return None


def _label_chain(w: dict | None, labels: Sequence[str]) -> dict | None:
    if w is not None:
        w["chain"] = [labels[a] for a in w["chain"]]
    return w


def _sl_candidates(monoid: TransformationMonoid) -> list[tuple[Map, list[str]]]:
    return [(m, monoid.word_labels(i)) for i, m in enumerate(monoid.maps)]


# --- equational checks -----------------------------------------------------------


def _idempotence(alg, letters: Sequence[int]) -> Iterator[dict]:
    maps, C, names = alg.generator_maps, alg.c_labels, alg.letter_names
    for c in range(alg.n_states):
        for s in letters:
            cs = maps[s][c]
            css = maps[s][cs]
            if css != cs:
                yield {"c": C[c], "s": names[s], "css": C[css], "cs": C[cs]}


def _previous_redundance(alg, pairs) -> Iterator[dict]:
    maps, C, names = alg.generator_maps, alg.c_labels, alg.letter_names
    for c in range(alg.n_states):
        for s, t in pairs:
            lhs = maps[s][maps[t][maps[s][c]]]
            rhs = maps[s][maps[t][c]]
            if lhs != rhs:
                yield {"c": C[c], "s": names[s], "t": names[t], "csts": C[lhs], "cts": C[rhs]}


def _commutativity(alg, letters: Sequence[int]) -> Iterator[dict]:
    maps, C, names = alg.generator_maps, alg.c_labels, alg.letter_names
    for c in range(alg.n_states):
        for s, t in combinations(letters, 2):
            lhs = maps[t][maps[s][c]]
            rhs = maps[s][maps[t][c]]
            if lhs != rhs:
                yield {"c": C[c], "s": names[s], "t": names[t], "cst": C[lhs], "cts": C[rhs]}


def check_action_axioms(action: Action, monoid: TransformationMonoid | None = None) -> AxiomReport:
    """Idempotence (I), previous redundance (PR) and trivial strong links (SL)."""
    gens = range(len(action.s_labels))
    report = AxiomReport([
        _result("I", _first(_idempotence(action, gens))),
        _result("PR", _first(_previous_redundance(action, [(s, t) for s in gens for t in gens]))),
    ])
    monoid = monoid or transformation_monoid(action)
    w = strong_link_witness(action.n_states, _sl_candidates(monoid))
    report.results.append(_result("SL", _label_chain(w, action.c_labels)))
    return report


def check_fully_pr(action: Action, monoid: TransformationMonoid | None = None) -> AxiomResult:
    """csws = cws for every c, s and word w (w ranging over the monoid).

    The witness has a shortest w, then the smallest c, s and monoid index.
    """
    monoid = monoid or transformation_monoid(action)
    maps, C = action.generator_maps, action.c_labels
    layers: dict[int, list[int]] = {}
    for i, w in enumerate(monoid.words):
        layers.setdefault(len(w), []).append(i)
    for length in sorted(layers):
        for c in range(action.n_states):
            for s in range(len(action.s_labels)):
                fs = maps[s]
                for i in layers[length]:
                    m = monoid.maps[i]
                    lhs = fs[m[fs[c]]]
                    rhs = fs[m[c]]
                    if lhs != rhs:
                        return AxiomResult("fully-PR", False, {
                            "c": C[c], "s": action.s_labels[s], "w": monoid.word_labels(i),
                            "csws": C[lhs], "cws": C[rhs],
                        })
    return AxiomResult("fully-PR", True)


def check_intersection_axioms(action: Action) -> AxiomReport:
    """Idempotence (I) and commutativity (C)."""
    gens = range(len(action.s_labels))
    return AxiomReport([
        _result("I", _first(_idempotence(action, gens))),
        _result("C", _first(_commutativity(action, gens))),
    ])


def _subset_witness(B: Biaction, monoid: TransformationMonoid, only_identity: bool) -> dict | None:
    maps, C, names = B.generator_maps, B.c_labels, B.letter_names
    n = B.n_states
    downs = range(B.n_down)
    ups = range(B.n_down, len(maps))
    words = monoid.maps[:1] if only_identity else monoid.maps
    for s in downs:
        for t in ups:
            for i, w in enumerate(words):
                sw = [w[maps[s][x]] for x in range(n)]
                tw = [w[maps[t][x]] for x in range(n)]
                es = [e for e in range(n) if sw[e] == tw[e]]
                if not es:
                    continue
                for c, d in combinations(range(n), 2):
                    if sw[c] == sw[d] and tw[c] == tw[d] and w[c] != w[d]:
                        wit = {"c": C[c], "d": C[d], "e": C[es[0]], "s": names[s], "t": names[t]}
                        if not only_identity:
                            wit["w"] = monoid.word_labels(i)
                        return wit
    return None


def check_biaction_axioms(B: Biaction, monoid: TransformationMonoid | None = None) -> AxiomReport:
    """I, cross-sort PR, C in each sort, and the basic and extra subset axioms."""
    downs = list(range(B.n_down))
    ups = list(range(B.n_down, len(B.generator_maps)))
    cross = [(s, t) for s in downs for t in ups] + [(t, s) for t in ups for s in downs]
    monoid = monoid or transformation_monoid(B)
    return AxiomReport([
        _result("I", _first(_idempotence(B, downs + ups))),
        _result("PR", _first(_previous_redundance(B, cross))),
        _result("C-down", _first(_commutativity(B, downs))),
        _result("C-up", _first(_commutativity(B, ups))),
        _result("basic-S", _subset_witness(B, monoid, only_identity=True)),
        _result("extra-S", _subset_witness(B, monoid, only_identity=False)),
    ])


def check_setband_axioms(band: SetBand) -> AxiomReport:
    """Associativity, idempotence, right regularity (xyx = yx) and SL."""
    mul, L = band.mul, band.s_labels
    n = len(L)

    def assoc():
        for x in range(n):
            for y in range(n):
                xy = mul[x][y]
                for z in range(n):
                    if mul[xy][z] != mul[x][mul[y][z]]:
                        yield {"x": L[x], "y": L[y], "z": L[z],
                               "(xy)z": L[mul[xy][z]], "x(yz)": L[mul[x][mul[y][z]]]}

    def idem():
        for x in range(n):
            if mul[x][x] != x:
                yield {"x": L[x], "xx": L[mul[x][x]]}

    def right_regular():
        for x in range(n):
            for y in range(n):
                if mul[mul[x][y]][x] != mul[y][x]:
                    yield {"x": L[x], "y": L[y], "xyx": L[mul[mul[x][y]][x]], "yx": L[mul[y][x]]}

    candidates = [(m, [L[s]]) for s, m in enumerate(band.generator_maps)]
    return AxiomReport([
        _result("assoc", _first(assoc())),
        _result("idem", _first(idem())),
        _result("right-regular", _first(right_regular())),
        _result("SL", _label_chain(strong_link_witness(n, candidates), L)),
    ])


EQUATIONAL = {
    "action": ("I", "PR"),
    "biaction": ("I", "PR", "C-down", "C-up"),
    "setband": ("assoc", "idem", "right-regular"),
}


def check_axioms(alg: FiniteAlgebra) -> AxiomReport:
    """The axiom system characterizing the class of ``alg``'s kind."""
    if isinstance(alg, Action):
        return check_action_axioms(alg)
    if isinstance(alg, Biaction):
        return check_biaction_axioms(alg)
    return check_setband_axioms(alg)
