"""The generator algebras F(1) and Horn clause validity by evaluation in them.

A Horn clause holds in every member of a class exactly when it holds in
that class's F(1), so validity reduces to a finite search over assignments
into F(1).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import prod

from .clauses import HornClause, Term, parse_clause
from .core import FiniteAlgebra, LimitError, SetBand, full_algebra

DEFAULT_VARIABLE_CAP = 12


@lru_cache(maxsize=None)
def f1(kind: str) -> FiniteAlgebra:
    """F(1): labels "0", "1" for C and "(1,0)", "(0,0)", "(1,1)" for S."""
    alg, _ = full_algebra(kind, ("*",))
    return alg


@dataclass(frozen=True)
class HornVerdict:
    valid: bool
    assignment: dict[str, str] | None = None
    lhs: str | None = None
    rhs: str | None = None
    search_space: int = 0

    def __bool__(self) -> bool:
        return self.valid

    def to_json(self) -> dict:
        out: dict = {"valid": self.valid, "search_space": self.search_space}
        if not self.valid:
            out["counterexample"] = self.assignment
            out["values"] = [self.lhs, self.rhs]
        return out


def _domains(alg: FiniteAlgebra, clause: HornClause) -> list[range]:
    doms = []
    for v in clause.s_vars:
        if clause.kind == "biaction":
            nd = alg.n_down
            doms.append(range(0, nd) if clause.sorts[v] == "down" else range(nd, len(alg.generator_maps)))
        else:
            doms.append(range(len(alg.letter_names)))
    return doms


def search_space(alg: FiniteAlgebra, clause: HornClause) -> int:
    n_c = alg.n_states ** len(clause.c_vars) if clause.kind != "setband" else 1
    return n_c * prod(len(d) for d in _domains(alg, clause))


def evaluate_clause(alg: FiniteAlgebra, clause: HornClause,
                    cap: int = DEFAULT_VARIABLE_CAP) -> HornVerdict:
    """Check ``clause`` in ``alg`` over every assignment.

    Assignments run in mixed-radix order: S-variables in declaration order
    are the high digits, C-variables the low digits. The first failing
    assignment is returned as the counterexample.
    """
    if clause.kind != alg.kind:
        raise ValueError(f"a {clause.kind} clause cannot be evaluated in a {alg.kind}")
    size = search_space(alg, clause)
    if len(clause.s_vars) > cap:
        raise LimitError(f"{len(clause.s_vars)} S-variables exceed the cap of {cap} "
                         f"(search space {size})")
    equations = clause.premises + (clause.conclusion,)
    terms = sorted({t for eq in equations for t in (eq.lhs, eq.rhs)}, key=str)
    s_pos = {v: i for i, v in enumerate(clause.s_vars)}
    c_pos = {v: i for i, v in enumerate(clause.c_vars)}
    maps = alg.generator_maps
    names = alg.letter_names
    n = alg.n_states

    for s_assign in product(*_domains(alg, clause)):
        if isinstance(alg, SetBand):
            values = {}
            for t in terms:
                x = s_assign[s_pos[t.word[0]]]
                for v in t.word[1:]:
                    x = alg.mul[x][s_assign[s_pos[v]]]
                values[t] = x
            ok = [values[e.lhs] == values[e.rhs] for e in equations]
            if all(ok[:-1]) and not ok[-1]:
                assignment = {v: names[s_assign[i]] for i, v in enumerate(clause.s_vars)}
                return HornVerdict(False, assignment, alg.s_labels[values[clause.conclusion.lhs]],
                                   alg.s_labels[values[clause.conclusion.rhs]], size)
            continue
        word_maps = {}
        for t in terms:
            m = tuple(range(n))
            for v in t.word:
                g = maps[s_assign[s_pos[v]]]
                m = tuple(g[x] for x in m)
            word_maps[t] = m
        for c_assign in product(range(n), repeat=len(clause.c_vars)):
            def val(t: Term) -> int:
                return word_maps[t][c_assign[c_pos[t.var]]]
            if all(val(e.lhs) == val(e.rhs) for e in clause.premises):
                lhs, rhs = val(clause.conclusion.lhs), val(clause.conclusion.rhs)
                if lhs != rhs:
                    assignment = {v: names[s_assign[i]] for i, v in enumerate(clause.s_vars)}
                    assignment.update({v: alg.c_labels[c_assign[i]] for i, v in enumerate(clause.c_vars)})
                    return HornVerdict(False, assignment, alg.c_labels[lhs], alg.c_labels[rhs], size)
    return HornVerdict(True, search_space=size)


def horn_valid(kind: str, clause: HornClause | str, cap: int = DEFAULT_VARIABLE_CAP) -> HornVerdict:
    """Validity of ``clause`` across the whole class of ``kind``, decided in F(1)."""
    if isinstance(clause, str):
        clause = parse_clause(clause, kind)
    if clause.kind != kind:
        raise ValueError(f"clause kind {clause.kind!r} does not match {kind!r}")
    return evaluate_clause(f1(kind), clause, cap)


def strong_link_clause(n: int, word_lengths: list[int] | None = None) -> str:
    """Text of the strong links clause with an ``n``-step chain.

    ``word_lengths[i]`` is the number of S-variables in word i (default 1).
    """
    word_lengths = word_lengths or [1] * n
    words = []
    k = 0
    for length in word_lengths:
        words.append(" ".join(f"s{k + j}" for j in range(length)))
        k += length
    chain = ["c"] + [f"a{i}" for i in range(1, n)] + ["d"]
    premises = []
    for i, w in enumerate(words):
        premises.append(f"c {w} = d {w}")
        premises.append(f"{chain[i]} {w} = {chain[i]}")
        premises.append(f"{chain[i + 1]} {w} = {chain[i + 1]}")
    return " & ".join(premises) + " => c = d"


def subset_clause(word: list[str] | None = None) -> str:
    """Text of the basic (``word`` empty) or an extra subset clause for biactions.

    Entries of ``word`` are annotated letters such as ``u:up``.
    """
    w = " ".join(word or [])
    return (f"c s:down {w} = d s:down {w} & c t:up {w} = d t:up {w} & "
            f"e s:down {w} = e t:up {w} => c {w} = d {w}")
