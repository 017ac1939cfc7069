"""Normal forms of words, and word equivalence decided in F(1)."""

from __future__ import annotations

from typing import Sequence

from .clauses import ClauseSyntaxError, Equation, Term, make_clause, parse_term
from .generator import DEFAULT_VARIABLE_CAP, horn_valid


def last_occurrences(word: Sequence[str]) -> tuple[str, ...]:
    """Keep only the last occurrence of each letter, in order."""
    seen = set()
    out = []
    for x in reversed(word):
        if x not in seen:
            seen.add(x)
            out.append(x)
    return tuple(reversed(out))


def normalize_word(kind: str, word: Sequence[str], sorts: dict[str, str] | None = None,
                   order: Sequence[str] | None = None) -> tuple[str, ...]:
    """Canonical representative of ``word`` under the equations of ``kind``.

    action, setband: the last-occurrence subsequence. biaction: the same,
    then every maximal run of same-sort letters sorted by ``order`` (default:
    by name). ``sorts`` maps each biaction letter to "down" or "up".
    """
    word = tuple(word)
    if kind == "setband" and not word:
        raise ValueError("set band words are nonempty")
    if kind not in ("action", "biaction", "setband"):
        raise ValueError(f"unknown kind {kind!r}")
    w = last_occurrences(word)
    if kind != "biaction":
        return w
    if sorts is None or any(x not in sorts for x in w):
        raise ValueError("biaction words need a sort for every letter")
    rank = {x: i for i, x in enumerate(order)} if order is not None else None
    key = (lambda x: rank[x]) if rank is not None else (lambda x: x)
    out: list[str] = []
    run: list[str] = []
    for x in w:
        if run and sorts[x] != sorts[run[0]]:
            out.extend(sorted(run, key=key))
            run = []
        run.append(x)
    out.extend(sorted(run, key=key))
    return tuple(out)


def _as_term(kind: str, x, sorts: dict[str, str]) -> Term:
    if isinstance(x, Term):
        return x
    if isinstance(x, str):
        term, found = parse_term(x, kind, require_sorts=False)
        for k, v in found.items():
            if sorts.setdefault(k, v) != v:
                raise ClauseSyntaxError(f"{k!r} annotated with two sorts")
        return term
    if kind == "setband":
        return Term(None, tuple(x))
    raise TypeError("action and biaction terms need a C variable; pass a Term or a string")


def words_equivalent(kind: str, lhs, rhs, sorts: dict[str, str] | None = None,
                     cap: int = DEFAULT_VARIABLE_CAP) -> bool:
    """Whether ``lhs = rhs`` holds throughout the class of ``kind``.

    Sides are Terms, term strings (``"c s t s"``, biaction letters annotated
    as ``s:down``) or, for set bands, letter sequences.
    """
    sorts = dict(sorts or {})
    left = _as_term(kind, lhs, sorts)
    right = _as_term(kind, rhs, sorts)
    if left.var != right.var:
        return False
    clause = make_clause(kind, (), Equation(left, right), sorts)
    return horn_valid(kind, clause, cap).valid
