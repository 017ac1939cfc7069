"""Words, terms, equations and Horn clauses, with a small text syntax.

Grammar (tokens are whitespace separated)::

    clause    := [equation ("&" equation)* "=>"] equation
    equation  := term "=" term
    term      := cvar letter*          (action, biaction)
               | letter letter*        (setband)
    letter    := name | name ":down" | name ":up"

In action and biaction clauses the first token of every term is a C-sorted
variable and the remaining tokens are S-sorted. Biaction S-variables must be
given a sort (``s:down`` / ``s:up``) on at least one occurrence; the sort is
then fixed for the whole clause. Variables are declared in order of first
appearance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

Word = tuple  # tuple[str, ...] of S-variable names


class ClauseSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Term:
    """``var`` applied to ``word``; ``var`` is None for set band words."""

    var: str | None
    word: Word

    def __str__(self) -> str:
        return " ".join(([self.var] if self.var else []) + list(self.word))


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class HornClause:
    premises: tuple[Equation, ...]
    conclusion: Equation
    kind: str
    c_vars: tuple[str, ...] = ()
    s_vars: tuple[str, ...] = ()
    sorts: dict[str, str] = field(default_factory=dict, compare=False)

    def __str__(self) -> str:
        body = str(self.conclusion)
        if self.premises:
            body = " & ".join(map(str, self.premises)) + " => " + body
        return body


def _split_letter(tok: str) -> tuple[str, str | None]:
    name, sep, sort = tok.rpartition(":")
    if sep and sort in ("down", "up") and name:
        return name, sort
    return tok, None


def _check_name(tok: str) -> None:
    if not tok or any(ch in tok for ch in "=&"):
        raise ClauseSyntaxError(f"bad token {tok!r}")


class _Scope:
    def __init__(self, kind: str):
        self.kind = kind
        self.c_vars: list[str] = []
        self.s_vars: list[str] = []
        self.sorts: dict[str, str] = {}

    def c(self, name: str) -> str:
        _check_name(name)
        if name in self.s_vars:
            raise ClauseSyntaxError(f"{name!r} used both as a C and an S variable")
        if ":" in name:
            raise ClauseSyntaxError(f"C variable {name!r} cannot carry a sort")
        if name not in self.c_vars:
            self.c_vars.append(name)
        return name

    def s(self, tok: str) -> str:
        name, sort = _split_letter(tok)
        _check_name(name)
        if name in self.c_vars:
            raise ClauseSyntaxError(f"{name!r} used both as a C and an S variable")
        if sort is not None:
            if self.kind != "biaction":
                raise ClauseSyntaxError(f"sort annotation on {tok!r} outside a biaction clause")
            if self.sorts.setdefault(name, sort) != sort:
                raise ClauseSyntaxError(f"{name!r} annotated with two sorts")
        if name not in self.s_vars:
            self.s_vars.append(name)
        return name


def _parse_term(text: str, scope: _Scope) -> Term:
    toks = text.split()
    if not toks:
        raise ClauseSyntaxError("empty term")
    if scope.kind == "setband":
        return Term(None, tuple(scope.s(t) for t in toks))
    return Term(scope.c(toks[0]), tuple(scope.s(t) for t in toks[1:]))


def _parse_equation(text: str, scope: _Scope) -> Equation:
    parts = text.split("=")
    if len(parts) != 2:
        raise ClauseSyntaxError(f"expected exactly one '=' in {text.strip()!r}")
    return Equation(_parse_term(parts[0], scope), _parse_term(parts[1], scope))


def parse_clause(text: str, kind: str, sorts: dict[str, str] | None = None) -> HornClause:
    """Parse ``premise & ... => conclusion`` (or a bare equation).

    ``sorts`` predeclares biaction letter sorts so annotations can be omitted.
    """
    if kind not in ("action", "biaction", "setband"):
        raise ValueError(f"unknown kind {kind!r}")
    scope = _Scope(kind)
    scope.sorts.update(sorts or {})
    head, arrow, tail = text.partition("=>")
    if arrow:
        if "=>" in tail:
            raise ClauseSyntaxError("more than one '=>'")
        premises = tuple(_parse_equation(p, scope) for p in head.split("&"))
        conclusion = _parse_equation(tail, scope)
    else:
        if "&" in text:
            raise ClauseSyntaxError("'&' outside the premises")
        premises = ()
        conclusion = _parse_equation(text, scope)
    if kind == "biaction":
        missing = [v for v in scope.s_vars if v not in scope.sorts]
        if missing:
            raise ClauseSyntaxError(f"biaction variables need a sort: {', '.join(missing)}")
    return HornClause(premises, conclusion, kind, tuple(scope.c_vars), tuple(scope.s_vars),
                      {v: scope.sorts[v] for v in scope.s_vars if v in scope.sorts})


def parse_term(text: str, kind: str, require_sorts: bool = True) -> tuple[Term, dict[str, str]]:
    """Parse a single term; returns it with the sorts annotated in it.

    With ``require_sorts=False`` unannotated biaction letters are allowed (the
    caller supplies their sorts some other way).
    """
    scope = _Scope(kind)
    term = _parse_term(text, scope)
    if kind == "biaction" and require_sorts:
        missing = [v for v in scope.s_vars if v not in scope.sorts]
        if missing:
            raise ClauseSyntaxError(f"biaction variables need a sort: {', '.join(missing)}")
    return term, dict(scope.sorts)


def make_clause(kind: str, premises, conclusion: Equation, sorts: dict[str, str] | None = None) -> HornClause:
    """Build a clause from Term/Equation objects, declaring variables in order."""
    c_vars: list[str] = []
    s_vars: list[str] = []
    for eq in tuple(premises) + (conclusion,):
        for term in (eq.lhs, eq.rhs):
            if term.var is not None and term.var not in c_vars:
                c_vars.append(term.var)
            for x in term.word:
                if x not in s_vars:
                    s_vars.append(x)
    sorts = dict(sorts or {})
    if kind == "biaction" and any(v not in sorts for v in s_vars):
        raise ClauseSyntaxError("biaction variables need a sort")
    return HornClause(tuple(premises), conclusion, kind, tuple(c_vars), tuple(s_vars), sorts)
