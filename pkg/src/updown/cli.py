"""Command-line entry point: ``updown <subcommand> ...``.

Algebra inputs are JSON files or ``fixtures://<name>``. Every report is
JSON on stdout. Exit codes: 0 success, 1 semantic failure (an axiom fails,
a non-member, inequivalent words, an invalid clause), 2 usage or structural
error.
"""

from __future__ import annotations

import argparse
import sys

from . import construct, lab
from .axioms import check_axioms, transformation_monoid
from .clauses import ClauseSyntaxError, parse_clause, parse_term
from .core import Action, Biaction, LimitError, StructureError, full_algebra, full_prime_action
from .formats import (algebra_from_json, algebra_to_json, dumps, load_document,
                      representation_from_json, representation_to_json)
from .generator import evaluate_clause, horn_valid
from .homs import is_member
from .words import normalize_word, words_equivalent

FIXTURE_SCHEME = "fixtures://"


class UsageError(Exception):
    pass


def load_algebra(ref: str):
    if ref.startswith(FIXTURE_SCHEME):
        return _fixture(ref[len(FIXTURE_SCHEME):]).algebra
    return algebra_from_json(load_document(ref))


def _fixture(name: str) -> lab.Fixture:
    try:
        return lab.fixture(name)
    except KeyError as e:
        raise UsageError(e.args[0]) from None


def _need(alg, cls, what: str):
    if not isinstance(alg, cls):
        raise UsageError(f"{what} needs a {cls.kind}, got a {alg.kind}")
    return alg


# --- subcommands: each returns (report, exit code) ---------------------------------


def cmd_check(a):
    alg = load_algebra(a.input)
    report = check_axioms(alg)
    return {"kind": alg.kind, "passed": report.passed, "axioms": report.to_json()}, int(not report.passed)


def _decision_json(d) -> dict:
    out: dict = {"member": d.member, "homs": d.n_homs}
    if d.member:
        out["representation"] = representation_to_json(d.representation)
    else:
        out["unseparated"] = list(d.unseparated)
        out["sort"] = d.sort
    return out


def cmd_decide(a):
    alg = load_algebra(a.input)
    d = is_member(alg)
    return {"kind": alg.kind, **_decision_json(d)}, int(not d.member)


def cmd_represent(a):
    alg = load_algebra(a.input)
    if a.rep:
        rep = representation_from_json(load_document(a.rep))
        if a.prime_normalize:
            rep = construct.prime_normalize(rep)
        bad = construct.verify_representation(alg, rep)
        out = {"ok": bad is None, "representation": representation_to_json(rep)}
        if bad is not None:
            out["mismatch"] = {"reason": bad.reason, "detail": bad.detail}
        return out, int(bad is not None)
    try:
        if a.method == "canonical":
            d = is_member(alg)
            if not d.member:
                return _decision_json(d), 1
            rep = d.representation
        elif a.method == "intersection":
            rep = construct.intersection_representation(_need(alg, Action, "intersection"))
        else:
            rep = construct.biaction_quotient_embedding_phi(_need(alg, Biaction, "phi"))
    except construct.PreconditionError as e:
        return {"error": str(e), "witness": e.witness}, 1
    return representation_to_json(rep), 0


def _sorts_arg(text: str | None) -> dict[str, str]:
    sorts = {}
    for item in (text or "").split(","):
        if item:
            name, _, sort = item.partition(":")
            if sort not in ("down", "up"):
                raise UsageError(f"bad sort declaration {item!r}; use name:down or name:up")
            sorts[name] = sort
    return sorts


def cmd_normalize(a):
    toks = a.word.split()
    sorts = _sorts_arg(a.sorts)
    letters = []
    for tok in toks:
        name, _, sort = tok.partition(":")
        if sort:
            sorts[name] = sort
        letters.append(name)
    order = a.order.split(",") if a.order else None
    try:
        normal = normalize_word(a.kind, letters, sorts if a.kind == "biaction" else None, order)
    except ValueError as e:
        raise UsageError(str(e)) from None
    return {"word": letters, "normal": list(normal)}, 0


def _annotated(text: str) -> dict[str, str]:
    """Sorts given inline anywhere in ``text`` (``s:down``)."""
    out = {}
    for tok in text.replace("=", " ").replace("&", " ").replace(">", " ").split():
        name, _, sort = tok.partition(":")
        if sort:
            out[name] = sort
    return out


def cmd_eqcheck(a):
    lhs, sep, rhs = a.equation.partition("=")
    if not sep or "=" in rhs:
        raise UsageError("expected 'lhs = rhs'")
    sorts = _sorts_arg(a.sorts)
    eq = words_equivalent(a.kind, lhs, rhs, sorts)
    out: dict = {"equivalent": eq}
    if not eq:
        # same-variable failures come with an F(1) counterexample
        lt, _ = parse_term(lhs, a.kind, require_sorts=False)
        rt, _ = parse_term(rhs, a.kind, require_sorts=False)
        if lt.var == rt.var:
            clause = parse_clause(a.equation, a.kind, {**sorts, **_annotated(a.equation)})
            out["counterexample"] = horn_valid(a.kind, clause).to_json()
        else:
            out["reason"] = "different C variables"
    return out, int(not eq)


def cmd_horn(a):
    clause = parse_clause(a.clause, a.kind, _sorts_arg(a.sorts))
    if a.input:
        alg = load_algebra(a.input)
        if alg.kind != a.kind:
            raise UsageError(f"clause kind {a.kind} does not match algebra kind {alg.kind}")
        verdict = evaluate_clause(alg, clause)
    else:
        verdict = horn_valid(a.kind, clause)
    return verdict.to_json(), int(not verdict.valid)


def cmd_census(a):
    if a.kind == "action":
        sizes = (a.c, a.s)
    elif a.kind == "biaction":
        sizes = (a.c, a.sdown, a.sup)
    else:
        sizes = (a.s,)
    if any(x is None for x in sizes):
        raise UsageError("missing size flags for this kind")
    report = lab.census(a.kind, sizes, shards=a.shards, bands_only=a.bands_only)
    if a.out:
        with open(a.out, "w", encoding="utf-8") as f:
            f.write(dumps(report) + "\n")
    return report, int(bool(report["disagreements"]))


def cmd_monoid(a):
    alg = load_algebra(a.input)
    M = transformation_monoid(alg)
    labels = alg.c_labels
    return {"size": len(M), "elements": [
        {"word": M.word_labels(i), "map": {labels[c]: labels[m[c]] for c in range(len(m))}}
        for i, m in enumerate(M.maps)]}, 0


def cmd_quotient(a):
    A = _need(load_algebra(a.input), Action, "quotient")
    try:
        q = construct.quotient_by_approx(A)
        psi = construct.quotient_embedding_psi(A)
    except construct.PreconditionError as e:
        return {"error": str(e), "witness": e.witness}, 1
    return {"classes": [[A.c_labels[c] for c in cls] for cls in q.classes],
            "quotient": algebra_to_json(q.quotient),
            "representation": representation_to_json(psi)}, 0


def cmd_restrict(a):
    B = _need(load_algebra(a.input), Biaction, "restrict")
    try:
        return algebra_to_json(construct.restrict_biaction(B, a.letter)), 0
    except construct.PreconditionError as e:
        return {"error": str(e), "witness": e.witness}, 1


def cmd_split(a):
    A = _need(load_algebra(a.input), Action, "split")
    parts = construct.split_into_biaction(A)
    if parts is None:
        return {"split": None}, 1
    return {"split": {"down": parts[0], "up": parts[1]}}, 0


def cmd_opband(a):
    A = _need(load_algebra(a.input), Action, "opband")
    try:
        return algebra_to_json(construct.operation_setband(A)), 0
    except ValueError as e:
        raise UsageError(str(e)) from None


def cmd_fixtures(a):
    if a.action == "list":
        return {"fixtures": [{"name": n, "kind": (f := lab.fixture(n)).algebra.kind,
                              "representation": f.representation is not None, "note": f.note}
                             for n in lab.FIXTURES]}, 0
    if a.action == "emit":
        if not a.name:
            raise UsageError("fixtures emit needs a name")
        f = _fixture(a.name)
        if a.representation:
            if f.representation is None:
                return {"representation": None}, 1
            return representation_to_json(f.representation), 0
        return algebra_to_json(f.algebra), 0
    if a.seed is None or a.kind is None or not a.sizes:
        raise UsageError("fixtures random needs --kind, --sizes and --seed")
    sizes = tuple(int(x) for x in a.sizes.split(","))
    try:
        alg = lab.random_algebra(a.kind, sizes, a.seed)
    except ValueError as e:
        raise UsageError(str(e)) from None
    return algebra_to_json(alg), 0


def cmd_full(a):
    if a.prime:
        if a.kind != "action":
            raise UsageError("--prime applies to actions only")
        alg, rep = full_prime_action(a.atoms)
    else:
        alg, rep = full_algebra(a.kind, a.atoms)
    return {"algebra": algebra_to_json(alg), "representation": representation_to_json(rep)}, 0


# --- parser -----------------------------------------------------------------------------

KINDS = ("action", "biaction", "setband")


def build_parser() -> argparse.ArgumentParser:
    def flags(parser, default):
        parser.add_argument("--json", action="store_true", default=default,
                            help="JSON output (the only mode)")
        parser.add_argument("--quiet", action="store_true", default=default,
                            help="suppress the report, keep the exit code")

    # subcommand copies must not reset flags given before the subcommand
    common = argparse.ArgumentParser(add_help=False)
    flags(common, argparse.SUPPRESS)
    p = argparse.ArgumentParser(prog="updown",
                                description="Axioms, membership and set representations "
                                            "for finite up-down algebras.")
    flags(p, False)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=fn)
        return sp

    add("check", cmd_check, "check the axioms of the algebra's kind").add_argument("input")
    add("decide", cmd_decide, "decide class membership via homs into F(1)").add_argument("input")
    sp = add("represent", cmd_represent, "build or verify a set representation")
    sp.add_argument("input")
    sp.add_argument("--method", choices=("canonical", "intersection", "phi"), default="canonical")
    sp.add_argument("--rep", help="verify this representation document instead")
    sp.add_argument("--prime-normalize", action="store_true",
                    help="normalize a prime representation before verifying")
    sp = add("normalize", cmd_normalize, "normal form of a word")
    sp.add_argument("--kind", choices=KINDS, required=True)
    sp.add_argument("--sorts", help="biaction sorts, e.g. s:down,t:up")
    sp.add_argument("--order", help="comma-separated letter order for biaction runs")
    sp.add_argument("word", help="letters separated by spaces (biaction: name:down / name:up)")
    sp = add("eqcheck", cmd_eqcheck, "decide an equation in the class")
    sp.add_argument("--kind", choices=KINDS, required=True)
    sp.add_argument("--sorts", help="biaction sorts, e.g. s:down,t:up")
    sp.add_argument("equation")
    sp = add("horn", cmd_horn, "decide a Horn clause in F(1) or evaluate it in an algebra")
    sp.add_argument("--kind", choices=KINDS, required=True)
    sp.add_argument("--sorts", help="biaction sorts, e.g. s:down,t:up")
    sp.add_argument("--in", dest="input", help="evaluate in this algebra instead of F(1)")
    sp.add_argument("clause")
    sp = add("census", cmd_census, "exhaustive cross-check of axioms against membership")
    sp.add_argument("--kind", choices=KINDS, required=True)
    sp.add_argument("--c", type=int)
    sp.add_argument("--s", type=int)
    sp.add_argument("--sdown", type=int)
    sp.add_argument("--sup", type=int)
    sp.add_argument("--shards", type=int, default=1)
    sp.add_argument("--bands-only", action="store_true",
                    help="set bands: visit only right regular bands")
    sp.add_argument("--out")
    add("monoid", cmd_monoid, "transformation monoid with shortest words").add_argument("input")
    add("quotient", cmd_quotient, "quotient by the fixed-point congruence, with psi").add_argument("input")
    sp = add("restrict", cmd_restrict, "restrict a biaction to the image of a letter")
    sp.add_argument("input")
    sp.add_argument("letter")
    add("split", cmd_split, "split S of an action into S-down and S-up").add_argument("input")
    add("opband", cmd_opband, "the operation semigroup of an action").add_argument("input")
    sp = add("fixtures", cmd_fixtures, "built-in examples")
    sp.add_argument("action", choices=("list", "emit", "random"))
    sp.add_argument("name", nargs="?")
    sp.add_argument("--representation", action="store_true")
    sp.add_argument("--kind", choices=KINDS)
    sp.add_argument("--sizes", help="comma-separated sizes, e.g. 3,2")
    sp.add_argument("--seed", type=int)
    sp = add("full", cmd_full, "the full algebra F(X) on n atoms")
    sp.add_argument("--kind", choices=KINDS, required=True)
    sp.add_argument("--atoms", type=int, required=True)
    sp.add_argument("--prime", action="store_true", help="F'(X): drop up <= down")
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        report, code = args.func(args)
    except KeyError as e:
        print(f"updown: error: {e.args[0]}", file=sys.stderr)
        return 2
    except (UsageError, StructureError, ClauseSyntaxError, LimitError, OSError) as e:
        print(f"updown: error: {e}", file=sys.stderr)
        return 2
    if not args.quiet:
        print(dumps(report))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
