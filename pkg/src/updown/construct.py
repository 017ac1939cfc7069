"""Explicit constructions: representation checking, orbit/fixed-point
representations, quotients and their embeddings, restrictions of biactions,
normalizing relaxed representations, sort surgery and operation bands."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .axioms import (check_biaction_axioms, check_fully_pr, check_intersection_axioms,
                     closure, transformation_monoid)
from .core import (Action, Biaction, FiniteAlgebra, LimitError, SetBand, SetRepresentation,
                   act_on_set, atoms_of, band_product)
from .homs import is_member

DEFAULT_SPLIT_CAP = 16


class PreconditionError(ValueError):
    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Mismatch:
    reason: str
    detail: dict

    def to_json(self) -> dict:
        return {"reason": self.reason, **self.detail}


def _setstr(mask: int, universe) -> list[str]:
    return atoms_of(mask, universe)


def verify_representation(A: FiniteAlgebra, R: SetRepresentation) -> Mismatch | None:
    """None when R realizes A (injective per sort, agreeing on every table entry)."""
    if R.kind != A.kind:
        raise ValueError(f"representation kind {R.kind!r} does not match {A.kind!r}")
    U = R.universe
    if isinstance(A, SetBand):
        if set(R.s_pairs) != set(A.s_labels):
            raise ValueError("representation labels do not cover the algebra")
    else:
        if set(R.c_sets) != set(A.c_labels):
            raise ValueError("representation C labels do not match the algebra")
        if isinstance(A, Action) and set(R.s_pairs) != set(A.s_labels):
            raise ValueError("representation S labels do not match the algebra")
        if isinstance(A, Biaction) and (set(R.down_sets) != set(A.sdown_labels)
                                        or set(R.up_sets) != set(A.sup_labels)):
            raise ValueError("representation Sdown/Sup labels do not match the algebra")

    for sort, values in (("C", R.c_sets), ("S", R.s_pairs), ("Sdown", R.down_sets), ("Sup", R.up_sets)):
        if len(set(values.values())) != len(values):
            return Mismatch("not injective", {"sort": sort})

    if isinstance(A, SetBand):
        for x, xl in enumerate(A.s_labels):
            for y, yl in enumerate(A.s_labels):
                got = band_product(R.s_pairs[xl], R.s_pairs[yl])
                want = R.s_pairs[A.s_labels[A.mul[x][y]]]
                if got != want:
                    return Mismatch("product disagrees", {
                        "x": xl, "y": yl, "expected": A.s_labels[A.mul[x][y]],
                        "computed": [_setstr(got[0], U), _setstr(got[1], U)]})
        return None

    C = A.c_labels
    for c, cl in enumerate(C):
        cm = R.c_sets[cl]
        for g, m in enumerate(A.generator_maps):
            if isinstance(A, Action):
                lab = A.s_labels[g]
                got = act_on_set(cm, *R.s_pairs[lab])
            elif g < A.n_down:
                lab = A.sdown_labels[g]
                got = cm & R.down_sets[lab]
            else:
                lab = A.sup_labels[g - A.n_down]
                got = cm | R.up_sets[lab]
            if got != R.c_sets[C[m[c]]]:
                return Mismatch("action disagrees", {
                    "c": cl, "s": A.letter_names[g], "expected": C[m[c]],
                    "computed": _setstr(got, U)})
    return None


def intersection_representation(A: Action) -> SetRepresentation:
    """Pure-intersection representation of an idempotent commutative action.

    c is sent to its orbit {cw}, s to its fixed points plus a tag atom.
    """
    report = check_intersection_axioms(A)
    if not report.passed:
        bad = next(r for r in report.results if not r.passed)
        raise PreconditionError(f"action fails {bad.axiom}", bad.witness)
    monoid = transformation_monoid(A)
    n = A.n_states
    universe = [f"elem:{c}" for c in A.c_labels] + [f"tag:{s}" for s in A.s_labels]
    c_sets = {}
    for c, lab in enumerate(A.c_labels):
        c_sets[lab] = sum(1 << d for d in {m[c] for m in monoid.maps})
    s_pairs = {}
    for s, (lab, fs) in enumerate(zip(A.s_labels, A.generator_maps)):
        fixed = sum(1 << c for c in range(n) if fs[c] == c)
        s_pairs[lab] = (fixed | 1 << (n + s), 0)
    return SetRepresentation("action", universe, c_sets=c_sets, s_pairs=s_pairs)


@dataclass(frozen=True)
class CongruenceResult:
    classes: tuple[tuple[int, ...], ...]
    quotient: Action
    projection: tuple[int, ...]


def _is_identity(m) -> bool:
    return all(v == i for i, v in enumerate(m))


def quotient_by_approx(A: Action) -> CongruenceResult:
    """Quotient by the closure of 'fixed by a common non-identity s'."""
    pr = check_fully_pr(A)
    if not pr.passed:
        raise PreconditionError("action is not fully previous redundant", pr.witness)
    n = A.n_states
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in A.generator_maps:
        if _is_identity(m):
            continue
        fixed = [c for c in range(n) if m[c] == c]
        for c in fixed[1:]:
            a, b = find(fixed[0]), find(c)
            if a != b:
                parent[max(a, b)] = min(a, b)
    roots = sorted({find(c) for c in range(n)})
    cls_of = {r: i for i, r in enumerate(roots)}
    projection = tuple(cls_of[find(c)] for c in range(n))
    classes = tuple(tuple(c for c in range(n) if projection[c] == k) for k in range(len(roots)))
    table = []
    for k, members in enumerate(classes):
        row = [projection[A.table[members[0]][s]] for s in range(len(A.s_labels))]
        for c in members[1:]:
            if [projection[A.table[c][s]] for s in range(len(A.s_labels))] != row:
                raise AssertionError("relation is not a congruence")
        table.append(row)
    quotient = Action([A.c_labels[members[0]] for members in classes], A.s_labels, table)
    return CongruenceResult(classes, quotient, projection)


def quotient_embedding_psi(A: Action) -> SetRepresentation:
    """Representation of the quotient of A (see quotient_by_approx).

    Each class c goes to {c}; an s acting as the identity on A goes to
    (all classes + tag, empty), any other s is constant on the quotient, with
    value d say, and goes to ({d, tag}, {d}).
    """
    Q = quotient_by_approx(A).quotient
    n = Q.n_states
    universe = [f"elem:{c}" for c in Q.c_labels] + [f"tag:{s}" for s in Q.s_labels]
    everything = (1 << n) - 1
    s_pairs = {}
    for s, (lab, m) in enumerate(zip(Q.s_labels, Q.generator_maps)):
        tag = 1 << (n + s)
        # identity vs constant is decided on A itself; on a one-point quotient both fit
        if _is_identity(A.generator_maps[s]):
            s_pairs[lab] = (everything | tag, 0)
        elif len(set(m)) == 1:
            d = 1 << m[0]
            s_pairs[lab] = (d | tag, d)
        else:
            raise PreconditionError(f"{lab!r} is neither identity nor constant on the quotient")
    return SetRepresentation("action", universe,
                             c_sets={lab: 1 << c for c, lab in enumerate(Q.c_labels)},
                             s_pairs=s_pairs)


def restrict_biaction(B: Biaction, t: str) -> Biaction:
    """B_t: C restricted to the image of t, with s acting as c -> cst."""
    report = check_biaction_axioms(B)
    if not report.passed:
        bad = next(r for r in report.results if not r.passed)
        raise PreconditionError(f"biaction fails {bad.axiom}", bad.witness)
    g = B.letter_index(t)
    ft = B.generator_maps[g]
    image = sorted(set(ft))
    pos = {c: i for i, c in enumerate(image)}
    down = [[pos[ft[B.table_down[c][s]]] for s in range(B.n_down)] for c in image]
    up = [[pos[ft[B.table_up[c][s]]] for s in range(len(B.sup_labels))] for c in image]
    return Biaction([B.c_labels[c] for c in image], B.sdown_labels, B.sup_labels, down, up)


def biaction_quotient_embedding_phi(B: Biaction) -> SetRepresentation:
    """Representation of a biaction whose operations are all identities or
    constants, S-down constants sharing one value and S-up constants another."""
    n = B.n_states
    consts = {"down": set(), "up": set()}
    kinds = []
    for g, m in enumerate(B.generator_maps):
        if _is_identity(m):
            kinds.append("id")
        elif len(set(m)) == 1:
            kinds.append("const")
            consts[B.letter_sort(g)].add(m[0])
        else:
            raise PreconditionError(f"{B.letter_names[g]!r} is neither identity nor constant")
    for sort, vals in consts.items():
        if len(vals) > 1:
            raise PreconditionError(f"S{sort} constants take more than one value",
                                    {"values": [B.c_labels[v] for v in sorted(vals)]})
    a_down = next(iter(consts["down"]), None)
    a_up = next(iter(consts["up"]), None)
    if a_down is not None and a_down == a_up:
        raise PreconditionError("S-down and S-up constants coincide", {"value": B.c_labels[a_down]})

    nd, nu = B.n_down, len(B.sup_labels)
    universe = ([f"elem:{c}" for c in B.c_labels] + [f"tag:down:{s}" for s in B.sdown_labels]
                + [f"tag:up:{t}" for t in B.sup_labels])
    all_c = (1 << n) - 1
    up_tags = sum(1 << (n + nd + i) for i in range(nu))
    c_sets = {}
    for a, lab in enumerate(B.c_labels):
        if a == a_down:
            c_sets[lab] = up_tags
        elif a == a_up:
            c_sets[lab] = all_c | up_tags
        else:
            c_sets[lab] = 1 << a | up_tags
    down_sets = {}
    for s, lab in enumerate(B.sdown_labels):
        tag = 1 << (n + s)
        down_sets[lab] = (all_c | tag | up_tags) if kinds[s] == "id" else (tag | up_tags)
    up_sets = {}
    for t, lab in enumerate(B.sup_labels):
        tag = 1 << (n + nd + t)
        up_sets[lab] = tag if kinds[nd + t] == "id" else (all_c | tag)
    return SetRepresentation("biaction", universe, c_sets=c_sets, down_sets=down_sets, up_sets=up_sets)


def prime_normalize(R: SetRepresentation) -> SetRepresentation:
    """Turn a relaxed action representation into one with up <= down.

    Each pair becomes (down | up, up). A label whose pair changed and now
    collides with another label gets a fresh atom ``dummy:<label>`` in its
    down-set; C sets never contain dummies, so the action is unchanged.
    """
    if R.kind != "action":
        raise ValueError("only action representations can be normalized")
    normalized = {lab: (d | u, u) for lab, (d, u) in R.s_pairs.items()}
    groups: dict[tuple[int, int], list[str]] = {}
    for lab, pair in normalized.items():
        groups.setdefault(pair, []).append(lab)
    universe = list(R.universe)
    for labels in groups.values():
        if len(labels) < 2:
            continue
        for lab in labels:
            if normalized[lab] != R.s_pairs[lab]:
                universe.append(f"dummy:{lab}")
                d, u = normalized[lab]
                normalized[lab] = (d | 1 << (len(universe) - 1), u)
    return SetRepresentation("action", universe, c_sets=dict(R.c_sets), s_pairs=normalized)


def biaction_to_action(B: Biaction) -> Action:
    """Merge S-down and S-up into one sort, labels prefixed ``down:`` / ``up:``."""
    labels = [f"down:{s}" for s in B.sdown_labels] + [f"up:{t}" for t in B.sup_labels]
    table = [list(B.table_down[c]) + list(B.table_up[c]) for c in range(B.n_states)]
    return Action(B.c_labels, labels, table)


def biaction_representation_to_action(R: SetRepresentation) -> SetRepresentation:
    """s in S-down becomes (s, empty), t in S-up becomes (X, t)."""
    if R.kind != "biaction":
        raise ValueError("expected a biaction representation")
    full = (1 << len(R.universe)) - 1
    pairs = {f"down:{s}": (m, 0) for s, m in R.down_sets.items()}
    pairs.update({f"up:{t}": (full, m) for t, m in R.up_sets.items()})
    return SetRepresentation("action", R.universe, c_sets=dict(R.c_sets), s_pairs=pairs)


def action_as_biaction(A: Action, ups: set[str]) -> Biaction:
    """Read A as a biaction with the labels in ``ups`` acting as S-up."""
    downs = [s for s in range(len(A.s_labels)) if A.s_labels[s] not in ups]
    upi = [s for s in range(len(A.s_labels)) if A.s_labels[s] in ups]
    return Biaction(A.c_labels, [A.s_labels[s] for s in downs], [A.s_labels[s] for s in upi],
                    [[row[s] for s in downs] for row in A.table],
                    [[row[s] for s in upi] for row in A.table])


def split_into_biaction(A: Action, cap: int = DEFAULT_SPLIT_CAP) -> tuple[list[str], list[str]] | None:
    """First division of S into (S-down, S-up) making a member biaction.

    Divisions are tried in lexicographic order of the per-element choice,
    down before up, first S element most significant.
    """
    if len(A.s_labels) > cap:
        raise LimitError(f"|S| = {len(A.s_labels)} exceeds the split cap {cap}")
    for choice in product((0, 1), repeat=len(A.s_labels)):
        ups = {lab for lab, c in zip(A.s_labels, choice) if c}
        if is_member(action_as_biaction(A, ups)):
            return ([lab for lab in A.s_labels if lab not in ups],
                    [lab for lab in A.s_labels if lab in ups])
    return None


def operation_setband(A: Action) -> SetBand:
    """The semigroup of maps generated by the f_s, product 'apply x, then y'.

    Elements are labeled by a shortest generating word.
    """
    if not A.s_labels:
        raise ValueError("the operation semigroup of an action with empty S is empty")
    maps, words = closure(A.generator_maps, A.n_states, with_identity=False)
    index = {m: i for i, m in enumerate(maps)}
    labels = [" ".join(A.s_labels[g] for g in w) for w in words]
    mul = [[index[tuple(y[v] for v in x)] for y in maps] for x in maps]
    return SetBand(labels, mul)
