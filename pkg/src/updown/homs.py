"""Homomorphisms into F(1), the canonical embedding, and class membership.

An algebra belongs to its class exactly when the homomorphisms into F(1)
separate every pair of distinct same-sort elements; the product of all of
them is then an embedding into F(H), H the set of homomorphisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .core import (Action, Biaction, FiniteAlgebra, LimitError, SetBand, SetRepresentation,
                   full_algebra)
from .generator import f1

DEFAULT_NODE_CAP = 10**7


@dataclass(frozen=True)
class Hom:
    """Index maps into F(1), one per sort.

    ``c`` maps C indices to C(1) indices; ``s`` maps the combined letters of
    the source (S for actions and set bands, S-down then S-up for biactions)
    to letter indices of F(1).
    """

    c: tuple[int, ...]
    s: tuple[int, ...]


@dataclass(frozen=True)
class HomSet:
    source: FiniteAlgebra
    homs: tuple[Hom, ...]

    def __len__(self) -> int:
        return len(self.homs)

    def __iter__(self):
        return iter(self.homs)


class NotRepresentable(Exception):
    """No homomorphism into F(1) separates ``pair`` (labels of sort ``sort``)."""

    def __init__(self, sort: str, pair: tuple[str, str]):
        super().__init__(f"{sort} elements {pair[0]!r} and {pair[1]!r} are not separated")
        self.sort = sort
        self.pair = pair


def _letter_domains(A: FiniteAlgebra, T: FiniteAlgebra) -> list[range]:
    if isinstance(A, Biaction):
        nd = T.n_down
        return [range(0, nd)] * A.n_down + [range(nd, len(T.generator_maps))] * len(A.sup_labels)
    return [range(len(T.generator_maps))] * len(A.generator_maps)


def _enumerate_actionlike(A, T, cap: int) -> list[Hom]:
    n = A.n_states
    amaps = A.generator_maps
    tmaps = T.generator_maps
    domains = _letter_domains(A, T)
    phi: list[int | None] = [None] * n
    homs: list[Hom] = []
    nodes = 0

    def allowed() -> list[list[int]] | None:
        out = []
        for g, am in enumerate(amaps):
            ok = []
            for v in domains[g]:
                tm = tmaps[v]
                if all(phi[c] is None or phi[am[c]] is None or tm[phi[c]] == phi[am[c]]
                       for c in range(n)):
                    ok.append(v)
            if not ok:
                return None
            out.append(ok)
        return out

    def extend(k: int) -> None:
        nonlocal nodes
        for val in range(T.n_states):
            nodes += 1
            if nodes > cap:
                raise LimitError(f"hom search exceeds {cap} nodes")
            phi[k] = val
            opts = allowed()
            if opts is not None:
                if k + 1 < n:
                    extend(k + 1)
                else:
                    for s in product(*opts):
                        nodes += 1
                        if nodes > cap:
                            raise LimitError(f"hom search exceeds {cap} nodes")
                        homs.append(Hom(tuple(phi), s))
            phi[k] = None

    extend(0)
    return homs


def _enumerate_band(A: SetBand, T: SetBand, cap: int) -> list[Hom]:
    n = len(A.s_labels)
    mul, tmul = A.mul, T.mul
    phi: list[int | None] = [None] * n
    homs: list[Hom] = []
    nodes = 0

    def consistent(k: int) -> bool:
        for x in range(k + 1):
            for y in range(k + 1):
                if x != k and y != k and mul[x][y] != k:
                    continue
                xy = mul[x][y]
                if xy <= k and phi[xy] != tmul[phi[x]][phi[y]]:
                    return False
        return True

    def extend(k: int) -> None:
        nonlocal nodes
        if k == n:
            homs.append(Hom((), tuple(phi)))
            return
        for val in range(len(T.s_labels)):
            nodes += 1
            if nodes > cap:
                raise LimitError(f"hom search exceeds {cap} nodes")
            phi[k] = val
            if consistent(k):
                extend(k + 1)
            phi[k] = None

    extend(0)
    return homs


def enumerate_homs(A: FiniteAlgebra, cap: int = DEFAULT_NODE_CAP) -> HomSet:
    """All homomorphisms A -> F(1), in lexicographic order (C first, then S)."""
    T = f1(A.kind)
    if isinstance(A, SetBand):
        return HomSet(A, tuple(_enumerate_band(A, T, cap)))
    return HomSet(A, tuple(_enumerate_actionlike(A, T, cap)))


def is_hom(A: FiniteAlgebra, h: Hom) -> bool:
    T = f1(A.kind)
    if isinstance(A, SetBand):
        return all(h.s[A.mul[x][y]] == T.mul[h.s[x]][h.s[y]]
                   for x in range(len(A.s_labels)) for y in range(len(A.s_labels)))
    tmaps = T.generator_maps
    return all(tmaps[h.s[g]][h.c[c]] == h.c[am[c]]
               for g, am in enumerate(A.generator_maps) for c in range(A.n_states))


@lru_cache(maxsize=None)
def _f1_rep(kind: str) -> SetRepresentation:
    return full_algebra(kind, ("*",))[1]


def _sorts(A: FiniteAlgebra):
    """(sort name, labels, hom field, letter offset) for each sort of A."""
    if isinstance(A, Action):
        return [("C", A.c_labels, "c", 0), ("S", A.s_labels, "s", 0)]
    if isinstance(A, Biaction):
        return [("C", A.c_labels, "c", 0), ("Sdown", A.sdown_labels, "s", 0),
                ("Sup", A.sup_labels, "s", A.n_down)]
    return [("S", A.s_labels, "s", 0)]


def first_unseparated(A: FiniteAlgebra, homs: HomSet) -> tuple[str, tuple[str, str]] | None:
    for sort, labels, fld, off in _sorts(A):
        for i, j in combinations(range(len(labels)), 2):
            if all(getattr(h, fld)[off + i] == getattr(h, fld)[off + j] for h in homs):
                return sort, (labels[i], labels[j])
    return None


def canonical_representation(A: FiniteAlgebra, homs: HomSet | None = None,
                             cap: int = DEFAULT_NODE_CAP) -> SetRepresentation:
    """The canonical embedding of A into F(H), one atom ``hom:<k>`` per hom.

    Raises NotRepresentable with the first pair of same-sort elements that
    no homomorphism separates.
    """
    homs = homs if homs is not None else enumerate_homs(A, cap)
    bad = first_unseparated(A, homs)
    if bad is not None:
        raise NotRepresentable(*bad)
    T = f1(A.kind)
    rep1 = _f1_rep(A.kind)
    universe = [f"hom:{k}" for k in range(len(homs))]

    def cmask(c: int) -> int:
        return sum(rep1.c_sets[T.c_labels[h.c[c]]] << k for k, h in enumerate(homs))

    if isinstance(A, Biaction):
        t_down = [rep1.down_sets[x] for x in T.sdown_labels]
        t_up = [rep1.up_sets[x] for x in T.sup_labels]
        return SetRepresentation(
            "biaction", universe,
            c_sets={lab: cmask(c) for c, lab in enumerate(A.c_labels)},
            down_sets={lab: sum(t_down[h.s[g]] << k for k, h in enumerate(homs))
                       for g, lab in enumerate(A.sdown_labels)},
            up_sets={lab: sum(t_up[h.s[A.n_down + g] - T.n_down] << k for k, h in enumerate(homs))
                     for g, lab in enumerate(A.sup_labels)},
        )
    t_pairs = list(rep1.s_pairs.values())

    def smask(g: int) -> tuple[int, int]:
        down = sum(t_pairs[h.s[g]][0] << k for k, h in enumerate(homs))
        up = sum(t_pairs[h.s[g]][1] << k for k, h in enumerate(homs))
        return down, up

    s_pairs = {lab: smask(g) for g, lab in enumerate(A.s_labels)}
    if isinstance(A, SetBand):
        return SetRepresentation("setband", universe, s_pairs=s_pairs)
    return SetRepresentation("action", universe,
                             c_sets={lab: cmask(c) for c, lab in enumerate(A.c_labels)},
                             s_pairs=s_pairs)


@dataclass(frozen=True)
class Decision:
    member: bool
    representation: SetRepresentation | None = None
    unseparated: tuple[str, str] | None = None
    sort: str | None = None
    n_homs: int = 0

    def __bool__(self) -> bool:
        return self.member


def is_member(A: FiniteAlgebra, cap: int = DEFAULT_NODE_CAP) -> Decision:
    """Class membership with a certificate: a representation or an unseparated pair."""
    homs = enumerate_homs(A, cap)
    try:
        rep = canonical_representation(A, homs)
    except NotRepresentable as e:
        return Decision(False, unseparated=e.pair, sort=e.sort, n_homs=len(homs))
    return Decision(True, representation=rep, n_homs=len(homs))
