"""Finite actions, biactions and set bands given by explicit tables.

Elements are dense integer indices; labels are only for presentation and
serialization. Subsets of a representation universe are int bitmasks, bit
``i`` standing for ``universe[i]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

DEFAULT_SIZE_LIMIT = 12

KINDS = ("action", "biaction", "setband")


class StructureError(ValueError):
    """A table or representation violates its structural invariants."""


class LimitError(RuntimeError):
    """A configured search or size cap would be exceeded."""


def _check_labels(labels: Sequence[str], sort: str) -> None:
    seen = set()
    for lab in labels:
        if not isinstance(lab, str) or not lab:
            raise StructureError(f"{sort}: labels must be nonempty strings, got {lab!r}")
        if lab in seen:
            raise StructureError(f"{sort}: duplicate label {lab!r}")
        seen.add(lab)


def _check_table(table, n_rows: int, n_cols: int, n_out: int, name: str) -> None:
    if len(table) != n_rows:
        raise StructureError(f"{name}: expected {n_rows} rows, got {len(table)}")
    for i, row in enumerate(table):
        if len(row) != n_cols:
            raise StructureError(f"{name}: row {i} has {len(row)} entries, expected {n_cols}")
        for j, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n_out:
                raise StructureError(f"{name}: entry ({i},{j}) = {v!r} out of range 0..{n_out - 1}")


def _freeze(table) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(row) for row in table)


@dataclass(frozen=True)
class Action:
    """An action ``C x S -> C``; ``table[c][s]`` is the index of ``cs``."""

    c_labels: tuple[str, ...]
    s_labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    kind = "action"

    def __post_init__(self):
        object.__setattr__(self, "c_labels", tuple(self.c_labels))
        object.__setattr__(self, "s_labels", tuple(self.s_labels))
        object.__setattr__(self, "table", _freeze(self.table))
        validate(self)

    @cached_property
    def c_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.c_labels)}

    @cached_property
    def letter_names(self) -> tuple[str, ...]:
        return self.s_labels

    @cached_property
    def generator_maps(self) -> tuple[tuple[int, ...], ...]:
        """The maps ``f_s: c -> cs``, one per element of S."""
        return tuple(tuple(row[s] for row in self.table) for s in range(len(self.s_labels)))

    def letter_index(self, letter: str) -> int:
        try:
            return self.s_labels.index(letter)
        except ValueError:
            raise KeyError(f"undeclared S element {letter!r}") from None

    @property
    def n_states(self) -> int:
        return len(self.c_labels)


@dataclass(frozen=True)
class Biaction:
    """Two actions on a shared C sort; S-down acts by ``table_down[c][s]``,
    S-up by ``table_up[c][t]``."""

    c_labels: tuple[str, ...]
    sdown_labels: tuple[str, ...]
    sup_labels: tuple[str, ...]
    table_down: tuple[tuple[int, ...], ...]
    table_up: tuple[tuple[int, ...], ...]

    kind = "biaction"

    def __post_init__(self):
        for name in ("c_labels", "sdown_labels", "sup_labels"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "table_down", _freeze(self.table_down))
        object.__setattr__(self, "table_up", _freeze(self.table_up))
        validate(self)

    @cached_property
    def c_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.c_labels)}

    @property
    def n_down(self) -> int:
        return len(self.sdown_labels)

    @property
    def n_states(self) -> int:
        return len(self.c_labels)

    @cached_property
    def generator_maps(self) -> tuple[tuple[int, ...], ...]:
        """S-down maps followed by S-up maps (the combined letter order)."""
        down = [tuple(row[s] for row in self.table_down) for s in range(len(self.sdown_labels))]
        up = [tuple(row[t] for row in self.table_up) for t in range(len(self.sup_labels))]
        return tuple(down + up)

    @cached_property
    def letter_names(self) -> tuple[str, ...]:
        # qualify only labels that occur in both sorts
        shared = set(self.sdown_labels) & set(self.sup_labels)
        down = [f"{x}:down" if x in shared else x for x in self.sdown_labels]
        up = [f"{x}:up" if x in shared else x for x in self.sup_labels]
        return tuple(down + up)

    def letter_sort(self, g: int) -> str:
        return "down" if g < self.n_down else "up"

    def letter_index(self, letter: str) -> int:
        """Resolve ``name``, ``name:down`` or ``name:up`` to a combined letter index."""
        name, _, sort = letter.rpartition(":")
        if name and sort in ("down", "up"):
            labels = self.sdown_labels if sort == "down" else self.sup_labels
            if name not in labels:
                raise KeyError(f"undeclared S{sort} element {name!r}")
            i = labels.index(name)
            return i if sort == "down" else self.n_down + i
        hits = []
        if letter in self.sdown_labels:
            hits.append(self.sdown_labels.index(letter))
        if letter in self.sup_labels:
            hits.append(self.n_down + self.sup_labels.index(letter))
        if not hits:
            raise KeyError(f"undeclared S element {letter!r}")
        if len(hits) > 1:
            raise KeyError(f"ambiguous letter {letter!r}; qualify it with :down or :up")
        return hits[0]


@dataclass(frozen=True)
class SetBand:
    """A binary operation on S; ``mul[x][y]`` is the index of ``x . y``."""

    s_labels: tuple[str, ...]
    mul: tuple[tuple[int, ...], ...]

    kind = "setband"

    def __post_init__(self):
        object.__setattr__(self, "s_labels", tuple(self.s_labels))
        object.__setattr__(self, "mul", _freeze(self.mul))
        validate(self)

    @cached_property
    def c_index(self) -> dict[str, int]:
        # the band acts on itself by right multiplication
        return {lab: i for i, lab in enumerate(self.s_labels)}

    @property
    def c_labels(self) -> tuple[str, ...]:
        return self.s_labels

    @property
    def n_states(self) -> int:
        return len(self.s_labels)

    @cached_property
    def letter_names(self) -> tuple[str, ...]:
        return self.s_labels

    @cached_property
    def generator_maps(self) -> tuple[tuple[int, ...], ...]:
        """Right multiplications ``x -> x . s``."""
        n = len(self.s_labels)
        return tuple(tuple(self.mul[x][s] for x in range(n)) for s in range(n))

    def letter_index(self, letter: str) -> int:
        try:
            return self.s_labels.index(letter)
        except ValueError:
            raise KeyError(f"undeclared S element {letter!r}") from None


FiniteAlgebra = Union[Action, Biaction, SetBand]


def validate(alg: FiniteAlgebra) -> None:
    """Raise StructureError naming the first violated structural invariant."""
    if isinstance(alg, Action):
        _check_labels(alg.c_labels, "C")
        _check_labels(alg.s_labels, "S")
        if not alg.c_labels:
            raise StructureError("C sort must be nonempty")
        _check_table(alg.table, len(alg.c_labels), len(alg.s_labels), len(alg.c_labels), "act")
    elif isinstance(alg, Biaction):
        _check_labels(alg.c_labels, "C")
        _check_labels(alg.sdown_labels, "Sdown")
        _check_labels(alg.sup_labels, "Sup")
        if not alg.c_labels:
            raise StructureError("C sort must be nonempty")
        n = len(alg.c_labels)
        _check_table(alg.table_down, n, len(alg.sdown_labels), n, "act_down")
        _check_table(alg.table_up, n, len(alg.sup_labels), n, "act_up")
    elif isinstance(alg, SetBand):
        _check_labels(alg.s_labels, "S")
        n = len(alg.s_labels)
        _check_table(alg.mul, n, n, n, "mul")
    else:
        raise TypeError(f"not a finite algebra: {type(alg).__name__}")


# --- evaluation -------------------------------------------------------------


def run(alg: FiniteAlgebra, c: int, letters: Iterable[int]) -> int:
    """Index-level evaluation of ``c w`` with ``w`` given as generator indices."""
    maps = alg.generator_maps
    for g in letters:
        c = maps[g][c]
    return c


def evaluate(alg: FiniteAlgebra, start: str, word: Sequence[str] | str) -> str:
    """Apply the letters of ``word`` to ``start`` left to right.

    ``word`` is a sequence of S labels or a whitespace separated string. For
    biactions a letter may be qualified as ``s:down`` / ``s:up``.
    """
    if isinstance(word, str):
        word = word.split()
    try:
        c = alg.c_index[start]
    except KeyError:
        raise KeyError(f"undeclared element {start!r}") from None
    c = run(alg, c, [alg.letter_index(x) for x in word])
    return alg.c_labels[c]


# --- subsets and labels -----------------------------------------------------


def mask_of(atoms: Iterable[str], universe: Sequence[str]) -> int:
    pos = {a: i for i, a in enumerate(universe)}
    m = 0
    for a in atoms:
        if a not in pos:
            raise StructureError(f"atom {a!r} is not in the universe")
        m |= 1 << pos[a]
    return m


def atoms_of(mask: int, universe: Sequence[str]) -> list[str]:
    return [a for i, a in enumerate(universe) if mask >> i & 1]


def _bits_label(mask: int, n: int) -> str:
    if n == 0:
        return "∅"
    return "".join("1" if mask >> i & 1 else "0" for i in range(n))


def _pair_label(down: int, up: int, n: int) -> str:
    return f"({_bits_label(down, n)},{_bits_label(up, n)})"


# --- representations ----------------------------------------------------------


@dataclass(frozen=True, eq=True)
class SetRepresentation:
    """Concrete sets realizing an algebra.

    ``c_sets`` maps C labels to masks. For action and setband kinds
    ``s_pairs`` maps S labels to ``(down, up)`` mask pairs; for biactions
    ``down_sets`` and ``up_sets`` map S-down and S-up labels to masks.
    ``prime`` drops the requirement ``up <= down``.
    """

    kind: str
    universe: tuple[str, ...]
    c_sets: dict[str, int] = field(default_factory=dict)
    s_pairs: dict[str, tuple[int, int]] = field(default_factory=dict)
    down_sets: dict[str, int] = field(default_factory=dict)
    up_sets: dict[str, int] = field(default_factory=dict)
    prime: bool = False

    def __post_init__(self):
        object.__setattr__(self, "universe", tuple(self.universe))
        validate_representation(self)

    def c_atoms(self, label: str) -> list[str]:
        return atoms_of(self.c_sets[label], self.universe)


def validate_representation(rep: SetRepresentation) -> None:
    if rep.kind not in KINDS:
        raise StructureError(f"unknown kind {rep.kind!r}")
    _check_labels(rep.universe, "universe")
    full = (1 << len(rep.universe)) - 1

    def inside(m: int, what: str) -> None:
        if m & ~full or m < 0:
            raise StructureError(f"{what} is not a subset of the universe")

    def injective(values, sort: str) -> None:
        seen = {}
        for lab, v in values:
            if v in seen:
                raise StructureError(f"{sort}: {seen[v]!r} and {lab!r} share the same set data")
            seen[v] = lab

    if rep.kind == "setband" and rep.c_sets:
        raise StructureError("setband representations carry no C sets")
    if rep.kind != "biaction" and (rep.down_sets or rep.up_sets):
        raise StructureError("Sdown/Sup sets only belong to biaction representations")
    if rep.kind == "biaction" and rep.s_pairs:
        raise StructureError("biaction representations use Sdown/Sup sets, not pairs")
    if rep.prime and rep.kind != "action":
        raise StructureError("only action representations can be prime")
    for lab, m in rep.c_sets.items():
        inside(m, f"C set {lab!r}")
    injective(rep.c_sets.items(), "C")
    for lab, (down, up) in rep.s_pairs.items():
        inside(down, f"down-set of {lab!r}")
        inside(up, f"up-set of {lab!r}")
        if not rep.prime and up & ~down:
            raise StructureError(f"{lab!r}: up-set is not contained in down-set")
    injective(rep.s_pairs.items(), "S")
    for lab, m in rep.down_sets.items():
        inside(m, f"Sdown set {lab!r}")
    for lab, m in rep.up_sets.items():
        inside(m, f"Sup set {lab!r}")
    injective(rep.down_sets.items(), "Sdown")
    injective(rep.up_sets.items(), "Sup")


def act_on_set(c: int, down: int, up: int) -> int:
    return (c & down) | up


def band_product(s: tuple[int, int], t: tuple[int, int]) -> tuple[int, int]:
    """The full set band product ((s^ & t^) | t_, (s_ & t^) | t_) on mask pairs."""
    sd, su = s
    td, tu = t
    return ((sd & td) | tu, (su & td) | tu)


def algebra_from_representation(rep: SetRepresentation) -> FiniteAlgebra:
    """Read off the operation tables realized by ``rep``.

    Raises StructureError if the named sets are not closed under the action.
    """
    if rep.kind == "setband":
        labels = list(rep.s_pairs)
        back = {v: i for i, v in enumerate(rep.s_pairs.values())}
        vals = list(rep.s_pairs.values())
        mul = []
        for x in vals:
            row = []
            for y in vals:
                p = band_product(x, y)
                if p not in back:
                    raise StructureError("pairs are not closed under the band product")
                row.append(back[p])
            mul.append(row)
        return SetBand(labels, mul)
    c_labels = list(rep.c_sets)
    back = {m: i for i, m in enumerate(rep.c_sets.values())}

    def lookup(m: int) -> int:
        if m not in back:
            raise StructureError("C sets are not closed under the action")
        return back[m]

    cvals = list(rep.c_sets.values())
    if rep.kind == "action":
        pairs = list(rep.s_pairs.values())
        table = [[lookup(act_on_set(c, d, u)) for d, u in pairs] for c in cvals]
        return Action(c_labels, list(rep.s_pairs), table)
    downs = list(rep.down_sets.values())
    ups = list(rep.up_sets.values())
    return Biaction(
        c_labels,
        list(rep.down_sets),
        list(rep.up_sets),
        [[lookup(c & s) for s in downs] for c in cvals],
        [[lookup(c | t) for t in ups] for c in cvals],
    )


# --- full algebras ------------------------------------------------------------

# per-atom coordinate states, in the fixed codomain order of F(1)
_ACTION_STATES = ((1, 0), (0, 0), (1, 1))
_PRIME_STATES = ((1, 0), (0, 0), (1, 1), (0, 1))


def _universe(X) -> tuple[str, ...]:
    if isinstance(X, int):
        return tuple(f"x{i}" for i in range(X))
    X = tuple(X)
    _check_labels(X, "universe")
    return X


def _subsets(n: int) -> list[int]:
    # lexicographic in the per-atom bits, first atom most significant
    return [sum(b << i for i, b in enumerate(bits)) for bits in itertools.product((0, 1), repeat=n)]


def _pairs(n: int, states) -> list[tuple[int, int]]:
    out = []
    for combo in itertools.product(states, repeat=n):
        down = sum(d << i for i, (d, _) in enumerate(combo))
        up = sum(u << i for i, (_, u) in enumerate(combo))
        out.append((down, up))
    return out


def _guard(n: int, limit: int) -> None:
    if n > limit:
        raise LimitError(f"|X| = {n} exceeds the size limit {limit}")


def full_algebra(kind: str, X, limit: int = DEFAULT_SIZE_LIMIT):
    """The full algebra of ``kind`` on the set ``X`` (a sequence of atom names
    or an int ``n`` meaning ``x0..x{n-1}``), with its defining representation.

    action: C = P(X), S = {(down, up) : up <= down}, cs = (c & down) | up.
    biaction: C = Sdown = Sup = P(X), meet and join.
    setband: the pairs of the action kind under the band product.
    """
    universe = _universe(X)
    n = len(universe)
    _guard(n, limit)
    subsets = _subsets(n)
    c_sets = {_bits_label(m, n): m for m in subsets}
    if kind == "action":
        s_pairs = {_pair_label(d, u, n): (d, u) for d, u in _pairs(n, _ACTION_STATES)}
        rep = SetRepresentation("action", universe, c_sets=c_sets, s_pairs=s_pairs)
    elif kind == "biaction":
        rep = SetRepresentation("biaction", universe, c_sets=c_sets,
                                down_sets=dict(c_sets), up_sets=dict(c_sets))
    elif kind == "setband":
        s_pairs = {_pair_label(d, u, n): (d, u) for d, u in _pairs(n, _ACTION_STATES)}
        rep = SetRepresentation("setband", universe, s_pairs=s_pairs)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return algebra_from_representation(rep), rep


def full_prime_action(X, limit: int = DEFAULT_SIZE_LIMIT):
    """F'(X): like the full action but with every pair of subsets, |S'| = 4^|X|."""
    universe = _universe(X)
    n = len(universe)
    _guard(n, limit)
    c_sets = {_bits_label(m, n): m for m in _subsets(n)}
    s_pairs = {_pair_label(d, u, n): (d, u) for d, u in _pairs(n, _PRIME_STATES)}
    rep = SetRepresentation("action", universe, c_sets=c_sets, s_pairs=s_pairs, prime=True)
    return algebra_from_representation(rep), rep


# --- combinators --------------------------------------------------------------


def _pair_tag(a: str, b: str) -> str:
    return f"<{a},{b}>"


def product(A: FiniteAlgebra, B: FiniteAlgebra) -> FiniteAlgebra:
    """Componentwise product; element ``(a, b)`` has index ``a * |B| + b``."""
    if A.kind != B.kind:
        raise ValueError(f"cannot multiply a {A.kind} by a {B.kind}")

    def labels(xs, ys):
        return [_pair_tag(x, y) for x in xs for y in ys]

    def table(ta, tb, nb_rows, nb_cols, nb_out):
        out = []
        for ra in ta:
            for rb in tb:
                out.append([ra[i] * nb_out + rb[j] for i in range(len(ra)) for j in range(nb_cols)])
        return out

    if isinstance(A, Action):
        nc = len(B.c_labels)
        return Action(labels(A.c_labels, B.c_labels), labels(A.s_labels, B.s_labels),
                      table(A.table, B.table, nc, len(B.s_labels), nc))
    if isinstance(A, Biaction):
        nc = len(B.c_labels)
        return Biaction(
            labels(A.c_labels, B.c_labels),
            labels(A.sdown_labels, B.sdown_labels),
            labels(A.sup_labels, B.sup_labels),
            table(A.table_down, B.table_down, nc, len(B.sdown_labels), nc),
            table(A.table_up, B.table_up, nc, len(B.sup_labels), nc),
        )
    n = len(B.s_labels)
    return SetBand(labels(A.s_labels, B.s_labels), table(A.mul, B.mul, n, n, n))


def disjoint_union(A: FiniteAlgebra, B: FiniteAlgebra) -> FiniteAlgebra:
    """Union on the C sort over a shared S sort (same S labels in the same order)."""
    if A.kind != B.kind or A.kind == "setband":
        raise ValueError("disjoint union needs two actions or two biactions")
    if set(A.c_labels) & set(B.c_labels):
        raise StructureError("C labels of the two summands overlap")
    off = len(A.c_labels)
    c_labels = A.c_labels + B.c_labels
    if isinstance(A, Action):
        if A.s_labels != B.s_labels:
            raise StructureError("summands must share the S sort")
        return Action(c_labels, A.s_labels,
                      list(A.table) + [[v + off for v in row] for row in B.table])
    if (A.sdown_labels, A.sup_labels) != (B.sdown_labels, B.sup_labels):
        raise StructureError("summands must share the S sorts")
    return Biaction(
        c_labels, A.sdown_labels, A.sup_labels,
        list(A.table_down) + [[v + off for v in row] for row in B.table_down],
        list(A.table_up) + [[v + off for v in row] for row in B.table_up],
    )


def subalgebra(A: FiniteAlgebra, c_keep: Sequence[str] = (), s_keep: Sequence[str] = ()):
    """The subalgebra on the given labels; returns it with the index embedding.

    For biactions ``s_keep`` holds letters (``name``, ``name:down``...). For set
    bands only ``s_keep`` is used. Raises StructureError when not closed.
    """
    if isinstance(A, SetBand):
        keep = sorted(A.letter_index(x) for x in s_keep)
        pos = {x: i for i, x in enumerate(keep)}
        try:
            mul = [[pos[A.mul[x][y]] for y in keep] for x in keep]
        except KeyError:
            raise StructureError("subset is not closed under the product") from None
        return SetBand([A.s_labels[x] for x in keep], mul), tuple(keep)
    cs = sorted(A.c_index[c] for c in c_keep)
    pos = {c: i for i, c in enumerate(cs)}
    gens = sorted(A.letter_index(x) for x in s_keep)
    try:
        cols = {g: [pos[A.generator_maps[g][c]] for c in cs] for g in gens}
    except KeyError:
        raise StructureError("C subset is not closed under the kept operations") from None
    c_labels = [A.c_labels[c] for c in cs]
    if isinstance(A, Action):
        table = [[cols[g][i] for g in gens] for i in range(len(cs))]
        return Action(c_labels, [A.s_labels[g] for g in gens], table), (tuple(cs), tuple(gens))
    downs = [g for g in gens if g < A.n_down]
    ups = [g for g in gens if g >= A.n_down]
    sub = Biaction(
        c_labels,
        [A.sdown_labels[g] for g in downs],
        [A.sup_labels[g - A.n_down] for g in ups],
        [[cols[g][i] for g in downs] for i in range(len(cs))],
        [[cols[g][i] for g in ups] for i in range(len(cs))],
    )
    return sub, (tuple(cs), tuple(gens))
