from itertools import product as iproduct

import pytest
from hypothesis import given
from hypothesis import strategies as st

from updown.core import (Action, Biaction, LimitError, SetBand, SetRepresentation, StructureError,
                         act_on_set, algebra_from_representation, disjoint_union, evaluate,
                         full_algebra, full_prime_action, mask_of, product, subalgebra)
from updown.generator import f1

from conftest import actions


def test_f1_action_validates_and_has_pair_labels():
    A = f1("action")
    assert A.c_labels == ("0", "1")
    assert A.s_labels == ("(1,0)", "(0,0)", "(1,1)")


def test_out_of_range_entry_rejected():
    with pytest.raises(StructureError, match="out of range"):
        Action(["c", "d"], ["s"], [[0], [2]])


def test_duplicate_label_rejected():
    with pytest.raises(StructureError, match="duplicate"):
        Action(["c"], ["s", "s"], [[0, 0]])


def test_empty_c_rejected():
    with pytest.raises(StructureError, match="nonempty"):
        Action([], ["s"], [])


def test_setband_table_must_be_square():
    with pytest.raises(StructureError):
        SetBand(["x", "y"], [[0, 1]])


def test_evaluate_examples(ex47):
    assert evaluate(ex47, "c", "s t") == "d"
    assert evaluate(ex47, "e", []) == "e"
    assert evaluate(f1("action"), "0", ["(1,1)"]) == "1"


def test_evaluate_rejects_undeclared(ex47):
    with pytest.raises(KeyError):
        evaluate(ex47, "z", "s")
    with pytest.raises(KeyError):
        evaluate(ex47, "c", "q")


@given(actions(), st.data())
def test_evaluate_concatenation(A, data):
    if not A.s_labels:
        return
    letters = st.lists(st.sampled_from(A.s_labels), max_size=5)
    w1, w2 = data.draw(letters), data.draw(letters)
    c = data.draw(st.sampled_from(A.c_labels))
    assert evaluate(A, c, w1 + w2) == evaluate(A, evaluate(A, c, w1), w2)


def _count_pairs(n, prime=False):
    # independent count: pairs of subsets of range(n), with up <= down unless prime
    subsets = range(1 << n)
    return sum(1 for d in subsets for u in subsets if prime or u & ~d == 0)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_full_action_sizes(n):
    A, rep = full_algebra("action", n)
    assert len(A.c_labels) == 2**n
    assert len(A.s_labels) == _count_pairs(n) == 3**n


@pytest.mark.parametrize("n", [0, 1, 2])
def test_full_prime_sizes(n):
    A, rep = full_prime_action(n)
    assert rep.prime
    assert len(A.s_labels) == _count_pairs(n, prime=True) == 4**n


def test_full_prime_one_point_labels():
    A, _ = full_prime_action(("*",))
    assert A.s_labels == ("(1,0)", "(0,0)", "(1,1)", "(0,1)")


def test_full_algebra_size_guard():
    with pytest.raises(LimitError):
        full_algebra("action", 4, limit=3)


def test_full_biaction_and_band_shapes():
    B, _ = full_algebra("biaction", 2)
    assert (len(B.c_labels), len(B.sdown_labels), len(B.sup_labels)) == (4, 4, 4)
    S, _ = full_algebra("setband", 1)
    assert len(S.s_labels) == 3


@pytest.mark.parametrize("nx,ny", [(1, 1), (1, 2), (2, 1), (1, 0), (0, 2)])
@pytest.mark.parametrize("kind", ["action", "biaction", "setband"])
def test_full_of_disjoint_union_is_product(kind, nx, ny):
    """c -> (c & X, c & Y) is a bijective homomorphism F(X+Y) -> F(X) x F(Y)."""
    X = [f"x{i}" for i in range(nx)]
    Y = [f"y{i}" for i in range(ny)]
    F, R = full_algebra(kind, X + Y)
    FX, RX = full_algebra(kind, X)
    FY, RY = full_algebra(kind, Y)
    P = product(FX, FY)
    lowx, lowy = (1 << nx) - 1, ((1 << ny) - 1)

    def split(m):
        return m & lowx, m >> nx & lowy

    def inverse(d):
        return {v: k for k, v in d.items()}

    def c_map():
        ix, iy = inverse(RX.c_sets), inverse(RY.c_sets)
        return {lab: f"<{ix[split(m)[0]]},{iy[split(m)[1]]}>" for lab, m in R.c_sets.items()}

    if kind == "biaction":
        cm = c_map()
        dm = {lab: f"<{inverse(RX.down_sets)[split(m)[0]]},{inverse(RY.down_sets)[split(m)[1]]}>"
              for lab, m in R.down_sets.items()}
        um = {lab: f"<{inverse(RX.up_sets)[split(m)[0]]},{inverse(RY.up_sets)[split(m)[1]]}>"
              for lab, m in R.up_sets.items()}
        assert len(set(cm.values())) == len(P.c_labels)
        for c in F.c_labels:
            for s in F.sdown_labels:
                assert cm[evaluate(F, c, [s + ":down"])] == evaluate(P, cm[c], [dm[s] + ":down"])
            for t in F.sup_labels:
                assert cm[evaluate(F, c, [t + ":up"])] == evaluate(P, cm[c], [um[t] + ":up"])
        return
    ix, iy = inverse(RX.s_pairs), inverse(RY.s_pairs)
    sm = {}
    for lab, (d, u) in R.s_pairs.items():
        (dx, dy), (ux, uy) = split(d), split(u)
        sm[lab] = f"<{ix[(dx, ux)]},{iy[(dy, uy)]}>"
    assert len(set(sm.values())) == len(P.s_labels)
    if kind == "setband":
        for s, t in iproduct(F.s_labels, repeat=2):
            assert sm[evaluate(F, s, [t])] == evaluate(P, sm[s], [sm[t]])
        return
    cm = c_map()
    assert len(set(cm.values())) == len(P.c_labels)
    for c, s in iproduct(F.c_labels, F.s_labels):
        assert cm[evaluate(F, c, [s])] == evaluate(P, cm[c], [sm[s]])


def test_product_sizes(ex47):
    assert len(product(ex47, ex47).c_labels) == 9
    F2, _ = full_algebra("action", 2)
    P = product(f1("action"), f1("action"))
    assert (len(P.c_labels), len(P.s_labels)) == (len(F2.c_labels), len(F2.s_labels))


def test_product_with_trivial_algebra(ex47):
    P = product(ex47, Action(["*"], ["*"], [[0]]))
    renamed = {f"<{c},*>": c for c in ex47.c_labels}
    for c in ex47.c_labels:
        for s in ex47.s_labels:
            assert renamed[evaluate(P, f"<{c},*>", [f"<{s},*>"])] == evaluate(ex47, c, [s])


def test_product_kind_mismatch(ex47):
    with pytest.raises(ValueError):
        product(ex47, f1("setband"))


def test_disjoint_union_and_subalgebra(ex47):
    other = Action(["x"], ["s", "t"], [[0, 0]])
    U = disjoint_union(ex47, other)
    assert U.c_labels == ("c", "d", "e", "x")
    assert evaluate(U, "x", "s t") == "x"
    sub, (cs, gens) = subalgebra(U, ["c", "d"], ["s", "t"])
    assert sub.c_labels == ("c", "d") and cs == (0, 1)
    with pytest.raises(StructureError):
        subalgebra(ex47, ["d"], ["s"])


def test_representation_invariants():
    U = ("a", "b")
    with pytest.raises(StructureError):
        SetRepresentation("action", U, c_sets={"c": 1}, s_pairs={"s": (0, 1)})
    SetRepresentation("action", U, c_sets={"c": 1}, s_pairs={"s": (0, 1)}, prime=True)
    with pytest.raises(StructureError, match="same set"):
        SetRepresentation("action", U, c_sets={"c": 1, "d": 1})
    with pytest.raises(StructureError):
        SetRepresentation("action", U, c_sets={"c": 4})
    with pytest.raises(StructureError):
        mask_of(["z"], U)


def test_algebra_from_representation_needs_closure():
    U = ("a",)
    with pytest.raises(StructureError):
        algebra_from_representation(SetRepresentation("action", U, c_sets={"c": 0},
                                                      s_pairs={"s": (1, 1)}))


def test_act_on_set():
    assert act_on_set(0b011, 0b110, 0b100) == 0b110


def test_biaction_shared_letter_names_are_qualified():
    B = f1("biaction")
    assert evaluate(B, "0", ["1:up"]) == "1"
    assert evaluate(B, "1", ["0:down"]) == "0"
    with pytest.raises(KeyError):
        evaluate(B, "0", ["1"])
    assert isinstance(B, Biaction)
