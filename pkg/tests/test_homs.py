from itertools import product

import pytest
from hypothesis import given

from updown.construct import verify_representation
from updown.core import Action, LimitError, full_algebra, subalgebra
from updown.generator import f1
from updown.homs import (Hom, NotRepresentable, canonical_representation, enumerate_homs, is_hom,
                         is_member)
from updown.lab import fixture

from conftest import actions, bands, biactions


def _brute_homs(A):
    """All homs into F(1) by exhaustive assignment (independent of the search)."""
    T = f1(A.kind)
    out = []
    if A.kind == "setband":
        for s in product(range(3), repeat=len(A.s_labels)):
            h = Hom((), s)
            if is_hom(A, h):
                out.append(h)
        return out
    if A.kind == "biaction":
        doms = [range(T.n_down)] * A.n_down + [range(T.n_down, 4)] * len(A.sup_labels)
    else:
        doms = [range(3)] * len(A.s_labels)
    for c in product(range(2), repeat=A.n_states):
        for s in product(*doms):
            h = Hom(c, s)
            if is_hom(A, h):
                out.append(h)
    return out


def test_one_point_action_has_four_homs():
    A = Action(["c"], ["s"], [[0]])
    T = f1("action")
    got = [(T.c_labels[h.c[0]], T.s_labels[h.s[0]]) for h in enumerate_homs(A)]
    assert got == [("0", "(1,0)"), ("0", "(0,0)"), ("1", "(1,0)"), ("1", "(1,1)")]


def test_example47_homs_identify_c_and_d(ex47):
    H = enumerate_homs(ex47)
    assert len(H) == len(_brute_homs(ex47)) == 10
    assert all(h.c[0] == h.c[1] for h in H)


def test_f1_contains_identity_hom():
    A = f1("action")
    assert Hom((0, 1), (0, 1, 2)) in enumerate_homs(A).homs


@given(actions(max_c=3, max_s=2))
def test_action_homs_match_brute_force(A):
    assert list(enumerate_homs(A)) == _brute_homs(A)


@given(biactions(max_c=3, max_d=1, max_u=2))
def test_biaction_homs_match_brute_force(B):
    assert list(enumerate_homs(B)) == _brute_homs(B)


@given(bands(max_n=3))
def test_band_homs_match_brute_force(S):
    assert list(enumerate_homs(S)) == _brute_homs(S)


def test_canonical_representation_examples(ex47):
    with pytest.raises(NotRepresentable) as e:
        canonical_representation(ex47)
    assert (e.value.sort, e.value.pair) == ("C", ("c", "d"))
    for kind in ("action", "biaction", "setband"):
        A = f1(kind)
        R = canonical_representation(A)
        assert R.universe[0] == "hom:0"
        assert verify_representation(A, R) is None


def test_words_are_needed_unseparated_pair():
    d = is_member(fixture("words-are-needed").algebra)
    assert not d.member and d.unseparated == ("c", "d")


def test_membership_examples(ex47):
    assert not is_member(ex47)
    assert not is_member(fixture("biaction-2pt-fail").algebra)
    assert is_member(fixture("facts-updown").algebra)


def test_subalgebras_of_f2_are_members():
    F2, _ = full_algebra("action", 2)
    sub, _ = subalgebra(F2, ["00", "10", "11"], ["(10,00)", "(11,11)", "(11,00)"])
    assert is_member(sub).member


@pytest.mark.parametrize("name", ["facts-updown", "separating-sorts", "words-are-needed-1",
                                  "words-are-needed-2", "f1-action", "f1-biaction", "f1-setband"])
def test_canonical_representation_verifies_on_member_fixtures(name):
    A = fixture(name).algebra
    d = is_member(A)
    assert d.member
    assert verify_representation(A, d.representation) is None


def test_homs_compose_with_subalgebra_embeddings():
    A = fixture("facts-updown").algebra
    keep_c = ["{R,¬R,H,¬H}", "{R,H,¬H}", "{H,¬H}", "{¬R,H,¬H}"]
    sub, (cs, gens) = subalgebra(A, keep_c, ["s1", "t1", "u1"])
    sub_homs = set(enumerate_homs(sub))
    for h in enumerate_homs(A):
        assert Hom(tuple(h.c[c] for c in cs), tuple(h.s[g] for g in gens)) in sub_homs


def test_hom_cap():
    A = fixture("facts-updown").algebra
    with pytest.raises(LimitError):
        enumerate_homs(A, cap=5)
