from itertools import combinations, product

import pytest
from hypothesis import given

from updown.axioms import (check_action_axioms, check_axioms, check_biaction_axioms,
                           check_fully_pr, check_intersection_axioms, check_setband_axioms,
                           strong_link_witness, transformation_monoid)
from updown.core import Action, Biaction, LimitError, SetBand, evaluate, run
from updown.generator import f1
from updown.lab import FIXTURES, enumerate_algebras, fixture

from conftest import actions, bands, biactions


def _fixtures(kind):
    return [f for f in map(fixture, FIXTURES) if f.algebra.kind == kind]


# --- transformation monoid ----------------------------------------------------------


def test_monoid_example47(ex47):
    M = transformation_monoid(ex47)
    assert M.maps == ((0, 1, 2), (0, 0, 2), (1, 1, 2))
    assert [M.word_labels(i) for i in range(3)] == [[], ["s"], ["t"]]


def test_monoid_f1_is_identity_and_two_constants():
    M = transformation_monoid(f1("action"))
    assert set(M.maps) == {(0, 1), (0, 0), (1, 1)}


def test_monoid_empty_s():
    assert transformation_monoid(Action(["c", "d"], [], [[], []])).maps == ((0, 1),)


def test_monoid_cap():
    A = Action(["a", "b", "c"], ["r", "t"], [[1, 1], [2, 0], [0, 2]])
    with pytest.raises(LimitError):
        transformation_monoid(A, cap=2)


@given(actions())
def test_monoid_invariants(A):
    M = transformation_monoid(A)
    n = A.n_states
    assert M.maps[0] == tuple(range(n))
    for g in A.generator_maps:
        assert g in M.index
    for m, w in zip(M.maps, M.words):
        assert tuple(run(A, c, w) for c in range(n)) == m
    for i in range(len(M)):
        for j in range(len(M)):
            M.then(i, j)  # closed under composition


@given(actions(max_c=3, max_s=2))
def test_monoid_is_right_regular_band_when_i_and_pr_hold(A):
    r = check_action_axioms(A)
    if not (r["I"].passed and r["PR"].passed):
        return
    M = transformation_monoid(A)
    for i in range(len(M)):
        assert M.then(i, i) == i
        for j in range(len(M)):
            assert M.then(M.then(i, j), i) == M.then(j, i)


# --- action axioms ----------------------------------------------------------------


def test_example47_report(ex47):
    r = check_action_axioms(ex47)
    assert r.verdicts() == {"I": True, "PR": True, "SL": False}
    assert r["SL"].to_json() == {"axiom": "SL", "verdict": "fail",
                                 "witness": {"chain": ["c", "e", "d"], "words": [["s"], ["t"]]}}


def test_f1_and_one_point_pass():
    assert check_action_axioms(f1("action")).passed
    assert check_action_axioms(Action(["c"], ["s"], [[0]])).passed


def test_fully_pr_examples(ex47):
    assert check_fully_pr(ex47).passed
    assert check_fully_pr(Action(["c"], [], [[]])).passed
    A = fixture("cylindrify-worlds").algebra
    r = check_fully_pr(A)
    W = "{00,01,10,11}"
    assert not r.passed
    assert r.witness["c"] == evaluate(A, W, ["t1"])
    assert (r.witness["s"], r.witness["w"]) == ("s1", ["u1"])
    assert evaluate(A, W, "t1 s1 u1 s1") == W and evaluate(A, W, "t1 u1 s1") == "{}"


def test_intersection_axioms():
    A = fixture("separating-sorts").algebra
    r = check_intersection_axioms(A)
    assert r["I"].passed and not r["C"].passed
    meet = Action(["0", "1"], ["s"], [[0], [0]])
    assert check_intersection_axioms(meet).passed
    r = check_intersection_axioms(f1("action"))
    assert not r["C"].passed
    assert {r["C"].witness["s"], r["C"].witness["t"]} == {"(0,0)", "(1,1)"}


def _brute_sl(A, max_len):
    """Nontrivial strong link search with explicit words up to max_len."""
    n = A.n_states
    words = [w for k in range(max_len + 1) for w in product(range(len(A.generator_maps)), repeat=k)]
    maps = {tuple(run(A, c, w) for c in range(n)) for w in words}
    for c, d in combinations(range(n), 2):
        seen, stack = {c}, [c]
        while stack:
            a = stack.pop()
            for m in maps:
                if m[c] == m[d] and m[a] == a:
                    for b in range(n):
                        if m[b] == b and b not in seen:
                            seen.add(b)
                            stack.append(b)
        if d in seen:
            return False
    return True


@pytest.mark.parametrize("name", [n for n in FIXTURES if fixture(n).algebra.kind == "action"])
def test_sl_matches_explicit_words_on_fixtures(name):
    A = fixture(name).algebra
    assert check_action_axioms(A)["SL"].passed == _brute_sl(A, len(A.s_labels) + 1)


@given(actions(max_c=3, max_s=2))
def test_sl_matches_explicit_words_random(A):
    # under I and PR every monoid element has a word without repeated letters
    r = check_action_axioms(A)
    if not (r["I"].passed and r["PR"].passed):
        return
    assert check_action_axioms(A)["SL"].passed == _brute_sl(A, len(A.s_labels) + 1)


def _brute_i_pr(A):
    i = all(evaluate(A, c, [s, s]) == evaluate(A, c, [s]) for c in A.c_labels for s in A.s_labels)
    pr = all(evaluate(A, c, [s, t, s]) == evaluate(A, c, [t, s])
             for c in A.c_labels for s in A.s_labels for t in A.s_labels)
    return i, pr


@given(actions())
def test_action_witnesses_are_genuine(A):
    r = check_action_axioms(A)
    assert (r["I"].passed, r["PR"].passed) == _brute_i_pr(A)
    if not r["I"].passed:
        w = r["I"].witness
        assert evaluate(A, w["c"], [w["s"], w["s"]]) == w["css"] != w["cs"] == evaluate(A, w["c"], [w["s"]])
    if not r["PR"].passed:
        w = r["PR"].witness
        assert evaluate(A, w["c"], [w["s"], w["t"], w["s"]]) == w["csts"]
        assert evaluate(A, w["c"], [w["t"], w["s"]]) == w["cts"] != w["csts"]
    if not r["SL"].passed:
        chain, words = r["SL"].witness["chain"], r["SL"].witness["words"]
        c, d = chain[0], chain[-1]
        assert c != d
        for (a, b), w in zip(zip(chain, chain[1:]), words):
            assert evaluate(A, a, w) == a and evaluate(A, b, w) == b
            assert evaluate(A, c, w) == evaluate(A, d, w)


def test_strong_link_witness_direct_edge_and_chain():
    assert strong_link_witness(3, [((0, 1, 2), ["id"])]) is None
    # a fixes 0,1 and merges 0,2; b fixes 1,2 and merges 0,2: chain 0-1-2
    a, b = (0, 1, 0), (2, 1, 2)
    assert strong_link_witness(3, [(a, ["a"]), (b, ["b"])]) == {"chain": [0, 1, 2],
                                                                "words": [["a"], ["b"]]}
    # a map fixing both endpoints and merging them gives the one-step chain
    assert strong_link_witness(2, [((0, 1), ["id"]), ((0, 0), ["z"])]) is None


def test_cylindrify_pr_witness():
    A = fixture("cylindrify-worlds").algebra
    r = check_action_axioms(A)
    assert r["PR"].witness == {"c": "{10,11}", "s": "s1", "t": "u1",
                               "csts": "{00,01,10,11}", "cts": "{}"}


# --- biaction axioms ---------------------------------------------------------------


def test_two_point_failure():
    r = check_biaction_axioms(fixture("biaction-2pt-fail").algebra)
    assert all(r[a].passed for a in ("I", "PR", "C-down", "C-up"))
    assert r["basic-S"].witness == {"c": "c", "d": "d", "e": "c", "s": "s", "t": "t"}


def test_words_are_needed_witness():
    B = fixture("words-are-needed").algebra
    r = check_biaction_axioms(B)
    assert r["basic-S"].passed and not r["extra-S"].passed
    w = r["extra-S"].witness
    assert w == {"c": "c", "d": "d", "e": "1", "s": "s", "t": "t", "w": ["u"]}
    # csu=dsu, ctu=dtu, 1su=1tu, yet cu=c != f=du
    assert evaluate(B, "c", "s u") == evaluate(B, "d", "s u")
    assert evaluate(B, "c", "t u") == evaluate(B, "d", "t u")
    assert evaluate(B, "1", "s u") == evaluate(B, "1", "t u")
    assert (evaluate(B, "c", "u"), evaluate(B, "d", "u")) == ("c", "f")


def test_f1_biaction_passes():
    assert check_biaction_axioms(f1("biaction")).passed


def _restrict_by_word(B, word):
    """B_w without preconditions: C_w = image of w, letters act as c -> c x w."""
    idx = [B.letter_index(x) for x in word]
    image = sorted({run(B, c, idx) for c in range(B.n_states)})
    pos = {c: i for i, c in enumerate(image)}
    down = [[pos[run(B, B.table_down[c][s], idx)] for s in range(B.n_down)] for c in image]
    up = [[pos[run(B, B.table_up[c][t], idx)] for t in range(len(B.sup_labels))] for c in image]
    return Biaction([B.c_labels[c] for c in image], B.sdown_labels, B.sup_labels, down, up)


@pytest.mark.parametrize("name", [n for n in FIXTURES if fixture(n).algebra.kind == "biaction"])
def test_subset_axiom_relations_on_fixtures(name):
    B = fixture(name).algebra
    r = check_biaction_axioms(B)
    if not r["extra-S"].passed:
        w = r["extra-S"].witness["w"]
        if not w:
            assert not r["basic-S"].passed
        assert not check_biaction_axioms(_restrict_by_word(B, w))["basic-S"].passed
    if not r["basic-S"].passed:
        assert not r["extra-S"].passed


@given(biactions())
def test_biaction_witnesses_are_genuine(B):
    r = check_biaction_axioms(B)
    if not r["extra-S"].passed:
        w = r["extra-S"].witness
        s, t, word = w["s"] + ":down", w["t"] + ":up", w["w"]
        q = lambda c, pre: evaluate(B, c, [pre] + [x if ":" in x else x for x in word])
        assert q(w["c"], s) == q(w["d"], s)
        assert q(w["c"], t) == q(w["d"], t)
        assert q(w["e"], s) == q(w["e"], t)
        assert evaluate(B, w["c"], word) != evaluate(B, w["d"], word)
    if not r["basic-S"].passed:
        assert not r["extra-S"].passed


# --- set band axioms ---------------------------------------------------------------


def test_f1_setband_passes():
    assert check_setband_axioms(f1("setband")).passed


def test_left_zero_band_fails_right_regularity():
    r = check_setband_axioms(SetBand(["x", "y"], [[0, 0], [1, 1]]))
    assert r["assoc"].passed and r["idem"].passed
    assert r["right-regular"].witness == {"x": "x", "y": "y", "xyx": "x", "yx": "y"}


def test_one_element_band():
    assert check_setband_axioms(SetBand(["e"], [[0]])).passed


@given(bands())
def test_band_equations_match_brute_force(S):
    r = check_setband_axioms(S)
    n = range(len(S.s_labels))
    m = S.mul
    assert r["assoc"].passed == all(m[m[x][y]][z] == m[x][m[y][z]] for x in n for y in n for z in n)
    assert r["idem"].passed == all(m[x][x] == x for x in n)
    assert r["right-regular"].passed == all(m[m[x][y]][x] == m[y][x] for x in n for y in n)


def test_check_axioms_dispatch(ex47):
    assert "SL" in check_axioms(ex47)
    assert "extra-S" in check_axioms(f1("biaction"))
    assert "right-regular" in check_axioms(f1("setband"))


def test_report_json_shape(ex47):
    js = check_axioms(ex47).to_json()
    assert [j["axiom"] for j in js] == ["I", "PR", "SL"]
    assert js[0] == {"axiom": "I", "verdict": "pass"}


def test_equational_verdicts_on_small_census():
    # every (2,2) action: I and PR verdicts agree with direct evaluation
    for A in enumerate_algebras("action", (2, 2)):
        r = check_action_axioms(A)
        assert (r["I"].passed, r["PR"].passed) == _brute_i_pr(A)
