from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from quandlekit.groups import cyclic, multiplication_automorphism
from quandlekit.links import (
    BraidError,
    BraidWord,
    closure_labels,
    closure_presentation,
    count_homs,
    parse_braid,
    reduce_index,
    subscript,
    torus_braid,
    torus_presentation,
)
from quandlekit.quandles import alexander, dihedral, quandle_catalog, trivial
from quandlekit.terms import LeftWord, canonicalize, evaluate, parse_term, parse_word_raw

FIG8 = parse_braid("s1 -s2 s1 -s2", 3)
CATALOG_BRAIDS = [torus_braid(2, 3), torus_braid(2, 5), FIG8, torus_braid(3, 4), parse_braid("s1 s2 -s1 s3 -s2", 4)]


def _oracle_count(P, Q):
    rels = [((l.base, l.tail), (r.base, r.tail)) for l, r in P.relations]
    return oracles.count_homs(list(P.generators), rels, Q.table.tolist())


# ---------------------------------------------------------------- braids


def test_parse_braid():
    assert parse_braid("s1 s1 s1", 2) == torus_braid(2, 3)
    assert parse_braid("s1 -s2", 3).letters == ((1, 1), (2, -1))
    assert str(FIG8) == "s1 -s2 s1 -s2"
    assert parse_braid("", 4) == BraidWord(4)
    for text, m in [("s3", 2), ("s0", 3), ("x1", 3), ("s1", 0)]:
        with pytest.raises(BraidError):
            parse_braid(text, m)


def test_subscripts():
    assert subscript("a12") == 12 and subscript("a-3") == -3
    assert [reduce_index(k, 3) for k in (-3, -2, 0, 1, 3, 4, 7)] == [3, 1, 3, 1, 3, 1, 1]
    with pytest.raises(ValueError):
        subscript("b1")


# ---------------------------------------------------------------- presentations


@pytest.mark.parametrize("m", range(2, 8))
def test_base_case_labels(m):
    labels = closure_labels(torus_braid(m, 1))
    for i in range(1, m):
        assert labels[i - 1] == parse_term(f"a{i + 1}*a1")
    assert labels[m - 1] == LeftWord("a1")


def test_trefoil_closure():
    P = closure_presentation(torus_braid(2, 3))
    rels = {(str(l), str(r)) for l, r in P.relations}
    want = {("a1", str(canonicalize(parse_word_raw("a2*a1*a2*a1")))), ("a2", str(canonicalize(parse_word_raw("a1*a1*a2*a1"))))}
    assert rels == want == {("a1", "a2*a1*a2*a1"), ("a2", "a1*a2*a1")}


def test_empty_braid():
    P = closure_presentation(BraidWord(3))
    assert P.generators == ("a1", "a2", "a3")
    assert all(l == r for l, r in P.relations)


def test_torus_edge_cases():
    P = torus_presentation(1, 5)
    assert P.generators == ("a1",) and P.relations == ((LeftWord("a1"), LeftWord("a1")),)
    P = torus_presentation(4, 1)
    assert [str(r) for _, r in P.relations] == ["a2*a1", "a3*a1", "a4*a1", "a1"]


@pytest.mark.parametrize("m", range(2, 7))
@pytest.mark.parametrize("n", range(1, 9))
def test_closure_matches_closed_form(m, n):
    a = closure_presentation(torus_braid(m, n))
    b = torus_presentation(m, n)
    assert set(a.relations) == set(b.relations)


@pytest.mark.parametrize("m,n", [(2, 3), (3, 4), (2, 5), (3, 5)])
def test_closed_form_relations_hold_in_colorings(m, n):
    """Every coloring of the braid closure satisfies the closed-form relations."""
    P, C = torus_presentation(m, n), closure_presentation(torus_braid(m, n))
    for Q in (dihedral(3), dihedral(5), alexander(cyclic(5), multiplication_automorphism(5, 2))):
        assert count_homs(P, Q) == count_homs(C, Q)


# ---------------------------------------------------------------- colorings


def test_coloring_counts():
    assert count_homs(torus_presentation(2, 3), dihedral(3)) == 9
    fig8 = closure_presentation(FIG8)
    assert count_homs(fig8, dihedral(3)) == 3
    assert count_homs(fig8, dihedral(5)) == 25
    assert count_homs(torus_presentation(2, 5), dihedral(5)) == 25
    for b in CATALOG_BRAIDS:
        assert count_homs(closure_presentation(b), trivial(1)) == 1


@pytest.mark.parametrize("b", CATALOG_BRAIDS, ids=str)
@pytest.mark.parametrize("Q", [dihedral(3), dihedral(4), dihedral(5), trivial(2)], ids=lambda q: q.name)
def test_counts_match_sequential_oracle(b, Q):
    P = closure_presentation(b)
    want = _oracle_count(P, Q)
    assert count_homs(P, Q) == want
    assert count_homs(P, Q, parts=5) == want


@pytest.mark.parametrize("b", CATALOG_BRAIDS, ids=str)
def test_counts_invariant_under_cancelling_pair(b):
    for i in range(1, b.strands):
        longer = b * BraidWord(b.strands, ((i, 1), (i, -1)))
        for Q in (dihedral(3), dihedral(5), trivial(3)):
            assert count_homs(closure_presentation(longer), Q) == count_homs(closure_presentation(b), Q)


def _components(b):
    perm = list(range(b.strands))
    for i, _ in b.letters:
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    seen, cycles = set(), 0
    for start in range(b.strands):
        if start not in seen:
            cycles += 1
            x = start
            while x not in seen:
                seen.add(x)
                x = perm[x]
    return cycles


@pytest.mark.parametrize("b", CATALOG_BRAIDS, ids=str)
def test_trivial_colorings_count_components(b):
    # a coloring by a trivial quandle is constant on each component
    assert count_homs(closure_presentation(b), trivial(3)) == 3 ** _components(b)


def test_coloring_guard():
    with pytest.raises(ValueError):
        count_homs(closure_presentation(BraidWord(30)), dihedral(5))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 2), st.sampled_from([1, -1])), max_size=8), st.sampled_from(quandle_catalog(4)))
def test_random_braid_counts_match_oracle(letters, Q):
    P = closure_presentation(BraidWord(3, tuple(letters)))
    assert count_homs(P, Q, parts=3) == _oracle_count(P, Q)


@pytest.mark.parametrize("m,n", [(2, 3), (2, 4), (3, 3), (3, 6), (4, 6)])
def test_torus_colorings_by_trivial_quandle(m, n):
    # components of T(m, n) number gcd(m, n); trivial colorings are constant per component
    assert count_homs(torus_presentation(m, n), trivial(2)) == 2 ** gcd(m, n)


def test_evaluate_relations_on_a_coloring():
    P = torus_presentation(2, 3)
    R3 = dihedral(3)
    assign = {"a1": 0, "a2": 1}
    for l, r in P.relations:
        assert evaluate(R3, assign, l) == evaluate(R3, assign, r)
