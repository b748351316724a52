import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import small_loop_st
from oracles import naive_holomorph_product, rows
from midbol.corpus import cyclic, subgroup_choices, symmetric3
from midbol.errors import NotASubgroup, NotAutomorphisms, NotCommonSubgroup
from midbol.holomorph import (build_holomorph, closed_form_inverse, closed_form_left_div, closed_form_right_div,
                              holomorph_inverse, holomorph_left_div, holomorph_right_div,
                              left_combined_holomorph, right_combined_holomorph)
from midbol.io import format_holomorph, parse_loop
from midbol.isostrophe import middle_from_left_bol, middle_from_right_bol
from midbol.perm import PermutationGroup, automorphism_group, closure, trivial_group
from midbol.table import predicate


def test_trivial_group_gives_the_loop_back(small):
    for L in small.values():
        H = build_holomorph(L, trivial_group(L.n))
        assert H.flat == L


def test_z3_full_aut_is_s3():
    L = cyclic(3)
    H = build_holomorph(L, automorphism_group(L))
    assert H.order == 6
    assert predicate(H.flat, "associative")
    assert not predicate(H.flat, "commutative")


def test_identity_pair_is_zero():
    L = symmetric3()
    H = build_holomorph(L, automorphism_group(L))
    assert H.label(tuple(range(6)), 0) == 0
    assert H.pair(0) == (tuple(range(6)), 0)


@given(small_loop_st, st.data())
def test_flat_product_matches_pair_definition(L, data):
    groups = subgroup_choices(L)
    A = data.draw(st.sampled_from(groups))
    H = build_holomorph(L, A)
    T = rows(L)
    p = H.pair(data.draw(st.integers(0, H.order - 1)))
    q = H.pair(data.draw(st.integers(0, H.order - 1)))
    assert H.mul_pairs(p, q) == naive_holomorph_product(T, p, q)


def test_every_product_on_s3_holomorph():
    L = symmetric3()
    H = build_holomorph(L, automorphism_group(L))
    T = rows(L)
    pairs = H.pairs()
    for p in pairs:
        for q in pairs:
            assert H.mul_pairs(p, q) == naive_holomorph_product(T, p, q)


def test_non_automorphisms_rejected():
    L = cyclic(4)
    with pytest.raises(NotAutomorphisms):
        build_holomorph(L, closure([(0, 2, 1, 3)]))
    with pytest.raises(NotAutomorphisms):
        build_holomorph(L, trivial_group(3))
    with pytest.raises(NotASubgroup):
        build_holomorph(L, PermutationGroup([(0, 3, 2, 1)], check=False))


def test_closed_forms_pairwise_on_z5():
    L = cyclic(5)
    H = build_holomorph(L, automorphism_group(L))
    P = H.pairs()
    for i, p in enumerate(P):
        assert holomorph_inverse(H, p) == H.pair(H.flat.jrho[i])
        for j, q in enumerate(P):
            assert holomorph_right_div(H, p, q) == H.pair(H.flat.rdiv(i, j))
            assert holomorph_left_div(H, p, q) == H.pair(H.flat.ldiv(i, j))


def test_vector_closed_forms_match_on_corpus(corpus):
    for L in corpus.values():
        for A in subgroup_choices(L)[:4]:
            H = build_holomorph(L, A)
            assert np.array_equal(closed_form_right_div(H), H.flat.right_div)
            assert np.array_equal(closed_form_left_div(H), H.flat.left_div)
            if L.inverses_coincide:
                assert np.array_equal(closed_form_inverse(H), H.flat.jrho)


def test_holomorph_dump_parses_back():
    L = cyclic(3)
    H = build_holomorph(L, automorphism_group(L))
    text = format_holomorph(H)
    assert "pair 5 -> (g_1, x_2)" in text
    assert parse_loop(text) == H.flat


def test_combined_with_trivial_group_on_groups(bundled_groups):
    for G in bundled_groups.values():
        e = trivial_group(G.n)
        r = right_combined_holomorph(G, middle_from_right_bol(G), e)
        l = left_combined_holomorph(G, middle_from_left_bol(G), e)
        assert r.closed_form_agrees and l.closed_form_agrees
        # y((y^-1 x) y) = x y in a group, and [y (x y^-1)] y = y x
        assert np.array_equal(l.table, G.table)
        assert np.array_equal(r.table, G.table.T)
        assert r.is_loop and l.is_loop


def test_combined_closed_forms_on_bol_loops(bundled_groups, right_bol8, left_bol8):
    for Q in list(right_bol8.values()) + [bundled_groups["S3"], bundled_groups["Q8"]]:
        for A in subgroup_choices(Q):
            assert right_combined_holomorph(Q, middle_from_right_bol(Q), A).closed_form_agrees
    for Q in list(left_bol8.values()) + [bundled_groups["S3"], bundled_groups["D4"]]:
        for A in subgroup_choices(Q):
            assert left_combined_holomorph(Q, middle_from_left_bol(Q), A).closed_form_agrees


def test_combined_needs_common_subgroup():
    Q = symmetric3()
    star = middle_from_right_bol(Q)
    with pytest.raises(NotCommonSubgroup):
        right_combined_holomorph(Q, star, closure([(0, 2, 1, 3, 4, 5)]))


def test_combined_on_z3_full_aut_is_not_the_middle_holomorph():
    L = cyclic(3)
    A = automorphism_group(L)
    r = right_combined_holomorph(L, middle_from_right_bol(L), A)
    H2 = build_holomorph(middle_from_right_bol(L), A)
    assert not np.array_equal(r.table, H2.flat.table)
