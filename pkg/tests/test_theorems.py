import json

import pytest
from hypothesis import given, strategies as st

from conftest import SMALL
from midbol.corpus import cyclic, groups, subgroup_choices, symmetric3
from midbol.errors import NotCommutativeBase
from midbol.perm import automorphism_group, subgroups, trivial_group
from midbol.table import predicate
from midbol.theorems import (AMBIGUOUS, CRISP, DELTA_FAMILY, Reading, TheoremReport, beta_readings,
                             delta_readings, open_problem_scan, phi_readings, rho_readings, sweep_crisp,
                             verify, verify_cor_2_3_and_2_4, verify_cor_2_14, verify_delta_family,
                             verify_lemma_2_1, verify_lemma_2_2, verify_thm_2_12, verify_thm_2_13_and_cor,
                             verify_thm_2_15, verify_thm_left_bol)

instance_st = st.sampled_from(SMALL).flatmap(lambda L: st.sampled_from(subgroup_choices(L)).map(lambda A: (L, A)))


def non_middle_bol_order_five():
    return next(L for L in SMALL if L.n == 5 and not predicate(L, "middle_bol"))


def test_lemma_2_1_examples():
    Z3 = cyclic(3)
    r = verify_lemma_2_1(Z3, trivial_group(3))
    assert r.details == {"a": True, "b": True, "c": True, "d": True} and r.agree
    r = verify_lemma_2_1(Z3, automorphism_group(Z3))
    assert all(r.details.values()) and r.agree
    L = non_middle_bol_order_five()
    r = verify_lemma_2_1(L, trivial_group(5), witnesses=True)
    assert not any(r.details.values()) and r.agree
    assert {w[0] for w in r.witnesses} == {"a", "b", "c", "d"}


@given(instance_st)
def test_lemma_2_1_four_way(inst):
    L, A = inst
    assert verify_lemma_2_1(L, A).agree


def test_lemma_2_2_examples():
    Z3 = cyclic(3)
    r = verify_lemma_2_2(Z3, trivial_group(3))
    assert r.lhs and r.rhs and r.agree
    r = verify_lemma_2_2(Z3, automorphism_group(Z3), witnesses=True)
    assert not r.lhs and not r.rhs and r.agree
    assert r.witnesses
    r = verify_lemma_2_2(groups()["V4"], trivial_group(4))
    assert r.lhs and r.rhs


@given(instance_st)
def test_lemma_2_2_sides_agree(inst):
    L, A = inst
    r = verify_lemma_2_2(L, A, witnesses=True)
    assert r.agree
    assert bool(r.witnesses) == (not r.lhs or not r.rhs)


def test_corollaries():
    r = verify_cor_2_3_and_2_4(cyclic(4), trivial_group(4))
    assert r.lhs and r.rhs and r.agree
    Z3 = cyclic(3)
    r = verify_cor_2_3_and_2_4(Z3, automorphism_group(Z3))
    assert not r.details["holomorph_commutative"] and not r.details["autotopism_pairs"]
    assert not r.details["middle_regular_pairs"] and r.agree
    V4 = groups()["V4"]
    for A in subgroups(automorphism_group(V4)):
        if len(A) == 2:
            assert verify_cor_2_3_and_2_4(V4, A).agree
    with pytest.raises(NotCommutativeBase):
        verify_cor_2_3_and_2_4(symmetric3(), trivial_group(6))


def test_thm_2_12_examples(right_bol8):
    r = verify_thm_2_12(cyclic(4))
    assert r.lhs and r.rhs and r.details["aut_equal"]
    r = verify_thm_2_12(symmetric3(), witnesses=True)
    assert not r.lhs and not r.rhs and r.agree
    kinds = [w[0] for w in r.witnesses]
    assert kinds == ["holomorph_tables_differ", "commutative"]
    for Q in right_bol8.values():
        r = verify_thm_2_12(Q)
        assert not r.lhs and not r.rhs and r.details["aut_equal"]
    with pytest.raises(ValueError):
        verify_thm_2_12(non_middle_bol_order_five())


def test_thm_left_bol_examples(bundled_groups, left_bol8):
    for G in bundled_groups.values():
        r = verify_thm_left_bol(G)
        assert r.lhs and r.rhs
    for Q in left_bol8.values():
        r = verify_thm_left_bol(Q, witnesses=True)
        assert not r.lhs and not r.rhs and r.agree
        assert r.witnesses[1][0] == "flexible"


def test_delta_readings_on_z3():
    Z3 = cyclic(3)
    A = automorphism_group(Z3)
    d = delta_readings(Z3, A)
    # R_(z\x) R_z^-1 is always a translation, the inversion map is not
    assert not d["delta:exists_pair_per_delta"]
    assert delta_readings(Z3, trivial_group(3))["delta:exists_pair_per_delta"]
    r = verify_delta_family(Z3, A, "lemma_2_5")
    assert r.details["holomorph_middle_bol"]
    assert all(row.consistent for row in r.matrix)


def test_rho_identity_is_vacuous_for_all_w():
    # y = e, delta = I reduce the identity to Rho_w = I, so only the trivial loop passes
    for L in SMALL:
        r = rho_readings(L, trivial_group(L.n))
        assert r["rho:mixed_all_w"] == (L.n == 1)
        assert r["rho:all_R_all_w"] == (L.n == 1)


@pytest.mark.parametrize("which", DELTA_FAMILY)
def test_delta_family_reports_a_matrix(which):
    r = verify_delta_family(groups()["V4"], trivial_group(4), which)
    assert r.matrix and not r.crisp
    assert r.interpretation == r.matrix[0].reading
    assert r.agree == r.matrix[0].consistent


def test_thm_2_13_trivial_group_on_abelian():
    r = verify_thm_2_13_and_cor(cyclic(5), trivial_group(5))
    assert r.lhs
    assert all(row.rhs for row in r.matrix)
    assert r.details["closed_form_agrees"]


def test_thm_2_13_equality_only_for_trivial_group(bundled_groups):
    for G in bundled_groups.values():
        for A in subgroup_choices(G):
            r = verify_thm_2_13_and_cor(G, A)
            assert r.lhs == (len(A) == 1)


def test_beta_condition_on_z3():
    Z3 = cyclic(3)
    b = beta_readings(Z3, automorphism_group(Z3))
    assert not b["beta:all_y"]


def test_cor_2_14_fails_on_s3_inner_involution():
    S3 = symmetric3()
    M_inner = [A for A in subgroups(automorphism_group(S3)) if len(A) == 2]
    assert M_inner
    r = verify_cor_2_14(S3, M_inner[0])
    assert r.details["A_in_M"] and r.details["abelian"]
    assert not r.matrix[0].consistent


def test_thm_2_15_trivial_group(bundled_groups):
    for G in bundled_groups.values():
        r = verify_thm_2_15(G, trivial_group(G.n))
        assert r.lhs
        row = {m.reading: m for m in r.matrix}
        assert row["phi:translation_form"].consistent


def test_thm_2_15_printed_forms_fail_on_s3():
    r = verify_thm_2_15(symmetric3(), trivial_group(6))
    p = phi_readings(symmetric3(), trivial_group(6))
    assert p["phi:translation_form"] and not p["phi:proof_elementwise"] and not p["phi:statement_elementwise"]
    assert r.details["printed_forms_agree"]


def test_report_round_trip():
    r = verify_lemma_2_2(cyclic(3), automorphism_group(cyclic(3)), witnesses=True)
    back = TheoremReport.from_dict(json.loads(r.to_json()))
    assert back.to_dict() == r.to_dict()
    r = verify_delta_family(cyclic(3), trivial_group(3), "thm_2_7")
    back = TheoremReport.from_dict(json.loads(r.to_json()))
    assert back.to_dict() == r.to_dict()
    assert back.matrix[0] == r.matrix[0]


def test_reports_are_deterministic():
    a = verify("thm_2_15", symmetric3()).to_json()
    b = verify("thm_2_15", symmetric3()).to_json()
    assert a == b


def test_reading_semantics():
    assert Reading("x", False, True, False).consistent
    assert not Reading("x", True, True, False).consistent
    assert Reading("x", True, False, True, implication=True).consistent
    assert not Reading("x", True, True, False, implication=True).consistent


def test_dispatch_rejects_unknown():
    with pytest.raises(ValueError):
        verify("thm_9_9", cyclic(3))
    assert set(CRISP) | set(AMBIGUOUS) >= {"lemma_2_1", "thm_2_15", "cor_2_14"}


def test_crisp_sweep_on_small_loops(small):
    out = sweep_crisp(small)
    for key, s in out.items():
        assert s["agree"] == s["instances"], key


def test_open_problem_scan_small():
    rep = open_problem_scan(range(1, 5))
    assert rep["loops"] == 7
    assert rep["contingency"]["mb&syrbu"] + rep["contingency"]["!mb&!syrbu"] == 7
    assert rep == open_problem_scan(range(1, 5))
