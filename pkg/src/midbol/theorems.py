"""Finite-instance verifiers for the holomorph results.

Each verifier computes the two sides of a statement independently on
a concrete loop and automorphism subgroup. Crisp statements report
``agree``; statements whose quantifiers admit several readings report
an interpretation matrix with one row per reading.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from .errors import NotCommutativeBase
from .holomorph import build_holomorph, left_combined_holomorph, right_combined_holomorph
from .isostrophe import middle_from_left_bol, middle_from_right_bol
from .perm import (PermutationGroup, automorphism_group, compose, compose_all, invert,
                   is_abelian, is_subgroup, middle_regular_maps, mult_groups)
from .table import FiniteLoop, TranslationKind as TK, counterexample, predicate, translation
from .topism import classify

CRISP = ("lemma_2_1", "lemma_2_2", "cor_2_3_2_4", "thm_2_12", "thm_left_bol")
DELTA_FAMILY = ("lemma_2_5", "lemma_2_6", "thm_2_7", "cor_2_8", "lemma_2_9", "thm_2_10", "cor_2_11")
AMBIGUOUS = DELTA_FAMILY + ("thm_2_13", "cor_2_14", "thm_2_15")
THEOREMS = CRISP + AMBIGUOUS


@dataclass
class Reading:
    reading: str
    premise: bool
    lhs: bool
    rhs: bool
    implication: bool = False

    @property
    def consistent(self) -> bool:
        if not self.premise:
            return True
        if self.implication:
            return self.rhs or not self.lhs
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        d = asdict(self)
        d["consistent"] = self.consistent
        return d


@dataclass
class TheoremReport:
    theorem: str
    instance: dict
    lhs: bool
    rhs: bool
    agree: bool
    interpretation: str | None = None
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    matrix: list[Reading] = field(default_factory=list)

    @property
    def crisp(self) -> bool:
        return not self.matrix

    def consistent_readings(self) -> list[str]:
        return [r.reading for r in self.matrix if r.consistent]

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "instance": self.instance,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "agree": self.agree,
            "interpretation": self.interpretation,
            "witnesses": self.witnesses,
            "details": self.details,
            "matrix": [r.to_dict() for r in self.matrix],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "TheoremReport":
        matrix = [Reading(r["reading"], r["premise"], r["lhs"], r["rhs"], r.get("implication", False))
                  for r in d.get("matrix", [])]
        return cls(d["theorem"], d["instance"], d["lhs"], d["rhs"], d["agree"], d.get("interpretation"),
                   _lists(d.get("witnesses", [])), d.get("details", {}), matrix)


def _lists(ws):
    return [list(w) if isinstance(w, (list, tuple)) else w for w in ws]


def group_digest(group: PermutationGroup) -> str:
    import hashlib
    return hashlib.sha256(repr(group.sorted()).encode()).hexdigest()[:12]


def describe(loop: FiniteLoop, group: PermutationGroup | None, name: str | None = None) -> dict:
    d = {"loop": loop.digest(), "order": loop.n}
    if name is not None:
        d["name"] = name
    if group is not None:
        d["group"] = group_digest(group)
        d["group_order"] = len(group)
    return d


def _wit(t):
    return [int(v) if not isinstance(v, (list, tuple)) else [int(k) for k in v] for v in t]


# ---------------------------------------------------------------------------
# holomorph middle Bol equivalences

def _cond_b(loop, group, c_variant=False):
    T, LD, RD = loop.table, loop.left_div, loop.right_div
    n = loop.n
    x = np.arange(n)[:, None, None]
    y = np.arange(n)[None, :, None]
    z = np.arange(n)[None, None, :]
    for k, d in enumerate(group.sorted()):
        d = np.asarray(d)
        lhs = T[d[x], LD[T[y, d[z]], x]]
        if c_variant:
            rhs = T[RD[d[x], d[z]], LD[y, x]]
        else:
            rhs = T[d[RD[x, z]], LD[y, x]]
        ok = lhs == rhs
        if not ok.all():
            bx, by, bz = np.argwhere(~ok)[0]
            return (int(bx), int(by), int(bz), k)
    return None


def _cond_d(loop, group):
    n = loop.n
    for k, d in enumerate(group.sorted()):
        dinv = invert(d)
        for x in range(n):
            lam = translation(loop, TK.LAMBDA_DIV, x)
            rho = translation(loop, TK.RHO_DIV, x)
            u = compose_all(dinv, lam, d)
            w = compose(rho, translation(loop, TK.LEFT_MULT, d[x]))
            if classify(loop, u, rho, w) not in ("anti", "both"):
                return (x, k)
    return None


def verify_lemma_2_1(loop: FiniteLoop, group: PermutationGroup, witnesses: bool = False,
                     name: str | None = None) -> TheoremReport:
    H = build_holomorph(loop, group)
    wa = counterexample(H.flat, "middle_bol")
    wb = _cond_b(loop, group)
    wc = _cond_b(loop, group, c_variant=True)
    wd = _cond_d(loop, group)
    parts = {"a": wa is None, "b": wb is None, "c": wc is None, "d": wd is None}
    agree = len(set(parts.values())) == 1
    ws = []
    if witnesses:
        ws = [[k, _wit(w)] for k, w in zip("abcd", (wa, wb, wc, wd)) if w is not None]
    return TheoremReport("lemma_2_1", describe(loop, group, name), parts["a"], parts["d"], agree,
                         witnesses=ws, details=parts)


# ---------------------------------------------------------------------------
# commutativity of the holomorph

def _noncommuting(group):
    elems = group.sorted()
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            if compose(a, b) != compose(b, a):
                return (i, j)
    return None


def _pairs_anti(loop, group):
    e = tuple(range(loop.n))
    for i, a in enumerate(group.sorted()):
        ainv = invert(a)
        for j, b in enumerate(group.sorted()):
            if classify(loop, b, ainv, e) not in ("anti", "both"):
                return (i, j)
    return None


def _pairs_auto(loop, group):
    e = tuple(range(loop.n))
    for i, a in enumerate(group.sorted()):
        ainv = invert(a)
        for j, b in enumerate(group.sorted()):
            if classify(loop, b, ainv, e) not in ("auto", "both"):
                return (i, j)
    return None


def _pairs_middle_regular(loop, group, mr=None):
    mr = mr or middle_regular_maps(loop)
    for i, a in enumerate(group.sorted()):
        for j, b in enumerate(group.sorted()):
            if not mr.has_pair(b, a):
                return (i, j)
    return None


def verify_lemma_2_2(loop, group, witnesses=False, name=None) -> TheoremReport:
    H = build_holomorph(loop, group)
    wl = counterexample(H.flat, "commutative")
    ab = is_abelian(group)
    wr = _pairs_anti(loop, group)
    lhs, rhs = wl is None, ab and wr is None
    ws = []
    if witnesses:
        if wl is not None:
            ws.append(["holomorph", _wit(wl)])
        if not ab:
            ws.append(["noncommuting_automorphisms", _wit(_noncommuting(group))])
        if wr is not None:
            ws.append(["anti_autotopism", _wit(wr)])
    return TheoremReport("lemma_2_2", describe(loop, group, name), lhs, rhs, lhs == rhs, witnesses=ws,
                         details={"abelian": ab, "anti_pairs": wr is None})


def verify_cor_2_3_and_2_4(loop, group, witnesses=False, name=None) -> TheoremReport:
    if not predicate(loop, "commutative"):
        raise NotCommutativeBase("base loop must be commutative")
    H = build_holomorph(loop, group)
    wl = counterexample(H.flat, "commutative")
    ab = is_abelian(group)
    w_auto = _pairs_auto(loop, group)
    w_mr = _pairs_middle_regular(loop, group)
    sides = {"holomorph_commutative": wl is None, "autotopism_pairs": ab and w_auto is None,
             "middle_regular_pairs": ab and w_mr is None}
    ws = []
    if witnesses:
        ws = [[k, _wit(w)] for k, w in (("holomorph", wl), ("autotopism", w_auto), ("middle_regular", w_mr))
              if w is not None]
        if not ab:
            ws.append(["noncommuting_automorphisms", _wit(_noncommuting(group))])
    agree = len(set(sides.values())) == 1
    return TheoremReport("cor_2_3_2_4", describe(loop, group, name), sides["holomorph_commutative"],
                         sides["autotopism_pairs"] and sides["middle_regular_pairs"], agree,
                         witnesses=ws, details=dict(sides, abelian=ab))


# ---------------------------------------------------------------------------
# delta family

def _delta_set(loop) -> set:
    n = loop.n
    R = [translation(loop, TK.RIGHT_MULT, a) for a in range(n)]
    Rinv = [invert(r) for r in R]
    return {compose(R[loop.ldiv(z, x)], Rinv[z]) for x in range(n) for z in range(n)}


def delta_readings(loop, group) -> dict[str, bool]:
    """Quantifier readings of "delta = R_(z\\x) R_z^-1 for each delta, for fixed x, z"."""
    n = loop.n
    D = _delta_set(loop)
    elems = group.elements
    R = [translation(loop, TK.RIGHT_MULT, a) for a in range(n)]
    Rinv = [invert(r) for r in R]
    pair_maps = [compose(R[loop.ldiv(z, x)], Rinv[z]) for x in range(n) for z in range(n)]
    return {
        "delta:exists_pair_per_delta": elems <= D,
        "delta:one_pair_for_all": any(all(d == p for d in elems) for p in pair_maps),
        "delta:all_pairs": all(d == p for d in elems for p in pair_maps),
    }


def rho_readings(loop, group) -> dict[str, bool]:
    """Readings of ``Rho_w^-1 R_(y delta) = R_y R_w^-1 R_(w delta)``.

    ``mixed`` keeps the division map ``t -> t\\w`` on the left as printed;
    ``all_R`` replaces it by ``R_w``. Each is taken for all ``w`` and for
    some single ``w``.
    """
    n = loop.n
    R = [translation(loop, TK.RIGHT_MULT, a) for a in range(n)]
    Rinv = [invert(r) for r in R]
    Rho_inv = [invert(translation(loop, TK.RHO_DIV, w)) for w in range(n)]
    elems = group.sorted()

    def holds(first, w):
        return all(compose(first[w], R[d[y]]) == compose_all(R[y], Rinv[w], R[d[w]])
                   for d in elems for y in range(n))

    mixed = [holds(Rho_inv, w) for w in range(n)]
    all_r = [holds(Rinv, w) for w in range(n)]
    return {
        "rho:mixed_all_w": all(mixed),
        "rho:mixed_some_w": any(mixed),
        "rho:all_R_all_w": all(all_r),
        "rho:all_R_some_w": any(all_r),
    }


class _Facts:
    """Everything the delta-family statements are built from, computed once per instance."""

    def __init__(self, loop, group):
        self.loop, self.group = loop, group
        self.commutative = predicate(loop, "commutative")
        self.loop_mb = predicate(loop, "middle_bol")
        H = build_holomorph(loop, group)
        self.h_mb = predicate(H.flat, "middle_bol")
        self.h_comm = predicate(H.flat, "commutative")
        self.abelian = is_abelian(group)
        mr = middle_regular_maps(loop)
        self.in_phi = is_subgroup(group, mr.phi)
        self.phi_pairs = _pairs_middle_regular(loop, group, mr) is None
        m_rho, _ = mult_groups(loop)
        self.in_m_rho = is_subgroup(group, m_rho)
        self.delta = delta_readings(loop, group)
        self.rho = rho_readings(loop, group)


def _family_matrix(which: str, f: _Facts) -> list[Reading]:
    rows = []
    comm = f.commutative
    h_cmb = f.h_comm and f.h_mb
    if which in ("lemma_2_5", "lemma_2_6", "thm_2_7", "lemma_2_9", "thm_2_10"):
        combos = [(dk, dv, rk, rv) for dk, dv in f.delta.items() for rk, rv in f.rho.items()]
    elif which == "cor_2_8":
        combos = [(None, None, rk, rv) for rk, rv in f.rho.items()]
    else:
        combos = [(None, None, rk, rv) for rk, rv in f.rho.items()]
    for dk, dv, rk, rv in combos:
        tag = rk if dk is None else f"{dk}|{rk}"
        if which == "lemma_2_5":
            rows.append(Reading(tag, comm and f.loop_mb, dv and rv, f.h_mb, implication=True))
        elif which == "lemma_2_6":
            rows.append(Reading(tag, comm and rv, f.h_mb, f.loop_mb and dv))
        elif which == "thm_2_7":
            rows.append(Reading(tag, comm and rv, h_cmb, f.loop_mb and f.abelian and dv and f.phi_pairs))
        elif which == "cor_2_8":
            rows.append(Reading(tag, comm and rv, h_cmb, f.loop_mb and f.in_phi and f.in_m_rho and f.abelian))
        elif which == "lemma_2_9":
            rows.append(Reading(tag, comm and dv, f.h_mb, f.loop_mb and rv))
        elif which == "thm_2_10":
            rows.append(Reading(tag, comm and dv, h_cmb, f.loop_mb and f.abelian and rv and f.phi_pairs))
        elif which == "cor_2_11":
            rows.append(Reading(tag, comm and f.in_m_rho, h_cmb, f.loop_mb and rv and f.in_phi and f.abelian))
        else:
            raise ValueError(f"unknown delta-family statement {which!r}")
    return rows


def _ambiguous_report(which, instance, rows, details) -> TheoremReport:
    first = rows[0]
    return TheoremReport(which, instance, first.lhs, first.rhs, first.consistent, first.reading,
                         details=details, matrix=rows)


def verify_delta_family(loop, group, which: str, name=None, facts: _Facts | None = None) -> TheoremReport:
    if which not in DELTA_FAMILY:
        raise ValueError(f"{which!r} is not in the delta family")
    f = facts or _Facts(loop, group)
    rows = _family_matrix(which, f)
    details = {"commutative": f.commutative, "loop_middle_bol": f.loop_mb, "holomorph_middle_bol": f.h_mb,
               "holomorph_commutative": f.h_comm, "abelian": f.abelian, "A_in_Phi": f.in_phi,
               "A_in_M_rho": f.in_m_rho, "phi_pairs": f.phi_pairs}
    details.update(f.delta)
    details.update(f.rho)
    return _ambiguous_report(which, describe(loop, group, name), rows, details)


# ---------------------------------------------------------------------------
# holomorphs under isostrophy

def _first_diff(a: np.ndarray, b: np.ndarray) -> list:
    """Flat labels ``[p, q]`` of the first cell where two holomorph tables differ."""
    bad = np.argwhere(a != b)
    return [int(v) for v in bad[0]] if bad.size else []


def verify_thm_2_12(q: FiniteLoop, group: PermutationGroup | None = None, witnesses=False,
                    name=None) -> TheoremReport:
    if not predicate(q, "right_bol"):
        raise ValueError("loop must be right Bol")
    star = middle_from_right_bol(q)
    aut, aut_star = automorphism_group(q), automorphism_group(star)
    group = aut if group is None else group
    H = build_holomorph(q, group)
    H2 = build_holomorph(star, group)
    lhs = bool(np.array_equal(H.flat.table, H2.flat.table))
    rhs = predicate(q, "commutative")
    ws = []
    if witnesses and not lhs:
        ws.append(["holomorph_tables_differ", _first_diff(H.flat.table, H2.flat.table)])
    if witnesses and not rhs:
        ws.append(["commutative", _wit(counterexample(q, "commutative"))])
    return TheoremReport("thm_2_12", describe(q, group, name), lhs, rhs, lhs == rhs, witnesses=ws,
                         details={"aut_equal": aut == aut_star})


def verify_thm_left_bol(q: FiniteLoop, group: PermutationGroup | None = None, witnesses=False,
                        name=None) -> TheoremReport:
    if not predicate(q, "left_bol"):
        raise ValueError("loop must be left Bol")
    star = middle_from_left_bol(q)
    aut, aut_star = automorphism_group(q), automorphism_group(star)
    group = aut if group is None else group
    H = build_holomorph(q, group)
    H2 = build_holomorph(star, group)
    lhs = bool(np.array_equal(H.flat.table, H2.flat.table))
    rhs = predicate(q, "flexible")
    ws = []
    if witnesses and not lhs:
        ws.append(["holomorph_tables_differ", _first_diff(H.flat.table, H2.flat.table)])
    if witnesses and not rhs:
        ws.append(["flexible", _wit(counterexample(q, "flexible"))])
    return TheoremReport("thm_left_bol", describe(q, group, name), lhs, rhs, lhs == rhs, witnesses=ws,
                         details={"aut_equal": aut == aut_star})


def beta_map(loop: FiniteLoop, alpha, y: int):
    """``R_y^-1 L_(y alpha) L_y^-1 R_y``."""
    return compose_all(translation(loop, TK.RIGHT_MULT_INV, y), translation(loop, TK.LEFT_MULT, alpha[y]),
                       translation(loop, TK.LEFT_MULT_INV, y), translation(loop, TK.RIGHT_MULT, y))


def beta_readings(loop, group) -> dict[str, bool]:
    n = loop.n
    elems = group.sorted()
    commute = all(compose(a, b) == compose(b, a) for a in elems for b in elems)
    bm = {(a, y): beta_map(loop, a, y) for a in elems for y in range(n)}
    return {
        "beta:all_y": commute and all(bm[a, y] == b for a in elems for b in elems for y in range(n)),
        "beta:one_y_for_all": commute and any(all(bm[a, y] == b for a in elems for b in elems)
                                              for y in range(n)),
        "beta:some_y_per_pair": commute and all(any(bm[a, y] == b for y in range(n))
                                                for a in elems for b in elems),
        "beta:determined_by_alpha_y": all(bm[a, y] in group.elements and compose(a, bm[a, y]) == compose(bm[a, y], a)
                                          for a in elems for y in range(n)),
    }


def _right_combined_equality(q_right, group) -> tuple[bool, dict]:
    if not predicate(q_right, "right_bol"):
        raise ValueError("loop must be right Bol")
    star = middle_from_right_bol(q_right)
    comb = right_combined_holomorph(q_right, star, group)
    H2 = build_holomorph(star, group)
    lhs = bool(np.array_equal(comb.table, H2.flat.table))
    details = {"combined_is_loop": comb.is_loop, "closed_form_agrees": comb.closed_form_agrees,
               "trivial_group": len(group) == 1}
    return lhs, details


def verify_thm_2_13_and_cor(q_right: FiniteLoop, group: PermutationGroup, name=None) -> TheoremReport:
    """Right combined holomorph equals the holomorph of the middle partner,
    against every reading of the conjugation condition."""
    lhs, details = _right_combined_equality(q_right, group)
    rows = [Reading(k, True, lhs, v) for k, v in beta_readings(q_right, group).items()]
    return _ambiguous_report("thm_2_13", describe(q_right, group, name), rows, details)


COROLLARY_READING = "sufficient:A<=M_and_abelian"


def verify_cor_2_14(q_right: FiniteLoop, group: PermutationGroup, name=None) -> TheoremReport:
    """``A <= M`` and ``A`` abelian is claimed to force the combined holomorph equality."""
    lhs, details = _right_combined_equality(q_right, group)
    _, m_all = mult_groups(q_right)
    cond = is_subgroup(group, m_all) and is_abelian(group)
    # read as "condition implies equality": lhs slot holds the condition
    rows = [Reading(COROLLARY_READING, True, cond, lhs, implication=True)]
    details["A_in_M"] = is_subgroup(group, m_all)
    details["abelian"] = is_abelian(group)
    return _ambiguous_report("cor_2_14", describe(q_right, group, name), rows, details)


def phi_readings(loop, group) -> dict[str, bool]:
    n = loop.n
    T, inv = loop.table, loop.inv()
    elems = group.sorted()
    phis = sorted({compose_all(invert(b), a, b) for a in elems for b in elems})
    L = [translation(loop, TK.LEFT_MULT, a) for a in range(n)]
    Linv = [invert(p) for p in L]
    R = [translation(loop, TK.RIGHT_MULT, a) for a in range(n)]
    y = np.arange(n)[:, None]
    a = np.arange(n)[None, :]
    translation_form = all(compose_all(Linv[t], R[t], L[t]) == compose_all(Linv[f[t]], R[t], L[f[t]])
                           for f in phis for t in range(n))
    proof_form, statement_form = True, True
    for f in phis:
        f = np.asarray(f)
        yf, yinv_f = f[y], f[inv[y]]
        proof_form &= bool((T[y, T[T[inv[y], a], y]] == T[yf, T[T[a, yinv_f], y]]).all())
        statement_form &= bool((T[yinv_f, T[y, T[a, y]]] == T[T[T[y, a], yinv_f], y]).all())
    return {
        "phi:translation_form": translation_form,
        "phi:proof_elementwise": proof_form,
        "phi:statement_elementwise": statement_form,
    }


def verify_thm_2_15(q_left: FiniteLoop, group: PermutationGroup, name=None) -> TheoremReport:
    if not predicate(q_left, "left_bol"):
        raise ValueError("loop must be left Bol")
    star = middle_from_left_bol(q_left)
    comb = left_combined_holomorph(q_left, star, group)
    H2 = build_holomorph(star, group)
    lhs = bool(np.array_equal(comb.table, H2.flat.table))
    readings = phi_readings(q_left, group)
    rows = [Reading(k, True, lhs, v) for k, v in readings.items()]
    details = {"combined_is_loop": comb.is_loop, "closed_form_agrees": comb.closed_form_agrees,
               "printed_forms_agree": readings["phi:proof_elementwise"] == readings["phi:statement_elementwise"]}
    return _ambiguous_report("thm_2_15", describe(q_left, group, name), rows, details)


# ---------------------------------------------------------------------------

def open_problem_scan(orders=range(1, 6), loops: dict[str, FiniteLoop] | None = None) -> dict[str, Any]:
    """Contingency table of the middle Bol identity against the elasticity condition.

    Scans every normalized loop of the given orders unless ``loops`` is supplied.
    """
    if loops is None:
        from .search import enumerate_loops

        loops = {f"L{n}_{k:03d}": L for n in orders for k, L in enumerate(enumerate_loops(n))}
    table = {"mb&syrbu": 0, "mb&!syrbu": 0, "!mb&syrbu": 0, "!mb&!syrbu": 0}
    separating = []
    for name, loop in loops.items():
        mb = predicate(loop, "middle_bol")
        sy = predicate(loop, "syrbu_elasticity_condition")
        table[("" if mb else "!") + "mb&" + ("" if sy else "!") + "syrbu"] += 1
        if mb != sy:
            separating.append({"name": name, "loop": loop.digest(), "middle_bol": mb,
                               "syrbu_elasticity_condition": sy, "table": loop.rows()})
    return {"loops": len(loops), "contingency": table, "separating": separating}


def sweep_crisp(corpus: dict[str, FiniteLoop]) -> dict[str, dict]:
    """Run every crisp verifier on every applicable instance of ``corpus``.

    The statements about Bol loops use the full automorphism group; their
    runs over all swept subgroups are reported under ``*_subgroups``.
    """
    from .corpus import subgroup_choices

    out: dict[str, dict] = {}

    def record(key, inst, rep):
        s = out.setdefault(key, {"instances": 0, "agree": 0, "disagreements": []})
        s["instances"] += 1
        s["agree"] += int(rep.agree)
        if not rep.agree:
            s["disagreements"].append({"instance": inst, "witnesses": rep.witnesses})

    for digest, name, loop in sorted((L.digest(), k, L) for k, L in corpus.items()):
        subs = subgroup_choices(loop)
        for k, group in enumerate(subs):
            inst = f"{name}/{k}"
            if loop.n * len(group) <= SWEEP_HOLOMORPH_CAP:
                record("lemma_2_1", inst, verify_lemma_2_1(loop, group, True, name))
            record("lemma_2_2", inst, verify_lemma_2_2(loop, group, True, name))
            if predicate(loop, "commutative"):
                record("cor_2_3_2_4", inst, verify_cor_2_3_and_2_4(loop, group, True, name))
        for key, pred, fn in (("thm_2_12", "right_bol", verify_thm_2_12),
                              ("thm_left_bol", "left_bol", verify_thm_left_bol)):
            if predicate(loop, pred) and loop.inverses_coincide:
                record(key, name, fn(loop, None, True, name))
                for k, group in enumerate(subs):
                    record(key + "_subgroups", f"{name}/{k}", fn(loop, group, True, name))
    return dict(sorted(out.items()))


def verify(theorem: str, loop: FiniteLoop, group: PermutationGroup | None = None, *,
           witnesses: bool = False, name: str | None = None) -> TheoremReport:
    """Dispatch by theorem id; ``group`` defaults to the full automorphism group."""
    if group is None:
        group = automorphism_group(loop)
    if theorem == "lemma_2_1":
        return verify_lemma_2_1(loop, group, witnesses, name)
    if theorem == "lemma_2_2":
        return verify_lemma_2_2(loop, group, witnesses, name)
    if theorem == "cor_2_3_2_4":
        return verify_cor_2_3_and_2_4(loop, group, witnesses, name)
    if theorem == "thm_2_12":
        return verify_thm_2_12(loop, group, witnesses, name)
    if theorem == "thm_left_bol":
        return verify_thm_left_bol(loop, group, witnesses, name)
    if theorem in DELTA_FAMILY:
        return verify_delta_family(loop, group, theorem, name)
    if theorem == "thm_2_13":
        return verify_thm_2_13_and_cor(loop, group, name)
    if theorem == "cor_2_14":
        return verify_cor_2_14(loop, group, name)
    if theorem == "thm_2_15":
        return verify_thm_2_15(loop, group, name)
    raise ValueError(f"unknown theorem id {theorem!r}; choose from {', '.join(THEOREMS)}")


# ---------------------------------------------------------------------------
# corpus sweeps of the ambiguous statements

# Middle Bol checks on holomorphs larger than this are skipped in sweeps.
SWEEP_HOLOMORPH_CAP = 256


def _instances(corpus: dict[str, FiniteLoop], which: str):
    from .corpus import subgroup_choices

    keep = {"delta": lambda L: predicate(L, "commutative"),
            "right": lambda L: predicate(L, "right_bol"),
            "left": lambda L: predicate(L, "left_bol")}[which]
    rows = []
    for name, loop in corpus.items():
        if keep(loop):
            for k, group in enumerate(subgroup_choices(loop)):
                rows.append((loop.digest(), name, k, loop, group))
    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    return rows


def _summarise(theorem: str, reports: list[tuple[str, TheoremReport]], loops: dict, skipped: list) -> dict:
    readings: dict[str, dict] = {}
    for inst, rep in reports:
        for r in rep.matrix:
            s = readings.setdefault(r.reading, {"instances": 0, "premise_holds": 0, "consistent": 0,
                                                "counterexamples": []})
            s["instances"] += 1
            s["premise_holds"] += int(r.premise)
            s["consistent"] += int(r.consistent)
            if not r.consistent:
                s["counterexamples"].append(inst)
    consistent = sorted(k for k, s in readings.items() if not s["counterexamples"])
    counter_loops = {}
    if not consistent:
        for s in readings.values():
            inst = s["counterexamples"][0]
            name = inst.split("/")[0]
            counter_loops[name] = loops[name].rows()
    return {"theorem": theorem, "instances": len(reports), "skipped": skipped,
            "readings": dict(sorted(readings.items())), "consistent_readings": consistent,
            "counterexample_loops": dict(sorted(counter_loops.items()))}


def sweep_ambiguous(corpus: dict[str, FiniteLoop] | None = None) -> dict[str, dict]:
    """Interpretation matrices of every ambiguous statement over ``corpus``.

    The result is plain JSON data; instances are processed in order of
    loop digest so reruns produce identical output.
    """
    from .corpus import full_corpus

    corpus = full_corpus() if corpus is None else corpus
    out = {}
    per = {t: [] for t in DELTA_FAMILY}
    skipped = []
    for digest, name, k, loop, group in _instances(corpus, "delta"):
        inst = f"{name}/{k}"
        if loop.n * len(group) > SWEEP_HOLOMORPH_CAP:
            skipped.append(inst)
            continue
        facts = _Facts(loop, group)
        for t in DELTA_FAMILY:
            per[t].append((inst, verify_delta_family(loop, group, t, name, facts)))
    for t in DELTA_FAMILY:
        out[t] = _summarise(t, per[t], corpus, skipped)
    right = _instances(corpus, "right")
    reps = [(f"{name}/{k}", verify_thm_2_13_and_cor(loop, group, name)) for _, name, k, loop, group in right]
    out["thm_2_13"] = _summarise("thm_2_13", reps, corpus, [])
    reps = [(f"{name}/{k}", verify_cor_2_14(loop, group, name)) for _, name, k, loop, group in right]
    out["cor_2_14"] = _summarise("cor_2_14", reps, corpus, [])
    reps = [(f"{name}/{k}", verify_thm_2_15(loop, group, name))
            for _, name, k, loop, group in _instances(corpus, "left")]
    out["thm_2_15"] = _summarise("thm_2_15", reps, corpus, [])
    return out


def golden_report(corpus: dict[str, FiniteLoop] | None = None) -> str:
    return json.dumps(sweep_ambiguous(corpus), sort_keys=True, indent=1) + "\n"
