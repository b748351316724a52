"""Autotopisms and anti-autotopisms of finite loops.

A triple ``(U, V, W)`` is an autotopism when ``xU * yV = (x*y)W`` and an
anti-autotopism when ``xU * yV = (y*x)W``. Parity is always measured
on the table, never inferred from how a triple was built.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DegreeMismatch, LimitExceeded
from .perm import Permutation, compose, invert, isomorphisms
from .table import FiniteLoop

PARITIES = ("auto", "anti", "both", "neither")

# Exhaustive enumeration is offered up to this order.
MAX_ENUM_ORDER = 8


def classify(loop: FiniteLoop, u, v, w) -> str:
    n = loop.n
    if not (len(u) == len(v) == len(w) == n):
        raise DegreeMismatch(f"triple degrees must all equal the loop order {n}")
    T = loop.table
    U, V, W = (np.asarray(p) for p in (u, v, w))
    lhs = T[U[:, None], V[None, :]]
    auto = bool((lhs == W[T]).all())
    anti = bool((lhs == W[T.T]).all())
    if auto and anti:
        return "both"
    return "auto" if auto else "anti" if anti else "neither"


@dataclass(frozen=True)
class Topism:
    u: Permutation
    v: Permutation
    w: Permutation
    parity: str = field(default="neither", compare=False)

    @classmethod
    def of(cls, loop: FiniteLoop, u, v, w) -> "Topism":
        u, v, w = (tuple(int(k) for k in p) for p in (u, v, w))
        return cls(u, v, w, classify(loop, u, v, w))

    @property
    def triple(self) -> tuple[Permutation, Permutation, Permutation]:
        return (self.u, self.v, self.w)

    def to_json(self) -> str:
        return json.dumps({"u": list(self.u), "v": list(self.v), "w": list(self.w),
                           "parity": self.parity})

    @classmethod
    def from_json(cls, text: str) -> "Topism":
        d = json.loads(text)
        if d.get("parity") not in PARITIES:
            raise ValueError(f"bad parity {d.get('parity')!r}")
        return cls(tuple(d["u"]), tuple(d["v"]), tuple(d["w"]), d["parity"])


def compose_topisms(loop: FiniteLoop, t1: Topism, t2: Topism) -> Topism:
    """Componentwise product, ``t1`` applied first; parity re-measured."""
    for p in (t1.u, t2.u):
        if len(p) != loop.n:
            raise DegreeMismatch("topism degree differs from loop order")
    return Topism.of(loop, compose(t1.u, t2.u), compose(t1.v, t2.v), compose(t1.w, t2.w))


def expected_parity(p1: str, p2: str) -> str | None:
    """The two composition rules that are sound in general; None if undetermined."""
    first_auto = p1 in ("auto", "both")
    first_anti = p1 in ("anti", "both")
    second_auto = p2 in ("auto", "both")
    if first_auto and second_auto:
        return "auto"
    if first_anti and second_auto:
        return "anti"
    return None


def principal_isotope(loop: FiniteLoop, a: int, b: int) -> np.ndarray:
    """Table of ``u o v = (u/b) * (a\\v)``, relabelled so that it is a plain array."""
    T = loop.table
    return T[loop.right_div[:, b][:, None], loop.left_div[a, :][None, :]]


def enumerate_atp(loop: FiniteLoop, limit: int | None = None) -> list[Topism]:
    """Every autotopism of ``loop``.

    Fixing ``a = eU`` and ``b = eV`` pins ``U = W R_b^-1`` and
    ``V = W L_a^-1``; what remains says ``W`` is an isomorphism from the
    loop onto the principal isotope ``(u/b)(a\\v)``, whose identity is
    ``a*b``. Those isomorphisms are found by the automorphism backtracker.
    """
    n = loop.n
    if n > MAX_ENUM_ORDER:
        raise LimitExceeded(f"exhaustive autotopism enumeration is capped at order {MAX_ENUM_ORDER}")
    out = []
    for a in range(n):
        for b in range(n):
            iso = principal_isotope(loop, a, b)
            for w in isomorphisms(loop.table, iso, first=loop.mul(a, b)):
                W = np.asarray(w)
                u = tuple(int(k) for k in loop.right_div[W, b])
                v = tuple(int(k) for k in loop.left_div[a, W])
                out.append(Topism(u, v, w, "auto"))
                if limit is not None and len(out) > limit:
                    raise LimitExceeded(f"more than {limit} autotopisms")
    out.sort(key=lambda t: t.triple)
    return out


def atp_set(loop: FiniteLoop) -> frozenset:
    return frozenset(t.triple for t in enumerate_atp(loop))


def verify_prop_atp_equal(bol: FiniteLoop, middle: FiniteLoop) -> bool:
    """True iff the two loops have literally the same autotopism triples."""
    return atp_set(bol) == atp_set(middle)


def isostrophic_image(t: Permutation | Topism, inv) -> tuple:
    """``(U, V, W) -> (W, J U J, V)`` with ``J`` the inversion map.

    For a right Bol loop and its middle Bol partner ``x o y = y^-1 \\ x``
    this carries autotopisms of the former onto autotopisms of the latter.
    """
    u, v, w = t.triple if isinstance(t, Topism) else t
    j = tuple(int(k) for k in inv)
    return (w, compose(compose(j, u), invert(j)), v)
