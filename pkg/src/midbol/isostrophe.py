"""Isostrophes linking right/left Bol loops with middle Bol loops."""
from __future__ import annotations

import numpy as np

from .table import FiniteLoop, opposite, predicate, validate_loop


def middle_from_right_bol(q: FiniteLoop) -> FiniteLoop:
    """``x o y = (y * x y^-1) y``."""
    T, inv = q.table, q.inv()
    x = np.arange(q.n)[:, None]
    y = np.arange(q.n)[None, :]
    return validate_loop(T[T[y, T[x, inv[y]]], y])


def middle_from_left_bol(q: FiniteLoop) -> FiniteLoop:
    """``x o y = y (y^-1 x * y)``."""
    T, inv = q.table, q.inv()
    x = np.arange(q.n)[:, None]
    y = np.arange(q.n)[None, :]
    return validate_loop(T[y, T[T[inv[y], x], y]])


def left_bol_from_middle(m: FiniteLoop) -> FiniteLoop:
    """``x . y = x // y^-1`` with ``//`` the right division of ``m``."""
    inv = m.inv()
    x = np.arange(m.n)[:, None]
    y = np.arange(m.n)[None, :]
    return validate_loop(m.right_div[x, inv[y]])


def right_bol_from_middle(m: FiniteLoop) -> FiniteLoop:
    """``x . y = y // x^-1`` with ``//`` the right division of ``m``."""
    inv = m.inv()
    x = np.arange(m.n)[:, None]
    y = np.arange(m.n)[None, :]
    return validate_loop(m.right_div[y, inv[x]])


def middle_via_left_division(q: FiniteLoop) -> FiniteLoop:
    """``x o y = y^-1 \\ x`` in ``q``; agrees with :func:`middle_from_right_bol` on right Bol loops."""
    inv = q.inv()
    x = np.arange(q.n)[:, None]
    y = np.arange(q.n)[None, :]
    return validate_loop(q.left_div[inv[y], x])


def check_triangle(q_left: FiniteLoop, q_right: FiniteLoop, m: FiniteLoop) -> bool:
    """Both ``y(y^-1 x . y)`` in ``q_left`` and ``[y * (x * y^-1)] * y`` in ``q_right`` give ``m``."""
    if not np.array_equal(q_right.table, q_left.table.T):
        raise ValueError("q_right must be the opposite of q_left")
    L, R = q_left.table, q_right.table
    inv_l, inv_r = q_left.inv(), q_right.inv()
    x = np.arange(m.n)[:, None]
    y = np.arange(m.n)[None, :]
    via_left = L[y, L[L[inv_l[y], x], y]]
    via_right = R[R[y, R[x, inv_r[y]]], y]
    return bool(np.array_equal(via_left, m.table) and np.array_equal(via_right, m.table))


def flexibility_bridge(q_right: FiniteLoop) -> tuple[bool, bool]:
    """(middle partner is flexible, Grecu-Syrbu identity holds in ``q_right``)."""
    mid = middle_from_right_bol(q_right)
    return (predicate(mid, "flexible"), predicate(q_right, "grecu_syrbu_flexibility_criterion"))


TRANSFORMS = {
    ("right-bol", "middle"): middle_from_right_bol,
    ("left-bol", "middle"): middle_from_left_bol,
    ("middle", "right-bol"): right_bol_from_middle,
    ("middle", "left-bol"): left_bol_from_middle,
    ("right-bol", "left-bol"): opposite,
    ("left-bol", "right-bol"): opposite,
}
