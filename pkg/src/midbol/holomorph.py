"""Holomorphs ``A x L`` of a loop and the two combined holomorphs.

Pairs ``(alpha, x)`` are flattened to ``i * n + x`` where ``i`` is the
index of ``alpha`` in the lexicographically sorted group; the identity
permutation sorts first, so ``(I, e)`` becomes ``0``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InversesNotTwoSided, NotASubgroup, NotAutomorphisms, NotCommonSubgroup
from .perm import Permutation, PermutationGroup, invert, is_automorphism, multiplication_table
from .table import FiniteLoop, validate_loop

Pair = tuple  # (Permutation, int)


class HolomorphLoop:
    def __init__(self, base: FiniteLoop, group: PermutationGroup, flat: FiniteLoop,
                 elements: list[Permutation], gtable: np.ndarray):
        self.base = base
        self.group = group
        self.flat = flat
        self.elements = elements
        self.gtable = gtable
        self._index = {p: i for i, p in enumerate(elements)}

    @property
    def order(self) -> int:
        return self.flat.n

    def label(self, alpha, x: int) -> int:
        return self._index[tuple(alpha)] * self.base.n + int(x)

    def pair(self, k: int) -> Pair:
        i, x = divmod(int(k), self.base.n)
        return (self.elements[i], x)

    def pairs(self) -> list[Pair]:
        return [self.pair(k) for k in range(self.order)]

    def mul_pairs(self, p: Pair, q: Pair) -> Pair:
        return self.pair(self.flat.mul(self.label(*p), self.label(*q)))


def _check_automorphisms(loop: FiniteLoop, group: PermutationGroup):
    if group.degree != loop.n:
        raise NotAutomorphisms(f"group degree {group.degree} differs from loop order {loop.n}")
    for p in group.elements:
        if not is_automorphism(loop, p):
            raise NotAutomorphisms(f"{p} is not an automorphism")


def _check_group(group: PermutationGroup):
    try:
        group._check()
    except ValueError as exc:
        raise NotASubgroup(str(exc)) from exc


def holomorph_table(loop: FiniteLoop, images: np.ndarray, gtable: np.ndarray) -> np.ndarray:
    """Raw product table of ``(a, x)(b, y) = (ab, x b * y)``; ``images[j]`` is the j-th map."""
    n, m = loop.n, images.shape[0]
    T = loop.table
    # second[j, x, y] = T[images[j][x], y]
    second = T[images[:, :, None], np.arange(n)[None, None, :]]
    tab = gtable[:, None, :, None] * n + second.transpose(1, 0, 2)[None, :, :, :]
    return tab.reshape(m * n, m * n)


def build_holomorph(loop: FiniteLoop, group: PermutationGroup) -> HolomorphLoop:
    _check_group(group)
    _check_automorphisms(loop, group)
    elements, gtable = multiplication_table(group)
    images = np.array(elements, dtype=np.int64).reshape(len(elements), loop.n)
    flat = validate_loop(holomorph_table(loop, images, gtable))
    return HolomorphLoop(loop, group, flat, elements, gtable)


def holomorph_right_div(H: HolomorphLoop, gz: Pair, by: Pair) -> Pair:
    """``(g, z)/(b, y) = (g b^-1, (z/y) b^-1)``."""
    (g, z), (b, y) = gz, by
    binv = invert(tuple(b))
    return (_mul(g, binv), binv[H.base.rdiv(z, y)])


def holomorph_left_div(H: HolomorphLoop, ax: Pair, gz: Pair) -> Pair:
    """``(a, x)\\(g, z) = (a^-1 g, (x a^-1 g)\\z)``."""
    (a, x), (g, z) = ax, gz
    beta = _mul(invert(tuple(a)), g)
    return (beta, H.base.ldiv(beta[x], z))


def holomorph_inverse(H: HolomorphLoop, by: Pair) -> Pair:
    """``(b, y)^-1 = (b^-1, (y^-1) b^-1)``."""
    b, y = by
    inv = H.base.inv()
    binv = invert(tuple(b))
    return (binv, binv[int(inv[y])])


def _index_arrays(H: HolomorphLoop):
    n, m = H.base.n, len(H.elements)
    imgs = np.array(H.elements, dtype=np.int64).reshape(m, n)
    inv_imgs = np.argsort(imgs, axis=1)
    ginv = np.argmax(H.gtable == 0, axis=1)
    return imgs, inv_imgs, ginv


def closed_form_right_div(H: HolomorphLoop) -> np.ndarray:
    """Whole right-division table of ``H`` from the pair formula, as flat labels."""
    n, m = H.base.n, len(H.elements)
    _, inv_imgs, ginv = _index_arrays(H)
    g = np.repeat(np.arange(m), n)[:, None]
    z = np.tile(np.arange(n), m)[:, None]
    b = np.repeat(np.arange(m), n)[None, :]
    y = np.tile(np.arange(n), m)[None, :]
    return H.gtable[g, ginv[b]] * n + inv_imgs[b, H.base.right_div[z, y]]


def closed_form_left_div(H: HolomorphLoop) -> np.ndarray:
    n, m = H.base.n, len(H.elements)
    imgs, _, ginv = _index_arrays(H)
    a = np.repeat(np.arange(m), n)[:, None]
    x = np.tile(np.arange(n), m)[:, None]
    g = np.repeat(np.arange(m), n)[None, :]
    z = np.tile(np.arange(n), m)[None, :]
    beta = H.gtable[ginv[a], g]
    return beta * n + H.base.left_div[imgs[beta, x], z]


def closed_form_inverse(H: HolomorphLoop) -> np.ndarray:
    n, m = H.base.n, len(H.elements)
    _, inv_imgs, ginv = _index_arrays(H)
    inv = H.base.inv()
    b = np.repeat(np.arange(m), n)
    y = np.tile(np.arange(n), m)
    return ginv[b] * n + inv_imgs[b, inv[y]]


def _mul(p, q):
    return tuple(q[k] for k in p)


# ---------------------------------------------------------------------------
# combined holomorphs

@dataclass
class CombinedHolomorph:
    """Magma over pairs; ``loop`` is set only when the table is a loop."""

    table: np.ndarray
    holomorph: HolomorphLoop
    is_loop: bool
    loop: FiniteLoop | None
    closed_form_agrees: bool


def common_group(loop_dot: FiniteLoop, loop_star: FiniteLoop, group: PermutationGroup) -> PermutationGroup:
    try:
        _check_group(group)
        _check_automorphisms(loop_dot, group)
        _check_automorphisms(loop_star, group)
    except (NotAutomorphisms, NotASubgroup) as exc:
        raise NotCommonSubgroup(str(exc)) from exc
    return group


def _finish(raw: np.ndarray, H: HolomorphLoop, closed: np.ndarray) -> CombinedHolomorph:
    try:
        loop = validate_loop(raw)
    except ValueError:
        loop = None
    return CombinedHolomorph(raw, H, loop is not None, loop, bool(np.array_equal(raw, closed)))


def _flat_inverse(H: HolomorphLoop) -> np.ndarray:
    if not H.base.inverses_coincide:
        raise InversesNotTwoSided("base loop needs two-sided inverses")
    return H.flat.jrho


def right_combined_holomorph(loop_dot: FiniteLoop, loop_star: FiniteLoop,
                             group: PermutationGroup) -> CombinedHolomorph:
    """Table of ``p (*,.) q = {q [p q^-1]} q`` computed in ``H(Q, .)``.

    The closed form ``(b a, [y a * (x y^-1)] y)`` is evaluated alongside
    as a cross-check and reported in ``closed_form_agrees``.
    """
    common_group(loop_dot, loop_star, group)
    H = build_holomorph(loop_dot, group)
    F, J = H.flat.table, _flat_inverse(H)
    N = H.order
    p = np.arange(N)[:, None]
    q = np.arange(N)[None, :]
    raw = F[F[q, F[p, J[q]]], q]
    return _finish(raw, H, _right_closed_form(H))


def _right_closed_form(H: HolomorphLoop) -> np.ndarray:
    n, m = H.base.n, len(H.elements)
    T, inv = H.base.table, H.base.inv()
    imgs = np.array(H.elements).reshape(m, n)
    a = np.repeat(np.arange(m), n)[:, None]   # alpha index of p
    x = np.tile(np.arange(n), m)[:, None]
    b = np.repeat(np.arange(m), n)[None, :]
    y = np.tile(np.arange(n), m)[None, :]
    second = T[T[imgs[a, y], T[x, inv[y]]], y]
    return H.gtable[b, a] * n + second


def left_combined_holomorph(loop_dot: FiniteLoop, loop_star: FiniteLoop,
                            group: PermutationGroup) -> CombinedHolomorph:
    """Table of ``p [*,.] q = q {[q^-1 p] q}`` computed in ``H(Q, .)``.

    Cross-checked against ``(a b, y phi * [(y^-1) phi * x b] y)`` with
    ``phi = b^-1 a b``.
    """
    common_group(loop_dot, loop_star, group)
    H = build_holomorph(loop_dot, group)
    F, J = H.flat.table, _flat_inverse(H)
    N = H.order
    p = np.arange(N)[:, None]
    q = np.arange(N)[None, :]
    raw = F[q, F[F[J[q], p], q]]
    return _finish(raw, H, _left_closed_form(H))


def _left_closed_form(H: HolomorphLoop) -> np.ndarray:
    n, m = H.base.n, len(H.elements)
    T, inv = H.base.table, H.base.inv()
    imgs = np.array(H.elements).reshape(m, n)
    index = {p: i for i, p in enumerate(H.elements)}
    ginv = np.array([index[invert(p)] for p in H.elements])
    a = np.repeat(np.arange(m), n)[:, None]
    x = np.tile(np.arange(n), m)[:, None]
    b = np.repeat(np.arange(m), n)[None, :]
    y = np.tile(np.arange(n), m)[None, :]
    phi = H.gtable[H.gtable[ginv[b], a], b]
    yphi = imgs[phi, y]
    second = T[yphi, T[T[imgs[phi, inv[y]], imgs[b, x]], y]]
    return H.gtable[a, b] * n + second
