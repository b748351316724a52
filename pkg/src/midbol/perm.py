"""Permutations, permutation groups and the groups attached to a loop.

A permutation is a tuple ``p`` with ``p[i]`` the image of ``i``.
Composition follows right actions: ``compose(p, q)`` sends ``x`` to
``q[p[x]]``.
"""
from __future__ import annotations

from math import factorial
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded, DegreeMismatch, LimitExceeded
from .table import FiniteLoop, TranslationKind, translation

Permutation = tuple


def identity(n: int) -> Permutation:
    return tuple(range(n))


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def compose(p: Permutation, q: Permutation) -> Permutation:
    if len(p) != len(q):
        raise DegreeMismatch(f"degrees {len(p)} and {len(q)} differ")
    return tuple(q[i] for i in p)


def compose_all(*perms: Permutation) -> Permutation:
    out = perms[0]
    for q in perms[1:]:
        out = compose(out, q)
    return out


def invert(p: Permutation) -> Permutation:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def order_of(p: Permutation) -> int:
    k, q, e = 1, p, identity(len(p))
    while q != e:
        q = compose(q, p)
        k += 1
    return k


class PermutationGroup:
    """A finite group of permutations, stored by its full element set."""

    def __init__(self, elements: Iterable[Permutation], generators: Iterable[Permutation] = (), *,
                 degree: int | None = None, check: bool = True):
        elems = frozenset(tuple(int(v) for v in p) for p in elements)
        if degree is None:
            if not elems:
                raise ValueError("cannot infer the degree of an empty group")
            degree = len(next(iter(elems)))
        self.degree = degree
        self.elements = elems
        self.generators = tuple(tuple(int(v) for v in p) for p in generators)
        if check:
            self._check()

    def _check(self):
        e = identity(self.degree)
        if e not in self.elements:
            raise ValueError("group does not contain the identity")
        for p in self.elements:
            if len(p) != self.degree:
                raise DegreeMismatch("mixed degrees in group")
        gens = self.generators or tuple(self.elements)
        for p in self.elements:
            for g in gens:
                if compose(p, g) not in self.elements:
                    raise ValueError("element set is not closed under composition")

    def __len__(self):
        return len(self.elements)

    def __contains__(self, p):
        return tuple(p) in self.elements

    def __iter__(self):
        return iter(self.sorted())

    def __eq__(self, other):
        return isinstance(other, PermutationGroup) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def sorted(self) -> list[Permutation]:
        """Elements in lexicographic order; the identity always comes first."""
        return sorted(self.elements)

    def __repr__(self):
        return f"PermutationGroup(degree={self.degree}, order={len(self)})"


def closure(generators: Iterable[Permutation], cap: int | None = None, *,
            degree: int | None = None) -> PermutationGroup:
    gens = [tuple(int(v) for v in g) for g in generators]
    if degree is None:
        if not gens:
            raise ValueError("need a generator or an explicit degree")
        degree = len(gens[0])
    for g in gens:
        if len(g) != degree:
            raise DegreeMismatch(f"generator of degree {len(g)} in a degree-{degree} closure")
    e = identity(degree)
    elements = {e}
    frontier = [e]
    gens = sorted(set(gens) - {e})
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                q = tuple(g[i] for i in p)
                if q not in elements:
                    elements.add(q)
                    new.append(q)
                    if cap is not None and len(elements) > cap:
                        raise CapExceeded(f"closure exceeds {cap} elements")
        frontier = new
    return PermutationGroup(elements, gens, degree=degree, check=False)


def trivial_group(n: int) -> PermutationGroup:
    return PermutationGroup([identity(n)], degree=n, check=False)


def is_abelian(group: PermutationGroup) -> bool:
    gens = group.generators or tuple(group.elements)
    return all(compose(a, b) == compose(b, a) for a in gens for b in gens)


def is_subgroup(a: PermutationGroup, b: PermutationGroup) -> bool:
    if a.degree != b.degree:
        raise DegreeMismatch(f"degrees {a.degree} and {b.degree} differ")
    return a.elements <= b.elements


def intersection(a: PermutationGroup, b: PermutationGroup) -> PermutationGroup:
    if a.degree != b.degree:
        raise DegreeMismatch(f"degrees {a.degree} and {b.degree} differ")
    return PermutationGroup(a.elements & b.elements, degree=a.degree, check=False)


def cyclic_subgroups(group: PermutationGroup) -> list[PermutationGroup]:
    seen = {}
    for g in group.sorted():
        h = closure([g], degree=group.degree)
        seen.setdefault(h.elements, h)
    return sorted(seen.values(), key=_group_key)


def _group_key(h: PermutationGroup):
    return (len(h), h.sorted())


def subgroups(group: PermutationGroup, limit: int | None = None) -> list[PermutationGroup]:
    """All subgroups, grown from cyclic subgroups by joining one element at a time.

    Every subgroup is a join of cyclic subgroups, so the fixpoint of
    "join with one more element" starting from the cyclic ones is exact.
    """
    order = len(group)
    found = {h.elements: h for h in cyclic_subgroups(group)}
    frontier = list(found.values())
    elems = group.sorted()
    while frontier:
        new = []
        for h in frontier:
            for g in elems:
                if g in h.elements:
                    continue
                j = closure(list(h.generators or h.elements) + [g], degree=group.degree)
                if order % len(j):
                    raise ValueError("closure left the ambient group")
                if j.elements not in found:
                    found[j.elements] = j
                    new.append(j)
                    if limit is not None and len(found) > limit:
                        raise LimitExceeded(f"more than {limit} subgroups")
        frontier = new
    return sorted(found.values(), key=_group_key)


def multiplication_table(group: PermutationGroup) -> tuple[list[Permutation], np.ndarray]:
    """Sorted elements and the index table of ``compose`` on them."""
    elems = group.sorted()
    index = {p: i for i, p in enumerate(elems)}
    m = len(elems)
    tab = np.empty((m, m), dtype=np.int64)
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            tab[i, j] = index[tuple(q[k] for k in p)]
    return elems, tab


# ---------------------------------------------------------------------------
# groups attached to a loop

def isomorphisms(src: np.ndarray, dst: np.ndarray, first: int = 0, limit: int | None = None) -> list[Permutation]:
    """All bijections ``f`` with ``f(a*b) = f(a) o f(b)`` from table ``src`` to table ``dst``.

    ``first`` is the forced image of the identity ``0`` of ``src``.
    Images are chosen element by element and every new assignment is
    closed under products with the already-assigned ones, so a branch
    dies as soon as two forced values collide.
    """
    n = src.shape[0]
    S = src.tolist()
    D = dst.tolist()
    results = []
    f = [-1] * n
    used = [False] * n
    assigned = []

    def assign(x, a):
        mark = len(assigned)
        stack = [(x, a)]
        while stack:
            x, a = stack.pop()
            if f[x] == a:
                continue
            if f[x] != -1 or used[a]:
                undo(mark)
                return False
            f[x] = a
            used[a] = True
            assigned.append(x)
            for y in assigned:
                b = f[y]
                stack.append((S[x][y], D[a][b]))
                stack.append((S[y][x], D[b][a]))
        return True

    def undo(mark):
        while len(assigned) > mark:
            x = assigned.pop()
            used[f[x]] = False
            f[x] = -1

    def rec():
        if limit is not None and len(results) >= limit:
            return
        try:
            x = f.index(-1)
        except ValueError:
            results.append(tuple(f))
            return
        for a in range(n):
            if used[a]:
                continue
            mark = len(assigned)
            if assign(x, a):
                rec()
                undo(mark)

    if assign(0, first):
        rec()
    return results


def automorphism_group(loop: FiniteLoop) -> PermutationGroup:
    auts = isomorphisms(loop.table, loop.table, 0)
    return PermutationGroup(auts, degree=loop.n, check=False)


def is_automorphism(loop: FiniteLoop, p: Permutation) -> bool:
    a = np.asarray(p)
    T = loop.table
    return bool(a[0] == 0 and (a[T] == T[np.ix_(a, a)]).all())


def mult_groups(loop: FiniteLoop, cap: int | None = None) -> tuple[PermutationGroup, PermutationGroup]:
    """Right multiplication group and full multiplication group."""
    n = loop.n
    cap = factorial(n) if cap is None else cap
    rights = [translation(loop, TranslationKind.RIGHT_MULT, a) for a in range(n)]
    lefts = [translation(loop, TranslationKind.LEFT_MULT, a) for a in range(n)]
    m_rho = closure(rights, cap, degree=n)
    m_all = closure(rights + lefts, cap, degree=n)
    return m_rho, m_all


class MiddleRegular:
    """Middle regular maps ``U`` with their adjoints ``U'``: ``(U, U'^-1, I)`` is an autotopism."""

    def __init__(self, pairs: list[tuple[Permutation, Permutation]], degree: int):
        self.pairs = pairs
        self.phi = PermutationGroup([u for u, _ in pairs], degree=degree, check=False)
        self.psi = PermutationGroup([v for _, v in pairs], degree=degree, check=False)

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def has_pair(self, u: Permutation, adjoint: Permutation) -> bool:
        return (tuple(u), tuple(adjoint)) in set(self.pairs)


def middle_regular_maps(loop: FiniteLoop) -> MiddleRegular:
    """Enumerate all pairs ``(U, U')`` with ``xU * y U'^-1 = x*y``.

    Putting ``y = e`` forces ``U = R_b^-1`` with ``b = e U'^-1``, and
    ``x = e`` then forces ``U'^-1 = L_{e/b}^-1``, so only ``n``
    candidates need the full check.
    """
    n = loop.n
    T = loop.table
    pairs = []
    for b in range(n):
        u = loop.right_div[:, b]
        a = loop.rdiv(0, b)
        v = loop.left_div[a, :]
        if (T[u[:, None], v[None, :]] == T).all():
            u_t = tuple(int(k) for k in u)
            pairs.append((u_t, invert(tuple(int(k) for k in v))))
    pairs.sort()
    return MiddleRegular(pairs, n)
