"""Finite loops stored as Cayley tables.

Elements are the integers ``0..n-1`` and ``0`` is always the identity.
Permutations are plain tuples of images and act on the right, so the
composite ``p * q`` means "apply ``p`` first, then ``q``".
"""
from __future__ import annotations

import hashlib
from enum import Enum
from typing import Callable

import numpy as np

from .errors import InversesNotTwoSided, Malformed, NoIdentity, NotLatin

# Cap on the number of array cells materialised at once by identity sweeps.
_SWEEP_CELLS = 1 << 22


class TranslationKind(Enum):
    LEFT_MULT = "L"          # y -> a*y
    RIGHT_MULT = "R"         # y -> y*a
    LEFT_MULT_INV = "L^-1"   # y -> a\y
    RIGHT_MULT_INV = "R^-1"  # y -> y/a
    RHO_DIV = "rho"          # t -> t\a
    LAMBDA_DIV = "lambda"    # t -> a/t


class FiniteLoop:
    """An immutable, validated loop of order ``n``.

    Build instances with :func:`validate_loop`; the constructor trusts
    its input.
    """

    __slots__ = ("n", "table", "left_div", "right_div", "jlambda", "jrho", "_hash")

    def __init__(self, table: np.ndarray, left_div, right_div, jlambda, jrho):
        self.n = int(table.shape[0])
        self.table = table
        self.left_div = left_div
        self.right_div = right_div
        self.jlambda = jlambda
        self.jrho = jrho
        for arr in (table, left_div, right_div, jlambda, jrho):
            arr.setflags(write=False)
        self._hash = None

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def ldiv(self, a: int, b: int) -> int:
        """``a\\b``: the unique ``c`` with ``a*c == b``."""
        return int(self.left_div[a, b])

    def rdiv(self, a: int, b: int) -> int:
        """``a/b``: the unique ``c`` with ``c*b == a``."""
        return int(self.right_div[a, b])

    @property
    def inverses_coincide(self) -> bool:
        return bool(np.array_equal(self.jlambda, self.jrho))

    def inv(self) -> np.ndarray:
        """Two-sided inverse map; raises if left and right inverses differ."""
        if not self.inverses_coincide:
            raise InversesNotTwoSided("left and right inverses differ")
        return self.jrho

    def digest(self) -> str:
        if self._hash is None:
            h = hashlib.sha256(str(self.n).encode() + b":" + self.table.astype(np.int64).tobytes())
            self._hash = h.hexdigest()[:16]
        return self._hash

    def rows(self) -> list[list[int]]:
        return self.table.tolist()

    def __eq__(self, other):
        return isinstance(other, FiniteLoop) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return f"FiniteLoop(n={self.n}, digest={self.digest()})"


def validate_loop(raw_table) -> FiniteLoop:
    """Check that ``raw_table`` is a normalized loop table and precompute divisions."""
    try:
        t = np.array(raw_table)
    except Exception as exc:  # ragged input and the like
        raise Malformed(f"cannot read table: {exc}") from exc
    if t.dtype == object or t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise Malformed(f"table must be a non-empty square array, got shape {t.shape}")
    if not np.issubdtype(t.dtype, np.integer):
        if np.issubdtype(t.dtype, np.floating) and np.all(t == np.round(t)):
            t = t.astype(np.int64)
        else:
            raise Malformed("table entries must be integers")
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise Malformed(f"table entries must lie in 0..{n - 1}")
    t = np.ascontiguousarray(t, dtype=np.int32 if n < 2**31 else np.int64)

    ident = np.arange(n)
    srt = np.sort(t, axis=1)
    bad_rows = np.flatnonzero(~(srt == ident).all(axis=1))
    if bad_rows.size:
        raise NotLatin(f"row {int(bad_rows[0])} repeats a symbol")
    srt = np.sort(t, axis=0)
    bad_cols = np.flatnonzero(~(srt == ident[:, None]).all(axis=0))
    if bad_cols.size:
        raise NotLatin(f"column {int(bad_cols[0])} repeats a symbol")
    if not (np.array_equal(t[0], ident) and np.array_equal(t[:, 0], ident)):
        raise NoIdentity("row 0 and column 0 must be the identity map")

    # left_div[a, t[a, c]] = c ; right_div[t[c, b], b] = c
    left_div = np.empty_like(t)
    rows = np.repeat(ident, n).reshape(n, n)
    left_div[rows, t] = rows.T
    right_div = np.empty_like(t)
    right_div[t, rows.T] = rows
    jrho = left_div[:, 0].copy()
    jlambda = right_div[0, :].copy()
    return FiniteLoop(t, left_div, right_div, jlambda, jrho)


def from_function(n: int, op: Callable[[int, int], int]) -> FiniteLoop:
    return validate_loop([[op(i, j) for j in range(n)] for i in range(n)])


def divide(loop: FiniteLoop, side: str, a: int, b: int) -> int:
    """``side='left'`` gives ``a\\b``; ``side='right'`` gives ``a/b``."""
    if side == "left":
        return loop.ldiv(a, b)
    if side == "right":
        return loop.rdiv(a, b)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def translation(loop: FiniteLoop, kind: TranslationKind | str, a: int) -> tuple[int, ...]:
    kind = TranslationKind(kind) if not isinstance(kind, TranslationKind) else kind
    if kind is TranslationKind.LEFT_MULT:
        images = loop.table[a, :]
    elif kind is TranslationKind.RIGHT_MULT:
        images = loop.table[:, a]
    elif kind is TranslationKind.LEFT_MULT_INV:
        images = loop.left_div[a, :]
    elif kind is TranslationKind.RIGHT_MULT_INV:
        images = loop.right_div[:, a]
    elif kind is TranslationKind.RHO_DIV:
        images = loop.left_div[:, a]
    else:
        images = loop.right_div[a, :]
    return tuple(int(v) for v in images)


def opposite(loop: FiniteLoop) -> FiniteLoop:
    return validate_loop(loop.table.T.copy())


def relabel(loop: FiniteLoop, perm) -> FiniteLoop:
    """Table of the isomorphic copy in which old element ``i`` is renamed ``perm[i]``."""
    p = np.asarray(perm)
    if p[0] != 0:
        raise ValueError("relabeling must fix the identity")
    pinv = np.argsort(p)
    return validate_loop(p[loop.table[np.ix_(pinv, pinv)]])


# ---------------------------------------------------------------------------
# identity sweeps

def _sweep(n: int, arity: int, check: Callable[..., np.ndarray]) -> tuple | None:
    """Evaluate ``check`` over all ``arity``-tuples, chunked along the first axis.

    ``check`` receives broadcastable index arrays and returns a boolean
    array that is False where the identity fails. Returns the first
    failing tuple or None.
    """
    rest = n ** (arity - 1)
    step = max(1, _SWEEP_CELLS // max(rest, 1))
    for start in range(0, n, step):
        stop = min(n, start + step)
        shape = [1] * arity
        shape[0] = stop - start
        axes = [np.arange(start, stop).reshape(shape)]
        for k in range(1, arity):
            s = [1] * arity
            s[k] = n
            axes.append(np.arange(n).reshape(s))
        ok = np.broadcast_to(check(*axes), tuple(stop - start if k == 0 else n for k in range(arity)))
        if not ok.all():
            bad = np.argwhere(~ok)[0]
            bad[0] += start
            return tuple(int(v) for v in bad)
    return None


def _right_bol(L):
    T = L.table
    return lambda x, y, z: T[T[T[x, y], z], y] == T[x, T[T[y, z], y]]


def _left_bol(L):
    T = L.table
    return lambda x, y, z: T[T[x, T[y, x]], z] == T[x, T[y, T[x, z]]]


def _middle_bol(L):
    T, LD, RD = L.table, L.left_div, L.right_div
    return lambda x, y, z: T[x, LD[T[y, z], x]] == T[RD[x, z], LD[y, x]]


def _associative(L):
    T = L.table
    return lambda x, y, z: T[T[x, y], z] == T[x, T[y, z]]


def _flexible(L):
    T = L.table
    return lambda x, y: T[T[x, y], x] == T[x, T[y, x]]


def _commutative(L):
    T = L.table
    return lambda x, y: T[x, y] == T[y, x]


def _aaip(L):
    # anti-automorphic inverse property: (xy)^-1 = y^-1 x^-1
    T, J = L.table, L.inv()
    return lambda x, y: J[T[x, y]] == T[J[y], J[x]]


def _syrbu(L):
    # (xy/z)(b\xz) = x(b\[(by/z)(b\xz)])
    T, LD, RD = L.table, L.left_div, L.right_div

    def check(x, y, z, b):
        bxz = LD[b, T[x, z]]
        lhs = T[RD[T[x, y], z], bxz]
        rhs = T[x, LD[b, T[RD[T[b, y], z], bxz]]]
        return lhs == rhs

    return check


def _grecu_syrbu(L):
    # (yx)^-1 . [(x^-1 . y^-1)^-1 x] = x
    T, J = L.table, L.inv()
    return lambda x, y: T[J[T[y, x]], T[J[T[J[x], J[y]]], x]] == x


_IDENTITIES = {
    "right_bol": (3, _right_bol),
    "left_bol": (3, _left_bol),
    "middle_bol": (3, _middle_bol),
    "associative": (3, _associative),
    "flexible": (2, _flexible),
    "commutative": (2, _commutative),
    "aaip": (2, _aaip),
    "syrbu_elasticity_condition": (4, _syrbu),
    "grecu_syrbu_flexibility_criterion": (2, _grecu_syrbu),
}

PREDICATES = tuple(_IDENTITIES) + ("power_associative", "inverses_coincide")


def counterexample(loop: FiniteLoop, which: str) -> tuple | None:
    """First tuple violating the defining identity of ``which``, or None."""
    arity, make = _IDENTITIES[which]
    return _sweep(loop.n, arity, make(loop))


def _power_associative(loop: FiniteLoop) -> bool:
    T = loop.table
    for x in range(loop.n):
        sub = {x}
        frontier = [x]
        while frontier:
            new = []
            for a in frontier:
                for b in list(sub):
                    for c in (int(T[a, b]), int(T[b, a])):
                        if c not in sub:
                            sub.add(c)
                            new.append(c)
            frontier = new
        idx = np.array(sorted(sub))
        s = T[np.ix_(idx, idx)]
        # associativity restricted to the submagma generated by x
        if not (T[s[:, :, None], idx[None, None, :]] == T[idx[:, None, None], s[None, :, :]]).all():
            return False
    return True


def predicate(loop: FiniteLoop, which: str) -> bool:
    if which == "inverses_coincide":
        return loop.inverses_coincide
    if which == "power_associative":
        return _power_associative(loop)
    if which not in _IDENTITIES:
        raise ValueError(f"unknown predicate {which!r}")
    return counterexample(loop, which) is None


def all_predicates(loop: FiniteLoop) -> dict[str, bool | None]:
    """Every predicate; ones needing two-sided inverses are None when those fail."""
    out = {}
    for name in PREDICATES:
        try:
            out[name] = predicate(loop, name)
        except InversesNotTwoSided:
            out[name] = None
    return out


def is_loop_table(raw) -> bool:
    try:
        validate_loop(raw)
    except (NotLatin, NoIdentity, Malformed):
        return False
    return True


def direct_product(a: FiniteLoop, b: FiniteLoop) -> FiniteLoop:
    n, m = a.n, b.n
    idx = np.arange(n * m)
    i, j = idx // m, idx % m
    return validate_loop(a.table[i[:, None], i[None, :]] * m + b.table[j[:, None], j[None, :]])

