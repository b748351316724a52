"""Backtracking enumeration of loop tables with identity propagation.

Cells are filled row-major with symbols tried in ascending order. Every
instance ``(x, y, z, ...)`` of a requested identity is watched: when an
assignment could let one of its sides progress the instance is
re-evaluated on the partial table. A known side whose partner is stuck
only at its outermost operation forces that cell, and two known sides
that differ kill the branch.
"""
from __future__ import annotations

import itertools
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import factorial
from typing import Iterator

import numpy as np

from .errors import BudgetExceeded, NoneFound
from .table import FiniteLoop, predicate, validate_loop

log = logging.getLogger(__name__)

# term grammar: an int is a variable slot; (op, left, right) with op in "*", "\\", "/"
_M = lambda a, b: ("*", a, b)   # noqa: E731
_LD = lambda a, b: ("\\", a, b)  # noqa: E731
_RD = lambda a, b: ("/", a, b)   # noqa: E731
X, Y, Z, B = 0, 1, 2, 3

IDENTITIES = {
    "right_bol": (3, _M(_M(_M(X, Y), Z), Y), _M(X, _M(_M(Y, Z), Y))),
    "left_bol": (3, _M(_M(X, _M(Y, X)), Z), _M(X, _M(Y, _M(X, Z)))),
    "middle_bol": (3, _M(X, _LD(_M(Y, Z), X)), _M(_RD(X, Z), _LD(Y, X))),
    "flexible": (2, _M(_M(X, Y), X), _M(X, _M(Y, X))),
    "commutative": (2, _M(X, Y), _M(Y, X)),
    "associative": (3, _M(_M(X, Y), Z), _M(X, _M(Y, Z))),
    "syrbu_elasticity_condition": (
        4,
        _M(_RD(_M(X, Y), Z), _LD(B, _M(X, Z))),
        _M(X, _LD(B, _M(_RD(_M(B, Y), Z), _LD(B, _M(X, Z))))),
    ),
}

CONSTRAINTS = tuple(IDENTITIES) + ("nonassociative", "nonflexible", "noncommutative")
_NEGATED = {"nonassociative": "associative", "nonflexible": "flexible",
            "noncommutative": "commutative"}


@dataclass
class SearchSpec:
    order: int
    constraints: tuple[str, ...] = ()
    limit: int | None = None
    budget_nodes: int | None = None
    timeout_secs: float | None = None
    iso_reduce: bool = False

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be at least 1")
        if self.limit is not None and self.limit < 1:
            raise ValueError("limit must be at least 1")
        self.constraints = tuple(sorted(set(self.constraints)))
        for c in self.constraints:
            if c not in CONSTRAINTS:
                raise ValueError(f"unknown constraint {c!r}; choose from {', '.join(CONSTRAINTS)}")


@dataclass
class SearchResult:
    loops: list[FiniteLoop]
    nodes: int
    complete: bool
    elapsed: float = 0.0
    spec: SearchSpec | None = field(default=None, repr=False)


# ---------------------------------------------------------------------------
# code generation for one side of an identity

def _compile_side(term, n: int, name: str) -> str:
    """Source of ``name(env) -> (value, key, op, p, q)``.

    ``value >= 0`` when the side evaluates on the partial table. Otherwise
    ``key`` is a watch key the side is stuck on, and when the stuck
    operation is the outermost one with both operands known, ``op`` is
    0/1/2 for ``*``, ``\\``, ``/`` and ``p, q`` are its operands.
    """
    nn = n * n
    lines = [f"def {name}(env):"]
    counter = itertools.count()

    def emit(t, outer):
        if isinstance(t, int):
            return f"env[{t}]"
        op, a, b = t
        ea = emit(a, False)
        eb = emit(b, False)
        k = next(counter)
        v = f"t{k}"
        if op == "*":
            lines.append(f"    {v} = cell[{ea}*{n}+{eb}]")
            key, code = f"{ea}*{n}+{eb}", 0
        elif op == "\\":
            lines.append(f"    {v} = rowpos[{ea}*{n}+{eb}]")
            key, code = f"{nn}+{ea}*{n}+{eb}", 1
        else:
            lines.append(f"    {v} = colpos[{eb}*{n}+{ea}]")
            key, code = f"{2 * nn}+{eb}*{n}+{ea}", 2
        if outer:
            lines.append(f"    if {v} < 0: return (-1, {key}, {code}, {ea}, {eb})")
        else:
            lines.append(f"    if {v} < 0: return (-1, {key}, -1, 0, 0)")
        return v

    if isinstance(term, int):
        lines.append(f"    return (env[{term}], -1, -1, 0, 0)")
    else:
        v = emit(term, True)
        lines.append(f"    return ({v}, -1, -1, 0, 0)")
    return "\n".join(lines)


class _Kernel:
    """Mutable partial table plus watch lists; one instance per search."""

    def __init__(self, n: int, constraints: tuple[str, ...]):
        self.n = n
        nn = n * n
        self.cell = [-1] * nn
        self.rowpos = [-1] * nn   # rowpos[i*n+v] = column of v in row i
        self.colpos = [-1] * nn   # colpos[j*n+v] = row of v in column j
        self.rowmask = [0] * n
        self.colmask = [0] * n
        self.full = (1 << n) - 1
        self.trail: list[int] = []
        self.watch: list[set] = [set() for _ in range(3 * nn)]
        self.instances: list[tuple] = []  # (lhs_fn, rhs_fn, env)
        ns = {"cell": self.cell, "rowpos": self.rowpos, "colpos": self.colpos}
        for name in constraints:
            if name not in IDENTITIES:
                continue
            arity, lhs, rhs = IDENTITIES[name]
            exec(_compile_side(lhs, n, "lhs_fn"), ns)
            exec(_compile_side(rhs, n, "rhs_fn"), ns)
            lf, rf = ns["lhs_fn"], ns["rhs_fn"]
            for env in itertools.product(range(n), repeat=arity):
                self.instances.append((lf, rf, env))
        self.queue: list[int] = []

    # -- assignment -------------------------------------------------------
    def assign(self, i: int, j: int, v: int) -> bool:
        n = self.n
        c = i * n + j
        cur = self.cell[c]
        if cur >= 0:
            return cur == v
        if self.rowpos[i * n + v] >= 0 or self.colpos[j * n + v] >= 0:
            return False
        self.cell[c] = v
        self.rowpos[i * n + v] = j
        self.colpos[j * n + v] = i
        self.rowmask[i] |= 1 << v
        self.colmask[j] |= 1 << v
        self.trail.append(c)
        nn = n * n
        w = self.watch
        self.queue.extend(w[c])
        self.queue.extend(w[nn + i * n + v])
        self.queue.extend(w[2 * nn + j * n + v])
        return True

    def undo(self, mark: int):
        n = self.n
        cell, trail = self.cell, self.trail
        while len(trail) > mark:
            c = trail.pop()
            i, j = divmod(c, n)
            v = cell[c]
            cell[c] = -1
            self.rowpos[i * n + v] = -1
            self.colpos[j * n + v] = -1
            self.rowmask[i] &= ~(1 << v)
            self.colmask[j] &= ~(1 << v)

    def _force(self, op, p, q, v) -> bool:
        if op == 0:
            return self.assign(p, q, v)
        if op == 1:   # p \ q = v  <=>  p*v = q
            return self.assign(p, v, q)
        return self.assign(v, q, p)  # p / q = v  <=>  v*q = p

    def check_instance(self, k: int) -> bool:
        lf, rf, env = self.instances[k]
        lv, lk, lop, lp, lq = lf(env)
        rv, rk, rop, rp, rq = rf(env)
        if lv >= 0 and rv >= 0:
            return lv == rv
        w = self.watch
        if lv >= 0:
            if rop >= 0:
                return self._force(rop, rp, rq, lv)
            w[rk].add(k)
            return True
        if rv >= 0:
            if lop >= 0:
                return self._force(lop, lp, lq, rv)
            w[lk].add(k)
            return True
        w[lk].add(k)
        w[rk].add(k)
        return True

    def propagate(self) -> bool:
        while True:
            q = self.queue
            while q:
                if not self.check_instance(q.pop()):
                    q.clear()
                    return False
            ok = self._latin_singles()
            if ok is None:
                return True
            if not ok:
                self.queue.clear()
                return False

    def _latin_singles(self):
        """False on a dead cell/symbol, True after forcing something, None at fixpoint."""
        n, full, cell = self.n, self.full, self.cell
        rowmask, colmask = self.rowmask, self.colmask
        for i in range(1, n):
            rm = rowmask[i]
            if rm == full:
                continue
            missing_cols = {}
            for j in range(1, n):
                if cell[i * n + j] >= 0:
                    continue
                dom = full & ~(rm | colmask[j])
                if dom == 0:
                    return False
                if dom & (dom - 1) == 0:
                    return self.assign(i, j, dom.bit_length() - 1) or False
                missing_cols[j] = dom
            free = full & ~rm
            while free:
                bit = free & -free
                free ^= bit
                places = [j for j, d in missing_cols.items() if d & bit]
                if not places:
                    return False
                if len(places) == 1:
                    return self.assign(i, places[0], bit.bit_length() - 1) or False
        for j in range(1, n):
            cm = colmask[j]
            if cm == full:
                continue
            free = full & ~cm
            while free:
                bit = free & -free
                free ^= bit
                places = [i for i in range(1, n)
                          if cell[i * n + j] < 0 and not (rowmask[i] & bit)]
                if not places:
                    return False
                if len(places) == 1:
                    return self.assign(places[0], j, bit.bit_length() - 1) or False
        return None

    def start(self) -> bool:
        n = self.n
        for k in range(n):
            if not (self.assign(0, k, k) and self.assign(k, 0, k)):
                return False
        self.queue = list(range(len(self.instances)))
        return self.propagate()

    def next_cell(self) -> int:
        try:
            return self.cell.index(-1)
        except ValueError:
            return -1

    def domain(self, c: int) -> list[int]:
        i, j = divmod(c, self.n)
        dom = self.full & ~(self.rowmask[i] | self.colmask[j])
        return [v for v in range(self.n) if dom >> v & 1]


class _Stop(Exception):
    pass


def _leaf_ok(loop: FiniteLoop, constraints) -> bool:
    for c in constraints:
        if c in _NEGATED:
            if predicate(loop, _NEGATED[c]):
                return False
        elif not predicate(loop, c):
            return False
    return True


class _IsoFilter:
    """Deduplicate loops up to isomorphism; cheap invariant first, canonical form second."""

    def __init__(self):
        self.buckets: dict[tuple, set[bytes]] = {}

    def is_new(self, loop: FiniteLoop) -> bool:
        inv = invariant(loop)
        bucket = self.buckets.setdefault(inv, set())
        key = canonical_form(loop).table.tobytes()
        if key in bucket:
            return False
        bucket.add(key)
        return True


def _run(spec: SearchSpec, prefix=(), deadline=None, on_loop=None) -> SearchResult:
    t0 = time.monotonic()
    n = spec.order
    kern = _Kernel(n, spec.constraints)
    found: list[FiniteLoop] = []
    iso = _IsoFilter() if spec.iso_reduce else None
    nodes = 0
    complete = True

    def leaf():
        loop = validate_loop(np.array(kern.cell).reshape(n, n))
        if not _leaf_ok(loop, spec.constraints):
            return
        if iso is not None and not iso.is_new(loop):
            return
        found.append(loop)
        if on_loop is not None:
            on_loop(loop)
        if spec.limit is not None and len(found) >= spec.limit:
            raise _Stop

    def rec():
        nonlocal nodes
        c = kern.next_cell()
        if c < 0:
            leaf()
            return
        i, j = divmod(c, n)
        for v in kern.domain(c):
            nodes += 1
            if spec.budget_nodes is not None and nodes > spec.budget_nodes:
                raise BudgetExceeded("node budget exhausted")
            if deadline is not None and nodes % 256 == 0 and time.monotonic() > deadline:
                raise BudgetExceeded("timeout")
            mark = len(kern.trail)
            if kern.assign(i, j, v) and kern.propagate():
                rec()
            kern.queue.clear()
            kern.undo(mark)

    try:
        if kern.start() and all(kern.assign(i, j, v) and kern.propagate() for i, j, v in prefix):
            rec()
    except _Stop:
        pass
    except BudgetExceeded:
        complete = False
    return SearchResult(found, nodes, complete, time.monotonic() - t0, spec)


def _split(spec: SearchSpec, depth: int) -> list[tuple]:
    """Decision prefixes of length ``depth`` (shorter where the tree ends early)."""
    n = spec.order
    kern = _Kernel(n, spec.constraints)
    out = []
    if not kern.start():
        return out
    path = []

    def rec(d):
        c = kern.next_cell()
        if d == depth or c < 0:
            out.append(tuple(path))
            return
        i, j = divmod(c, n)
        for v in kern.domain(c):
            mark = len(kern.trail)
            if kern.assign(i, j, v) and kern.propagate():
                path.append((i, j, v))
                rec(d + 1)
                path.pop()
            kern.queue.clear()
            kern.undo(mark)

    rec(0)
    return out


def _job(args):
    spec, prefix, deadline = args
    return _run(spec, prefix, deadline)


def search(spec: SearchSpec, jobs: int = 1, split_depth: int = 2, seed: int | None = None) -> SearchResult:
    """Run a search; ``complete`` is False when a budget or timeout cut it short.

    With ``jobs > 1`` the tree is cut into decision prefixes that run in
    worker processes; node budgets then apply per prefix. Results are
    merged in prefix order, which is the sequential visiting order, so
    both modes return the same loops. ``seed`` only shuffles the order in
    which prefixes are submitted.
    """
    t0 = time.monotonic()
    deadline = None if spec.timeout_secs is None else t0 + spec.timeout_secs
    if jobs <= 1:
        res = _run(spec, (), deadline)
        res.elapsed = time.monotonic() - t0
        return res
    prefixes = _split(spec, split_depth)
    job_spec = SearchSpec(spec.order, spec.constraints, None if spec.iso_reduce else spec.limit,
                          spec.budget_nodes, spec.timeout_secs, spec.iso_reduce)
    order = list(range(len(prefixes)))
    if seed is not None:
        random.Random(seed).shuffle(order)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = {k: pool.submit(_job, (job_spec, prefixes[k], deadline)) for k in order}
        parts = [futures[k].result() for k in range(len(prefixes))]
    loops, nodes, complete = [], 0, True
    iso = _IsoFilter() if spec.iso_reduce else None
    for part in parts:
        nodes += part.nodes
        complete &= part.complete
        for loop in part.loops:
            if iso is not None and not iso.is_new(loop):
                continue
            loops.append(loop)
    if spec.limit is not None:
        loops = loops[: spec.limit]
    return SearchResult(loops, nodes, complete, time.monotonic() - t0, spec)


def enumerate_loops(n: int, constraints=(), *, iso_reduce: bool = False, limit: int | None = None,
                    budget_nodes: int | None = None, timeout_secs: float | None = None) -> Iterator[FiniteLoop]:
    """Yield each normalized loop of order ``n`` meeting ``constraints`` once.

    With ``iso_reduce`` one representative per isomorphism class is
    yielded. Raises :class:`BudgetExceeded` after the partial output when
    a budget runs out.
    """
    spec = SearchSpec(n, tuple(constraints), limit, budget_nodes, timeout_secs, iso_reduce)
    res = search(spec)
    yield from res.loops
    if not res.complete:
        raise BudgetExceeded(f"search stopped after {res.nodes} nodes", res.loops)


def find_bol_loops(n: int = 8, kind: str = "right_bol", extra=(), *, limit: int | None = 1,
                   budget_nodes: int | None = 10**8, timeout_secs: float | None = None,
                   iso_reduce: bool = True, jobs: int = 1) -> list[FiniteLoop]:
    if kind not in ("right_bol", "left_bol", "middle_bol"):
        raise ValueError(f"kind must be a Bol variety, not {kind!r}")
    spec = SearchSpec(n, (kind, "nonassociative") + tuple(extra), limit, budget_nodes,
                      timeout_secs, iso_reduce)
    res = search(spec, jobs=jobs)
    if not res.loops:
        if res.complete:
            raise NoneFound(f"no nonassociative {kind} loop of order {n}")
        raise BudgetExceeded(f"nothing found within {res.nodes} nodes")
    if not res.complete:
        log.warning("budget exhausted after %d nodes; returning %d loops", res.nodes, len(res.loops))
    return res.loops


# ---------------------------------------------------------------------------
# isomorphism handling

_PERM_CACHE: dict[int, np.ndarray] = {}
_CANON_MAX = 9


def _relabelings(n: int) -> np.ndarray:
    if n not in _PERM_CACHE:
        rest = np.array(list(itertools.permutations(range(1, n))), dtype=np.int16).reshape(-1, n - 1)
        _PERM_CACHE[n] = np.hstack([np.zeros((rest.shape[0], 1), dtype=np.int16), rest])
    return _PERM_CACHE[n]


def canonical_form(loop: FiniteLoop) -> FiniteLoop:
    """Lexicographically smallest table over relabelings fixing ``0``."""
    n = loop.n
    if n <= 2:
        return loop
    if n > _CANON_MAX:
        raise ValueError(f"canonical_form supports orders up to {_CANON_MAX}")
    perms = _relabelings(n)          # perms[k] = old element for new label (inverse map)
    T = loop.table.astype(np.int16)
    best = None
    chunk = max(1, 200000 // (n * n))
    for s in range(0, perms.shape[0], chunk):
        inv = perms[s:s + chunk]               # new -> old
        fwd = np.argsort(inv, axis=1)          # old -> new
        k = inv.shape[0]
        rows = np.arange(k)[:, None, None]
        old = T[inv[:, :, None], inv[:, None, :]]
        cand = fwd[rows, old].reshape(k, n * n)
        if best is not None:
            cand = np.vstack([best[None, :], cand])
        order = np.lexsort(cand.T[::-1])
        best = cand[order[0]]
    return validate_loop(best.reshape(n, n))


def invariant(loop: FiniteLoop) -> tuple:
    """Multiset of cycle types of the left and right translations."""
    def cycle_type(p):
        seen, out = set(), []
        for s in range(len(p)):
            if s in seen:
                continue
            k, c = s, 0
            while k not in seen:
                seen.add(k)
                k = int(p[k])
                c += 1
            out.append(c)
        return tuple(sorted(out))

    T = loop.table
    rows = sorted(cycle_type(T[x]) for x in range(loop.n))
    cols = sorted(cycle_type(T[:, x]) for x in range(loop.n))
    return (tuple(rows), tuple(cols))


def is_isomorphic(a: FiniteLoop, b: FiniteLoop) -> bool:
    return a.n == b.n and invariant(a) == invariant(b) and canonical_form(a) == canonical_form(b)


def count_relabelings(n: int) -> int:
    return factorial(n - 1)
