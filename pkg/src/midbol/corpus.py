"""Bundled loops: all groups of order at most 8 and searched order-8 Bol loops."""
from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .perm import closure, compose
from .table import FiniteLoop, direct_product, from_function, validate_loop


def cyclic(n: int) -> FiniteLoop:
    return from_function(n, lambda a, b: (a + b) % n)


def group_from_perms(gens) -> FiniteLoop:
    """Cayley table of the permutation group generated by ``gens``, elements sorted."""
    elems = closure(gens).sorted()
    index = {p: i for i, p in enumerate(elems)}
    return validate_loop([[index[compose(p, q)] for q in elems] for p in elems])


def symmetric3() -> FiniteLoop:
    return group_from_perms([(1, 2, 0), (1, 0, 2)])


def dihedral4() -> FiniteLoop:
    return group_from_perms([(1, 2, 3, 0), (0, 3, 2, 1)])


def quaternion() -> FiniteLoop:
    # units 1, i, j, k with signs; element index = 4 * (sign bit) + unit
    unit_mul = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def op(a, b):
        sa, ua = divmod(a, 4)
        sb, ub = divmod(b, 4)
        s, u = unit_mul[(ua, ub)]
        neg = (sa + sb + (s < 0)) % 2
        return 4 * neg + u

    return from_function(8, op)


@lru_cache(maxsize=None)
def groups() -> dict[str, FiniteLoop]:
    """Every group of order at most 8, one table per isomorphism type."""
    z = {n: cyclic(n) for n in range(1, 9)}
    out = {f"Z{n}": z[n] for n in range(1, 9)}
    out["V4"] = direct_product(z[2], z[2])
    out["S3"] = symmetric3()
    out["Z2xZ4"] = direct_product(z[2], z[4])
    out["Z2^3"] = direct_product(out["V4"], z[2])
    out["D4"] = dihedral4()
    out["Q8"] = quaternion()
    return dict(sorted(out.items(), key=lambda kv: (kv[1].n, kv[0])))


def bundled_bol_loops(kind: str) -> dict[str, FiniteLoop]:
    """Searched nonassociative order-8 loops shipped with the package (``right_bol`` etc.)."""
    from .io import parse_loop

    root = resources.files("midbol") / "data"
    out = {}
    for entry in sorted(root.iterdir(), key=lambda p: p.name):
        if entry.name.startswith(kind + "_") and entry.name.endswith(".loop"):
            out[entry.name[:-5]] = parse_loop(entry.read_text())
    return out


@lru_cache(maxsize=None)
def small_loops(max_order: int = 5) -> dict[str, FiniteLoop]:
    """Every normalized loop table of order ``1..max_order``, named ``L<n>_<index>``."""
    from .search import enumerate_loops

    out = {}
    for n in range(1, max_order + 1):
        for k, loop in enumerate(enumerate_loops(n)):
            out[f"L{n}_{k:03d}"] = loop
    return out


@lru_cache(maxsize=None)
def commutative_loops(n: int = 6) -> dict[str, FiniteLoop]:
    """One commutative loop of order ``n`` per isomorphism class, named ``C<n>_<index>``."""
    from .search import enumerate_loops

    return {f"C{n}_{k}": loop for k, loop in enumerate(enumerate_loops(n, ("commutative",), iso_reduce=True))}


def full_corpus(max_order: int = 5) -> dict[str, FiniteLoop]:
    """Small normalized loops, commutative loops of order 6, groups of order at most 8
    and the bundled Bol loops."""
    out = dict(small_loops(max_order))
    out.update(commutative_loops(6))
    out.update(groups())
    out.update(bundled_bol_loops("right_bol"))
    out.update(bundled_bol_loops("left_bol"))
    return out


# Above this automorphism-group order only the trivial, full and cyclic
# subgroups are used instead of the whole subgroup lattice.
SUBGROUP_SWEEP_LIMIT = 64


def subgroup_choices(loop: FiniteLoop) -> list:
    """Automorphism subgroups swept by the theorem suite, in a fixed order."""
    from .perm import automorphism_group, cyclic_subgroups, subgroups, trivial_group

    aut = automorphism_group(loop)
    if len(aut) <= SUBGROUP_SWEEP_LIMIT:
        return subgroups(aut)
    found = {h.elements: h for h in [trivial_group(loop.n), aut] + cyclic_subgroups(aut)}
    return sorted(found.values(), key=lambda h: (len(h), h.sorted()))
