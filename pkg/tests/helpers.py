"""Independent reference implementations used as test oracles.

Everything here is deliberately naive (powerset scans, literal loops) and
shares no code path with the library functions it checks.
"""

from __future__ import annotations

import itertools

from charlab.core import FiniteAlgebra


def brute_subalgebras(g: FiniteAlgebra) -> set[frozenset[int]]:
    """All subalgebras by powerset filtering; only sane for order <= 12."""
    out = set()
    elems = list(range(g.order))
    ring_like = not g.is_group
    for size in range(1, g.order + 1):
        for combo in itertools.combinations(elems, size):
            s = frozenset(combo)
            if 0 not in s:
                continue
            ok = all(g.neg(a) in s for a in s)
            ok = ok and all(g.add(a, b) in s for a in s for b in s)
            if ok and ring_like:
                ok = all(g.mul(a, b) in s for a in s for b in s)
            if ok:
                out.add(s)
    return out


def brute_normal(g: FiniteAlgebra, elems: frozenset[int]) -> bool:
    if g.is_group:
        return all(g.add(g.add(x, a), g.neg(x)) in elems
                   for x in range(g.order) for a in elems)
    return all(g.mul(x, a) in elems and g.mul(a, x) in elems
               for x in range(g.order) for a in elems)


def brute_group_commutator_subgroup(g: FiniteAlgebra) -> frozenset[int]:
    words = {g.add(g.add(g.add(g.neg(a), g.neg(b)), a), b)
             for a in range(g.order) for b in range(g.order)}
    current = set(words) | {0}
    changed = True
    while changed:
        changed = False
        for a in list(current):
            for b in list(current):
                for c in (g.add(a, b), g.neg(a)):
                    if c not in current:
                        current.add(c)
                        changed = True
    return frozenset(current)


def brute_centre_elements(g: FiniteAlgebra) -> frozenset[int]:
    if g.is_group:
        return frozenset(a for a in range(g.order)
                         if all(g.add(a, b) == g.add(b, a) for b in range(g.order)))
    return frozenset(a for a in range(g.order)
                     if all(g.mul(a, b) == 0 and g.mul(b, a) == 0
                            for b in range(g.order)))


def brute_automorphisms(g: FiniteAlgebra) -> list[tuple[int, ...]]:
    """Every bijection fixing 0 that preserves the operations; order <= 8."""
    out = []
    rest = list(range(1, g.order))
    ring_like = not g.is_group
    for perm in itertools.permutations(rest):
        f = (0,) + perm
        ok = all(f[g.add(a, b)] == g.add(f[a], f[b])
                 for a in range(g.order) for b in range(g.order))
        if ok and ring_like:
            ok = all(f[g.mul(a, b)] == g.mul(f[a], f[b])
                     for a in range(g.order) for b in range(g.order))
        if ok:
            out.append(f)
    return sorted(out)


def first_isomorphism_roundtrip(g: FiniteAlgebra, proj) -> bool:
    """Quotient -> kernel pair -> quotient-by-congruence rebuilds the same
    partition with a compatible table."""
    fibers = {}
    for a in range(g.order):
        fibers.setdefault(proj.mapping[a], set()).add(a)
    # the congruence classes must be the cosets of the kernel
    kernel = fibers[proj.mapping[0]]
    for members in fibers.values():
        rep = min(members)
        coset = {g.add(rep, h) for h in kernel}
        if coset != members:
            return False
    return True
