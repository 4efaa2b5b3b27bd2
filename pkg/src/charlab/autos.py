"""Automorphism, homomorphism and isomorphism search for group tables.

All searches run depth-first over images of a greedy generating sequence,
pruning candidates by element order and extending the partial map by closure
with consistency checks.  Output order is deterministic (candidates ascend).
"""

from __future__ import annotations

from .core import FiniteAlgebra
from .errors import TooLarge


def generating_sequence(g: FiniteAlgebra) -> list[int]:
    """Greedy minimal generating sequence: repeatedly adjoin the smallest
    element outside the subgroup generated so far."""
    gens: list[int] = []
    spanned = {0}
    while len(spanned) < g.order:
        nxt = min(a for a in range(g.order) if a not in spanned)
        gens.append(nxt)
        frontier = [0]
        spanned = {0}
        while frontier:
            fresh = []
            for x in frontier:
                for h in gens:
                    for y in (g.add(x, h), g.add(h, x), g.neg(x)):
                        if y not in spanned:
                            spanned.add(y)
                            fresh.append(y)
            frontier = fresh
    return gens


def _extend_map(g: FiniteAlgebra, t_op, gen_images: list[tuple[int, int]]):
    """Total map on <gens> consistent with f(x*gen) = f(x)*f(gen), or None.

    Checking consistency on every (element, generator) product suffices for
    the extension to be a homomorphism on the generated subgroup.
    """
    mapping = {0: 0}
    changed = True
    while changed:
        changed = False
        for x in list(mapping):
            fx = mapping[x]
            for gen, img in gen_images:
                y = g.add(x, gen)
                fy = t_op(fx, img)
                if y in mapping:
                    if mapping[y] != fy:
                        return None
                else:
                    mapping[y] = fy
                    changed = True
    return mapping


def _hom_search(g: FiniteAlgebra, t_size: int, t_op, t_order,
                *, bijective: bool, find_one: bool = False,
                cap: int | None = None) -> list[tuple[int, ...]]:
    """All maps g -> target (given by op and element orders) respecting the
    group structure; ``bijective`` restricts to isomorphisms onto the target."""
    if bijective and g.order != t_size:
        return []
    gens = generating_sequence(g)
    out: list[tuple[int, ...]] = []

    def candidates(gen: int):
        og = g.element_order(gen)
        for h in range(t_size):
            oh = t_order(h)
            if (oh == og) if bijective else (og % oh == 0):
                yield h

    def rec(i: int, images: list[tuple[int, int]]):
        if find_one and out:
            return
        if i == len(gens):
            mapping = _extend_map(g, t_op, images)
            if mapping is None or len(mapping) != g.order:
                return
            if bijective and len(set(mapping.values())) != g.order:
                return
            out.append(tuple(mapping[x] for x in range(g.order)))
            if cap is not None and len(out) > cap:
                raise TooLarge(f"more than {cap} maps found")
            return
        for h in candidates(gens[i]):
            trial = images + [(gens[i], h)]
            if _extend_map(g, t_op, trial) is None:
                continue
            rec(i + 1, trial)

    rec(0, [])
    return out


def automorphisms(g: FiniteAlgebra, cap: int = 50000) -> list[tuple[int, ...]]:
    """All automorphisms of the additive/group structure (and multiplication,
    for ring-like algebras), as mapping tuples sorted lexicographically."""
    def build():
        maps = _hom_search(g, g.order, g.add, g.element_order,
                           bijective=True, cap=cap)
        if not g.is_group:
            # additivity over Z_m is linearity, so multiplicativity on basis
            # pairs settles it everywhere
            basis = [g.basis_element(i) for i in range(g.rank)]
            maps = [f for f in maps
                    if all(f[g.mul(a, b)] == g.mul(f[a], f[b])
                           for a in basis for b in basis)]
        maps.sort()
        return tuple(maps)

    return list(g.cache("automorphisms", build))


def group_homs(b: FiniteAlgebra, target: FiniteAlgebra) -> list[tuple[int, ...]]:
    """All group homomorphisms b -> target (GROUP variety), sorted."""
    maps = _hom_search(b, target.order, target.add, target.element_order,
                       bijective=False)
    maps.sort()
    return maps


class ComposedMaps:
    """The automorphism list of a group viewed as an abstract group, with
    memoised composition and element orders (no full Cayley table)."""

    def __init__(self, maps: list[tuple[int, ...]]):
        self.maps = list(maps)
        self.index = {m: i for i, m in enumerate(self.maps)}
        self._op_memo: dict[tuple[int, int], int] = {}
        self._order_memo: dict[int, int] = {}
        n = len(maps[0]) if maps else 0
        self.identity = self.index[tuple(range(n))]

    def op(self, i: int, j: int) -> int:
        key = (i, j)
        got = self._op_memo.get(key)
        if got is None:
            fi, fj = self.maps[i], self.maps[j]
            got = self.index[tuple(fi[x] for x in fj)]
            self._op_memo[key] = got
        return got

    def order(self, i: int) -> int:
        got = self._order_memo.get(i)
        if got is None:
            x, n = i, 1
            while x != self.identity:
                x = self.op(x, i)
                n += 1
            got = n
            self._order_memo[i] = got
        return got


def homs_into_maps(b: FiniteAlgebra, comp: ComposedMaps) -> list[tuple[int, ...]]:
    """All homomorphisms from the group b into a composed-map group, as
    tuples of map indices, sorted."""
    maps = _hom_search(b, len(comp.maps), comp.op, comp.order, bijective=False)
    maps.sort()
    return maps


def _iso_screen(a: FiniteAlgebra, b: FiniteAlgebra):
    return (a.order, a.is_abelian, a.element_order_profile) == \
           (b.order, b.is_abelian, b.element_order_profile)


def is_isomorphic(a: FiniteAlgebra, b: FiniteAlgebra) -> bool:
    """Group isomorphism test: cheap invariant screen, then image search.

    Ring-like algebras are compared by canonical structure constants in the
    corpus module instead.
    """
    if not (a.is_group and b.is_group):
        raise ValueError("isomorphism search is implemented for groups only")
    if not _iso_screen(a, b):
        return False
    found = _hom_search(a, b.order, b.add, b.element_order,
                        bijective=True, find_one=True)
    return bool(found)
