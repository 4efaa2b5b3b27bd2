"""Subobject lattice machinery: generation, enumeration, meet and join,
normality, quotients, and congruences.

A subobject is an element set closed under the parent's operations; the
inclusion morphism is derived on demand.  All listings are sorted by
(size, element tuple) so downstream reports are reproducible byte for byte.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import FiniteAlgebra, Morphism, check_morphism
from .errors import (
    FreeBasisUnavailable,
    NotNormalError,
    NotSurjectiveError,
    ParentMismatch,
    TooLarge,
)


@dataclass(frozen=True)
class Subobject:
    parent: FiniteAlgebra
    elements: frozenset[int]
    generators: tuple[int, ...] | None = None

    def __post_init__(self):
        if 0 not in self.elements:
            raise ValueError("a subobject always contains 0")

    def __eq__(self, other):
        return (isinstance(other, Subobject) and self.parent is other.parent
                and self.elements == other.elements)

    def __hash__(self):
        return hash((id(self.parent), self.elements))

    def __contains__(self, idx: int) -> bool:
        return idx in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def sorted_elements(self) -> tuple[int, ...]:
        return tuple(sorted(self.elements))

    def key(self) -> tuple:
        return (len(self.elements), self.sorted_elements())

    def is_whole(self) -> bool:
        return len(self.elements) == self.parent.order

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def contains_subobject(self, other: "Subobject") -> bool:
        return other.elements <= self.elements

    def describe(self) -> str:
        return "{" + ", ".join(self.parent.element_repr(a) for a in self.sorted_elements()) + "}"

    def __repr__(self):
        return f"<subobject of order {len(self.elements)} in {self.parent!r}>"


def trivial_subobject(parent: FiniteAlgebra) -> Subobject:
    return Subobject(parent, frozenset({0}), generators=())


def whole_subobject(parent: FiniteAlgebra) -> Subobject:
    return Subobject(parent, frozenset(range(parent.order)))


def _close(parent: FiniteAlgebra, seed) -> frozenset[int]:
    current = set(seed)
    current.add(0)
    frontier = list(current)
    ring_like = not parent.is_group
    while frontier:
        fresh = []
        for a in frontier:
            na = parent.neg(a)
            if na not in current:
                current.add(na)
                fresh.append(na)
        # close binary operations by pairing everything known against the
        # frontier; pairs of older elements were settled in earlier passes
        produced = []
        known = list(current)
        for a in known:
            for b in frontier:
                for c in (parent.add(a, b), parent.add(b, a)):
                    if c not in current:
                        current.add(c)
                        produced.append(c)
                if ring_like:
                    for c in (parent.mul(a, b), parent.mul(b, a)):
                        if c not in current:
                            current.add(c)
                            produced.append(c)
        frontier = fresh + produced
    return frozenset(current)


def generate(parent: FiniteAlgebra, gens) -> Subobject:
    """Smallest subalgebra containing ``gens`` (fixed-point closure)."""
    gens = tuple(gens)
    for g in gens:
        if not 0 <= g < parent.order:
            raise ValueError(f"generator {g} outside the carrier")
    return Subobject(parent, _close(parent, gens), generators=gens)


def is_subalgebra_set(parent: FiniteAlgebra, elems: frozenset[int]) -> bool:
    if 0 not in elems:
        return False
    ring_like = not parent.is_group
    for a in elems:
        if parent.neg(a) not in elems:
            return False
        for b in elems:
            if parent.add(a, b) not in elems:
                return False
            if ring_like and parent.mul(a, b) not in elems:
                return False
    return True


def is_normal(h: Subobject) -> bool:
    """Conjugation closure for groups; the two-sided ideal test otherwise."""
    g = h.parent
    if g.is_group:
        for x in range(g.order):
            nx = g.neg(x)
            for a in h.elements:
                if g.add(g.add(x, a), nx) not in h.elements:
                    return False
        return True
    for x in range(g.order):
        for a in h.elements:
            if g.mul(x, a) not in h.elements or g.mul(a, x) not in h.elements:
                return False
    return True


def meet(h: Subobject, k: Subobject) -> Subobject:
    if h.parent is not k.parent:
        raise ParentMismatch("meet needs a common parent")
    return Subobject(h.parent, h.elements & k.elements)


def join(h: Subobject, k: Subobject) -> Subobject:
    if h.parent is not k.parent:
        raise ParentMismatch("join needs a common parent")
    return generate(h.parent, sorted(h.elements | k.elements))


def enumerate_subobjects(parent: FiniteAlgebra, max_order: int = 256) -> list[Subobject]:
    """Every subalgebra exactly once, sorted by (size, element tuple).

    Breadth-first closure search: grow each known subalgebra by one outside
    element and close; every subalgebra is reachable this way.
    """
    if parent.order > max_order:
        raise TooLarge(f"subobject enumeration capped at order {max_order}")

    def build():
        seen = {frozenset({0})}
        frontier = [frozenset({0})]
        while frontier:
            nxt = []
            for s in frontier:
                for g in range(parent.order):
                    if g in s:
                        continue
                    bigger = _close(parent, s | {g})
                    if bigger not in seen:
                        seen.add(bigger)
                        nxt.append(bigger)
            frontier = nxt
        subs = [Subobject(parent, s) for s in seen]
        subs.sort(key=Subobject.key)
        return tuple(subs)

    return list(parent.cache("subobjects", build))


def normal_subobjects(parent: FiniteAlgebra, max_order: int = 256) -> list[Subobject]:
    def build():
        return tuple(s for s in enumerate_subobjects(parent, max_order) if is_normal(s))
    return list(parent.cache("normal_subobjects", build))


def normal_closure(h: Subobject) -> Subobject:
    """Smallest normal subobject containing h (alternate conjugation/ideal
    closure with subalgebra regeneration until a fixed point)."""
    g = h.parent
    current = set(h.elements)
    while True:
        extra = set()
        if g.is_group:
            for x in range(g.order):
                nx = g.neg(x)
                for a in current:
                    c = g.add(g.add(x, a), nx)
                    if c not in current:
                        extra.add(c)
        else:
            for x in range(g.order):
                for a in current:
                    for c in (g.mul(x, a), g.mul(a, x)):
                        if c not in current:
                            extra.add(c)
        if not extra:
            return Subobject(g, frozenset(current), generators=h.generators)
        current = set(_close(g, current | extra))


# -- quotients ----------------------------------------------------------------

def _cosets(g: FiniteAlgebra, h: Subobject) -> tuple[list[tuple[int, ...]], list[int]]:
    """Additive cosets sorted by least element; returns (cosets, class_of)."""
    class_of = [-1] * g.order
    cosets = []
    for a in range(g.order):
        if class_of[a] >= 0:
            continue
        coset = sorted(g.add(a, x) for x in h.elements)
        for y in coset:
            class_of[y] = len(cosets)
        cosets.append(tuple(coset))
    order = sorted(range(len(cosets)), key=lambda i: cosets[i][0])
    relabel = [0] * len(cosets)
    for new, old in enumerate(order):
        relabel[old] = new
    return [cosets[i] for i in order], [relabel[c] for c in class_of]


def free_module_basis(m: int, elems: list[int], add, order_of) -> list[int]:
    """Greedy free Z_m-basis for a finite module presented by ``add``.

    ``elems`` lists the module's elements with 0 first; picks ascending
    elements of additive order m whose span stays free.  Raises
    FreeBasisUnavailable when the module is not free over Z_m (possible only
    for composite m).
    """
    target = len(elems)
    basis: list[int] = []
    spanned = {elems[0]}
    for cand in elems:
        if len(spanned) == target:
            break
        if cand in spanned or order_of(cand) != m:
            continue
        new_span = set()
        for s in spanned:
            acc = s
            for _ in range(m):
                new_span.add(acc)
                acc = add(acc, cand)
        if len(new_span) == len(spanned) * m:
            basis.append(cand)
            spanned = new_span
    if len(spanned) != target:
        raise FreeBasisUnavailable(
            f"module of order {target} is not free over Z_{m}"
        )
    return basis


def _module_coords(m: int, basis: list[int], add, zero) -> dict[int, tuple[int, ...]]:
    """Coordinates of every element of the span of a free basis."""
    coords = {}
    for combo in itertools.product(range(m), repeat=len(basis)):
        acc = zero
        for c, b in zip(combo, basis):
            for _ in range(c):
                acc = add(acc, b)
        coords.setdefault(acc, combo)
    return coords


def quotient(g: FiniteAlgebra, h: Subobject) -> tuple[FiniteAlgebra, Morphism]:
    """Quotient algebra on cosets with its projection; variety preserved."""
    if h.parent is not g:
        raise ParentMismatch("subobject does not live in the given algebra")
    if not is_normal(h):
        raise NotNormalError("quotients need a normal subobject")
    cosets, class_of = _cosets(g, h)
    reps = [c[0] for c in cosets]
    if g.is_group:
        table = tuple(
            tuple(class_of[g.add(ra, rb)] for rb in reps) for ra in reps
        )
        q = FiniteAlgebra.group(table, name=_quotient_name(g, h))
        proj = Morphism(g, q, tuple(class_of))
        return q, check_morphism(proj)

    m = g.modulus
    q_add = lambda x, y: class_of[g.add(reps[x], reps[y])]

    def q_order(x: int) -> int:
        acc, n = x, 1
        while acc != 0:
            acc = q_add(acc, x)
            n += 1
        return n

    basis = free_module_basis(m, list(range(len(cosets))), q_add, q_order)
    coords = _module_coords(m, basis, q_add, 0)
    rank = len(basis)
    constants = tuple(
        tuple(coords[class_of[g.mul(reps[bi], reps[bj])]] for bj in basis)
        for bi in basis
    )
    labels = tuple(f"q{i}" for i in range(rank))
    q = FiniteAlgebra.ring_like(g.variety, constants, labels=labels,
                                name=_quotient_name(g, h))
    mapping = tuple(q.index(coords[class_of[a]]) for a in range(g.order))
    proj = Morphism(g, q, mapping)
    return q, check_morphism(proj)


def _quotient_name(g: FiniteAlgebra, h: Subobject) -> str:
    base = g.name or "G"
    return f"{base}/{{{len(h.elements)}}}"


# -- congruences ---------------------------------------------------------------

@dataclass(frozen=True)
class Congruence:
    parent: FiniteAlgebra
    pairs: frozenset[tuple[int, int]]

    def classes(self) -> list[tuple[int, ...]]:
        buckets: dict[int, list[int]] = {}
        rep = {}
        for a in range(self.parent.order):
            r = min(b for (x, b) in self.pairs if x == a)
            rep[a] = r
            buckets.setdefault(r, []).append(a)
        return [tuple(sorted(v)) for _, v in sorted(buckets.items())]

    def related(self, a: int, b: int) -> bool:
        return (a, b) in self.pairs


def validate_congruence(r: Congruence) -> Congruence:
    g = r.parent
    pairs = r.pairs
    for a in range(g.order):
        if (a, a) not in pairs:
            raise ValueError(f"not reflexive at {a}")
    for (a, b) in pairs:
        if (b, a) not in pairs:
            raise ValueError(f"not symmetric at {(a, b)}")
    for (a, b) in pairs:
        for (c, d) in pairs:
            if b == c and (a, d) not in pairs:
                raise ValueError(f"not transitive via {(a, b)} and {(c, d)}")
    ring_like = not g.is_group
    for (a, b) in pairs:
        for (c, d) in pairs:
            if (g.add(a, c), g.add(b, d)) not in pairs:
                raise ValueError(f"not compatible with add at {(a, b)}, {(c, d)}")
            if ring_like and (g.mul(a, c), g.mul(b, d)) not in pairs:
                raise ValueError(f"not compatible with mul at {(a, b)}, {(c, d)}")
    return r


def kernel_pair(q: Morphism) -> Congruence:
    """The congruence {(a,b) : q(a) = q(b)} of a surjective morphism."""
    if not q.is_surjective():
        raise NotSurjectiveError("kernel pairs are taken of surjections")
    fibers: dict[int, list[int]] = {}
    for a in range(q.source.order):
        fibers.setdefault(q.mapping[a], []).append(a)
    pairs = frozenset(
        (a, b) for members in fibers.values() for a in members for b in members
    )
    return Congruence(q.source, pairs)


def congruence_class_of_zero(r: Congruence) -> Subobject:
    elems = frozenset(b for (a, b) in r.pairs if a == 0)
    return Subobject(r.parent, elems)


def quotient_by_congruence(g: FiniteAlgebra, r: Congruence) -> tuple[FiniteAlgebra, Morphism]:
    """Quotient by a congruence via its class of zero (they coincide here:
    congruences correspond to normal subobjects in these varieties)."""
    h = congruence_class_of_zero(r)
    q, proj = quotient(g, h)
    for (a, b) in r.pairs:
        if proj.mapping[a] != proj.mapping[b]:
            raise ValueError("congruence does not match its class of zero")
    return q, proj


# -- kernels, images, subalgebras ----------------------------------------------

def kernel_subobject(f: Morphism) -> Subobject:
    return Subobject(f.source,
                     frozenset(a for a in range(f.source.order) if f.mapping[a] == 0))


def image_subobject(f: Morphism) -> Subobject:
    return Subobject(f.target, frozenset(f.mapping))


def sub_algebra(h: Subobject) -> tuple[FiniteAlgebra, Morphism]:
    """Present a subobject as an algebra of its own, with the embedding.

    Cached per (parent, element set): harness rows ask for the same
    subalgebras repeatedly.
    """
    parent = h.parent
    cache = parent.cache("subalgebras", dict)
    key = h.elements
    if key not in cache:
        cache[key] = _build_sub_algebra(h)
    return cache[key]


def _build_sub_algebra(h: Subobject) -> tuple[FiniteAlgebra, Morphism]:
    g = h.parent
    elems = sorted(h.elements)
    if g.is_group:
        local = {a: i for i, a in enumerate(elems)}
        table = tuple(tuple(local[g.add(a, b)] for b in elems) for a in elems)
        sub = FiniteAlgebra.group(table, name=_sub_name(g, h),
                                  labels=tuple(g.element_repr(a) for a in elems))
        embed = Morphism(sub, g, tuple(elems))
        return sub, check_morphism(embed)
    m = g.modulus
    basis = free_module_basis(m, elems, g.add, g.element_order)
    coords = _module_coords(m, basis, g.add, 0)
    rank = len(basis)
    constants = tuple(
        tuple(coords[g.mul(bi, bj)] for bj in basis) for bi in basis
    )
    labels = tuple(g.element_repr(b) for b in basis)
    sub = FiniteAlgebra.ring_like(g.variety, constants, labels=labels,
                                  name=_sub_name(g, h))
    mapping = [0] * sub.order
    for elem, combo in coords.items():
        mapping[sub.index(combo)] = elem
    embed = Morphism(sub, g, tuple(mapping))
    return sub, check_morphism(embed)


def _sub_name(g: FiniteAlgebra, h: Subobject) -> str:
    base = g.name or "G"
    return f"{base}[{len(h.elements)}]"


def subobject_in_subalgebra(h: Subobject, k: Subobject) -> Subobject:
    """View ``h`` (contained in ``k``) as a subobject of the algebra of ``k``."""
    if not k.contains_subobject(h):
        raise ParentMismatch("first subobject must lie inside the second")
    sub, embed = sub_algebra(k)
    back = {embed.mapping[i]: i for i in range(sub.order)}
    return Subobject(sub, frozenset(back[a] for a in h.elements))


def pushforward(f: Morphism, h: Subobject) -> Subobject:
    """Image of a subobject under a morphism out of its parent."""
    if h.parent is not f.source:
        raise ParentMismatch("subobject must live in the morphism source")
    return Subobject(f.target, frozenset(f.mapping[a] for a in h.elements))


def preimage(f: Morphism, h: Subobject) -> Subobject:
    if h.parent is not f.target:
        raise ParentMismatch("subobject must live in the morphism target")
    return Subobject(f.source,
                     frozenset(a for a in range(f.source.order)
                               if f.mapping[a] in h.elements))
