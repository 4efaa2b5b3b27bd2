"""Built-in instance corpora.

Groups up to order 16 are produced constructively (cyclic and abelian
products, dihedral and dicyclic families, a central product, and a sweep of
semidirect products of smaller corpus members over every enumerated action)
and deduplicated by explicit isomorphism search.  The per-order counts are
pinned against the classical census in the tests.

Ring-like algebras of bounded rank are enumerated through their structure
constants, filtered by the variety laws, and deduplicated by the
lexicographically least basis-change transform under GL_rank(Z_m).
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from . import linalg
from .actions import enumerate_actions, semidirect_product
from .autos import is_isomorphic
from .core import FiniteAlgebra, Variety, VarietyTag, validate_algebra
from .errors import TooLarge
from .subobjects import Subobject, quotient


# -- group constructors ----------------------------------------------------------

def cyclic(n: int, name: str | None = None) -> FiniteAlgebra:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return validate_algebra(FiniteAlgebra.group(table, name=name or f"Z{n}"))


def direct_product(a: FiniteAlgebra, b: FiniteAlgebra,
                   name: str | None = None) -> FiniteAlgebra:
    na, nb = a.order, b.order
    table = [[0] * (na * nb) for _ in range(na * nb)]
    for (x1, y1) in itertools.product(range(na), range(nb)):
        for (x2, y2) in itertools.product(range(na), range(nb)):
            table[x1 * nb + y1][x2 * nb + y2] = a.add(x1, x2) * nb + b.add(y1, y2)
    label = name or f"{a.name or '?'}x{b.name or '?'}"
    return validate_algebra(FiniteAlgebra.group(table, name=label))


def abelian(factors: list[int], name: str | None = None) -> FiniteAlgebra:
    if not factors:
        return cyclic(1, name=name)
    g = cyclic(factors[0])
    for f in factors[1:]:
        g = direct_product(g, cyclic(f))
    g.name = name or "x".join(f"Z{f}" for f in factors)
    return g


def dihedral(n: int) -> FiniteAlgebra:
    """Symmetries of the regular n-gon, order 2n (n >= 3)."""
    def idx(i, j):
        return j * n + i

    table = [[0] * (2 * n) for _ in range(2 * n)]
    for i1, j1, i2, j2 in itertools.product(range(n), range(2), range(n), range(2)):
        if j1 == 0:
            table[idx(i1, j1)][idx(i2, j2)] = idx((i1 + i2) % n, j2)
        else:
            table[idx(i1, j1)][idx(i2, j2)] = idx((i1 - i2) % n, 1 - j2)
    return validate_algebra(FiniteAlgebra.group(table, name=f"Dih{2 * n}"))


def dicyclic(n: int) -> FiniteAlgebra:
    """Dicyclic group of order 4n: a^{2n}=1, b^2=a^n, b a b^{-1} = a^{-1}."""
    two_n = 2 * n

    def idx(i, j):
        return j * two_n + i

    table = [[0] * (4 * n) for _ in range(4 * n)]
    for i1, j1, i2, j2 in itertools.product(range(two_n), range(2), range(two_n), range(2)):
        if j1 == 0:
            i, j = i1 + i2, j2
        elif j2 == 0:
            i, j = i1 - i2, 1
        else:
            i, j = i1 - i2 + n, 0
        table[idx(i1, j1)][idx(i2, j2)] = idx(i % two_n, j % 2)
    name = f"Q{4 * n}" if (n & (n - 1)) == 0 else f"Dic{4 * n}"
    return validate_algebra(FiniteAlgebra.group(table, name=name))


def central_product_d4_z4() -> FiniteAlgebra:
    """(Dih8 x Z4) / <(z, 2)> where z is the central involution: the
    order-16 central product."""
    d4 = dihedral(4)
    z4 = cyclic(4)
    prod = direct_product(d4, z4, name="Dih8xZ4")
    centre_inv = next(
        a for a in range(1, d4.order)
        if d4.element_order(a) == 2
        and all(d4.add(a, x) == d4.add(x, a) for x in range(d4.order))
    )
    diag = centre_inv * 4 + 2
    h = Subobject(prod, frozenset({0, diag}))
    q, _ = quotient(prod, h)
    q.name = "Dih8*Z4"
    return validate_algebra(q)


def symmetric3() -> FiniteAlgebra:
    return dihedral(3)


# -- group corpus ------------------------------------------------------------------

GROUP_CENSUS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2,
                11: 1, 12: 5, 13: 1, 14: 2, 15: 1, 16: 14}


def _abelian_types(n: int) -> list[list[int]]:
    """Invariant-factor style generator lists for the abelian groups of
    order n: one list of prime-power cyclic factors per isomorphism class."""
    factors = []
    rest = n
    primes = {}
    d = 2
    while rest > 1:
        while rest % d == 0:
            primes[d] = primes.get(d, 0) + 1
            rest //= d
        d += 1

    def partitions(k):
        if k == 0:
            yield []
            return
        for first in range(k, 0, -1):
            for tail in partitions(k - first):
                if not tail or tail[0] <= first:
                    yield [first] + tail

    per_prime = []
    for p, e in sorted(primes.items()):
        per_prime.append([[p ** part for part in parts] for parts in partitions(e)])
    out = []
    for combo in itertools.product(*per_prime):
        out.append([f for group in combo for f in group])
    return out


def _group_candidates(n: int, smaller: dict[int, list[FiniteAlgebra]]) -> list[FiniteAlgebra]:
    cands = [abelian(t) for t in _abelian_types(n)]
    if n >= 6 and n % 2 == 0:
        cands.append(dihedral(n // 2))
    if n >= 8 and n % 4 == 0:
        cands.append(dicyclic(n // 4))
    if n == 16:
        cands.append(central_product_d4_z4())
    for d in range(2, n):
        if n % d or n // d < 2:
            continue
        for a in smaller.get(d, []):
            for b in smaller.get(n // d, []):
                if b.order > 8:
                    continue
                try:
                    actions = list(enumerate_actions(b, a))
                except TooLarge:
                    continue
                for i, action in enumerate(actions):
                    ext = semidirect_product(action, validate=False)
                    ext.a.name = f"{a.name}:{b.name}#{i}"
                    cands.append(ext.a)
    return cands


def group_corpus(max_order: int = 16) -> list[FiniteAlgebra]:
    """All groups of order <= max_order (<= 16), one per isomorphism class,
    sorted by (order, abelian first, element order profile, name)."""
    if max_order > 16:
        raise TooLarge("group corpus is built up to order 16")
    return [g for g in _group_corpus_upto16() if g.order <= max_order]


@lru_cache(maxsize=1)
def _group_corpus_upto16() -> tuple[FiniteAlgebra, ...]:
    by_order: dict[int, list[FiniteAlgebra]] = {}
    for n in range(1, 17):
        kept: list[FiniteAlgebra] = []
        for cand in _group_candidates(n, by_order):
            validate_algebra(cand)
            if not any(is_isomorphic(cand, seen) for seen in kept):
                kept.append(cand)
        by_order[n] = kept
    out = []
    for n in range(1, 17):
        group = sorted(
            by_order[n],
            key=lambda g: (g.order, not g.is_abelian, g.element_order_profile, g.name),
        )
        out.extend(group)
    return tuple(out)


# -- ring-like corpus ----------------------------------------------------------------

def _mul_vec(m: int, constants, u, v):
    rank = len(constants)
    out = [0] * rank
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, vj in enumerate(v):
            if not vj:
                continue
            f = ui * vj
            for k in range(rank):
                out[k] = (out[k] + f * constants[i][j][k]) % m
    return tuple(out)


def _variety_ok(tag: VarietyTag, m: int, rank: int, constants) -> bool:
    """Inline law check on raw constants (fast path for bulk enumeration)."""
    if tag is VarietyTag.NARING:
        return True
    units = [tuple(1 if k == i else 0 for k in range(rank)) for i in range(rank)]
    if tag is VarietyTag.RING:
        for i, j, k in itertools.product(range(rank), repeat=3):
            left = _mul_vec(m, constants, constants[i][j], units[k])
            right = _mul_vec(m, constants, units[i], constants[j][k])
            if left != right:
                return False
        return True
    # LIE: generator guarantees antisymmetry; check Jacobi
    for i, j, k in itertools.product(range(rank), repeat=3):
        total = [0] * rank
        for first, second, third in ((i, j, k), (j, k, i), (k, i, j)):
            term = _mul_vec(m, constants, constants[first][second], units[third])
            total = [(a + b) % m for a, b in zip(total, term)]
        if any(total):
            return False
    return True


def _all_constants(m: int, rank: int):
    cells = rank * rank
    for flat in itertools.product(itertools.product(range(m), repeat=rank),
                                  repeat=cells):
        yield tuple(tuple(flat[i * rank + j] for j in range(rank))
                    for i in range(rank))


def _lie_constants(m: int, rank: int):
    """Antisymmetric tables only; Jacobi is filtered afterwards."""
    pairs = [(i, j) for i in range(rank) for j in range(i + 1, rank)]
    for values in itertools.product(itertools.product(range(m), repeat=rank),
                                    repeat=len(pairs)):
        table = [[(0,) * rank for _ in range(rank)] for _ in range(rank)]
        for (i, j), v in zip(pairs, values):
            table[i][j] = v
            table[j][i] = linalg.vec_neg(m, v)
        yield tuple(tuple(row) for row in table)


def _invertible_matrices(m: int, rank: int) -> list[tuple[linalg.Matrix, linalg.Matrix]]:
    out = []
    for p in linalg.all_matrices(m, rank, rank):
        inv = linalg.invert_matrix(m, p)
        if inv is not None:
            out.append((p, inv))
    return out


def _transform_constants(m: int, constants, p: linalg.Matrix, p_inv: linalg.Matrix):
    """Structure constants in the basis whose j-th vector is column j of p."""
    rank = len(constants)

    def mul_vec(u, v):
        out = [0] * rank
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if not vj:
                    continue
                f = ui * vj
                for k in range(rank):
                    out[k] = (out[k] + f * constants[i][j][k]) % m
        return tuple(out)

    cols = [tuple(p[i][j] for i in range(rank)) for j in range(rank)]
    return tuple(
        tuple(linalg.mat_vec(m, p_inv, mul_vec(cols[i], cols[j])) for j in range(rank))
        for i in range(rank)
    )


def _flat(constants) -> tuple:
    return tuple(x for row in constants for cell in row for x in cell)


def _orbit(m: int, constants, transforms) -> set[tuple]:
    return {_flat(_transform_constants(m, constants, p, p_inv))
            for p, p_inv in transforms}


_RING_LIKE_CACHE: dict[tuple, tuple] = {}


def ring_like_corpus(tag: VarietyTag, m: int, max_rank: int = 2) -> list[FiniteAlgebra]:
    """All ring-like algebras of the given variety with rank <= max_rank over
    Z_m, one per basis-change class, sorted by (rank, constants)."""
    key = (tag, m, max_rank)
    if key not in _RING_LIKE_CACHE:
        _RING_LIKE_CACHE[key] = tuple(_build_ring_like(tag, m, max_rank))
    return list(_RING_LIKE_CACHE[key])


def _build_ring_like(tag: VarietyTag, m: int, max_rank: int) -> list[FiniteAlgebra]:
    if max_rank > 2:
        raise TooLarge("ring-like corpus is built up to rank 2")
    variety = Variety(tag, m)
    out = [FiniteAlgebra.ring_like(variety, (), labels=(), name=f"{tag.value}{m}r0")]
    for rank in range(1, max_rank + 1):
        transforms = _invertible_matrices(m, rank)
        source = _lie_constants(m, rank) if tag is VarietyTag.LIE else _all_constants(m, rank)
        # ascending sweep: an unseen valid table is the least member of its
        # basis-change orbit, so it is the class representative
        seen: set[tuple] = set()
        reps = []
        for constants in source:
            if _flat(constants) in seen:
                continue
            if not _variety_ok(tag, m, rank, constants):
                continue
            seen |= _orbit(m, constants, transforms)
            reps.append(constants)
        for i, constants in enumerate(reps):
            alg = FiniteAlgebra.ring_like(variety, constants,
                                          name=f"{tag.value}{m}r{rank}#{i}")
            out.append(validate_algebra(alg))
    return out
