"""Characteristic subobjects, commutators, centralisers and centres.

A subobject is characteristic when every internal action on its parent
restricts to it.  Each variety admits a concrete family of unary invariance
tests that decides this:

* groups ........ all automorphisms;
* Lie algebras .. a generating set of the derivation algebra;
* rings ......... all permutable multiplier pairs (lambda, rho);
* nonassociative rings ... all additive endomorphisms, spanned by the
  elementary matrices (actions impose no axioms there, so any pair of
  endomorphism tables occurs inside some action).

``is_characteristic`` runs that fast criterion.  ``is_characteristic_oracle``
is the independent brute-force route: it quantifies over every acting
algebra within bounds and every enumerated action, checking restriction
literally.  The two must agree; the acceptance suite cross-checks them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import linalg
from .actions import (
    Action,
    NotInvariant,
    all_derivations,
    derivation_basis,
    enumerate_actions,
    invariance_witness,
    multiplier_pairs,
    restrict_action,
)
from .autos import automorphisms
from .core import FiniteAlgebra, VarietyTag
from .errors import ParentMismatch
from .subobjects import (
    Subobject,
    enumerate_subobjects,
    generate,
    is_subalgebra_set,
    normal_closure,
    whole_subobject,
)


@dataclass(frozen=True)
class Generator:
    """One unary invariance test: apply every map in ``maps`` to a candidate
    subobject; all images must stay inside it."""

    label: str
    maps: tuple[tuple[int, ...], ...]

    def moves(self, elements: frozenset[int]) -> tuple | None:
        """First (map index, element, image) escaping ``elements``, or None."""
        for side, mp in enumerate(self.maps):
            for x in sorted(elements):
                if mp[x] not in elements:
                    return side, x, mp[x]
        return None


@dataclass(frozen=True)
class ActionGeneratorSet:
    variety: VarietyTag
    members: tuple[Generator, ...]


def _matrix_mapping(g: FiniteAlgebra, mat: linalg.Matrix) -> tuple[int, ...]:
    m = g.modulus
    return tuple(g.index(linalg.mat_vec(m, mat, g.coords(x))) for x in range(g.order))


def _fmt_matrix(mat: linalg.Matrix) -> str:
    return "[" + "; ".join(" ".join(str(x) for x in row) for row in mat) + "]"


def action_generators(g: FiniteAlgebra, aut_cap: int = 50000) -> ActionGeneratorSet:
    """The variety's family of unary invariance tests for ``g``."""
    def build():
        tag = g.variety.tag
        members: list[Generator] = []
        if tag is VarietyTag.GROUP:
            for i, f in enumerate(automorphisms(g, cap=aut_cap)):
                members.append(Generator(f"aut{i}", (f,)))
        elif tag is VarietyTag.LIE:
            for i, mat in enumerate(derivation_basis(g)):
                members.append(Generator(f"der{_fmt_matrix(mat)}", (_matrix_mapping(g, mat),)))
        elif tag is VarietyTag.RING:
            for lam, rho in multiplier_pairs(g):
                members.append(Generator(
                    f"mult({_fmt_matrix(lam)},{_fmt_matrix(rho)})",
                    (_matrix_mapping(g, lam), _matrix_mapping(g, rho)),
                ))
        else:  # NARING: elementary matrices span all additive endomorphisms
            for i in range(g.rank):
                for j in range(g.rank):
                    mat = linalg.elementary_matrix(g.rank, g.rank, i, j)
                    members.append(Generator(f"E{i}{j}", (_matrix_mapping(g, mat),)))
        return ActionGeneratorSet(tag, tuple(members))

    return g.cache("action_generators", build)


@dataclass(frozen=True)
class CharWitness:
    """A generator moving an element out of the subobject."""

    generator: Generator
    side: int
    element: int
    image: int

    def describe(self, g: FiniteAlgebra) -> str:
        part = "" if len(self.generator.maps) == 1 else f" (component {self.side})"
        return (f"{self.generator.label}{part} sends "
                f"{g.element_repr(self.element)} to {g.element_repr(self.image)}")


def is_characteristic(h: Subobject, aut_cap: int = 50000) -> tuple[bool, CharWitness | None]:
    """Fast per-variety criterion; exact (cross-checked against the oracle)."""
    g = h.parent
    cache = g.cache("char_verdicts", dict)
    key = h.elements
    if key not in cache:
        cache[key] = _is_characteristic_uncached(h, aut_cap)
    return cache[key]


def _is_characteristic_uncached(h, aut_cap):
    g = h.parent
    gens = action_generators(g, aut_cap=aut_cap)
    if g.variety.tag is VarietyTag.GROUP and len(gens.members) * len(h.elements) > 200_000:
        return _group_char_numpy(h, gens)
    for gen in gens.members:
        hit = gen.moves(h.elements)
        if hit is not None:
            side, x, img = hit
            return False, CharWitness(gen, side, x, img)
    return True, None


def _group_char_numpy(h: Subobject, gens: ActionGeneratorSet):
    g = h.parent
    auts = np.array([gen.maps[0] for gen in gens.members], dtype=np.int32)
    member = np.zeros(g.order, dtype=bool)
    elems = sorted(h.elements)
    member[elems] = True
    images = auts[:, elems]
    ok = member[images]
    if ok.all():
        return True, None
    bad_aut, bad_pos = np.argwhere(~ok)[0]
    gen = gens.members[int(bad_aut)]
    x = elems[int(bad_pos)]
    return False, CharWitness(gen, 0, x, gen.maps[0][x])


def characteristic_subobjects(g: FiniteAlgebra, max_order: int = 256) -> list[Subobject]:
    return [h for h in enumerate_subobjects(g, max_order) if is_characteristic(h)[0]]


# -- brute-force oracle ---------------------------------------------------------

@dataclass(frozen=True)
class OracleBounds:
    group_order: int = 8
    ring_rank: int = 2
    aut_cap: int = 4096


@dataclass(frozen=True)
class OracleWitness:
    actor: FiniteAlgebra
    action: Action
    restriction_witness: tuple

    def describe(self) -> str:
        b, x, side = self.restriction_witness
        return (f"action of {self.actor.name or self.actor!r} moves element {x} "
                f"(actor element {b}, {side} side)")


def is_characteristic_oracle(h: Subobject, bounds: OracleBounds = OracleBounds(),
                             use_shortcuts: bool = True
                             ) -> tuple[bool, OracleWitness | None]:
    """Quantify over every acting algebra within bounds and every enumerated
    action; true iff all of them restrict to ``h``.

    Acting algebras run in corpus order and actions lexicographically, so the
    returned witness is the least one.  ``use_shortcuts`` enables two sound
    skips (a subobject invariant under every unary datum is invariant under
    every action built from them); disable to force the literal scan.
    """
    from .corpus import group_corpus, ring_like_corpus

    g = h.parent
    if h.is_whole():
        return True, None
    tag = g.variety.tag
    if tag is VarietyTag.GROUP:
        return _oracle_group(h, bounds, group_corpus(bounds.group_order))
    if tag is VarietyTag.NARING:
        return _oracle_naring(h)
    actors = ring_like_corpus(tag, g.modulus, bounds.ring_rank)
    return _oracle_ring_like(h, bounds, actors, use_shortcuts)


def _oracle_group(h: Subobject, bounds: OracleBounds, actors) -> tuple[bool, OracleWitness | None]:
    g = h.parent
    auts = automorphisms(g)
    bad = {i for i, f in enumerate(auts)
           if any(f[x] not in h.elements for x in h.elements)}
    from .autos import ComposedMaps, homs_into_maps
    comp = g.cache("aut_composed", lambda: ComposedMaps(list(auts)))
    hom_cache = g.cache("oracle_homs", dict)
    for b in actors:
        if b.order > bounds.group_order:
            continue
        key = b.key()
        if key not in hom_cache:
            hom_cache[key] = homs_into_maps(b, comp)
        for hom in hom_cache[key]:
            hit = next((t for t in range(b.order) if hom[t] in bad), None)
            if hit is None:
                continue
            action = Action(b, g, autos=tuple(auts[hom[t]] for t in range(b.order)))
            res = restrict_action(action, h)
            assert isinstance(res, NotInvariant)
            return False, OracleWitness(b, action, res.witness)
    return True, None


def _oracle_ring_like(h: Subobject, bounds: OracleBounds, actors,
                      use_shortcuts: bool) -> tuple[bool, OracleWitness | None]:
    """RING and LIE both go slot-by-slot: every action assigns each actor
    basis element a unary datum, so a subobject no datum moves is safe."""
    g = h.parent
    tag = g.variety.tag
    if use_shortcuts:
        if tag is VarietyTag.RING:
            data_bad = any(
                any(mp[x] not in h.elements
                    for mp in (_matrix_mapping(g, lam), _matrix_mapping(g, rho))
                    for x in h.elements)
                for lam, rho in multiplier_pairs(g)
            )
        else:
            mats, _ = all_derivations(g)
            data_bad = any(
                _matrix_mapping(g, mat_)[x] not in h.elements
                for mat_ in mats for x in h.elements
            )
        if not data_bad:
            return True, None
    action_cache = g.cache("oracle_actions", dict)
    for b in actors:
        if b.rank > bounds.ring_rank:
            continue
        key = b.key()
        if key not in action_cache:
            action_cache[key] = list(
                enumerate_actions(b, g, ring_rank_bound=bounds.ring_rank))
        for action in action_cache[key]:
            witness = invariance_witness(action, h)
            if witness is not None:
                return False, OracleWitness(b, action, witness)
    return True, None


def _oracle_naring(h: Subobject) -> tuple[bool, OracleWitness | None]:
    """Actions impose no axioms here, so an action of any acting algebra
    fails to restrict exactly when one of its basis rows maps some element
    of h outside h; the acting algebra's own multiplication never enters.
    Scanning the row space is therefore equivalent to scanning all
    ``m**(2 r_B r_G^2)`` table pairs for every actor, and yields the
    lexicographically least failing action directly.  The least witnessing
    actor is the first of positive rank in corpus order: the rank-one
    algebra with zero multiplication."""
    g = h.parent
    m, rg = g.modulus, g.rank
    bad = _naring_bad_rows(h)
    if bad is None:
        return True, None
    from .core import Variety
    b = FiniteAlgebra.zero_algebra(Variety(g.variety.tag, m), 1,
                                   name=f"naring{m}r1#0")
    zero_row = tuple((0,) * rg for _ in range(rg))
    action = Action(b, g, left=(zero_row,), right=(bad,))
    res = restrict_action(action, h)
    assert isinstance(res, NotInvariant)
    return False, OracleWitness(b, action, res.witness)


def _naring_bad_rows(h: Subobject) -> tuple | None:
    """Least basis row (a tuple of one image vector per target basis vector)
    whose bilinear extension moves h, or None.  Left and right rows have the
    same form, and an all-zero row never fails, so the least failing action
    has a zero left table and the least bad row in the last right slot."""
    g = h.parent
    m, rg = g.modulus, g.rank
    elems = [g.coords(x) for x in sorted(h.elements)]
    for row in itertools.product(itertools.product(range(m), repeat=rg), repeat=rg):
        for xc in elems:
            img = (0,) * rg
            for j, c in enumerate(xc):
                if c:
                    img = linalg.vec_add(m, img, linalg.vec_scale(m, c, row[j]))
            if g.index(img) not in h.elements:
                return row
    return None


def naring_oracle_literal(h: Subobject, b: FiniteAlgebra) -> tuple[bool, tuple | None]:
    """Reference implementation scanning every action of one acting algebra;
    used to validate the factored oracle on small instances."""
    for action in enumerate_actions(b, h.parent):
        res = restrict_action(action, h)
        if isinstance(res, NotInvariant):
            return False, (action, res.witness)
    return True, None


# -- commutators -----------------------------------------------------------------

def commutator_words(h: Subobject, k: Subobject) -> list[int]:
    """Group commutators -h-k+h+k and, for ring-like parents, the two-sided
    products h*k and k*h (the group words vanish on abelian carriers)."""
    g = h.parent
    if k.parent is not g:
        raise ParentMismatch("commutators need a common parent")
    words = set()
    if g.is_group:
        for a in h.elements:
            na = g.neg(a)
            for c in k.elements:
                words.add(g.add(g.add(g.add(na, g.neg(c)), a), c))
    else:
        for a in h.elements:
            for c in k.elements:
                words.add(g.mul(a, c))
                words.add(g.mul(c, a))
    return sorted(words)


def higgins_commutator(h: Subobject, k: Subobject) -> Subobject:
    """Subalgebra generated by the commutator words of the pair.

    For rings this is the generated subring of the two-sided products, one
    reading of "the subring HK"; reports flag the convention.
    """
    return generate(h.parent, commutator_words(h, k))


def huq_commutator(h: Subobject, k: Subobject) -> Subobject:
    """Normal closure of the Higgins commutator: the smallest normal
    subobject whose quotient makes the pair commute elementwise."""
    return normal_closure(higgins_commutator(h, k))


def huq_commutator_by_quotients(h: Subobject, k: Subobject,
                                max_order: int = 256) -> Subobject:
    """Independent route: the least normal subobject containing every
    commutator word, found by scanning the subobject lattice."""
    g = h.parent
    words = set(commutator_words(h, k))
    from .subobjects import normal_subobjects
    candidates = [n for n in normal_subobjects(g, max_order) if words <= n.elements]
    best = min(candidates, key=Subobject.key)
    for c in candidates:
        if not c.contains_subobject(best):
            raise AssertionError("normal subobjects above the words are not filtered")
    return best


# -- centralisers -----------------------------------------------------------------

@dataclass(frozen=True)
class DoesNotExist:
    """No largest commuting subobject: the maximal ones are incomparable."""

    maximal: tuple[Subobject, ...]

    def __bool__(self):
        return False


def _commutes_elementwise(g: FiniteAlgebra, a: int, b: int) -> bool:
    if g.is_group:
        return g.add(a, b) == g.add(b, a)
    return g.mul(a, b) == 0 and g.mul(b, a) == 0


def centralizer(h: Subobject, max_order: int = 256):
    """Largest subobject Z with vanishing commutator against h.

    The elementwise commuting set is it whenever that set is a subalgebra
    (always, except possibly for nonassociative rings).  Otherwise the
    subobject lattice is scanned; a unique maximal commuting subobject is
    returned and incomparable maxima yield ``DoesNotExist``.
    """
    g = h.parent
    commuting = frozenset(
        a for a in range(g.order)
        if all(_commutes_elementwise(g, a, b) for b in h.elements)
    )
    if is_subalgebra_set(g, commuting):
        return Subobject(g, commuting)
    inside = [s for s in enumerate_subobjects(g, max_order)
              if s.elements <= commuting]
    maximal = [s for s in inside
               if not any(t is not s and t.elements > s.elements for t in inside)]
    maximal.sort(key=Subobject.key)
    if len(maximal) == 1:
        return maximal[0]
    return DoesNotExist(tuple(maximal))


def centre(g: FiniteAlgebra, max_order: int = 256):
    return centralizer(whole_subobject(g), max_order)
