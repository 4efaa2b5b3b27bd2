"""Actor objects, induced actor morphisms, and canonical faithful quotients.

Groups and Lie algebras classify their actions: the automorphism group and
the derivation algebra receive a unique morphism from every acting object.
Rings are only action accessible: there is no actor, but every action maps
onto a canonical faithful one obtained by quotienting the trivially-acting
part of the actor.  (Both constructions fix the same reading of the
"trivially-acting part": the elements of B whose action datum on the kernel
is the identity/zero.)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import linalg
from .actions import (
    Action,
    NotInvariant,
    SplitExtension,
    all_derivations,
    check_action,
    check_split_extension,
    derivation_basis,
    extract_action,
    induce_quotient_action,
    restrict_action,
    semidirect_product,
    validate_action,
)
from .autos import automorphisms
from .core import FiniteAlgebra, Morphism, Variety, VarietyTag, check_morphism, validate_algebra
from .errors import (
    FreeBasisUnavailable,
    NotAccessibleVariety,
    NotCharacteristicError,
    NotRepresentative,
    NotWellDefinedError,
    TooLarge,
)
from .invariants import is_characteristic
from .subobjects import Subobject, is_normal, quotient, sub_algebra


@dataclass(frozen=True)
class Actor:
    """The classifying object of actions on ``base`` with its evaluation
    action; ``datum_index`` maps raw action data (an automorphism tuple or a
    derivation matrix) to the classifying element."""

    base: FiniteAlgebra
    object: FiniteAlgebra
    canonical_action: Action
    datum_index: dict
    index_datum: dict

    def classify_group_datum(self, mapping: tuple[int, ...]) -> int | None:
        return self.datum_index.get(mapping)

    def classify_lie_datum(self, matrix: linalg.Matrix) -> int | None:
        return self.datum_index.get(matrix)


def aut_group(g: FiniteAlgebra, cap: int = 512) -> tuple[FiniteAlgebra, list[tuple[int, ...]]]:
    """Aut(g) as a group under composition; identity sits at index 0."""
    auts = automorphisms(g)
    if len(auts) > cap:
        raise TooLarge(f"|Aut| = {len(auts)} exceeds the table cap {cap}")
    index = {f: i for i, f in enumerate(auts)}
    table = [
        [index[tuple(f[gm[x]] for x in range(g.order))] for gm in auts]
        for f in auts
    ]
    alg = FiniteAlgebra.group(table, name=f"Aut({g.name or 'G'})")
    return validate_algebra(alg), list(auts)


def actor(g: FiniteAlgebra, cap: int = 512) -> Actor:
    """Aut(g) for groups, Der(g) for Lie algebras; errors elsewhere (rings
    and nonassociative rings do not represent their actions)."""
    tag = g.variety.tag
    if tag is VarietyTag.GROUP:
        obj, auts = aut_group(g, cap)
        act = Action(obj, g, autos=tuple(auts))
        check_action(act)
        index = {f: i for i, f in enumerate(auts)}
        return Actor(g, obj, act, index, {i: f for f, i in index.items()})
    if tag is VarietyTag.LIE:
        return _lie_actor(g)
    raise NotRepresentative(f"{tag.value} actions have no actor object")


def _lie_actor(g: FiniteAlgebra) -> Actor:
    m = g.modulus
    basis = derivation_basis(g)
    mats, coords = all_derivations(g)
    if len(mats) != m ** len(basis):
        raise FreeBasisUnavailable("derivation module is not free over Z_m")
    rank = len(basis)
    constants = tuple(
        tuple(coords[_bracket(m, basis[i], basis[j])] for j in range(rank))
        for i in range(rank)
    )
    obj = FiniteAlgebra.ring_like(
        Variety.lie(m), constants,
        labels=tuple(f"d{i}" for i in range(rank)),
        name=f"Der({g.name or 'G'})",
    )
    validate_algebra(obj)
    left = tuple(
        tuple(tuple(basis[i][k][j] for k in range(g.rank)) for j in range(g.rank))
        for i in range(rank)
    )
    act = Action(obj, g, left=left)
    check_action(act)
    datum_index = {mat: obj.index(c) for mat, c in coords.items()}
    return Actor(g, obj, act, datum_index, {i: mat for mat, i in datum_index.items()})


def _bracket(m: int, a: linalg.Matrix, b: linalg.Matrix) -> linalg.Matrix:
    ab = linalg.mat_mul(m, a, b)
    ba = linalg.mat_mul(m, b, a)
    return linalg.mat_add(m, ab, linalg.mat_scale(m, m - 1, ba))


def classify_action(act_obj: Actor, action: Action) -> Morphism:
    """The unique morphism from the acting algebra into the actor through
    which the action factors; raises if some datum is not classified (that
    would refute representability)."""
    b = action.actor
    g = act_obj.base
    if g.variety.tag is VarietyTag.GROUP:
        mapping = []
        for t in range(b.order):
            idx = act_obj.classify_group_datum(action.autos[t])
            if idx is None:
                raise NotRepresentative("action datum is not an automorphism of the base")
            mapping.append(idx)
        phi = Morphism(b, act_obj.object, tuple(mapping))
    else:
        imgs = []
        for i in range(b.rank):
            mat = action.left_matrix(i)
            idx = act_obj.classify_lie_datum(mat)
            if idx is None:
                raise NotRepresentative("action datum is not a derivation of the base")
            imgs.append(act_obj.object.coords(idx))
        matrix = tuple(tuple(imgs[j][k] for j in range(b.rank))
                       for k in range(act_obj.object.rank))
        phi = Morphism.from_matrix(b, act_obj.object, matrix)
    return check_morphism(phi)


def pullback_action(act_obj: Actor, phi: Morphism) -> Action:
    """The action of phi's source induced by the canonical action."""
    b = phi.source
    g = act_obj.base
    if g.variety.tag is VarietyTag.GROUP:
        return Action(b, g, autos=tuple(act_obj.canonical_action.autos[phi.mapping[t]]
                                        for t in range(b.order)))
    left = tuple(
        tuple(
            tuple(_datum_matrix(act_obj, phi.mapping[b.basis_element(i)])[k][j]
                  for k in range(g.rank))
            for j in range(g.rank)
        )
        for i in range(b.rank)
    )
    return Action(b, g, left=left)


def _datum_matrix(act_obj: Actor, obj_elem: int) -> linalg.Matrix:
    return act_obj.index_datum[obj_elem]


def verify_actor_universal_property(act_obj: Actor, actions) -> int:
    """Check existence and uniqueness of the classifying morphism for every
    action in the iterable; returns how many were verified.

    Uniqueness reduces to faithfulness of the canonical action (distinct
    actor elements carry distinct data), which is asserted en route.
    """
    seen_data = set()
    can = act_obj.canonical_action
    obj = act_obj.object
    if act_obj.base.variety.tag is VarietyTag.GROUP:
        for t in range(obj.order):
            datum = can.autos[t]
            assert datum not in seen_data, "canonical action is not faithful"
            seen_data.add(datum)
    else:
        for t in range(obj.order):
            key = tuple(can.left_apply(t, act_obj.base.basis_element(j))
                        for j in range(act_obj.base.rank))
            assert key not in seen_data, "canonical action is not faithful"
            seen_data.add(key)
    count = 0
    for action in actions:
        phi = classify_action(act_obj, action)
        back = pullback_action(act_obj, phi)
        if back.key() != action.key():
            raise AssertionError("classifying morphism does not reproduce the action")
        count += 1
    return count


def induced_actor_morphisms(g: FiniteAlgebra, h: Subobject,
                            cap: int = 512) -> tuple[Morphism, Morphism]:
    """For characteristic h: the restriction map Act(G) -> Act(H) and the
    descent map Act(G) -> Act(G/H), both verified pointwise."""
    tag = g.variety.tag
    if tag not in (VarietyTag.GROUP, VarietyTag.LIE):
        raise NotRepresentative(f"{tag.value} actions have no actor object")
    ok, witness = is_characteristic(h)
    if not ok:
        raise NotCharacteristicError(witness.describe(g))
    act_g = actor(g, cap)
    sub, embed = sub_algebra(h)
    act_h = actor(sub, cap)
    q, proj = quotient(g, h)
    act_q = actor(q, cap)

    if tag is VarietyTag.GROUP:
        local = {embed.mapping[i]: i for i in range(sub.order)}
        res_map = []
        for f in act_g.canonical_action.autos:
            restricted = tuple(local[f[embed.mapping[i]]] for i in range(sub.order))
            idx = act_h.classify_group_datum(restricted)
            if idx is None:
                raise NotWellDefinedError("restriction is not an automorphism of h")
            res_map.append(idx)
        res = Morphism(act_g.object, act_h.object, tuple(res_map))
        reps = _coset_reps(proj, q.order)
        quot_map = []
        for f in act_g.canonical_action.autos:
            descended = tuple(proj.mapping[f[reps[c]]] for c in range(q.order))
            idx = act_q.classify_group_datum(descended)
            if idx is None:
                raise NotWellDefinedError("descent is not an automorphism of the quotient")
            quot_map.append(idx)
        quot = Morphism(act_g.object, act_q.object, tuple(quot_map))
        check_morphism(res)
        check_morphism(quot)
        _check_restriction_contract_group(act_g, act_h, res, embed)
        _check_descent_contract_group(act_g, act_q, quot, proj, reps)
        return res, quot

    res = _lie_actor_restriction(g, act_g, sub, embed, act_h)
    quot = _lie_actor_descent(g, act_g, q, proj, act_q)
    return res, quot


def _coset_reps(proj: Morphism, q_order: int) -> list[int]:
    reps = [-1] * q_order
    for x in range(proj.source.order):
        c = proj.mapping[x]
        if reps[c] < 0:
            reps[c] = x
    return reps


def _check_restriction_contract_group(act_g, act_h, res, embed):
    for t, f in enumerate(act_g.canonical_action.autos):
        rf = act_h.canonical_action.autos[res.mapping[t]]
        for i in range(embed.source.order):
            if embed.mapping[rf[i]] != f[embed.mapping[i]]:
                raise NotWellDefinedError("restriction square does not commute")


def _check_descent_contract_group(act_g, act_q, quot, proj, reps):
    for t, f in enumerate(act_g.canonical_action.autos):
        qf = act_q.canonical_action.autos[quot.mapping[t]]
        for x in range(proj.source.order):
            if qf[proj.mapping[x]] != proj.mapping[f[x]]:
                raise NotWellDefinedError("descent square does not commute")


def _lie_actor_restriction(g, act_g, sub, embed, act_h) -> Morphism:
    m = g.modulus
    mapping = []
    back = {embed.mapping[i]: i for i in range(sub.order)}
    for t in range(act_g.object.order):
        mat = _datum_matrix(act_g, t)
        cols = []
        for j in range(sub.rank):
            parent = embed.mapping[sub.basis_element(j)]
            image = g.index(linalg.mat_vec(m, mat, g.coords(parent)))
            cols.append(sub.coords(back[image]))
        restricted = tuple(tuple(cols[j][k] for j in range(sub.rank))
                           for k in range(sub.rank))
        idx = act_h.classify_lie_datum(restricted)
        if idx is None:
            raise NotWellDefinedError("restriction is not a derivation of h")
        mapping.append(idx)
    res = Morphism(act_g.object, act_h.object, tuple(mapping))
    check_morphism(res)
    for t in range(act_g.object.order):
        mat = _datum_matrix(act_g, t)
        rmat = _datum_matrix(act_h, res.mapping[t])
        for i in range(sub.order):
            lhs = embed.mapping[sub.index(linalg.mat_vec(m, rmat, sub.coords(i)))]
            rhs = g.index(linalg.mat_vec(m, mat, g.coords(embed.mapping[i])))
            if lhs != rhs:
                raise NotWellDefinedError("restriction square does not commute")
    return res


def _lie_actor_descent(g, act_g, q, proj, act_q) -> Morphism:
    m = g.modulus
    reps = _coset_reps(proj, q.order)
    mapping = []
    for t in range(act_g.object.order):
        mat = _datum_matrix(act_g, t)
        cols = []
        for j in range(q.rank):
            rep = reps[q.basis_element(j)]
            image = g.index(linalg.mat_vec(m, mat, g.coords(rep)))
            cols.append(q.coords(proj.mapping[image]))
        descended = tuple(tuple(cols[j][k] for j in range(q.rank))
                          for k in range(q.rank))
        idx = act_q.classify_lie_datum(descended)
        if idx is None:
            raise NotWellDefinedError("descent is not a derivation of the quotient")
        mapping.append(idx)
    quot = Morphism(act_g.object, act_q.object, tuple(mapping))
    check_morphism(quot)
    for t in range(act_g.object.order):
        mat = _datum_matrix(act_g, t)
        qmat = _datum_matrix(act_q, quot.mapping[t])
        for x in range(g.order):
            lhs = q.index(linalg.mat_vec(m, qmat, q.coords(proj.mapping[x])))
            rhs = proj.mapping[g.index(linalg.mat_vec(m, mat, g.coords(x)))]
            if lhs != rhs:
                raise NotWellDefinedError("descent square does not commute")
    return quot


# -- canonical faithful quotients -------------------------------------------------

@dataclass(frozen=True)
class FaithfulQuotient:
    """Quotient of an action by the trivially-acting part of the actor."""

    action: Action
    acting_kernel: Subobject          # Z <= B, the elements acting trivially
    t0: FiniteAlgebra                 # B / Z
    t1: FiniteAlgebra                 # (G x B) / Z
    proj0: Morphism                   # B -> T0
    proj1: Morphism                   # A -> T1
    extension: SplitExtension         # T1 over T0 with kernel G
    induced_action: Action            # faithful action of T0 on G

    def is_identity_quotient(self) -> bool:
        return self.acting_kernel.is_trivial()


def trivially_acting_part(action: Action) -> Subobject:
    """Elements of the actor whose datum is the identity (groups) or zero
    (ring-like); always a normal subobject."""
    b, g = action.actor, action.target
    if g.is_group:
        ident = tuple(range(g.order))
        elems = frozenset(t for t in range(b.order) if action.autos[t] == ident)
        return Subobject(b, elems)
    lie = g.variety.tag is VarietyTag.LIE
    elems = []
    for t in range(b.order):
        if all(action.left_apply(t, x) == 0 for x in range(g.order)):
            if lie or all(action.right_apply(x, t) == 0 for x in range(g.order)):
                elems.append(t)
    return Subobject(b, frozenset(elems))


def faithful_quotient(action: Action) -> FaithfulQuotient:
    """Quotient the actor (and the semidirect product) by the trivially
    acting part; the induced action is faithful and the projection is a
    morphism of split extensions.  Nonassociative rings are refused: the
    construction's canonicity is not available there."""
    g = action.target
    if g.variety.tag is VarietyTag.NARING:
        raise NotAccessibleVariety("no canonical faithful quotient for naring")
    check_action(action)
    b = action.actor
    z = trivially_acting_part(action)
    assert is_normal(z), "trivially-acting part must be normal"
    t0, proj0 = quotient(b, z)
    ext = semidirect_product(action, validate=False)
    a = ext.a
    s_z = Subobject(a, frozenset(ext.s.mapping[t] for t in z.elements))
    assert is_normal(s_z), "embedded trivially-acting part must be normal in the product"
    t1, proj1 = quotient(a, s_z)

    p_bar = _descend(proj1, proj0, ext.p, t1, t0)
    s_bar = _descend(proj0, proj1, ext.s, t0, t1)
    k_bar = Morphism(g, t1, tuple(proj1.mapping[ext.k.mapping[x]] for x in range(g.order)))
    if not k_bar.is_injective():
        raise NotWellDefinedError("kernel does not embed in the faithful quotient")
    new_ext = check_split_extension(SplitExtension(t0, t1, p_bar, s_bar, k_bar))
    induced = extract_action(new_ext)
    ok, witness = validate_action(induced)
    assert ok, witness
    faithful_z = trivially_acting_part(induced)
    if not faithful_z.is_trivial():
        raise NotWellDefinedError("induced action is not faithful")
    # the pair (proj0, proj1) is a morphism of split extensions
    for x in range(a.order):
        if p_bar.mapping[proj1.mapping[x]] != proj0.mapping[ext.p.mapping[x]]:
            raise NotWellDefinedError("projection squares do not commute")
    for t in range(b.order):
        if proj1.mapping[ext.s.mapping[t]] != s_bar.mapping[proj0.mapping[t]]:
            raise NotWellDefinedError("section squares do not commute")
    return FaithfulQuotient(action, z, t0, t1, proj0, proj1, new_ext, induced)


def _descend(proj_src: Morphism, proj_tgt: Morphism, f: Morphism,
             src_q: FiniteAlgebra, tgt_q: FiniteAlgebra) -> Morphism:
    """Induce src_q -> tgt_q from f under the two projections, checking
    representative independence."""
    mapping = [-1] * src_q.order
    for x in range(f.source.order):
        c = proj_src.mapping[x]
        val = proj_tgt.mapping[f.mapping[x]]
        if mapping[c] < 0:
            mapping[c] = val
        elif mapping[c] != val:
            raise NotWellDefinedError("induced map is not representative independent")
    return check_morphism(Morphism(src_q, tgt_q, tuple(mapping)))


def induced_faithful_morphisms(action: Action, h: Subobject
                               ) -> tuple[Morphism, Morphism]:
    """For characteristic h: maps between the faithful quotients
    T0(B, G) -> T0(B, H) and T0(B, G) -> T0(B, G/H).

    Existence rests on the containments `trivially-acting on G` <=
    `trivially-acting on H` and <= `trivially-acting on G/H`, which are
    verified concretely before inducing the quotient maps.
    """
    g = action.target
    ok, witness = is_characteristic(h)
    if not ok:
        raise NotCharacteristicError(witness.describe(g))
    fq_g = faithful_quotient(action)
    restricted = restrict_action(action, h)
    assert not isinstance(restricted, NotInvariant)
    fq_h = faithful_quotient(restricted)
    induced_q, q, proj = induce_quotient_action(action, h)
    fq_q = faithful_quotient(induced_q)

    if not fq_g.acting_kernel.elements <= fq_h.acting_kernel.elements:
        raise NotWellDefinedError("acting kernel does not shrink on the subobject")
    if not fq_g.acting_kernel.elements <= fq_q.acting_kernel.elements:
        raise NotWellDefinedError("acting kernel does not shrink on the quotient")

    to_h = _descend(fq_g.proj0, fq_h.proj0, Morphism.identity(action.actor),
                    fq_g.t0, fq_h.t0)
    to_q = _descend(fq_g.proj0, fq_q.proj0, Morphism.identity(action.actor),
                    fq_g.t0, fq_q.t0)
    return to_h, to_q
