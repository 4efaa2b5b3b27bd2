import itertools

import pytest

from charlab.actions import (
    Action,
    NotInvariant,
    check_split_extension,
    conjugation_action,
    count_ring_like_actions,
    derivation_basis,
    enumerate_actions,
    extract_action,
    induce_quotient_action,
    multiplier_pairs,
    restrict_action,
    semidirect_product,
    trivial_action,
    validate_action,
)
from charlab.core import FiniteAlgebra, Variety, validate_algebra
from charlab.corpus import abelian, cyclic, dihedral, ring_like_corpus
from charlab.core import VarietyTag
from charlab.errors import NotInvariantError, TooLarge, VarietyMismatch
from charlab.subobjects import (
    enumerate_subobjects,
    generate,
    is_normal,
    trivial_subobject,
    whole_subobject,
)


def idem_naring(m=5):
    return validate_algebra(FiniteAlgebra.ring_like(
        Variety.naring(m), [[(1, 0), (0, 0)], [(0, 0), (0, 0)]],
        labels=("x", "y"), name=f"idem{m}"))


def zero_ring_like(variety, rank=1, name=None):
    return validate_algebra(FiniteAlgebra.zero_algebra(variety, rank, name=name))


def swap_action(variety_ctor, m=5):
    """The acting line with zero multiplication swapping the two coordinates:
    z * (a x + b y) = (z b) x + (z a) y on both sides."""
    g = validate_algebra(FiniteAlgebra.ring_like(
        variety_ctor(m), [[(1, 0), (0, 0)], [(0, 0), (0, 0)]], labels=("x", "y")))
    b = zero_ring_like(variety_ctor(m), 1, name="line")
    swap = (((0, 1), (1, 0)),)      # x -> y, y -> x
    return Action(b, g, left=swap, right=swap)


def test_swap_is_a_naring_action():
    ok, witness = validate_action(swap_action(Variety.naring))
    assert ok and witness is None


def test_swap_fails_ring_action_on_left_multiplier_law():
    ok, witness = validate_action(swap_action(Variety.ring))
    assert not ok
    # z*(x*x) = z*x = y while (z*x)*x = y*x = 0
    assert witness[0] == "left_multiplier_law"
    assert witness[1] == (0, 0, 0)


def test_trivial_action_is_valid_everywhere():
    cases = [
        trivial_action(cyclic(4), cyclic(6)),
        trivial_action(zero_ring_like(Variety.naring(3)), idem_naring(3)),
        trivial_action(zero_ring_like(Variety.lie(3)),
                       zero_ring_like(Variety.lie(3), 2)),
    ]
    for action in cases:
        ok, witness = validate_action(action)
        assert ok, witness


def test_variety_mismatch():
    with pytest.raises(VarietyMismatch):
        trivial_action(cyclic(2), idem_naring(2))


def test_semidirect_z2_inversion_on_z3_is_s3():
    z2, z3 = cyclic(2), cyclic(3)
    inversion = Action(z2, z3, autos=((0, 1, 2), (0, 2, 1)))
    ext = semidirect_product(inversion)
    assert ext.a.order == 6
    assert not ext.a.is_abelian
    orders = sorted(ext.a.element_order(a) for a in range(6))
    assert orders == [1, 2, 2, 2, 3, 3]


def test_semidirect_trivial_is_direct_product():
    ext = semidirect_product(trivial_action(cyclic(2), cyclic(3)))
    assert ext.a.is_abelian and ext.a.order == 6


def test_semidirect_of_swap_action_validates():
    ext = semidirect_product(swap_action(Variety.naring))
    assert ext.a.rank == 3
    validate_algebra(ext.a)
    check_split_extension(ext)


def test_extract_inverts_semidirect_group():
    z2, z3 = cyclic(2), cyclic(3)
    for action in enumerate_actions(z2, z3):
        ext = semidirect_product(action)
        back = extract_action(ext)
        assert back.key() == action.key()


def test_extract_inverts_semidirect_naring():
    action = swap_action(Variety.naring)
    back = extract_action(semidirect_product(action))
    assert back.key() == action.key()


def test_restrict_to_whole_and_zero():
    g = cyclic(3)
    action = Action(cyclic(2), g, autos=((0, 1, 2), (0, 2, 1)))
    res = restrict_action(action, whole_subobject(g))
    assert res.autos == action.autos
    res0 = restrict_action(action, trivial_subobject(g))
    assert res0.target.order == 1


def test_restrict_swap_to_derived_is_not_invariant():
    action = swap_action(Variety.naring)
    g = action.target
    spanx = generate(g, [g.basis_element(0)])
    res = restrict_action(action, spanx)
    assert isinstance(res, NotInvariant)
    b_elem, x, side = res.witness
    assert b_elem == 1 and x == g.basis_element(0) and side == "left"


def test_induced_quotient_action():
    s3 = dihedral(3)
    conj = conjugation_action(s3)
    a3 = next(s for s in enumerate_subobjects(s3) if len(s) == 3)
    induced, q, proj = induce_quotient_action(conj, a3)
    assert q.order == 2
    assert induced.is_trivial()
    # zero and whole are degenerate cases
    ind0, q0, _ = induce_quotient_action(conj, trivial_subobject(s3))
    assert q0.order == 6
    indw, qw, _ = induce_quotient_action(conj, whole_subobject(s3))
    assert qw.order == 1


def test_induced_quotient_requires_invariance():
    action = swap_action(Variety.naring)
    g = action.target
    spanx = generate(g, [g.basis_element(0)])
    with pytest.raises(NotInvariantError):
        induce_quotient_action(action, spanx)


def test_enumerate_group_actions_counts():
    # Aut(Z3) has two elements, so Z2 acts in exactly two ways
    assert len(list(enumerate_actions(cyclic(2), cyclic(3)))) == 2
    # trivial actor gives exactly the trivial action
    only = list(enumerate_actions(cyclic(1), cyclic(6)))
    assert len(only) == 1 and only[0].is_trivial()


def test_enumerate_group_actions_match_hom_count():
    from charlab.autos import ComposedMaps, automorphisms, homs_into_maps
    for b, g in [(cyclic(2), cyclic(4)), (abelian([2, 2]), dihedral(3)),
                 (cyclic(4), cyclic(5))]:
        actions = list(enumerate_actions(b, g))
        comp = ComposedMaps(list(automorphisms(g)))
        assert len(actions) == len(homs_into_maps(b, comp))
        keys = [a.key() for a in actions]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)


def test_enumerate_actions_bound():
    with pytest.raises(TooLarge):
        enumerate_actions(cyclic(9), cyclic(3))


def test_naring_action_count_closed_form():
    g = idem_naring(5)
    b = zero_ring_like(Variety.naring(5), 1)
    assert count_ring_like_actions(b, g) == 5 ** 8
    stream = enumerate_actions(b, g)
    seen = set()
    n = 0
    for action in stream:
        n += 1
        if n <= 2000:
            seen.add(action.key())
    assert n == 5 ** 8
    assert len(seen) == 2000  # distinct, lexicographic prefix


def test_naring_every_action_is_valid():
    g = idem_naring(2)
    b = zero_ring_like(Variety.naring(2), 1)
    for action in enumerate_actions(b, g):
        ok, _ = validate_action(action)
        assert ok


def test_ring_actions_all_satisfy_axioms_and_roundtrip():
    corpus = ring_like_corpus(VarietyTag.RING, 2, 2)
    actors = [b for b in corpus if b.rank <= 1]
    targets = [g for g in corpus if g.rank == 2][:6]
    for b in actors:
        for g in targets:
            for action in enumerate_actions(b, g):
                ok, witness = validate_action(action)
                assert ok, witness
                back = extract_action(semidirect_product(action, validate=False))
                assert back.key() == action.key()


def test_ring_action_enumeration_is_exhaustive_rank1():
    """Cross-check the solved enumeration against a literal scan of all
    multiplier pairs for one-generator actors."""
    corpus = ring_like_corpus(VarietyTag.RING, 3, 2)
    import charlab.linalg as linalg
    for g in [x for x in corpus if x.rank == 2][:5]:
        pairs = multiplier_pairs(g)
        for b in [x for x in corpus if x.rank == 1]:
            c = b.constants[0][0][0]
            expected = sum(
                1 for (lam, rho) in pairs
                if linalg.mat_mul(3, lam, lam) == linalg.mat_scale(3, c, lam)
                and linalg.mat_mul(3, rho, rho) == linalg.mat_scale(3, c, rho)
            )
            assert len(list(enumerate_actions(b, g))) == expected


def test_lie_actions_are_derivation_tuples():
    lie2 = validate_algebra(FiniteAlgebra.ring_like(
        Variety.lie(3), [[(0, 0), (1, 0)], [(2, 0), (0, 0)]], name="nonab"))
    b = zero_ring_like(Variety.lie(3), 1)
    ders = {tuple(map(tuple, d)) for d in _all_der_mats(lie2)}
    actions = list(enumerate_actions(b, lie2))
    assert len(actions) == len(ders)
    for action in actions:
        ok, witness = validate_action(action)
        assert ok, witness


def _all_der_mats(g):
    from charlab.actions import all_derivations
    mats, _ = all_derivations(g)
    return mats


def test_conjugation_action_always_valid():
    for g in [cyclic(6), dihedral(4), idem_naring(3),
              validate_algebra(FiniteAlgebra.ring_like(
                  Variety.lie(3), [[(0, 0), (1, 0)], [(2, 0), (0, 0)]]))]:
        ok, witness = validate_action(conjugation_action(g))
        assert ok, witness


def test_conjugation_on_abelian_group_is_trivial():
    assert conjugation_action(cyclic(8)).is_trivial()


def test_conjugation_detects_normality():
    g = dihedral(3)
    conj = conjugation_action(g)
    for h in enumerate_subobjects(g):
        invariant = not isinstance(restrict_action(conj, h), NotInvariant)
        assert invariant == is_normal(h)


def test_restriction_embeds_into_the_big_semidirect_product():
    """The restricted split extension sits inside the full one, inducing the
    inclusion on kernels and the identity on the acting object."""
    z2, z4 = cyclic(2), cyclic(4)
    for action in enumerate_actions(z2, z4):
        ext = semidirect_product(action, validate=False)
        for h in enumerate_subobjects(z4):
            res = restrict_action(action, h)
            if isinstance(res, NotInvariant):
                continue
            small = semidirect_product(res, validate=False)
            sub, embed = None, None
            from charlab.subobjects import sub_algebra
            sub, embed = sub_algebra(h)
            # map (h, b) -> (embed(h), b) must land in a subalgebra of ext.a
            image = set()
            for idx in range(small.a.order):
                kpart = idx % sub.order
                bpart = idx // sub.order
                image.add(ext.a.add(ext.k.mapping[embed.mapping[kpart]],
                                    ext.s.mapping[bpart]))
            from charlab.subobjects import is_subalgebra_set
            assert is_subalgebra_set(ext.a, frozenset(image))


def test_derivations_of_zero_bracket_are_all_matrices():
    ab = zero_ring_like(Variety.lie(5), 2, name="ab2")
    basis = derivation_basis(ab)
    assert len(basis) == 4
    from charlab.actions import all_derivations
    mats, _ = all_derivations(ab)
    assert len(mats) == 625
