import itertools

import pytest
from hypothesis import given, settings, strategies as st

from charlab.core import FiniteAlgebra, Variety, validate_algebra
from charlab.corpus import abelian, cyclic, dihedral, group_corpus
from charlab.errors import NotNormalError, NotSurjectiveError, ParentMismatch
from charlab.subobjects import (
    Subobject,
    congruence_class_of_zero,
    enumerate_subobjects,
    generate,
    is_normal,
    join,
    kernel_pair,
    meet,
    normal_closure,
    quotient,
    quotient_by_congruence,
    sub_algebra,
    trivial_subobject,
    validate_congruence,
    whole_subobject,
)
from charlab.autos import is_isomorphic

from helpers import brute_normal, brute_subalgebras, first_isomorphism_roundtrip


def idem_naring(m=5):
    return validate_algebra(FiniteAlgebra.ring_like(
        Variety.naring(m), [[(1, 0), (0, 0)], [(0, 0), (0, 0)]],
        labels=("x", "y"), name=f"idem{m}"))


SMALL = [cyclic(4), cyclic(6), dihedral(3), dihedral(4), abelian([2, 2]),
         idem_naring(2), idem_naring(3)]


def test_generate_empty_gives_zero():
    for g in SMALL:
        assert generate(g, []).elements == {0}


def test_generate_idempotent_span():
    g = idem_naring(5)
    x = g.basis_element(0)
    got = generate(g, [x])
    assert got.elements == {g.index((c, 0)) for c in range(5)}


def test_generate_three_cycle_in_s3():
    s3 = dihedral(3)
    three_cycle = next(a for a in range(6) if s3.element_order(a) == 3)
    assert len(generate(s3, [three_cycle])) == 3


def test_enumerate_matches_powerset_oracle():
    for g in SMALL:
        if g.order > 10:
            continue
        got = {s.elements for s in enumerate_subobjects(g)}
        assert got == brute_subalgebras(g)


def test_enumerate_counterexample_subobjects():
    g = idem_naring(5)
    subs = enumerate_subobjects(g)
    assert len(subs) == 4
    sizes = [len(s) for s in subs]
    assert sizes == [1, 5, 5, 25]
    # lines spanned by x+ty (t nonzero) are not closed under multiplication
    for t in range(1, 5):
        v = g.index((1, t))
        assert len(generate(g, [v])) > 5


def test_enumerate_z4():
    assert len(enumerate_subobjects(cyclic(4))) == 3


def test_sorted_deterministically():
    for g in SMALL:
        subs = enumerate_subobjects(g)
        assert subs == sorted(subs, key=Subobject.key)


def test_is_normal_matches_oracle():
    for g in SMALL:
        for s in enumerate_subobjects(g):
            assert is_normal(s) == brute_normal(g, s.elements)


def test_transposition_subgroup_not_normal():
    s3 = dihedral(3)
    flip = next(a for a in range(6) if s3.element_order(a) == 2)
    assert not is_normal(generate(s3, [flip]))


def test_meet_join_basics():
    g = idem_naring(5)
    whole = whole_subobject(g)
    zero = trivial_subobject(g)
    x = generate(g, [g.basis_element(0)])
    y = generate(g, [g.basis_element(1)])
    assert meet(x, whole) == x
    assert meet(x, zero) == zero
    assert meet(x, y) == zero
    assert join(x, zero) == x
    assert join(x, y) == whole


def test_join_of_klein_subgroups():
    klein = abelian([2, 2])
    subs = [s for s in enumerate_subobjects(klein) if len(s) == 2]
    assert len(subs) == 3
    assert join(subs[0], subs[1]).is_whole()


def test_parent_mismatch():
    with pytest.raises(ParentMismatch):
        meet(trivial_subobject(cyclic(4)), trivial_subobject(cyclic(6)))


def test_lattice_absorption_laws():
    for g in SMALL:
        subs = enumerate_subobjects(g)
        for a, b in itertools.product(subs, repeat=2):
            assert meet(a, join(a, b)) == a
            assert join(a, meet(a, b)) == a


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_generate_is_a_closure_operator(data):
    g = data.draw(st.sampled_from(SMALL))
    gens = data.draw(st.lists(st.integers(0, g.order - 1), max_size=4))
    more = data.draw(st.lists(st.integers(0, g.order - 1), max_size=2))
    first = generate(g, gens)
    # extensive
    assert set(gens) <= first.elements
    # idempotent
    assert generate(g, first.sorted_elements()).elements == first.elements
    # monotone
    bigger = generate(g, gens + more)
    assert first.elements <= bigger.elements


def test_quotient_by_trivial_and_whole():
    for g in SMALL:
        q, proj = quotient(g, trivial_subobject(g))
        assert q.order == g.order
        q2, _ = quotient(g, whole_subobject(g))
        assert q2.order == 1


def test_quotient_requires_normal():
    s3 = dihedral(3)
    flip = next(a for a in range(6) if s3.element_order(a) == 2)
    with pytest.raises(NotNormalError):
        quotient(s3, generate(s3, [flip]))


def test_quotient_of_counterexample_kills_multiplication():
    g = idem_naring(5)
    spanx = generate(g, [g.basis_element(0)])
    q, proj = quotient(g, spanx)
    assert q.rank == 1 and q.order == 5
    # the image of y squares to zero
    assert all(q.mul(a, b) == 0 for a in range(5) for b in range(5))


def test_quotient_s3_by_a3():
    s3 = dihedral(3)
    a3 = next(s for s in enumerate_subobjects(s3) if len(s) == 3)
    q, proj = quotient(s3, a3)
    assert q.order == 2
    r = kernel_pair(proj)
    validate_congruence(r)
    # pairs with equal sign: both rotations or both reflections
    for (a, b) in r.pairs:
        assert (a in a3.elements) == (b in a3.elements)


def test_kernel_pair_identity_and_zero():
    g = cyclic(6)
    from charlab.core import Morphism
    diag = kernel_pair(Morphism.identity(g))
    assert diag.pairs == frozenset((a, a) for a in range(6))
    q, proj = quotient(g, whole_subobject(g))
    full = kernel_pair(proj)
    assert len(full.pairs) == 36


def test_kernel_pair_needs_surjection():
    g = cyclic(4)
    from charlab.core import Morphism
    with pytest.raises(NotSurjectiveError):
        kernel_pair(Morphism.zero(g, g))


def test_first_isomorphism_roundtrip():
    for g in SMALL + [dihedral(6)]:
        for h in enumerate_subobjects(g):
            if not is_normal(h):
                continue
            q, proj = quotient(g, h)
            assert first_isomorphism_roundtrip(g, proj)
            r = kernel_pair(proj)
            assert congruence_class_of_zero(r).elements == h.elements
            q2, proj2 = quotient_by_congruence(g, r)
            if g.is_group:
                assert is_isomorphic(q, q2)
            else:
                assert q.key() == q2.key()


def test_normal_is_kernel_of_surjection():
    for g in SMALL:
        for h in enumerate_subobjects(g):
            if is_normal(h):
                _, proj = quotient(g, h)
                kernel = frozenset(a for a in range(g.order) if proj.mapping[a] == 0)
                assert kernel == h.elements


def test_normal_closure():
    s3 = dihedral(3)
    flip = generate(s3, [next(a for a in range(6) if s3.element_order(a) == 2)])
    assert normal_closure(flip).is_whole()
    a3 = next(s for s in enumerate_subobjects(s3) if len(s) == 3)
    assert normal_closure(a3) == a3
    assert normal_closure(trivial_subobject(s3)).is_trivial()


def test_sub_algebra_roundtrip():
    for g in SMALL:
        for h in enumerate_subobjects(g):
            sub, embed = sub_algebra(h)
            assert sub.order == len(h)
            assert {embed.mapping[i] for i in range(sub.order)} == h.elements
            validate_algebra(sub)


def test_quotient_preserves_variety():
    g = idem_naring(3)
    spany = generate(g, [g.basis_element(1)])
    q, _ = quotient(g, spany)
    assert q.variety == g.variety
