import itertools

import pytest

from charlab.core import (
    FiniteAlgebra,
    Morphism,
    OpKind,
    Variety,
    VarietyTag,
    compose,
    is_morphism,
    op_apply,
    validate_algebra,
)
from charlab.corpus import cyclic, dihedral, group_corpus
from charlab.errors import (
    AntisymmetryFails,
    NotAGroup,
    UnsupportedOperation,
    VarietyMismatch,
)


def idem_naring(m=5):
    return validate_algebra(FiniteAlgebra.ring_like(
        Variety.naring(m), [[(1, 0), (0, 0)], [(0, 0), (0, 0)]],
        labels=("x", "y"), name=f"idem{m}"))


def test_variety_constraints():
    with pytest.raises(ValueError):
        Variety(VarietyTag.GROUP, 3)
    with pytest.raises(ValueError):
        Variety(VarietyTag.RING, None)
    with pytest.raises(ValueError):
        Variety(VarietyTag.LIE, 1)


def test_naring_counterexample_algebra_validates():
    g = idem_naring()
    x, y = g.basis_element(0), g.basis_element(1)
    assert op_apply(g, x, x, OpKind.MUL) == x
    assert op_apply(g, y, y, OpKind.MUL) == 0
    assert op_apply(g, x, y, OpKind.MUL) == 0
    # module arithmetic: x + x = 2x
    assert g.coords(op_apply(g, x, x, OpKind.ADD)) == (2, 0)


def test_same_constants_are_associative_as_a_ring():
    # the multiplication with one idempotent generator is associative
    g = FiniteAlgebra.ring_like(Variety.ring(5),
                                [[(1, 0), (0, 0)], [(0, 0), (0, 0)]],
                                labels=("x", "y"))
    validate_algebra(g)


def test_trivial_group_is_valid():
    validate_algebra(FiniteAlgebra.group([[0]]))


def test_lie_antisymmetry_failure_witnessed():
    # [e0,e1] = e0 but [e0,e0] = e0 injected
    bad = FiniteAlgebra.ring_like(Variety.lie(5),
                                  [[(1, 0), (1, 0)], [(4, 0), (0, 0)]])
    with pytest.raises(AntisymmetryFails) as err:
        validate_algebra(bad)
    assert err.value.witness == (0,)


def test_group_validation_witnesses():
    # identity broken
    with pytest.raises(NotAGroup):
        validate_algebra(FiniteAlgebra.group([[1, 0], [0, 1]]))
    # associativity broken but identity and inverses fine
    t = [[0, 1, 2, 3, 4],
         [1, 0, 3, 4, 2],
         [2, 4, 0, 1, 3],
         [3, 2, 4, 0, 1],
         [4, 3, 1, 2, 0]]
    with pytest.raises(NotAGroup):
        validate_algebra(FiniteAlgebra.group(t))


def test_validate_is_idempotent():
    g = cyclic(6)
    assert validate_algebra(g) is g
    assert validate_algebra(g) is g


def test_group_has_no_mul():
    g = cyclic(3)
    with pytest.raises(UnsupportedOperation):
        op_apply(g, 1, 2, OpKind.MUL)


def test_add_makes_carrier_a_group():
    for g in [cyclic(12), dihedral(8), idem_naring(3)]:
        n = g.order
        for a in range(n):
            assert g.add(0, a) == a == g.add(a, 0)
            assert g.add(a, g.neg(a)) == 0
        for a, b, c in itertools.product(range(min(n, 8)), repeat=3):
            assert g.add(g.add(a, b), c) == g.add(a, g.add(b, c))


def test_identity_and_zero_are_morphisms():
    for g in [cyclic(6), idem_naring(3)]:
        ok, w = is_morphism(Morphism.identity(g))
        assert ok and w is None
        ok, w = is_morphism(Morphism.zero(g, g))
        assert ok


def test_coordinate_swap_is_not_a_morphism():
    g = idem_naring(5)
    swap = Morphism.from_matrix(g, g, ((0, 1), (1, 0)))
    ok, witness = is_morphism(swap)
    assert not ok
    op, a, b = witness
    assert op == "mul"
    # first violating pair in ascending order is (x, x): swap(x*x) = y but
    # swap(x)*swap(x) = y*y = 0
    assert (a, b) == (g.basis_element(0), g.basis_element(0))


def test_variety_mismatch_rejected():
    with pytest.raises(VarietyMismatch):
        Morphism(cyclic(2), idem_naring(2), (0, 0))


def test_morphism_composition_is_morphism():
    # all homs Z6 -> Z6 compose to homs
    from charlab.autos import group_homs
    g = cyclic(6)
    homs = [Morphism(g, g, f) for f in group_homs(g, g)]
    assert len(homs) == 6
    for f1 in homs:
        for f2 in homs:
            ok, _ = is_morphism(compose(f1, f2))
            assert ok


def test_ring_like_coords_roundtrip():
    g = idem_naring(5)
    for idx in range(g.order):
        assert g.index(g.coords(idx)) == idx


def test_element_repr():
    g = idem_naring(5)
    assert g.element_repr(0) == "0"
    assert g.element_repr(g.index((2, 1))) == "2x+y"


def test_group_corpus_tables_are_groups():
    for g in group_corpus(12):
        validate_algebra(g)
