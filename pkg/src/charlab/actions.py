"""Internal actions and split extensions.

An action of B on G is variety-specific data:

* groups: an assignment of an automorphism of G to every element of B that
  is a homomorphism into Aut(G);
* rings / nonassociative rings: a pair of bilinear maps B x G -> G and
  G x B -> G stored as basis tables (``left[i][j]`` and ``right[i][j]`` are
  G-coordinates of ``e_i * f_j`` and ``f_j * e_i``);
* Lie algebras: one bilinear bracket table, the other side being determined
  by antisymmetry; every ``b`` must act as a derivation and the assignment
  must be a Lie homomorphism into Der(G).

Actions correspond to split extensions through the semidirect product, and
``extract_action`` inverts the construction by reading conjugation (or the
mixed products) inside the extension.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg
from .autos import ComposedMaps, automorphisms, homs_into_maps
from .core import (
    FiniteAlgebra,
    Morphism,
    VarietyTag,
    check_morphism,
    compose,
    validate_algebra,
)
from .errors import (
    InvalidAction,
    KernelNotInvariant,
    NotInvariantError,
    NotNormalError,
    NotWellDefinedError,
    TooLarge,
    VarietyMismatch,
)
from .subobjects import Subobject, is_normal, quotient, sub_algebra

Coords = tuple[int, ...]


@dataclass(frozen=True)
class Action:
    """Variety-specific action data of ``actor`` on ``target``."""

    actor: FiniteAlgebra
    target: FiniteAlgebra
    autos: tuple[tuple[int, ...], ...] | None = None
    left: tuple[tuple[Coords, ...], ...] | None = None
    right: tuple[tuple[Coords, ...], ...] | None = None

    def __post_init__(self):
        b, g = self.actor, self.target
        if b.variety.tag is not g.variety.tag or b.modulus != g.modulus:
            raise VarietyMismatch(f"{b.variety} cannot act on {g.variety}")
        if g.is_group:
            if self.autos is None or len(self.autos) != b.order:
                raise ValueError("group actions need one automorphism per actor element")
        else:
            if self.left is None:
                raise ValueError("ring-like actions need a left basis table")
            if g.variety.tag is VarietyTag.LIE:
                if self.right is not None:
                    raise ValueError("Lie actions store only the bracket table")
            elif self.right is None:
                raise ValueError("ring-like actions need a right basis table")

    # -- evaluation ---------------------------------------------------------

    def left_apply(self, b: int, x: int) -> int:
        """b acting on x: alpha_b(x) for groups, b*x for ring-like."""
        g = self.target
        if g.is_group:
            return self.autos[b][x]
        m = g.modulus
        bc = self.actor.coords(b)
        xc = g.coords(x)
        out = (0,) * g.rank
        for i, bi in enumerate(bc):
            if not bi:
                continue
            for j, xj in enumerate(xc):
                if not xj:
                    continue
                out = linalg.vec_add(m, out, linalg.vec_scale(m, bi * xj, self.left[i][j]))
        return g.index(out)

    def right_apply(self, x: int, b: int) -> int:
        """x*b for ring-like varieties (for Lie algebras, -(b*x))."""
        g = self.target
        if g.is_group:
            raise ValueError("group actions are one-sided")
        if g.variety.tag is VarietyTag.LIE:
            return g.neg(self.left_apply(b, x))
        m = g.modulus
        bc = self.actor.coords(b)
        xc = g.coords(x)
        out = (0,) * g.rank
        for i, bi in enumerate(bc):
            if not bi:
                continue
            for j, xj in enumerate(xc):
                if not xj:
                    continue
                out = linalg.vec_add(m, out, linalg.vec_scale(m, bi * xj, self.right[i][j]))
        return g.index(out)

    def right_table(self) -> tuple[tuple[Coords, ...], ...]:
        if self.target.variety.tag is VarietyTag.LIE:
            m = self.target.modulus
            return tuple(tuple(linalg.vec_neg(m, c) for c in row) for row in self.left)
        return self.right

    def left_matrix(self, i: int) -> linalg.Matrix:
        """The endomorphism lambda_{e_i} of the target, as a matrix."""
        r = self.target.rank
        return tuple(tuple(self.left[i][j][k] for j in range(r)) for k in range(r))

    def right_matrix(self, i: int) -> linalg.Matrix:
        r = self.target.rank
        row = self.right_table()[i]
        return tuple(tuple(row[j][k] for j in range(r)) for k in range(r))

    def key(self) -> tuple:
        if self.target.is_group:
            return self.autos
        if self.target.variety.tag is VarietyTag.LIE:
            return self.left
        return (self.left, self.right)

    def is_trivial(self) -> bool:
        if self.target.is_group:
            ident = tuple(range(self.target.order))
            return all(a == ident for a in self.autos)
        zero = (0,) * self.target.rank
        tables = [self.left] if self.right is None else [self.left, self.right]
        return all(c == zero for t in tables for row in t for c in row)

    def __repr__(self):
        return f"<action of {self.actor!r} on {self.target!r}>"


def trivial_action(b: FiniteAlgebra, g: FiniteAlgebra) -> Action:
    if b.variety.tag is not g.variety.tag or b.modulus != g.modulus:
        raise VarietyMismatch(f"{b.variety} cannot act on {g.variety}")
    if g.is_group:
        ident = tuple(range(g.order))
        return Action(b, g, autos=tuple(ident for _ in range(b.order)))
    zero_row = tuple((0,) * g.rank for _ in range(g.rank))
    left = tuple(zero_row for _ in range(b.rank))
    if g.variety.tag is VarietyTag.LIE:
        return Action(b, g, left=left)
    return Action(b, g, left=left, right=left)


def conjugation_action(g: FiniteAlgebra) -> Action:
    """G acting on itself: conjugation for groups, multiplication otherwise."""
    if g.is_group:
        autos = tuple(
            tuple(g.add(g.add(b, x), g.neg(b)) for x in range(g.order))
            for b in range(g.order)
        )
        return Action(g, g, autos=autos)
    left = tuple(tuple(g.constants[i][j] for j in range(g.rank)) for i in range(g.rank))
    if g.variety.tag is VarietyTag.LIE:
        return Action(g, g, left=left)
    right = tuple(tuple(g.constants[j][i] for j in range(g.rank)) for i in range(g.rank))
    return Action(g, g, left=left, right=right)


# -- validation ---------------------------------------------------------------

def validate_action(action: Action) -> tuple[bool, tuple | None]:
    """Check the variety's action axioms; returns (ok, witness).

    Ring-like laws are verified on basis tuples (they are multilinear).  The
    additive axioms hold vacuously because ring-like carriers are abelian;
    that vacuity is asserted rather than assumed.
    """
    b, g = action.actor, action.target
    tag = g.variety.tag
    if tag is VarietyTag.GROUP:
        return _validate_group_action(action)
    # vacuity of the additive-conjugation axioms: abelian carriers only
    assert b.is_abelian and g.is_abelian, "ring-like carriers must be abelian"
    if tag is VarietyTag.LIE:
        return _validate_lie_action(action)
    if tag is VarietyTag.RING:
        return _validate_ring_action(action)
    return True, None  # NARING: bilinearity is structural


def _validate_group_action(action: Action) -> tuple[bool, tuple | None]:
    b, g = action.actor, action.target
    ident = tuple(range(g.order))
    if action.autos[0] != ident:
        return False, ("identity_acts_nontrivially",)
    auts = set(automorphisms(g))
    for i, f in enumerate(action.autos):
        if f not in auts:
            return False, ("not_an_automorphism", i)
    for x in range(b.order):
        for y in range(b.order):
            fx, fy = action.autos[x], action.autos[y]
            composed = tuple(fx[fy[t]] for t in range(g.order))
            if action.autos[b.add(x, y)] != composed:
                return False, ("not_a_homomorphism", (x, y))
    return True, None


def _validate_ring_action(action: Action) -> tuple[bool, tuple | None]:
    g = action.target
    b = action.actor
    lam = [action.left_matrix(i) for i in range(b.rank)]
    rho = [action.right_matrix(i) for i in range(b.rank)]
    m = g.modulus
    mm = lambda p, q: linalg.mat_mul(m, p, q)
    mv = lambda p, v: linalg.mat_vec(m, p, v)
    mulv = _vector_mul(g)
    for i in range(b.rank):
        for x in range(g.rank):
            for y in range(g.rank):
                # lambda_b(x y) = lambda_b(x) y
                lhs = mv(lam[i], g.constants[x][y])
                rhs = mulv(_matrix_col(lam[i], x), _unit(g.rank, y))
                if lhs != rhs:
                    return False, ("left_multiplier_law", (i, x, y), lhs, rhs)
                # rho_b(x y) = x rho_b(y)
                lhs = mv(rho[i], g.constants[x][y])
                rhs = mulv(_unit(g.rank, x), _matrix_col(rho[i], y))
                if lhs != rhs:
                    return False, ("right_multiplier_law", (i, x, y), lhs, rhs)
                # x lambda_b(y) = rho_b(x) y
                lhs = mulv(_unit(g.rank, x), _matrix_col(lam[i], y))
                rhs = mulv(_matrix_col(rho[i], x), _unit(g.rank, y))
                if lhs != rhs:
                    return False, ("middle_exchange_law", (i, x, y), lhs, rhs)
    for i in range(b.rank):
        for j in range(b.rank):
            prod = b.constants[i][j]
            # lambda_{b_i b_j} = lambda_i lambda_j
            want = _combine(m, lam, prod)
            if mm(lam[i], lam[j]) != want:
                return False, ("left_composition_law", (i, j))
            # rho_{b_i b_j} = rho_j rho_i
            want = _combine(m, rho, prod)
            if mm(rho[j], rho[i]) != want:
                return False, ("right_composition_law", (i, j))
            # lambda_i rho_j = rho_j lambda_i
            if mm(lam[i], rho[j]) != mm(rho[j], lam[i]):
                return False, ("permutability_law", (i, j))
    return True, None


def _validate_lie_action(action: Action) -> tuple[bool, tuple | None]:
    g, b = action.target, action.actor
    m = g.modulus
    lam = [action.left_matrix(i) for i in range(b.rank)]
    mulv = _vector_mul(g)
    mv = lambda p, v: linalg.mat_vec(m, p, v)
    for i in range(b.rank):
        for x in range(g.rank):
            for y in range(g.rank):
                # derivation law: d[x,y] = [dx,y] + [x,dy]
                lhs = mv(lam[i], g.constants[x][y])
                rhs = linalg.vec_add(
                    m,
                    mulv(_matrix_col(lam[i], x), _unit(g.rank, y)),
                    mulv(_unit(g.rank, x), _matrix_col(lam[i], y)),
                )
                if lhs != rhs:
                    return False, ("derivation_law", (i, x, y), lhs, rhs)
    for i in range(b.rank):
        for j in range(b.rank):
            prod = b.constants[i][j]
            want = _combine(m, lam, prod)
            bracket = _mat_sub(m, linalg.mat_mul(m, lam[i], lam[j]),
                               linalg.mat_mul(m, lam[j], lam[i]))
            if bracket != want:
                return False, ("bracket_homomorphism_law", (i, j))
    return True, None


def _vector_mul(g: FiniteAlgebra):
    def mulv(u: Coords, v: Coords) -> Coords:
        return g.coords(g.mul(g.index(u), g.index(v)))
    return mulv


def _matrix_col(mat: linalg.Matrix, j: int) -> Coords:
    return tuple(row[j] for row in mat)


def _unit(rank: int, i: int) -> Coords:
    return tuple(1 if k == i else 0 for k in range(rank))


def _combine(m: int, mats, coeffs: Coords) -> linalg.Matrix:
    r = len(mats[0]) if mats else 0
    out = linalg.zero_matrix(r, r)
    for c, mat in zip(coeffs, mats):
        if c:
            out = linalg.mat_add(m, out, linalg.mat_scale(m, c, mat))
    return out


def _mat_sub(m: int, a: linalg.Matrix, b: linalg.Matrix) -> linalg.Matrix:
    return linalg.mat_add(m, a, linalg.mat_scale(m, m - 1, b))


def check_action(action: Action) -> Action:
    ok, witness = validate_action(action)
    if not ok:
        raise InvalidAction(f"action axiom violated: {witness[0]}", witness=witness)
    return action


# -- split extensions ----------------------------------------------------------

@dataclass(frozen=True)
class SplitExtension:
    """(B, A, p, s, k) with p s = 1_B and k the kernel of p."""

    b: FiniteAlgebra
    a: FiniteAlgebra
    p: Morphism
    s: Morphism
    k: Morphism

    @property
    def kernel(self) -> FiniteAlgebra:
        return self.k.source

    @cached_property
    def kernel_index(self) -> dict[int, int]:
        """Inverse of k on its image."""
        return {self.k.mapping[x]: x for x in range(self.kernel.order)}


def check_split_extension(e: SplitExtension) -> SplitExtension:
    check_morphism(e.p)
    check_morphism(e.s)
    check_morphism(e.k)
    if not compose(e.p, e.s).is_identity():
        raise InvalidAction("section is not split by the projection")
    if not e.k.is_injective():
        raise InvalidAction("kernel map is not injective")
    image = set(e.k.mapping)
    true_kernel = {x for x in range(e.a.order) if e.p.mapping[x] == 0}
    if image != true_kernel:
        raise InvalidAction("k is not the kernel inclusion of p")
    if e.a.order != e.kernel.order * e.b.order:
        raise InvalidAction("split extension sizes are inconsistent")
    return e


def semidirect_product(action: Action, validate: bool = True) -> SplitExtension:
    """Build G x B with multiplication twisted by the action.

    Element (g, b) has index ``b * |G| + g`` so the kernel occupies the first
    |G| indices.  ``validate=False`` skips re-validating the action and the
    product's variety laws (used by bulk enumeration; the laws are theorems
    for valid actions).
    """
    if validate:
        check_action(action)
    b, g = action.actor, action.target
    if g.is_group:
        ext = _semidirect_group(action)
    else:
        ext = _semidirect_ring_like(action)
    if validate:
        validate_algebra(ext.a)
        check_split_extension(ext)
    return ext


def _semidirect_group(action: Action) -> SplitExtension:
    b, g = action.actor, action.target
    nb, ng = b.order, g.order
    alpha = np.array(action.autos, dtype=np.int32)        # (nb, ng)
    gadd = g.add_np
    badd = b.add_np
    twisted = gadd[:, alpha]                              # [g1, b1, g2]
    blk = twisted.transpose(1, 0, 2)[:, :, None, :]       # [b1, g1, 1, g2]
    base = (badd * ng)[:, None, :, None]                  # [b1, 1, b2, 1]
    table = (base + blk).reshape(nb * ng, nb * ng)
    name = f"{g.name or 'G'}:{b.name or 'B'}"
    a = FiniteAlgebra.group(table.tolist(), name=name)
    p = Morphism(a, b, tuple(i // ng for i in range(nb * ng)))
    s = Morphism(b, a, tuple(i * ng for i in range(nb)))
    k = Morphism(g, a, tuple(range(ng)))
    return SplitExtension(b, a, p, s, k)


def _semidirect_ring_like(action: Action) -> SplitExtension:
    b, g = action.actor, action.target
    rg, rb = g.rank, b.rank
    rank = rg + rb
    right = action.right_table()

    def pad_g(c: Coords) -> Coords:
        return tuple(c) + (0,) * rb

    def pad_b(c: Coords) -> Coords:
        return (0,) * rg + tuple(c)

    zero = (0,) * rank
    constants = [[zero] * rank for _ in range(rank)]
    for i in range(rg):
        for j in range(rg):
            constants[i][j] = pad_g(g.constants[i][j])
    for i in range(rb):
        for j in range(rb):
            constants[rg + i][rg + j] = pad_b(b.constants[i][j])
    for i in range(rb):
        for j in range(rg):
            constants[rg + i][j] = pad_g(action.left[i][j])     # e_i * f_j
            constants[j][rg + i] = pad_g(right[i][j])           # f_j * e_i
    labels = _merge_labels(g.labels, b.labels)
    name = f"{g.name or 'G'}:{b.name or 'B'}"
    a = FiniteAlgebra.ring_like(g.variety, tuple(tuple(row) for row in constants),
                                labels=labels, name=name)
    ng = g.order
    p = Morphism(a, b, tuple(b.index(a.coords(x)[rg:]) for x in range(a.order)))
    s = Morphism(b, a, tuple(a.index(pad_b(b.coords(x))) for x in range(b.order)))
    k = Morphism(g, a, tuple(a.index(pad_g(g.coords(x))) for x in range(ng)))
    return SplitExtension(b, a, p, s, k)


def _merge_labels(g_labels, b_labels) -> tuple[str, ...]:
    used = set(g_labels)
    out = list(g_labels)
    for lab in b_labels:
        new = lab
        while new in used:
            new += "'"
        used.add(new)
        out.append(new)
    return tuple(out)


def extract_action(e: SplitExtension) -> Action:
    """Read the action back from a split extension via conjugation (groups)
    or the mixed products (ring-like varieties)."""
    b, a, k_alg = e.b, e.a, e.kernel
    kinv = e.kernel_index

    def pull(x: int) -> int:
        got = kinv.get(x)
        if got is None:
            raise KernelNotInvariant(f"element {x} escapes the kernel")
        return got

    if a.is_group:
        autos = []
        for t in range(b.order):
            sb = e.s.mapping[t]
            nsb = a.neg(sb)
            autos.append(tuple(
                pull(a.add(a.add(sb, e.k.mapping[x]), nsb))
                for x in range(k_alg.order)
            ))
        return Action(b, k_alg, autos=tuple(autos))

    left = []
    right = []
    for i in range(b.rank):
        sb = e.s.mapping[b.basis_element(i)]
        left.append(tuple(
            k_alg.coords(pull(a.mul(sb, e.k.mapping[k_alg.basis_element(j)])))
            for j in range(k_alg.rank)
        ))
        right.append(tuple(
            k_alg.coords(pull(a.mul(e.k.mapping[k_alg.basis_element(j)], sb)))
            for j in range(k_alg.rank)
        ))
    if k_alg.variety.tag is VarietyTag.LIE:
        m = k_alg.modulus
        for i in range(b.rank):
            for j in range(k_alg.rank):
                if right[i][j] != linalg.vec_neg(m, left[i][j]):
                    raise KernelNotInvariant("bracket is not antisymmetric on the kernel")
        return Action(b, k_alg, left=tuple(left))
    return Action(b, k_alg, left=tuple(left), right=tuple(right))


# -- restriction and induced quotient actions ---------------------------------

@dataclass(frozen=True)
class NotInvariant:
    """Restriction failed: ``witness`` is (actor element, kernel element, side)."""

    witness: tuple

    def __bool__(self):
        return False


def invariance_witness(action: Action, h: Subobject) -> tuple | None:
    """First (actor element, target element, side) the action moves out of
    h, scanning left data then right data in ascending order; None when h is
    invariant."""
    g = action.target
    if h.parent is not g:
        raise ValueError("subobject must live in the action target")
    members = h.sorted_elements()
    if g.is_group:
        for t in range(action.actor.order):
            row = action.autos[t]
            for x in members:
                if row[x] not in h.elements:
                    return (t, x, "left")
        return None
    b = action.actor
    lie = g.variety.tag is VarietyTag.LIE
    for i in range(b.rank):
        bi = b.basis_element(i)
        for x in members:
            if action.left_apply(bi, x) not in h.elements:
                return (bi, x, "left")
    if not lie:
        for i in range(b.rank):
            bi = b.basis_element(i)
            for x in members:
                if action.right_apply(x, bi) not in h.elements:
                    return (bi, x, "right")
    return None


def restrict_action(action: Action, h: Subobject):
    """Restrict to an invariant subobject, or report the first witness.

    Returns the restricted ``Action`` on the subobject presented as an
    algebra (see ``sub_algebra``), or a ``NotInvariant`` result.
    """
    g = action.target
    witness = invariance_witness(action, h)
    if witness is not None:
        return NotInvariant(witness)
    if g.is_group:
        sub, embed = sub_algebra(h)
        local = {embed.mapping[i]: i for i in range(sub.order)}
        autos = tuple(
            tuple(local[action.autos[t][embed.mapping[i]]] for i in range(sub.order))
            for t in range(action.actor.order)
        )
        return Action(action.actor, sub, autos=autos)

    b = action.actor
    lie = g.variety.tag is VarietyTag.LIE
    sub, embed = sub_algebra(h)
    local = {embed.mapping[i]: i for i in range(sub.order)}
    left = tuple(
        tuple(sub.coords(local[action.left_apply(b.basis_element(i),
                                                 embed.mapping[sub.basis_element(j)])])
              for j in range(sub.rank))
        for i in range(b.rank)
    )
    if lie:
        return Action(b, sub, left=left)
    right = tuple(
        tuple(sub.coords(local[action.right_apply(embed.mapping[sub.basis_element(j)],
                                                  b.basis_element(i))])
              for j in range(sub.rank))
        for i in range(b.rank)
    )
    return Action(b, sub, left=left, right=right)


def induce_quotient_action(action: Action, h: Subobject) -> tuple[Action, FiniteAlgebra, Morphism]:
    """Push an action down to G/H; H must be invariant and normal.

    Representative independence is checked explicitly and raises
    ``NotWellDefinedError`` if violated (it cannot be, when the
    preconditions hold).  Returns (induced action, quotient, projection).
    """
    g = action.target
    restricted = restrict_action(action, h)
    if isinstance(restricted, NotInvariant):
        raise NotInvariantError(f"action does not restrict: witness {restricted.witness}")
    if not is_normal(h):
        raise NotNormalError("quotient actions need a normal subobject")
    q, proj = quotient(g, h)
    if g.is_group:
        reps = _quotient_reps(proj, q.order)
        autos = tuple(
            tuple(proj.mapping[action.autos[t][reps[c]]] for c in range(q.order))
            for t in range(action.actor.order)
        )
        induced = Action(action.actor, q, autos=autos)
        for t in range(action.actor.order):
            for x in range(g.order):
                if proj.mapping[action.autos[t][x]] != autos[t][proj.mapping[x]]:
                    raise NotWellDefinedError(f"quotient action ill-defined at ({t}, {x})")
        return induced, q, proj

    b = action.actor
    reps = _quotient_reps(proj, q.order)
    lie = g.variety.tag is VarietyTag.LIE
    left = tuple(
        tuple(q.coords(proj.mapping[action.left_apply(b.basis_element(i),
                                                      reps[q.basis_element(j)])])
              for j in range(q.rank))
        for i in range(b.rank)
    )
    if lie:
        induced = Action(b, q, left=left)
    else:
        right = tuple(
            tuple(q.coords(proj.mapping[action.right_apply(reps[q.basis_element(j)],
                                                           b.basis_element(i))])
                  for j in range(q.rank))
            for i in range(b.rank)
        )
        induced = Action(b, q, left=left, right=right)
    for i in range(b.rank):
        bi = b.basis_element(i)
        for x in range(g.order):
            if proj.mapping[action.left_apply(bi, x)] != induced.left_apply(bi, proj.mapping[x]):
                raise NotWellDefinedError(f"quotient action ill-defined at ({bi}, {x})")
            if not lie:
                if proj.mapping[action.right_apply(x, bi)] != induced.right_apply(proj.mapping[x], bi):
                    raise NotWellDefinedError(f"quotient action ill-defined at ({bi}, {x})")
    return induced, q, proj


def _quotient_reps(proj: Morphism, q_order: int) -> list[int]:
    reps = [-1] * q_order
    for x in range(proj.source.order):
        c = proj.mapping[x]
        if reps[c] < 0:
            reps[c] = x
    return reps


# -- enumeration ----------------------------------------------------------------

DEFAULT_GROUP_ACTOR_BOUND = 8
DEFAULT_RING_RANK_BOUND = 2
DEFAULT_AUT_CAP = 4096


def count_ring_like_actions(b: FiniteAlgebra, g: FiniteAlgebra) -> int:
    """Closed form for NARING only: both tables are unconstrained."""
    if g.variety.tag is not VarietyTag.NARING:
        raise ValueError("closed form only for nonassociative rings")
    m = g.modulus
    return m ** (2 * b.rank * g.rank * g.rank)


def enumerate_actions(b: FiniteAlgebra, g: FiniteAlgebra, *,
                      group_actor_bound: int = DEFAULT_GROUP_ACTOR_BOUND,
                      ring_rank_bound: int = DEFAULT_RING_RANK_BOUND,
                      aut_cap: int = DEFAULT_AUT_CAP):
    """Yield every valid action of b on g exactly once, lexicographically.

    Groups enumerate homomorphisms into Aut(g); rings enumerate multiplier
    pairs with the composition laws solved or filtered per basis slot; Lie
    algebras enumerate derivation tuples under the bracket-homomorphism law;
    nonassociative rings stream all pairs of bilinear tables lazily.
    """
    if b.variety.tag is not g.variety.tag or b.modulus != g.modulus:
        raise VarietyMismatch(f"{b.variety} cannot act on {g.variety}")
    tag = g.variety.tag
    if tag is VarietyTag.GROUP:
        if b.order > group_actor_bound:
            raise TooLarge(f"acting group order {b.order} exceeds {group_actor_bound}")
        return iter(_group_actions(b, g, aut_cap))
    if b.rank > ring_rank_bound:
        raise TooLarge(f"acting rank {b.rank} exceeds {ring_rank_bound}")
    if tag is VarietyTag.NARING:
        return _naring_actions(b, g)
    if tag is VarietyTag.RING:
        return iter(_ring_actions(b, g))
    return iter(_lie_actions(b, g))


def _group_actions(b: FiniteAlgebra, g: FiniteAlgebra, aut_cap: int) -> list[Action]:
    auts = automorphisms(g)
    if len(auts) > aut_cap:
        raise TooLarge(f"|Aut| = {len(auts)} exceeds cap {aut_cap}")
    comp = ComposedMaps(auts)
    homs = homs_into_maps(b, comp)
    actions = [
        Action(b, g, autos=tuple(auts[h[x]] for x in range(b.order)))
        for h in homs
    ]
    actions.sort(key=Action.key)
    return actions


def _naring_actions(b: FiniteAlgebra, g: FiniteAlgebra):
    m = g.modulus
    rb, rg = b.rank, g.rank
    cells = rb * rg

    def tables():
        for flat in itertools.product(itertools.product(range(m), repeat=rg),
                                      repeat=cells):
            yield tuple(tuple(flat[i * rg + j] for j in range(rg)) for i in range(rb))

    for left in tables():
        for right in tables():
            yield Action(b, g, left=left, right=right)


def multiplier_pairs(g: FiniteAlgebra) -> list[tuple[linalg.Matrix, linalg.Matrix]]:
    """All permutable multiplier pairs (lambda, rho) of a ring-like algebra:
    additive endomorphisms with lambda(xy) = lambda(x)y, rho(xy) = x rho(y),
    x lambda(y) = rho(x) y and lambda rho = rho lambda.

    These are exactly the unary-pair data every ring action must satisfy per
    actor element; cached on the algebra.
    """
    def build():
        m, r = g.modulus, g.rank
        mulv = _vector_mul(g)
        mats = list(linalg.all_matrices(m, r, r))

        def law_left(lam):
            return all(
                linalg.mat_vec(m, lam, g.constants[x][y])
                == mulv(_matrix_col(lam, x), _unit(r, y))
                for x in range(r) for y in range(r)
            )

        def law_right(rho):
            return all(
                linalg.mat_vec(m, rho, g.constants[x][y])
                == mulv(_unit(r, x), _matrix_col(rho, y))
                for x in range(r) for y in range(r)
            )

        lams = [mat for mat in mats if law_left(mat)]
        rhos = [mat for mat in mats if law_right(mat)]
        pairs = []
        for lam in lams:
            for rho in rhos:
                if linalg.mat_mul(m, lam, rho) != linalg.mat_mul(m, rho, lam):
                    continue
                if all(
                    mulv(_unit(r, x), _matrix_col(lam, y))
                    == mulv(_matrix_col(rho, x), _unit(r, y))
                    for x in range(r) for y in range(r)
                ):
                    pairs.append((lam, rho))
        pairs.sort()
        return tuple(pairs)

    return list(g.cache("multiplier_pairs", build))


def _pair_action(b: FiniteAlgebra, g: FiniteAlgebra, pairs) -> Action:
    left = tuple(
        tuple(_matrix_col(lam, j) for j in range(g.rank)) for (lam, _) in pairs
    )
    right = tuple(
        tuple(_matrix_col(rho, j) for j in range(g.rank)) for (_, rho) in pairs
    )
    return Action(b, g, left=left, right=right)


def _ring_cross_ok(b: FiniteAlgebra, g: FiniteAlgebra, pairs) -> bool:
    m = g.modulus
    lams = [p[0] for p in pairs]
    rhos = [p[1] for p in pairs]
    for i in range(b.rank):
        for j in range(b.rank):
            prod = b.constants[i][j]
            if linalg.mat_mul(m, lams[i], lams[j]) != _combine(m, lams, prod):
                return False
            if linalg.mat_mul(m, rhos[j], rhos[i]) != _combine(m, rhos, prod):
                return False
            if linalg.mat_mul(m, lams[i], rhos[j]) != linalg.mat_mul(m, rhos[j], lams[i]):
                return False
    return True


def _ring_actions(b: FiniteAlgebra, g: FiniteAlgebra) -> list[Action]:
    """Ring actions of b on g, exact and sorted.

    Per-slot candidates are the multiplier pairs; the composition laws
    across slots are solved where a structure coefficient is invertible and
    filtered otherwise.
    """
    m = g.modulus
    pb = multiplier_pairs(g)
    pb_set = set(pb)
    out: list[Action] = []
    if b.rank == 0:
        a = Action(b, g, left=(), right=())
        return [a]
    if b.rank == 1:
        c = b.constants[0][0][0]
        for (lam, rho) in pb:
            if (linalg.mat_mul(m, lam, lam) == linalg.mat_scale(m, c, lam)
                    and linalg.mat_mul(m, rho, rho) == linalg.mat_scale(m, c, rho)):
                out.append(_pair_action(b, g, [(lam, rho)]))
        out.sort(key=Action.key)
        return out
    if b.rank != 2:
        return _ring_actions_generic(b, g, pb)

    c00, c11 = b.constants[0][0], b.constants[1][1]
    inv00 = linalg.unit_inverse(m, c00[1])
    inv11 = linalg.unit_inverse(m, c11[0])

    def derive(lam, rho, coeff_self, inv):
        # solve X from: lam^2 = coeff_self * lam + c * X  (c invertible)
        lx = linalg.mat_scale(m, inv, _mat_sub(
            m, linalg.mat_mul(m, lam, lam), linalg.mat_scale(m, coeff_self, lam)))
        rx = linalg.mat_scale(m, inv, _mat_sub(
            m, linalg.mat_mul(m, rho, rho), linalg.mat_scale(m, coeff_self, rho)))
        return lx, rx

    if inv00 is not None:
        for p0 in pb:
            p1 = derive(p0[0], p0[1], c00[0], inv00)
            if p1 in pb_set and _ring_cross_ok(b, g, [p0, p1]):
                out.append(_pair_action(b, g, [p0, p1]))
    elif inv11 is not None:
        for p1 in pb:
            p0 = derive(p1[0], p1[1], c11[1], inv11)
            if p0 in pb_set and _ring_cross_ok(b, g, [p0, p1]):
                out.append(_pair_action(b, g, [p0, p1]))
    elif c00[1] == 0 and c11[0] == 0:
        # decoupled self-products constrain each slot on its own
        s0 = [p for p in pb
              if linalg.mat_mul(m, p[0], p[0]) == linalg.mat_scale(m, c00[0], p[0])
              and linalg.mat_mul(m, p[1], p[1]) == linalg.mat_scale(m, c00[0], p[1])]
        s1 = [p for p in pb
              if linalg.mat_mul(m, p[0], p[0]) == linalg.mat_scale(m, c11[1], p[0])
              and linalg.mat_mul(m, p[1], p[1]) == linalg.mat_scale(m, c11[1], p[1])]
        for p0 in s0:
            for p1 in s1:
                if _ring_cross_ok(b, g, [p0, p1]):
                    out.append(_pair_action(b, g, [p0, p1]))
    else:
        # composite modulus with zero-divisor coupling: filter directly
        return _ring_actions_generic(b, g, pb)
    out.sort(key=Action.key)
    return out


def _ring_actions_generic(b: FiniteAlgebra, g: FiniteAlgebra, pb) -> list[Action]:
    if len(pb) ** b.rank > 2_000_000:
        raise TooLarge("ring action space too large to filter directly")
    out = []
    for combo in itertools.product(pb, repeat=b.rank):
        if _ring_cross_ok(b, g, list(combo)):
            out.append(_pair_action(b, g, list(combo)))
    out.sort(key=Action.key)
    return out


def all_derivations(g: FiniteAlgebra) -> tuple[list[linalg.Matrix], dict]:
    """All derivation matrices of a ring-like algebra plus a coordinate dict
    mapping each derivation to its coefficients over the canonical basis."""
    def build():
        basis = derivation_basis(g)
        m = g.modulus
        combos = {}
        for coeffs in itertools.product(range(m), repeat=len(basis)):
            mat = linalg.zero_matrix(g.rank, g.rank)
            for c, d in zip(coeffs, basis):
                if c:
                    mat = linalg.mat_add(m, mat, linalg.mat_scale(m, c, d))
            combos.setdefault(mat, coeffs)
        mats = sorted(combos)
        return mats, combos

    return g.cache("derivations", build)


def derivation_basis(g: FiniteAlgebra) -> list[linalg.Matrix]:
    """Generating set for Der(g): solutions of the linear derivation law
    d[x,y] = [dx,y] + [x,dy] over Z_m.  Unknowns are the matrix entries
    d[k][q] (row-major)."""
    def build():
        m, r = g.modulus, g.rank
        rows = []
        for i in range(r):
            for j in range(r):
                for k in range(r):
                    # coefficient of d[k][q] in coordinate k of the law at (i, j)
                    coef = [0] * (r * r)
                    cij = g.constants[i][j]
                    for q in range(r):
                        coef[k * r + q] = (coef[k * r + q] + cij[q]) % m
                    for p in range(r):
                        coef[p * r + i] = (coef[p * r + i] - g.constants[p][j][k]) % m
                        coef[p * r + j] = (coef[p * r + j] - g.constants[i][p][k]) % m
                    rows.append(tuple(coef))
        vecs = linalg.nullspace_mod(m, rows, r * r)
        mats = [tuple(tuple(v[p * r + q] for q in range(r)) for p in range(r))
                for v in vecs]
        mats.sort()
        return mats

    return list(g.cache("derivation_basis", build))


def _lie_actions(b: FiniteAlgebra, g: FiniteAlgebra) -> list[Action]:
    mats, _ = all_derivations(g)
    m = g.modulus
    out = []
    if b.rank == 0:
        return [Action(b, g, left=())]

    def act_from(mats_chosen) -> Action:
        left = tuple(
            tuple(_matrix_col(d, j) for j in range(g.rank)) for d in mats_chosen
        )
        return Action(b, g, left=left)

    if b.rank == 1:
        out = [act_from([d]) for d in mats]
        out.sort(key=Action.key)
        return out
    if b.rank != 2:
        if len(mats) ** b.rank > 2_000_000:
            raise TooLarge("Lie action space too large to filter directly")
        for combo in itertools.product(mats, repeat=b.rank):
            if _lie_cross_ok(b, g, list(combo)):
                out.append(act_from(list(combo)))
        out.sort(key=Action.key)
        return out

    arr = np.array(mats, dtype=np.int64)  # (k, r, r)
    v = b.constants[0][1]
    brackets = (np.einsum("aij,bjk->abik", arr, arr)
                - np.einsum("bij,ajk->abik", arr, arr)) % m
    want = (v[0] * arr[:, None] + v[1] * arr[None, :]) % m
    ok = (brackets == want).all(axis=(2, 3))
    for i, j in np.argwhere(ok):
        out.append(act_from([mats[int(i)], mats[int(j)]]))
    out.sort(key=Action.key)
    return out


def _lie_cross_ok(b: FiniteAlgebra, g: FiniteAlgebra, mats_chosen) -> bool:
    m = g.modulus
    for i in range(b.rank):
        for j in range(b.rank):
            want = _combine(m, mats_chosen, b.constants[i][j])
            got = _mat_sub(m, linalg.mat_mul(m, mats_chosen[i], mats_chosen[j]),
                           linalg.mat_mul(m, mats_chosen[j], mats_chosen[i]))
            if got != want:
                return False
    return True
