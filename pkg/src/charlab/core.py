"""Finite algebra carriers for the four supported varieties.

A ``FiniteAlgebra`` is either a group given by a full Cayley table (identity
at index 0) or a ring-like algebra -- associative ring, not necessarily
associative ring, or Lie algebra -- whose carrier is the free module
(Z_m)^rank with multiplication given by structure constants.

Element encoding is uniform: an element is an index into ``range(order)``.
Ring-like algebras lay the module out little-endian, so coordinates
``(c0, ..., c_{r-1})`` live at index ``sum(c_i * m**i)``; basis vector
``e_i`` therefore has index ``m**i``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg
from .errors import (
    AntisymmetryFails,
    InvalidMorphism,
    JacobiFails,
    NotAGroup,
    NotAssociative,
    UnsupportedOperation,
    VarietyMismatch,
)


class VarietyTag(enum.Enum):
    GROUP = "group"
    RING = "ring"
    NARING = "naring"
    LIE = "lie"


class OpKind(enum.Enum):
    ADD = "add"
    MUL = "mul"


@dataclass(frozen=True)
class Variety:
    """A variety tag plus, for ring-like varieties, the coefficient modulus."""

    tag: VarietyTag
    modulus: int | None = None

    def __post_init__(self):
        if self.tag is VarietyTag.GROUP:
            if self.modulus is not None:
                raise ValueError("GROUP carries no modulus")
        else:
            if self.modulus is None or self.modulus < 2:
                raise ValueError(f"{self.tag.value} needs a modulus >= 2")

    @property
    def ring_like(self) -> bool:
        return self.tag is not VarietyTag.GROUP

    @classmethod
    def group(cls) -> "Variety":
        return cls(VarietyTag.GROUP)

    @classmethod
    def ring(cls, m: int) -> "Variety":
        return cls(VarietyTag.RING, m)

    @classmethod
    def naring(cls, m: int) -> "Variety":
        return cls(VarietyTag.NARING, m)

    @classmethod
    def lie(cls, m: int) -> "Variety":
        return cls(VarietyTag.LIE, m)

    def __str__(self):
        if self.tag is VarietyTag.GROUP:
            return "group"
        return f"{self.tag.value} mod {self.modulus}"


class FiniteAlgebra:
    """Immutable finite algebra in one of the four varieties.

    Build groups with :meth:`group` and ring-like algebras with
    :meth:`ring_like`; run :func:`validate_algebra` to check the variety laws.
    Instances hash and compare by identity; use :meth:`key` for content
    comparisons.
    """

    def __init__(self, variety: Variety, *, table=None, constants=None,
                 labels=None, name: str | None = None):
        self.variety = variety
        self.name = name
        if variety.tag is VarietyTag.GROUP:
            if table is None:
                raise ValueError("GROUP algebras need a Cayley table")
            self.table = tuple(tuple(int(x) for x in row) for row in table)
            self.order = len(self.table)
            for row in self.table:
                if len(row) != self.order:
                    raise ValueError("Cayley table must be square")
                for x in row:
                    if not 0 <= x < self.order:
                        raise ValueError(f"table entry {x} out of range")
            self.rank = None
            self.constants = None
            self.labels = tuple(labels) if labels else tuple(str(i) for i in range(self.order))
            if len(self.labels) != self.order:
                raise ValueError("need one label per element")
        else:
            if constants is None:
                raise ValueError("ring-like algebras need structure constants")
            m = variety.modulus
            self.constants = tuple(
                tuple(tuple(int(c) % m for c in cell) for cell in row) for row in constants
            )
            self.rank = len(self.constants)
            for row in self.constants:
                if len(row) != self.rank or any(len(cell) != self.rank for cell in row):
                    raise ValueError("structure constants must be rank x rank x rank")
            self.order = m ** self.rank
            self.table = None
            self.labels = tuple(labels) if labels else tuple(f"e{i}" for i in range(self.rank))
            if len(self.labels) != self.rank:
                raise ValueError("need one label per basis vector")
        self._validated = False
        self._caches: dict = {}

    # -- constructors -------------------------------------------------------

    @classmethod
    def group(cls, table, name: str | None = None, labels=None) -> "FiniteAlgebra":
        return cls(Variety.group(), table=table, labels=labels, name=name)

    @classmethod
    def ring_like(cls, variety: Variety, constants, labels=None,
                  name: str | None = None) -> "FiniteAlgebra":
        if not variety.ring_like:
            raise ValueError("use FiniteAlgebra.group for groups")
        return cls(variety, constants=constants, labels=labels, name=name)

    @classmethod
    def zero_algebra(cls, variety: Variety, rank: int, labels=None,
                     name: str | None = None) -> "FiniteAlgebra":
        """Ring-like algebra with identically zero multiplication."""
        z = tuple(tuple((0,) * rank for _ in range(rank)) for _ in range(rank))
        return cls.ring_like(variety, z, labels=labels, name=name)

    # -- element encoding ---------------------------------------------------

    @property
    def modulus(self) -> int | None:
        return self.variety.modulus

    @property
    def is_group(self) -> bool:
        return self.variety.tag is VarietyTag.GROUP

    def elements(self) -> range:
        return range(self.order)

    def coords(self, idx: int) -> tuple[int, ...]:
        if self.is_group:
            raise UnsupportedOperation("groups have no coordinates")
        m = self.modulus
        return tuple((idx // m ** i) % m for i in range(self.rank))

    def index(self, coords) -> int:
        if self.is_group:
            raise UnsupportedOperation("groups have no coordinates")
        m = self.modulus
        if len(coords) != self.rank:
            raise ValueError("coordinate length mismatch")
        return sum((c % m) * m ** i for i, c in enumerate(coords))

    def basis_element(self, i: int) -> int:
        return self.modulus ** i

    # -- operations ---------------------------------------------------------

    @cached_property
    def _add_table(self) -> tuple[tuple[int, ...], ...]:
        if self.is_group:
            return self.table
        m, r = self.modulus, self.rank
        n = self.order
        rows = []
        for a in range(n):
            ca = self.coords(a)
            rows.append(tuple(self.index(linalg.vec_add(m, ca, self.coords(b)))
                              for b in range(n)))
        return tuple(rows)

    @cached_property
    def _mul_table(self) -> tuple[tuple[int, ...], ...] | None:
        if self.is_group:
            return None
        n = self.order
        return tuple(tuple(self._mul_coords(a, b) for b in range(n)) for a in range(n))

    def _mul_coords(self, a: int, b: int) -> int:
        m = self.modulus
        ca, cb = self.coords(a), self.coords(b)
        out = [0] * self.rank
        for i, ai in enumerate(ca):
            if not ai:
                continue
            for j, bj in enumerate(cb):
                if not bj:
                    continue
                f = ai * bj
                cell = self.constants[i][j]
                for k in range(self.rank):
                    out[k] = (out[k] + f * cell[k]) % m
        return self.index(out)

    @cached_property
    def _neg_table(self) -> tuple[int, ...]:
        if not self.is_group:
            m = self.modulus
            return tuple(self.index(linalg.vec_neg(m, self.coords(a)))
                         for a in range(self.order))
        neg = [None] * self.order
        for a in range(self.order):
            for b in range(self.order):
                if self.table[a][b] == 0 and self.table[b][a] == 0:
                    neg[a] = b
                    break
            if neg[a] is None:
                raise NotAGroup(f"element {a} has no inverse", witness=("inverse", a))
        return tuple(neg)

    def add(self, a: int, b: int) -> int:
        return self._add_table[a][b]

    def mul(self, a: int, b: int) -> int:
        if self.is_group:
            raise UnsupportedOperation("GROUP carries no second binary operation")
        return self._mul_table[a][b]

    def neg(self, a: int) -> int:
        return self._neg_table[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    @cached_property
    def add_np(self) -> np.ndarray:
        return np.array(self._add_table, dtype=np.int32)

    @cached_property
    def mul_np(self) -> np.ndarray | None:
        return None if self.is_group else np.array(self._mul_table, dtype=np.int32)

    @cached_property
    def neg_np(self) -> np.ndarray:
        return np.array(self._neg_table, dtype=np.int32)

    # -- derived structure --------------------------------------------------

    @cached_property
    def is_abelian(self) -> bool:
        if not self.is_group:
            return True
        t = self.add_np
        return bool((t == t.T).all())

    def element_order(self, a: int) -> int:
        """Order of ``a`` in the additive (group) structure."""
        x, n = a, 1
        while x != 0:
            x = self.add(x, a)
            n += 1
        return n

    @cached_property
    def element_order_profile(self) -> tuple[int, ...]:
        return tuple(sorted(self.element_order(a) for a in range(self.order)))

    def element_repr(self, idx: int) -> str:
        if self.is_group:
            return self.labels[idx]
        c = self.coords(idx)
        terms = []
        for coeff, lab in zip(c, self.labels):
            if coeff == 0:
                continue
            terms.append(lab if coeff == 1 else f"{coeff}{lab}")
        return "+".join(terms) if terms else "0"

    def key(self):
        """Content key: equal keys mean equal tables, not just isomorphism."""
        if self.is_group:
            return (self.variety.tag.value, self.order, self.table)
        return (self.variety.tag.value, self.modulus, self.rank, self.constants)

    def cache(self, name: str, build):
        """Per-instance memo used by the heavier derived computations."""
        if name not in self._caches:
            self._caches[name] = build()
        return self._caches[name]

    def __repr__(self):
        label = self.name or "?"
        if self.is_group:
            return f"<group {label} of order {self.order}>"
        return f"<{self.variety.tag.value} {label} rank {self.rank} over Z_{self.modulus}>"


def op_apply(algebra: FiniteAlgebra, a: int, b: int, which: OpKind) -> int:
    """Evaluate the group operation (ADD) or the second binary operation (MUL)."""
    if not (0 <= a < algebra.order and 0 <= b < algebra.order):
        raise ValueError("element out of range")
    if which is OpKind.ADD:
        return algebra.add(a, b)
    return algebra.mul(a, b)


# -- validation --------------------------------------------------------------

def validate_algebra(algebra: FiniteAlgebra) -> FiniteAlgebra:
    """Check every law of the algebra's variety, exhaustively.

    Returns the algebra unchanged when all laws hold; otherwise raises the
    error for the first violated law together with a witness.  Group laws are
    checked on all pairs/triples of elements; ring-like laws on basis tuples,
    which suffices because both sides of each law are multilinear.
    """
    tag = algebra.variety.tag
    if tag is VarietyTag.GROUP:
        _validate_group(algebra)
    elif tag is VarietyTag.RING:
        _validate_ring(algebra)
    elif tag is VarietyTag.LIE:
        _validate_lie(algebra)
    # NARING: bilinearity is structural; nothing beyond shape checks.
    algebra._validated = True
    return algebra


def _validate_group(g: FiniteAlgebra) -> None:
    n = g.order
    t = g.add_np
    for a in range(n):
        if g.table[0][a] != a or g.table[a][0] != a:
            raise NotAGroup(f"0 is not an identity at {a}", witness=("identity", a))
    g._neg_table  # raises NotAGroup on a missing inverse
    for a in range(n):
        left = t[t[a], :]          # (b, c) -> (a*b)*c
        right = t[a, t]            # (b, c) -> a*(b*c)
        if not (left == right).all():
            b, c = np.argwhere(left != right)[0]
            raise NotAGroup(
                f"associativity fails at ({a},{b},{c})",
                witness=("associativity", (a, int(b), int(c))),
            )


def _validate_ring(g: FiniteAlgebra) -> None:
    r = g.rank
    for i, j, k in itertools.product(range(r), repeat=3):
        ei, ej, ek = g.basis_element(i), g.basis_element(j), g.basis_element(k)
        if g.mul(g.mul(ei, ej), ek) != g.mul(ei, g.mul(ej, ek)):
            raise NotAssociative(
                f"(e{i}*e{j})*e{k} != e{i}*(e{j}*e{k})", witness=(i, j, k)
            )


def _validate_lie(g: FiniteAlgebra) -> None:
    r, m = g.rank, g.modulus
    for i in range(r):
        if any(c % m for c in g.constants[i][i]):
            raise AntisymmetryFails(f"[e{i},e{i}] != 0", witness=(i,))
    for i, j in itertools.combinations(range(r), 2):
        s = linalg.vec_add(m, g.constants[i][j], g.constants[j][i])
        if any(s):
            raise AntisymmetryFails(f"[e{i},e{j}] + [e{j},e{i}] != 0", witness=(i, j))
    for i, j, k in itertools.product(range(r), repeat=3):
        ei, ej, ek = g.basis_element(i), g.basis_element(j), g.basis_element(k)
        total = g.add(
            g.add(g.mul(g.mul(ei, ej), ek), g.mul(g.mul(ej, ek), ei)),
            g.mul(g.mul(ek, ei), ej),
        )
        if total != 0:
            raise JacobiFails(
                f"Jacobi fails on (e{i},e{j},e{k})", witness=(i, j, k)
            )


# -- morphisms ---------------------------------------------------------------

@dataclass(frozen=True)
class Morphism:
    """A map between algebras of the same variety, stored pointwise.

    For ring-like algebras the map is determined by a matrix on coordinates
    (additivity over Z_m forces linearity); :meth:`from_matrix` builds the
    pointwise table from one.
    """

    source: FiniteAlgebra
    target: FiniteAlgebra
    mapping: tuple[int, ...]

    def __post_init__(self):
        if len(self.mapping) != self.source.order:
            raise ValueError("mapping must cover the whole source")
        if (self.source.variety.tag is not self.target.variety.tag
                or self.source.modulus != self.target.modulus):
            raise VarietyMismatch(
                f"{self.source.variety} vs {self.target.variety}"
            )

    def __call__(self, a: int) -> int:
        return self.mapping[a]

    @classmethod
    def from_matrix(cls, source: FiniteAlgebra, target: FiniteAlgebra,
                    matrix: linalg.Matrix) -> "Morphism":
        m = source.modulus
        mapping = tuple(
            target.index(linalg.mat_vec(m, matrix, source.coords(a)))
            for a in range(source.order)
        )
        return cls(source, target, mapping)

    @classmethod
    def identity(cls, algebra: FiniteAlgebra) -> "Morphism":
        return cls(algebra, algebra, tuple(range(algebra.order)))

    @classmethod
    def zero(cls, source: FiniteAlgebra, target: FiniteAlgebra) -> "Morphism":
        return cls(source, target, (0,) * source.order)

    @cached_property
    def basis_images(self) -> tuple[tuple[int, ...], ...]:
        """Images of the source basis as target coordinates (ring-like only)."""
        return tuple(self.target.coords(self.mapping[self.source.basis_element(i)])
                     for i in range(self.source.rank))

    @cached_property
    def matrix(self) -> linalg.Matrix:
        """Coordinate matrix with basis images as columns (ring-like only)."""
        imgs = self.basis_images
        return tuple(tuple(imgs[j][i] for j in range(self.source.rank))
                     for i in range(self.target.rank))

    def is_injective(self) -> bool:
        return len(set(self.mapping)) == self.source.order

    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.target.order

    def is_identity(self) -> bool:
        return self.source is self.target and all(
            self.mapping[i] == i for i in range(self.source.order)
        )


def compose(outer: Morphism, inner: Morphism) -> Morphism:
    """outer after inner."""
    if inner.target is not outer.source:
        raise InvalidMorphism("composition target/source mismatch")
    return Morphism(inner.source, outer.target,
                    tuple(outer.mapping[x] for x in inner.mapping))


def is_morphism(f: Morphism) -> tuple[bool, tuple | None]:
    """Exhaustively check that f preserves ADD (and MUL for ring-like).

    Returns ``(True, None)`` or ``(False, (op, a, b))`` with the first
    violating pair in ascending order.
    """
    src, tgt = f.source, f.target
    fm = np.array(f.mapping, dtype=np.int32)
    lhs = fm[src.add_np]
    rhs = tgt.add_np[fm[:, None], fm[None, :]]
    if not (lhs == rhs).all():
        a, b = np.argwhere(lhs != rhs)[0]
        return False, ("add", int(a), int(b))
    if not src.is_group:
        lhs = fm[src.mul_np]
        rhs = tgt.mul_np[fm[:, None], fm[None, :]]
        if not (lhs == rhs).all():
            a, b = np.argwhere(lhs != rhs)[0]
            return False, ("mul", int(a), int(b))
    return True, None


def check_morphism(f: Morphism) -> Morphism:
    ok, witness = is_morphism(f)
    if not ok:
        op, a, b = witness
        raise InvalidMorphism(
            f"map does not preserve {op} at ({a},{b})", witness=witness
        )
    return f
