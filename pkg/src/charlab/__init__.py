"""Workbench for characteristic subobjects of finite groups, rings,
nonassociative rings and Lie algebras: commutators, centralisers, actors,
and an executable property suite over built-in instance corpora."""

from ._version import __version__
from .core import (
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
from .subobjects import (
    Congruence,
    Subobject,
    enumerate_subobjects,
    generate,
    is_normal,
    join,
    kernel_pair,
    meet,
    normal_closure,
    quotient,
    sub_algebra,
    whole_subobject,
)
from .actions import (
    Action,
    NotInvariant,
    SplitExtension,
    conjugation_action,
    enumerate_actions,
    extract_action,
    induce_quotient_action,
    restrict_action,
    semidirect_product,
    trivial_action,
    validate_action,
)
from .invariants import (
    ActionGeneratorSet,
    DoesNotExist,
    OracleBounds,
    action_generators,
    centralizer,
    centre,
    higgins_commutator,
    huq_commutator,
    is_characteristic,
    is_characteristic_oracle,
)
from .actors import (
    Actor,
    FaithfulQuotient,
    actor,
    faithful_quotient,
    induced_actor_morphisms,
    induced_faithful_morphisms,
)
from .specfile import AlgebraSpecDocument, emit_spec, parse_spec
from .harness import HarnessConfig, Report, run_table_harness

__all__ = [name for name in dir() if not name.startswith("_")]
