"""The summarising-table harness: one executable check per property row.

Rows carrying category-of-interest or action-accessible hypotheses run on
groups, rings and Lie algebras; actor rows on groups and Lie algebras only.
Nonassociative rings run the counterexample rows (the derived subobject and
the centre of the witness algebra are normal but not characteristic, and
must stay that way: a reproduced counterexample records EXPECTED_FAIL and
keeps the suite green, a vanished one records FAIL).

Reports are deterministic: corpus order, witness selection and JSON
serialisation are all total orders, so byte-identical inputs give
byte-identical reports.
"""

from __future__ import annotations

import csv
import hashlib
import io
import itertools
import json
from dataclasses import dataclass, field

from ._version import __version__ as _version
from .actions import enumerate_actions, induce_quotient_action
from .actors import actor, induced_actor_morphisms, induced_faithful_morphisms
from .core import FiniteAlgebra, Variety, VarietyTag, validate_algebra
from .errors import CharlabError, TooLarge
from .invariants import (
    DoesNotExist,
    centralizer,
    centre,
    higgins_commutator,
    huq_commutator,
    is_characteristic,
)
from .specfile import emit_spec
from .subobjects import (
    Subobject,
    enumerate_subobjects,
    is_normal,
    join,
    kernel_pair,
    meet,
    pushforward,
    quotient,
    sub_algebra,
    subobject_in_subalgebra,
    whole_subobject,
)

COI_TAGS = (VarietyTag.GROUP, VarietyTag.RING, VarietyTag.LIE)


@dataclass(frozen=True)
class HarnessConfig:
    group_max_order: int = 16
    ring_moduli: tuple[int, ...] = (2, 3)
    ring_max_rank: int = 2
    varieties: tuple[VarietyTag, ...] = (VarietyTag.GROUP, VarietyTag.RING,
                                         VarietyTag.NARING, VarietyTag.LIE)
    bank_group_max_order: int = 4
    bank_ring_rank: int = 1
    bank_action_cap: int = 256
    faithful_action_cap: int = 32
    actor_table_cap: int = 512
    subobject_cap: int = 256

    def key(self) -> str:
        return json.dumps({
            "group_max_order": self.group_max_order,
            "ring_moduli": list(self.ring_moduli),
            "ring_max_rank": self.ring_max_rank,
            "varieties": [v.value for v in self.varieties],
            "bank_group_max_order": self.bank_group_max_order,
            "bank_ring_rank": self.bank_ring_rank,
            "bank_action_cap": self.bank_action_cap,
            "faithful_action_cap": self.faithful_action_cap,
        }, sort_keys=True)


@dataclass
class CheckRecord:
    name: str
    row: str
    instances: int
    verdict: str          # PASS | FAIL | EXPECTED_FAIL | INFO
    witness: str | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {"name": self.name, "row": self.row,
               "instances": self.instances, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.notes:
            out["notes"] = sorted(self.notes)
        return out


@dataclass
class Report:
    version: str
    input_sha256: str
    checks: list[CheckRecord]

    def to_dict(self) -> dict:
        return {"version": self.version, "input_sha256": self.input_sha256,
                "checks": [c.to_dict() for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "row", "instances", "verdict", "witness", "notes"])
        for c in self.checks:
            writer.writerow([c.name, c.row, c.instances, c.verdict,
                             c.witness or "", "; ".join(sorted(c.notes))])
        return buf.getvalue()

    def ok(self) -> bool:
        return all(c.verdict != "FAIL" for c in self.checks)


def counterexample_algebra(m: int) -> FiniteAlgebra:
    """Rank-2 nonassociative ring over Z_m with one idempotent generator and
    all other products zero; its derived subobject and centre are ideals yet
    fail to be characteristic."""
    alg = FiniteAlgebra.ring_like(
        Variety.naring(m), [[(1, 0), (0, 0)], [(0, 0), (0, 0)]],
        labels=("x", "y"), name=f"idem{m}")
    return validate_algebra(alg)


def builtin_corpus(config: HarnessConfig = HarnessConfig()) -> list[FiniteAlgebra]:
    from .corpus import group_corpus, ring_like_corpus

    out: list[FiniteAlgebra] = []
    if VarietyTag.GROUP in config.varieties:
        out.extend(group_corpus(config.group_max_order))
    for tag in (VarietyTag.RING, VarietyTag.NARING, VarietyTag.LIE):
        if tag in config.varieties:
            for m in config.ring_moduli:
                out.extend(ring_like_corpus(tag, m, config.ring_max_rank))
    return out


class _InstanceContext:
    """Per-instance caches shared by the rows."""

    def __init__(self, g: FiniteAlgebra, config: HarnessConfig):
        self.g = g
        self.config = config

    @property
    def subobjects(self) -> list[Subobject]:
        return enumerate_subobjects(self.g, self.config.subobject_cap)

    @property
    def char_subs(self) -> list[Subobject]:
        return [h for h in self.subobjects if is_characteristic(h)[0]]

    @property
    def normal_subs(self) -> list[Subobject]:
        return [h for h in self.subobjects if is_normal(h)]

    def action_bank(self):
        """Deterministic prefix of enumerated actions of small actors."""
        from .corpus import group_corpus, ring_like_corpus
        cfg = self.config
        if self.g.is_group:
            actors = [b for b in group_corpus(cfg.bank_group_max_order) if b.order > 1]
        else:
            actors = [b for b in ring_like_corpus(self.g.variety.tag, self.g.modulus,
                                                  cfg.bank_ring_rank) if b.rank > 0]
        for b in actors:
            try:
                stream = enumerate_actions(b, self.g)
            except TooLarge:
                yield b, None
                continue
            yield b, itertools.islice(stream, cfg.bank_action_cap)


def _witness_str(g: FiniteAlgebra, h: Subobject, extra: str = "") -> str:
    tail = f": {extra}" if extra else ""
    return f"{g.name or g!r}, subobject {h.describe()}{tail}"


# -- rows -------------------------------------------------------------------------

def _row_char_implies_normal(contexts) -> CheckRecord:
    rec = CheckRecord("char_implies_normal", "H char G => H normal in G", 0, "PASS")
    for ctx in contexts:
        for h in ctx.char_subs:
            rec.instances += 1
            if not is_normal(h):
                rec.verdict = "FAIL"
                rec.witness = _witness_str(ctx.g, h)
                return rec
    return rec


def _row_char_in_normal(contexts) -> CheckRecord:
    rec = CheckRecord("char_in_normal_is_normal",
                      "H char K, K normal in G => H normal in G", 0, "PASS")
    for ctx in contexts:
        for k in ctx.normal_subs:
            if k.is_trivial():
                continue
            sub, embed = sub_algebra(k)
            for h_local in enumerate_subobjects(sub, ctx.config.subobject_cap):
                if not is_characteristic(h_local)[0]:
                    continue
                h = pushforward(embed, h_local)
                rec.instances += 1
                if not is_normal(h):
                    rec.verdict = "FAIL"
                    rec.witness = _witness_str(ctx.g, h, f"inside {k.describe()}")
                    return rec
    return rec


def _row_char_transitive(contexts) -> CheckRecord:
    rec = CheckRecord("char_transitive", "H char K char G => H char G", 0, "PASS")
    for ctx in contexts:
        for k in ctx.char_subs:
            if k.is_trivial():
                continue
            sub, embed = sub_algebra(k)
            for h_local in enumerate_subobjects(sub, ctx.config.subobject_cap):
                if not is_characteristic(h_local)[0]:
                    continue
                h = pushforward(embed, h_local)
                rec.instances += 1
                ok, witness = is_characteristic(h)
                if not ok:
                    rec.verdict = "FAIL"
                    rec.witness = _witness_str(ctx.g, h, witness.describe(ctx.g))
                    return rec
    return rec


def _row_meet_char(contexts) -> CheckRecord:
    rec = CheckRecord("meet_char", "H, K char G => H meet K char G", 0, "PASS")
    for ctx in contexts:
        for h, k in itertools.combinations(ctx.char_subs, 2):
            rec.instances += 1
            both = meet(h, k)
            if not is_characteristic(both)[0]:
                rec.verdict = "FAIL"
                rec.witness = _witness_str(ctx.g, both)
                return rec
    return rec


def _row_join_char(contexts) -> CheckRecord:
    rec = CheckRecord("join_char", "H, K char G => H join K char G", 0, "PASS")
    for ctx in contexts:
        for h, k in itertools.combinations(ctx.char_subs, 2):
            rec.instances += 1
            joined = join(h, k)
            if not is_characteristic(joined)[0]:
                rec.verdict = "FAIL"
                rec.witness = _witness_str(ctx.g, joined)
                return rec
    return rec


def _row_join_search_naring(contexts) -> CheckRecord:
    rec = CheckRecord("join_char_search_naring",
                      "search: joins of char subobjects in naring", 0, "INFO")
    findings = 0
    first = None
    for ctx in contexts:
        for h, k in itertools.combinations(ctx.char_subs, 2):
            rec.instances += 1
            joined = join(h, k)
            if not is_characteristic(joined)[0]:
                findings += 1
                if first is None:
                    first = _witness_str(ctx.g, joined)
    rec.notes.append(f"violations found: {findings}")
    if first:
        rec.witness = first
    return rec


def _row_quotient_action(contexts) -> CheckRecord:
    rec = CheckRecord("quotient_action",
                      "H char G, B acts on G => B acts on G/H", 0, "PASS")
    for ctx in contexts:
        targets = [h for h in ctx.char_subs if not h.is_whole()]
        if not targets:
            continue
        for b, actions in ctx.action_bank():
            if actions is None:
                rec.notes.append(f"skipped actor {b.name} on {ctx.g.name}: too large")
                continue
            for action in actions:
                for h in targets:
                    rec.instances += 1
                    try:
                        induce_quotient_action(action, h)
                    except CharlabError as err:
                        rec.verdict = "FAIL"
                        rec.witness = _witness_str(ctx.g, h, str(err))
                        return rec
    return rec


def _row_intermediate_char(contexts) -> CheckRecord:
    rec = CheckRecord("intermediate_char",
                      "H <= K <= G, H char G, K/H char G/H => K char G", 0, "PASS")
    for ctx in contexts:
        for h in ctx.char_subs:
            if h.is_whole() or not is_normal(h):
                continue
            q, proj = quotient(ctx.g, h)
            for k in ctx.subobjects:
                if not k.contains_subobject(h):
                    continue
                k_image = pushforward(proj, k)
                if not is_characteristic(k_image)[0]:
                    continue
                rec.instances += 1
                ok, witness = is_characteristic(k)
                if not ok:
                    rec.verdict = "FAIL"
                    rec.witness = _witness_str(ctx.g, k, witness.describe(ctx.g))
                    return rec
    return rec


def _row_relation_closure(contexts) -> CheckRecord:
    rec = CheckRecord("relation_closure",
                      "H char G => the kernel pair of G -> G/H is closed under actions",
                      0, "PASS")
    for ctx in contexts:
        g = ctx.g
        targets = [h for h in ctx.char_subs if not h.is_whole()]
        pairs_for = {}
        for h in targets:
            _, proj = quotient(g, h)
            pairs_for[h] = kernel_pair(proj).pairs
        if not targets:
            continue
        for b, actions in ctx.action_bank():
            if actions is None:
                rec.notes.append(f"skipped actor {b.name} on {ctx.g.name}: too large")
                continue
            for action in actions:
                for h in targets:
                    rec.instances += 1
                    pairs = pairs_for[h]
                    if g.is_group:
                        closed = all(
                            (action.autos[t][x], action.autos[t][y]) in pairs
                            for t in range(b.order) for (x, y) in pairs
                        )
                    else:
                        basis = [b.basis_element(i) for i in range(b.rank)]
                        lie = g.variety.tag is VarietyTag.LIE
                        closed = all(
                            (action.left_apply(t, x), action.left_apply(t, y)) in pairs
                            and (lie or (action.right_apply(x, t),
                                         action.right_apply(y, t)) in pairs)
                            for t in basis for (x, y) in pairs
                        )
                    if not closed:
                        rec.verdict = "FAIL"
                        rec.witness = _witness_str(g, h, f"actor {b.name}")
                        return rec
    return rec


def _row_derived_char(contexts) -> CheckRecord:
    rec = CheckRecord("derived_char", "[G,G] char G", 0, "PASS")
    for ctx in contexts:
        rec.instances += 1
        whole = whole_subobject(ctx.g)
        derived = higgins_commutator(whole, whole)
        ok, witness = is_characteristic(derived)
        if not ok:
            rec.verdict = "FAIL"
            rec.witness = _witness_str(ctx.g, derived, witness.describe(ctx.g))
            return rec
    return rec


def _row_commutator_char(contexts) -> CheckRecord:
    rec = CheckRecord("commutator_char",
                      "H, K char G => [H,K] char G (Higgins and Huq agree)", 0, "PASS")
    rec.notes.append("ring commutators use the generated subring of the "
                     "two-sided products")
    for ctx in contexts:
        pairs = list(itertools.combinations_with_replacement(ctx.char_subs, 2))
        for h, k in pairs:
            rec.instances += 1
            hig = higgins_commutator(h, k)
            huq = huq_commutator(h, k)
            if hig.elements != huq.elements:
                rec.verdict = "FAIL"
                rec.witness = _witness_str(ctx.g, hig, "Higgins differs from Huq")
                return rec
            ok, witness = is_characteristic(hig)
            if not ok:
                rec.verdict = "FAIL"
                rec.witness = _witness_str(ctx.g, hig, witness.describe(ctx.g))
                return rec
    return rec


def _row_centre_char(contexts) -> CheckRecord:
    rec = CheckRecord("centre_char", "Z(G) char G", 0, "PASS")
    for ctx in contexts:
        rec.instances += 1
        z = centre(ctx.g)
        if isinstance(z, DoesNotExist):
            rec.notes.append(f"{ctx.g.name}: centre does not exist")
            continue
        ok, witness = is_characteristic(z)
        if not ok:
            rec.verdict = "FAIL"
            rec.witness = _witness_str(ctx.g, z, witness.describe(ctx.g))
            return rec
    return rec


def _row_centralizer_char(contexts) -> CheckRecord:
    rec = CheckRecord("centralizer_char", "H char G => Z_G(H) char G", 0, "PASS")
    for ctx in contexts:
        for h in ctx.char_subs:
            rec.instances += 1
            z = centralizer(h)
            if isinstance(z, DoesNotExist):
                rec.notes.append(f"{ctx.g.name}: centraliser of {h.describe()} missing")
                continue
            ok, witness = is_characteristic(z)
            if not ok:
                rec.verdict = "FAIL"
                rec.witness = _witness_str(ctx.g, z, witness.describe(ctx.g))
                return rec
    return rec


def _row_centralizer_normal(contexts) -> CheckRecord:
    rec = CheckRecord("centralizer_normal",
                      "H normal in G => Z_G(H) normal in G", 0, "PASS")
    for ctx in contexts:
        for h in ctx.normal_subs:
            rec.instances += 1
            z = centralizer(h)
            if isinstance(z, DoesNotExist):
                rec.notes.append(f"{ctx.g.name}: centraliser of {h.describe()} missing")
                continue
            if not is_normal(z):
                rec.verdict = "FAIL"
                rec.witness = _witness_str(ctx.g, z)
                return rec
    return rec


def _row_centralizer_meet(contexts) -> CheckRecord:
    rec = CheckRecord("centralizer_meet_identity",
                      "H <= G' both normal => Z_{G'}(H) = Z_G(H) meet G'", 0, "PASS")
    for ctx in contexts:
        for gp in ctx.normal_subs:
            if gp.is_trivial():
                continue
            sub, embed = sub_algebra(gp)
            for h in ctx.normal_subs:
                if not gp.contains_subobject(h):
                    continue
                z_g = centralizer(h)
                if isinstance(z_g, DoesNotExist):
                    continue
                rec.instances += 1
                h_local = subobject_in_subalgebra(h, gp)
                z_local = centralizer(h_local)
                if isinstance(z_local, DoesNotExist):
                    rec.verdict = "FAIL"
                    rec.witness = _witness_str(ctx.g, h, "inner centraliser missing")
                    return rec
                inner = pushforward(embed, z_local)
                expected = meet(z_g, gp)
                if inner.elements != expected.elements:
                    rec.verdict = "FAIL"
                    rec.witness = _witness_str(ctx.g, h, f"inside {gp.describe()}")
                    return rec
    return rec


def _row_actor_morphisms(contexts) -> CheckRecord:
    rec = CheckRecord("actor_morphisms",
                      "H char G => Act(G) -> Act(H) and Act(G) -> Act(G/H)", 0, "PASS")
    for ctx in contexts:
        try:
            actor(ctx.g, ctx.config.actor_table_cap)
        except TooLarge:
            rec.notes.append(f"skipped {ctx.g.name}: actor too large")
            continue
        for h in ctx.char_subs:
            rec.instances += 1
            try:
                induced_actor_morphisms(ctx.g, h, ctx.config.actor_table_cap)
            except TooLarge:
                rec.notes.append(
                    f"skipped {ctx.g.name} / {h.describe()}: actor too large")
            except CharlabError as err:
                rec.verdict = "FAIL"
                rec.witness = _witness_str(ctx.g, h, str(err))
                return rec
    return rec


def _row_faithful_morphisms(contexts) -> CheckRecord:
    rec = CheckRecord("faithful_morphisms",
                      "H char G => T0(B,G) -> T0(B,H) and T0(B,G) -> T0(B,G/H)",
                      0, "PASS")
    for ctx in contexts:
        targets = [h for h in ctx.char_subs if not h.is_whole()]
        if not targets:
            continue
        for b, actions in ctx.action_bank():
            if actions is None:
                rec.notes.append(f"skipped actor {b.name} on {ctx.g.name}: too large")
                continue
            for action in itertools.islice(actions, ctx.config.faithful_action_cap):
                for h in targets:
                    rec.instances += 1
                    try:
                        induced_faithful_morphisms(action, h)
                    except CharlabError as err:
                        rec.verdict = "FAIL"
                        rec.witness = _witness_str(ctx.g, h, str(err))
                        return rec
    return rec


def _row_counterexample(name: str, row: str, moduli, kind: str) -> CheckRecord:
    rec = CheckRecord(name, row, 0, "EXPECTED_FAIL")
    for m in moduli:
        g = counterexample_algebra(m)
        whole = whole_subobject(g)
        target = (higgins_commutator(whole, whole) if kind == "derived"
                  else centre(g))
        rec.instances += 1
        if not is_normal(target):
            rec.verdict = "FAIL"
            rec.witness = f"{g.name}: expected an ideal"
            return rec
        ok, witness = is_characteristic(target)
        if ok:
            rec.verdict = "FAIL"
            rec.witness = (f"{g.name}: {target.describe()} became characteristic; "
                           "the counterexample no longer reproduces")
            return rec
        if rec.witness is None:
            rec.witness = _witness_str(g, target, witness.describe(g))
    return rec


# (row function, varieties it runs on; None means all four)
TABLE_ROWS = [
    (_row_char_implies_normal, None),
    (_row_char_in_normal, None),
    (_row_char_transitive, None),
    (_row_meet_char, None),
    (_row_quotient_action, None),
    (_row_intermediate_char, None),
    (_row_relation_closure, None),
    (_row_join_char, COI_TAGS),
    (_row_derived_char, COI_TAGS),
    (_row_commutator_char, COI_TAGS),
    (_row_centre_char, COI_TAGS),
    (_row_centralizer_char, COI_TAGS),
    (_row_centralizer_normal, COI_TAGS),
    (_row_centralizer_meet, COI_TAGS),
    (_row_actor_morphisms, (VarietyTag.GROUP, VarietyTag.LIE)),
    (_row_faithful_morphisms, COI_TAGS),
]


def input_digest(corpus, config: HarnessConfig) -> str:
    blob = config.key() + "\n" + "\n".join(emit_spec(g) for g in corpus)
    return hashlib.sha256(blob.encode()).hexdigest()


def run_table_harness(corpus=None, config: HarnessConfig = HarnessConfig()) -> Report:
    if corpus is None:
        corpus = builtin_corpus(config)
    contexts = [_InstanceContext(g, config) for g in corpus]
    by_tag = {}
    for ctx in contexts:
        by_tag.setdefault(ctx.g.variety.tag, []).append(ctx)

    checks: list[CheckRecord] = []
    for func, allowed in TABLE_ROWS:
        selected = []
        for tag in (allowed or tuple(VarietyTag)):
            selected.extend(by_tag.get(tag, []))
        checks.append(func(selected))

    narings = by_tag.get(VarietyTag.NARING, [])
    if narings:
        checks.append(_row_join_search_naring(narings))
    moduli = tuple(sorted(set(config.ring_moduli) | {5}))
    checks.append(_row_counterexample(
        "derived_char_counterexample",
        "[G,G] of the idempotent-generator naring is an ideal but not characteristic",
        moduli, "derived"))
    checks.append(_row_counterexample(
        "centre_char_counterexample",
        "Z(G) of the idempotent-generator naring is an ideal but not characteristic",
        moduli, "centre"))

    return Report(_version, input_digest(corpus, config), checks)
