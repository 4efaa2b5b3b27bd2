"""Command line interface.

Exit codes: 0 when every verdict comes out as expected, 1 when a property
violation is found (verify-table), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ._version import __version__
from .actions import enumerate_actions, semidirect_product
from .actors import actor, faithful_quotient
from .core import FiniteAlgebra, VarietyTag
from .errors import (
    CharlabError,
    NotAccessibleVariety,
    NotRepresentative,
    SpecFileError,
    TooLarge,
)
from .harness import HarnessConfig, run_table_harness
from .invariants import (
    DoesNotExist,
    OracleBounds,
    centralizer,
    centre,
    higgins_commutator,
    huq_commutator,
    is_characteristic,
    is_characteristic_oracle,
)
from .specfile import parse_spec
from .subobjects import (
    Subobject,
    enumerate_subobjects,
    is_normal,
    whole_subobject,
)


def _load(path: str):
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as err:
        raise SpecFileError(f"cannot read {path}: {err.strerror}") from err
    algebra, named = parse_spec(text, name=p.stem)
    return algebra, named


def _emit(payload: dict, args) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in payload["lines"]:
            print(line)


def _sub_by_name(algebra, named, name: str) -> Subobject:
    if name in named:
        return named[name]
    raise SpecFileError(f"no subobject named {name!r} declared in the file")


def _describe_sub(algebra, sub: Subobject) -> str:
    return sub.describe()


def cmd_validate(args) -> int:
    algebra, named = _load(args.file)
    lines = [f"{algebra.variety}: order {algebra.order}" +
             (f", rank {algebra.rank}" if not algebra.is_group else "")]
    for name, sub in named.items():
        lines.append(f"sub {name}: {_describe_sub(algebra, sub)}")
    _emit({"variety": str(algebra.variety), "order": algebra.order,
           "subobjects": {n: sorted(s.elements) for n, s in named.items()},
           "lines": lines + ["valid"]}, args)
    return 0


def cmd_subobjects(args) -> int:
    algebra, _ = _load(args.file)
    subs = enumerate_subobjects(algebra, args.max_order)
    lines = []
    records = []
    for s in subs:
        normal = is_normal(s)
        char, _w = is_characteristic(s)
        records.append({"elements": sorted(s.elements), "order": len(s),
                        "normal": normal, "characteristic": char})
        flags = ("normal" if normal else "not normal",
                 "characteristic" if char else "not characteristic")
        lines.append(f"order {len(s):>3}  {_describe_sub(algebra, s)}  [{', '.join(flags)}]")
    _emit({"count": len(subs), "subobjects": records, "lines": lines}, args)
    return 0


def cmd_char(args) -> int:
    algebra, named = _load(args.file)
    targets = ([(args.sub, _sub_by_name(algebra, named, args.sub))]
               if args.sub else sorted(named.items()))
    if not targets:
        raise SpecFileError("no subobjects declared; use 'sub <name>: ...' or --sub")
    lines = []
    records = []
    for name, sub in targets:
        if args.oracle:
            ok, witness = is_characteristic_oracle(sub, OracleBounds(
                group_order=min(args.max_order, 8)))
            wtext = witness.describe() if witness else None
        else:
            ok, witness = is_characteristic(sub)
            wtext = witness.describe(algebra) if witness else None
        normal = is_normal(sub)
        verdict = "characteristic" if ok else "NOT characteristic"
        lines.append(f"{name} = {_describe_sub(algebra, sub)}: "
                     f"{'normal' if normal else 'not normal'}, {verdict}"
                     + (f" (witness: {wtext})" if wtext else ""))
        records.append({"name": name, "characteristic": ok, "normal": normal,
                        "witness": wtext})
    _emit({"results": records, "lines": lines}, args)
    return 0


def cmd_commutator(args) -> int:
    algebra, named = _load(args.file)
    h = _sub_by_name(algebra, named, args.left)
    k = _sub_by_name(algebra, named, args.right)
    which = "higgins" if args.higgins else "huq"
    result = (higgins_commutator if args.higgins else huq_commutator)(h, k)
    lines = [f"[{args.left},{args.right}] ({which}) = {_describe_sub(algebra, result)}"]
    _emit({"kind": which, "elements": sorted(result.elements), "lines": lines}, args)
    return 0


def cmd_centralizer(args) -> int:
    algebra, named = _load(args.file)
    h = _sub_by_name(algebra, named, args.sub)
    z = centralizer(h)
    return _centre_like(algebra, z, f"Z_G({args.sub})", args)


def cmd_centre(args) -> int:
    algebra, _ = _load(args.file)
    z = centre(algebra)
    return _centre_like(algebra, z, "Z(G)", args)


def _centre_like(algebra, z, label, args) -> int:
    if isinstance(z, DoesNotExist):
        lines = [f"{label} does not exist; maximal commuting subobjects:"]
        for mx in z.maximal:
            lines.append(f"  {_describe_sub(algebra, mx)}")
        _emit({"exists": False,
               "maximal": [sorted(mx.elements) for mx in z.maximal],
               "lines": lines}, args)
        return 0
    lines = [f"{label} = {_describe_sub(algebra, z)}"]
    _emit({"exists": True, "elements": sorted(z.elements), "lines": lines}, args)
    return 0


def cmd_actor(args) -> int:
    algebra, _ = _load(args.file)
    try:
        act = actor(algebra)
    except NotRepresentative as err:
        _emit({"representative": False, "reason": str(err),
               "lines": [f"not action representative: {err}"]}, args)
        return 0
    obj = act.object
    desc = (f"Aut, order {obj.order}" if algebra.is_group
            else f"Der, rank {obj.rank}, order {obj.order}")
    _emit({"representative": True, "order": obj.order, "lines": [f"actor: {desc}"]}, args)
    return 0


def cmd_semidirect(args) -> int:
    g, _ = _load(args.file)
    b, _ = _load(args.actor_file)
    actions = list(enumerate_actions(b, g, group_actor_bound=args.max_order))
    if args.action is None:
        lines = [f"{len(actions)} actions of {b.name} on {g.name}"]
        _emit({"count": len(actions), "lines": lines}, args)
        return 0
    if not 0 <= args.action < len(actions):
        raise SpecFileError(f"action index out of range (0..{len(actions) - 1})")
    ext = semidirect_product(actions[args.action])
    lines = [f"semidirect product of order {ext.a.order}"
             + ("" if ext.a.is_group else f", rank {ext.a.rank}")]
    _emit({"order": ext.a.order, "lines": lines}, args)
    return 0


def cmd_faithful_quotient(args) -> int:
    g, _ = _load(args.file)
    b, _ = _load(args.actor_file)
    actions = list(enumerate_actions(b, g, group_actor_bound=args.max_order))
    if not 0 <= args.action < len(actions):
        raise SpecFileError(f"action index out of range (0..{len(actions) - 1})")
    try:
        fq = faithful_quotient(actions[args.action])
    except NotAccessibleVariety as err:
        _emit({"accessible": False, "reason": str(err),
               "lines": [f"not available: {err}"]}, args)
        return 0
    lines = [f"trivially-acting part of order {len(fq.acting_kernel)}",
             f"T0 of order {fq.t0.order}, T1 of order {fq.t1.order}"]
    _emit({"accessible": True, "kernel_order": len(fq.acting_kernel),
           "t0_order": fq.t0.order, "t1_order": fq.t1.order, "lines": lines}, args)
    return 0


def cmd_verify_table(args) -> int:
    config = HarnessConfig(
        group_max_order=min(args.max_order, 16),
        ring_moduli=tuple(args.mod) if args.mod else (2, 3),
    )
    corpus = _corpus_for(args.corpus, config)
    report = run_table_harness(corpus, config)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(report.to_json(), encoding="utf-8")
        (out / "checks.csv").write_text(report.to_csv(), encoding="utf-8")
        from .figures import render_report_figure
        render_report_figure(report, out / "verdicts.png")
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        for c in report.checks:
            mark = {"PASS": "ok ", "EXPECTED_FAIL": "xf ", "INFO": "i  "}.get(c.verdict, "FAIL")
            print(f"{mark} {c.name:<32} {c.instances:>6} instances  {c.verdict}"
                  + (f"  [{c.witness}]" if c.witness and c.verdict != "PASS" else ""))
        print("all verdicts as expected" if report.ok() else "PROPERTY VIOLATION FOUND")
    return 0 if report.ok() else 1


def _corpus_for(kind: str, config: HarnessConfig):
    if kind == "groups":
        from .corpus import group_corpus
        return group_corpus(config.group_max_order)
    if kind == "ring-like":
        from .corpus import ring_like_corpus
        out = []
        for tag in (VarietyTag.RING, VarietyTag.NARING, VarietyTag.LIE):
            for m in config.ring_moduli:
                out.extend(ring_like_corpus(tag, m, config.ring_max_rank))
        return out
    return None  # full built-in corpus


def cmd_search(args) -> int:
    from .corpus import ring_like_corpus
    from .subobjects import join as join_sub

    tag = VarietyTag(args.variety)
    corpus = ring_like_corpus(tag, args.mod, args.rank)
    findings = []
    for g in corpus:
        subs = enumerate_subobjects(g)
        chars = [h for h in subs if is_characteristic(h)[0]]
        if args.property == "joins":
            for i in range(len(chars)):
                for j in range(i + 1, len(chars)):
                    joined = join_sub(chars[i], chars[j])
                    if not is_characteristic(joined)[0]:
                        findings.append((g, f"join of {chars[i].describe()} and "
                                            f"{chars[j].describe()}"))
        elif args.property == "centre-char":
            z = centre(g)
            if isinstance(z, DoesNotExist):
                findings.append((g, "centre does not exist"))
            elif is_normal(z) and not is_characteristic(z)[0]:
                findings.append((g, f"centre {z.describe()} not characteristic"))
        elif args.property == "centralizer-exists":
            for h in subs:
                if isinstance(centralizer(h), DoesNotExist):
                    findings.append((g, f"centraliser of {h.describe()} missing"))
        elif args.property == "derived-char":
            whole = whole_subobject(g)
            d = higgins_commutator(whole, whole)
            if is_normal(d) and not is_characteristic(d)[0]:
                findings.append((g, f"derived {d.describe()} not characteristic"))
    lines = [f"{g.name}: {what}" for g, what in findings]
    lines.append(f"{len(findings)} findings over {len(corpus)} instances")
    _emit({"findings": [{"instance": g.name, "what": what} for g, what in findings],
           "lines": lines}, args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="charlab",
        description="characteristic-subobject workbench for finite algebras")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_file=True):
        if with_file:
            p.add_argument("file", help="algebra description file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--oracle", action="store_true",
                       help="use the brute-force action oracle where applicable")
        p.add_argument("--max-order", type=int, default=256, metavar="N")
        p.add_argument("--seed", type=int, default=0, metavar="S")

    p = sub.add_parser("validate", help="parse and validate an algebra file")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("subobjects", help="list all subobjects with flags")
    common(p)
    p.set_defaults(func=cmd_subobjects)

    p = sub.add_parser("char", help="decide characteristic-ness of named subobjects")
    common(p)
    p.add_argument("--sub", help="declared subobject name (default: all declared)")
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("commutator", help="commutator of two named subobjects")
    common(p)
    p.add_argument("left")
    p.add_argument("right")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--huq", action="store_true", default=True)
    mode.add_argument("--higgins", action="store_true")
    p.set_defaults(func=cmd_commutator)

    p = sub.add_parser("centralizer", help="centraliser of a named subobject")
    common(p)
    p.add_argument("--sub", required=True)
    p.set_defaults(func=cmd_centralizer)

    p = sub.add_parser("centre", help="centre of the algebra")
    common(p)
    p.set_defaults(func=cmd_centre)

    p = sub.add_parser("actor", help="actor object (groups and Lie algebras)")
    common(p)
    p.set_defaults(func=cmd_actor)

    p = sub.add_parser("semidirect", help="semidirect products along enumerated actions")
    common(p)
    p.add_argument("actor_file", help="algebra file for the acting object")
    p.add_argument("--action", type=int, help="index into the enumerated actions")
    p.set_defaults(func=cmd_semidirect)

    p = sub.add_parser("faithful-quotient",
                       help="canonical faithful quotient of an enumerated action")
    common(p)
    p.add_argument("actor_file")
    p.add_argument("--action", type=int, default=0)
    p.set_defaults(func=cmd_faithful_quotient)

    p = sub.add_parser("verify-table", help="run the property suite")
    common(p, with_file=False)
    p.add_argument("--corpus", choices=["all", "groups", "ring-like"], default="all")
    p.add_argument("--mod", type=int, action="append",
                   help="ring-like modulus (repeatable; default 2 and 3)")
    p.add_argument("--out", metavar="DIR",
                   help="write report.json, checks.csv and verdicts.png here")
    p.set_defaults(func=cmd_verify_table)

    p = sub.add_parser("search", help="scan a corpus for property violations")
    common(p, with_file=False)
    p.add_argument("--variety", choices=["ring", "naring", "lie"], required=True)
    p.add_argument("--mod", type=int, default=2)
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--property", required=True,
                   choices=["joins", "centre-char", "centralizer-exists", "derived-char"])
    p.set_defaults(func=cmd_search)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except SpecFileError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except TooLarge as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except CharlabError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
