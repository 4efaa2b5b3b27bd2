"""Line-oriented algebra description files.

Grammar (LF line endings, ``#`` starts a comment anywhere):

    variety: group | ring | naring | lie
    mod: <m>                      # ring-like varieties
    order: <n>                    # groups
    basis: x y ...                # ring-like basis labels (may be empty)
    elements: e a b ...           # optional group element labels
    mul: a*b = 2x + 3y            # ring-like product clause; omitted -> 0
    table:                        # group Cayley table, n rows of n entries
      0 1 2 ...
    sub <name>: g1 g2 ...         # named subobject generators

Element expressions in ``mul`` right-hand sides and ``sub`` generator lists
are written without internal spaces: ``0``, ``x``, ``2x``, ``x+2y``, ``-y``.
Group tables and generators accept element labels or numeric indices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .core import FiniteAlgebra, Variety, VarietyTag, validate_algebra
from .errors import SpecSyntaxError, UndeclaredLabel
from .subobjects import Subobject, generate

_VARIETIES = {v.value: v for v in VarietyTag}
_LABEL_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9']*")


@dataclass
class AlgebraSpecDocument:
    """Parsed but unvalidated description of one algebra plus named
    subobject declarations."""

    variety: VarietyTag
    modulus: int | None = None
    order: int | None = None
    labels: tuple[str, ...] | None = None
    products: dict[tuple[str, str], list[tuple[int, str]]] = field(default_factory=dict)
    table_rows: list[list[str]] = field(default_factory=list)
    subs: list[tuple[str, list[str]]] = field(default_factory=list)


def _strip_comment(line: str) -> str:
    pos = line.find("#")
    return line if pos < 0 else line[:pos]


def parse_spec_document(text: str) -> AlgebraSpecDocument:
    doc = None
    modulus = order = None
    labels = None
    products: dict[tuple[str, str], tuple[int, list[tuple[int, str]]]] = {}
    table_rows: list[list[str]] = []
    subs: list[tuple[str, list[str]]] = []
    in_table = False
    variety = None

    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if in_table and (line[0].isspace() or stripped[0].isdigit() or ":" not in stripped):
            table_rows.append(stripped.split())
            continue
        in_table = False
        if ":" not in stripped:
            raise SpecSyntaxError("unrecognised line", lineno, 1, expected="key: value")
        key, _, value = stripped.partition(":")
        key = key.strip()
        value = value.strip()
        if key == "variety":
            if value not in _VARIETIES:
                raise SpecSyntaxError(f"unknown variety {value!r}", lineno,
                                      expected="group, ring, naring or lie")
            variety = _VARIETIES[value]
        elif key == "mod":
            modulus = _parse_int(value, lineno)
        elif key == "order":
            order = _parse_int(value, lineno)
        elif key == "basis" or key == "elements":
            labels = tuple(value.split())
        elif key == "mul":
            lhs, eq, rhs = value.partition("=")
            if not eq:
                raise SpecSyntaxError("product clause needs '='", lineno,
                                      expected="mul: a*b = expr")
            factors = [f.strip() for f in re.split(r"[*·]", lhs.strip())]
            if len(factors) != 2 or not all(factors):
                raise SpecSyntaxError("product left side must be a*b", lineno)
            pair = (factors[0], factors[1])
            if pair in products:
                raise SpecSyntaxError(f"duplicate product clause for {pair[0]}*{pair[1]}",
                                      lineno)
            products[pair] = (lineno, _parse_combination(rhs.strip(), lineno))
        elif key == "table":
            in_table = True
        elif key.startswith("sub ") or key.startswith("sub\t"):
            name = key[4:].strip()
            if not name:
                raise SpecSyntaxError("subobject declaration needs a name", lineno,
                                      expected="sub <name>: g1 g2 ...")
            subs.append((name, value.split()))
        else:
            raise SpecSyntaxError(f"unknown key {key!r}", lineno, 1,
                                  expected="variety, mod, order, basis, elements, "
                                           "mul, table or sub <name>")

    if variety is None:
        raise SpecSyntaxError("missing 'variety:' header", None)
    doc = AlgebraSpecDocument(variety=variety, modulus=modulus, order=order,
                              labels=labels,
                              products={k: v[1] for k, v in products.items()},
                              table_rows=table_rows, subs=subs)
    return doc


def _parse_int(value: str, lineno: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise SpecSyntaxError(f"expected an integer, got {value!r}", lineno) from None


def _parse_combination(expr: str, lineno: int) -> list[tuple[int, str]]:
    """Parse ``2x + 3y - z`` into (coefficient, label) terms; ``0`` is empty."""
    expr = expr.replace(" ", "")
    if expr in ("0", ""):
        return []
    terms = []
    pos = 0
    sign = 1
    if expr[0] in "+-":
        sign = -1 if expr[0] == "-" else 1
        pos = 1
    while pos < len(expr):
        m = re.match(r"(\d*)[*·]?", expr[pos:])
        coeff = int(m.group(1)) if m.group(1) else 1
        pos += m.end()
        lab = _LABEL_RE.match(expr[pos:])
        if not lab:
            raise SpecSyntaxError("malformed term in linear combination",
                                  lineno, pos + 1, expected="coefficient then label")
        terms.append((sign * coeff, lab.group(0)))
        pos += lab.end()
        if pos == len(expr):
            break
        if expr[pos] not in "+-":
            raise SpecSyntaxError("terms must be joined by + or -", lineno, pos + 1)
        sign = -1 if expr[pos] == "-" else 1
        pos += 1
    return terms


def build_algebra(doc: AlgebraSpecDocument, name: str | None = None
                  ) -> tuple[FiniteAlgebra, dict[str, Subobject]]:
    """Materialise and validate the algebra; close the named subobjects."""
    if doc.variety is VarietyTag.GROUP:
        algebra = _build_group(doc, name)
    else:
        algebra = _build_ring_like(doc, name)
    validate_algebra(algebra)
    named = {}
    for sub_name, gen_tokens in doc.subs:
        gens = [_element_from_token(algebra, tok) for tok in gen_tokens]
        named[sub_name] = generate(algebra, gens)
    return algebra, named


def _build_group(doc: AlgebraSpecDocument, name) -> FiniteAlgebra:
    if doc.order is None:
        raise SpecSyntaxError("groups need an 'order:' header", None)
    n = doc.order
    labels = doc.labels or tuple(str(i) for i in range(n))
    if len(labels) != n:
        raise SpecSyntaxError(f"expected {n} element labels, got {len(labels)}", None)
    if len(doc.table_rows) != n:
        raise SpecSyntaxError(
            f"group table must have {n} rows, got {len(doc.table_rows)}", None,
            expected="a complete Cayley table")
    index = {lab: i for i, lab in enumerate(labels)}
    table = []
    for row in doc.table_rows:
        if len(row) != n:
            raise SpecSyntaxError(f"table rows must have {n} entries", None)
        table.append([_group_token_index(tok, index, n) for tok in row])
    if doc.products:
        raise SpecSyntaxError("groups take a table, not product clauses", None)
    return FiniteAlgebra.group(table, labels=labels, name=name)


def _group_token_index(tok: str, index: dict[str, int], n: int) -> int:
    if tok in index:
        return index[tok]
    if tok.isdigit() and int(tok) < n:
        return int(tok)
    raise UndeclaredLabel(tok)


def _build_ring_like(doc: AlgebraSpecDocument, name) -> FiniteAlgebra:
    if doc.modulus is None:
        raise SpecSyntaxError("ring-like varieties need a 'mod:' header", None)
    labels = doc.labels if doc.labels is not None else ()
    rank = len(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    m = doc.modulus
    constants = [[(0,) * rank for _ in range(rank)] for _ in range(rank)]
    for (a, b), terms in doc.products.items():
        if a not in index:
            raise UndeclaredLabel(a)
        if b not in index:
            raise UndeclaredLabel(b)
        vec = [0] * rank
        for coeff, lab in terms:
            if lab not in index:
                raise UndeclaredLabel(lab)
            vec[index[lab]] = (vec[index[lab]] + coeff) % m
        constants[index[a]][index[b]] = tuple(vec)
    variety = Variety(doc.variety, m)
    return FiniteAlgebra.ring_like(variety, tuple(tuple(r) for r in constants),
                                   labels=labels, name=name)


def _element_from_token(algebra: FiniteAlgebra, tok: str) -> int:
    if algebra.is_group:
        index = {lab: i for i, lab in enumerate(algebra.labels)}
        return _group_token_index(tok, index, algebra.order)
    terms = _parse_combination(tok, 0)
    index = {lab: i for i, lab in enumerate(algebra.labels)}
    vec = [0] * algebra.rank
    for coeff, lab in terms:
        if lab not in index:
            raise UndeclaredLabel(lab)
        vec[index[lab]] = (vec[index[lab]] + coeff) % algebra.modulus
    return algebra.index(vec)


def parse_spec(text: str, name: str | None = None
               ) -> tuple[FiniteAlgebra, dict[str, Subobject]]:
    """Parse, validate (variety laws), and close named subobjects."""
    return build_algebra(parse_spec_document(text), name)


def emit_spec(algebra: FiniteAlgebra, subs: dict[str, Subobject] | None = None) -> str:
    """Canonical text form; ``parse_spec(emit_spec(a))`` rebuilds ``a``."""
    lines = [f"variety: {algebra.variety.tag.value}"]
    if algebra.is_group:
        lines.append(f"order: {algebra.order}")
        lines.append("elements: " + " ".join(algebra.labels))
        lines.append("table:")
        for row in algebra.table:
            lines.append("  " + " ".join(str(x) for x in row))
    else:
        lines.append(f"mod: {algebra.modulus}")
        lines.append("basis: " + " ".join(algebra.labels))
        for i in range(algebra.rank):
            for j in range(algebra.rank):
                cell = algebra.constants[i][j]
                if any(cell):
                    rhs = _emit_combination(cell, algebra.labels)
                    lines.append(f"mul: {algebra.labels[i]}*{algebra.labels[j]} = {rhs}")
    for sub_name, sub in (subs or {}).items():
        gens = sub.generators if sub.generators else sub.sorted_elements()
        toks = " ".join(_emit_element(algebra, g) for g in gens)
        lines.append(f"sub {sub_name}: {toks}")
    return "\n".join(lines) + "\n"


def _emit_combination(vec, labels) -> str:
    terms = []
    for coeff, lab in zip(vec, labels):
        if coeff == 0:
            continue
        terms.append(lab if coeff == 1 else f"{coeff}{lab}")
    return " + ".join(terms) if terms else "0"


def _emit_element(algebra: FiniteAlgebra, idx: int) -> str:
    if algebra.is_group:
        return algebra.labels[idx]
    return _emit_combination(algebra.coords(idx), algebra.labels).replace(" ", "")
