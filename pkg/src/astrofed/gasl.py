"""The abstract boolean search language: AST, XML form, validation, evaluation.

Queries travel as XML: ``<query profile="ID">`` wrapping one expression built
from ``<and>``/``<or>`` (two or more children), ``<not>`` (one child) and
``<term attr rel unit?>value</term>``.  Serialization is canonical: fixed
attribute order, double quotes, no insignificant whitespace.

The evaluator here is the reference semantics that source adapters are held
to: a term matches when any value of the record field satisfies the relation,
text comparison is case-insensitive, numbers compare after unit normalization
to SI base, and ``within`` is cone containment on the sphere.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from . import profiles as prof
from . import skycoords
from .skycoords import Cone, PositionParseError, SkyPosition, cone_contains, parse_position
from .validation import ValidationReport


class GaslParseError(ValueError):
    """Raised for markup that is not a well-formed query document."""


@dataclass(frozen=True)
class Term:
    attr: str
    rel: str
    value: str
    unit: str | None = None


@dataclass(frozen=True)
class And:
    children: tuple["QueryNode", ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("And requires at least 2 children")


@dataclass(frozen=True)
class Or:
    children: tuple["QueryNode", ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("Or requires at least 2 children")


@dataclass(frozen=True)
class Not:
    child: "QueryNode"


QueryNode = And | Or | Not | Term


@dataclass(frozen=True)
class RecordFields:
    """Flat attribute view of a record, the evaluation substrate.

    Field values are strings (numeric fields hold SI-base numbers in string
    form); multi-valued fields are permitted.  The sky position, when known,
    rides separately so cone terms can use it directly.
    """

    values: dict[str, tuple[str, ...]] = field(default_factory=dict)
    position: SkyPosition | None = None

    @classmethod
    def of(cls, position: SkyPosition | None = None, **fields) -> "RecordFields":
        vals = {}
        for name, v in fields.items():
            name = name.replace("_", "-")
            vals[name] = tuple(v) if isinstance(v, (list, tuple)) else (str(v),)
        return cls(vals, position)

    def get(self, name: str) -> tuple[str, ...]:
        return self.values.get(name, ())


# ---------------------------------------------------------------------------
# parsing

def _parse_expr(el: ET.Element) -> QueryNode:
    tag = el.tag
    if tag == "term":
        attr = el.get("attr")
        rel = el.get("rel")
        if attr is None or rel is None:
            raise GaslParseError("term element missing attr or rel")
        if rel not in prof.RELATIONS:
            raise GaslParseError(f"unknown relation {rel!r}")
        if len(el) > 0:
            raise GaslParseError("term element must not have child elements")
        return Term(attr, rel, el.text or "", el.get("unit"))
    if tag in ("and", "or", "not"):
        if (el.text or "").strip() or any((c.tail or "").strip() for c in el):
            raise GaslParseError(f"unexpected text content in <{tag}>")
        children = [_parse_expr(c) for c in el]
        if tag == "not":
            if len(children) != 1:
                raise GaslParseError("not requires exactly 1 child")
            return Not(children[0])
        if len(children) < 2:
            raise GaslParseError(f"{tag} requires at least 2 children")
        return And(tuple(children)) if tag == "and" else Or(tuple(children))
    raise GaslParseError(f"unknown element <{tag}>")


def parse_gasl(text: str | bytes) -> tuple[str, QueryNode]:
    """Parse a query document; returns (profile id, expression tree)."""
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise GaslParseError(f"malformed markup: {exc}") from exc
    if root.tag != "query":
        raise GaslParseError(f"expected <query> root, got <{root.tag}>")
    profile_id = root.get("profile")
    if not profile_id:
        raise GaslParseError("query element missing profile attribute")
    if len(root) != 1:
        raise GaslParseError("query must contain exactly one expression")
    if (root.text or "").strip() or (root[0].tail or "").strip():
        raise GaslParseError("unexpected text content in <query>")
    return profile_id, _parse_expr(root[0])


# ---------------------------------------------------------------------------
# serialization

def _attr_escape(value: str) -> str:
    return escape(value, {'"': "&quot;"})


def _write_expr(q: QueryNode, out: list[str]) -> None:
    if isinstance(q, Term):
        unit = f' unit="{_attr_escape(q.unit)}"' if q.unit is not None else ""
        out.append(
            f'<term attr="{_attr_escape(q.attr)}" rel="{_attr_escape(q.rel)}"{unit}>'
            f"{escape(q.value)}</term>"
        )
        return
    tag = {And: "and", Or: "or", Not: "not"}[type(q)]
    out.append(f"<{tag}>")
    children = (q.child,) if isinstance(q, Not) else q.children
    for c in children:
        _write_expr(c, out)
    out.append(f"</{tag}>")


def serialize_gasl(q: QueryNode, profile_id: str) -> str:
    """Canonical document text for a query tree."""
    out = [f'<query profile="{_attr_escape(profile_id)}">']
    _write_expr(q, out)
    out.append("</query>")
    return "".join(out)


def keywords_to_query(keywords: list[str]) -> QueryNode:
    """Desugar the simple keyword interface: And over subject-contains terms."""
    if not keywords:
        raise ValueError("at least one keyword required")
    terms = [Term("subject", prof.CONTAINS, k) for k in keywords]
    return terms[0] if len(terms) == 1 else And(tuple(terms))


# ---------------------------------------------------------------------------
# validation

def _check_value(attr: prof.AttributeDef, t: Term, problems: list[str]) -> None:
    if attr.value_kind == prof.TEXT:
        if t.unit is not None:
            problems.append(f"unit not allowed for text attribute {t.attr}")
        return
    if attr.value_kind == prof.NUMBER_UNIT:
        try:
            prof.to_si(float(t.value), t.unit)
        except ValueError:
            problems.append(f"value {t.value!r} (unit {t.unit!r}) not a number+unit for {t.attr}")
        return
    if attr.value_kind == prof.SKY_POSITION:
        try:
            parsed = parse_position(t.value)
        except PositionParseError as exc:
            problems.append(f"bad sky position for {t.attr}: {exc}")
            return
        if t.rel == prof.WITHIN and not isinstance(parsed, Cone):
            problems.append(f"relation within requires a cone value for {t.attr}")
        return
    if attr.value_kind == prof.ENUM:
        if t.value.lower() not in {v.lower() for v in attr.enum_values}:
            problems.append(f"value {t.value!r} not in enumeration for {t.attr}")


def validate_query(q: QueryNode, profile: prof.Profile) -> ValidationReport:
    """Check every term against the profile; violations are data, not errors."""
    problems: list[str] = []

    def walk(node: QueryNode) -> None:
        if isinstance(node, Term):
            attr = profile.get(node.attr)
            if attr is None:
                problems.append(f"unknown attribute {node.attr}")
                return
            if node.rel not in attr.allowed_relations:
                problems.append(
                    f"relation {node.rel} not allowed for {attr.value_kind} attribute {node.attr}"
                )
            _check_value(attr, node, problems)
        elif isinstance(node, Not):
            walk(node.child)
        else:
            for c in node.children:
                walk(c)

    walk(q)
    return ValidationReport(violations=tuple(problems))


# ---------------------------------------------------------------------------
# evaluation

_NUM_OPS = {
    prof.EQ: lambda a, b: a == b,
    prof.NE: lambda a, b: a != b,
    prof.LT: lambda a, b: a < b,
    prof.LE: lambda a, b: a <= b,
    prof.GT: lambda a, b: a > b,
    prof.GE: lambda a, b: a >= b,
}


def _eval_term(t: Term, r: RecordFields, profile: prof.Profile) -> bool:
    attr = profile.get(t.attr)
    kind = attr.value_kind if attr is not None else prof.TEXT

    if kind == prof.SKY_POSITION:
        if r.position is None:
            return False
        target = parse_position(t.value)
        if t.rel == prof.WITHIN:
            if not isinstance(target, Cone):
                target = Cone(target, 0.0)
            return cone_contains(target, r.position)
        # eq/ne on positions: exact match after converting frames
        sep = skycoords.angular_separation(target if isinstance(target, SkyPosition) else target.center, r.position)
        return (sep == 0.0) if t.rel == prof.EQ else (sep != 0.0)

    values = r.get(t.attr)
    if not values:
        return False

    if kind == prof.NUMBER_UNIT:
        want = prof.to_si(float(t.value), t.unit)
        op = _NUM_OPS[t.rel]
        for v in values:
            try:
                have = float(v)
            except ValueError:
                continue
            if op(have, want):
                return True
        return False

    # text and enum
    want_text = t.value.lower()
    if t.rel == prof.EQ:
        return any(v.lower() == want_text for v in values)
    if t.rel == prof.NE:
        return any(v.lower() != want_text for v in values)
    if t.rel == prof.CONTAINS:
        return any(want_text in v.lower() for v in values)
    raise ValueError(f"relation {t.rel} not meaningful for {kind} attribute {t.attr}")


def eval_query(q: QueryNode, r: RecordFields, profile: prof.Profile) -> bool:
    """Reference boolean semantics over one record."""
    if isinstance(q, Term):
        return _eval_term(q, r, profile)
    if isinstance(q, Not):
        return not eval_query(q.child, r, profile)
    if isinstance(q, And):
        return all(eval_query(c, r, profile) for c in q.children)
    return any(eval_query(c, r, profile) for c in q.children)
