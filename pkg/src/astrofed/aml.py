"""Astronomical markup records: the seven object kinds, links, measurements.

A document is an ordered collection of objects (metadata, astronomical
object, article, table, table set, image, person).  Objects may link to one
another within a document by id, across documents with ``aml:DOCID#OBJID``
hrefs, and to anything else with ordinary URIs.

The model classes are plain containers; `parse_aml` refuses documents that
break hard invariants, while `validate_aml` reports the same breaks (plus
warnings) for documents built in memory.  Serialization is canonical, so
parse o serialize is the identity and serialize o parse canonicalizes.
"""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Iterable, Union
from xml.sax.saxutils import escape

from .numfmt import format_number
from .skycoords import SkyPosition
from .validation import ValidationReport


class AmlParseError(ValueError):
    """Raised for markup that is not a well-formed record document."""


@dataclass(frozen=True)
class Link:
    """Reference to another object: internal by id or external by URI."""

    ref: str | None = None
    href: str | None = None
    relation: str | None = None

    def __post_init__(self):
        if (self.ref is None) == (self.href is None):
            raise ValueError("link needs exactly one of ref or href")

    @property
    def internal(self) -> bool:
        return self.ref is not None


@dataclass(frozen=True)
class Measurement:
    name: str
    value: float
    unit: str
    uncertainty: float | None = None


@dataclass(frozen=True)
class Metadata:
    id: str | None = None
    title: str | None = None
    creators: tuple[str, ...] = ()
    subjects: tuple[str, ...] = ()
    description: str | None = None
    date: str | None = None
    identifier: str | None = None
    links: tuple[Link, ...] = ()


@dataclass(frozen=True)
class AstronomicalObject:
    identifiers: tuple[str, ...]
    id: str | None = None
    object_type: str | None = None
    position: SkyPosition | None = None
    measurements: tuple[Measurement, ...] = ()
    links: tuple[Link, ...] = ()


@dataclass(frozen=True)
class Article:
    id: str | None = None
    title: str | None = None
    journal: str | None = None
    date: str | None = None
    href: str | None = None
    links: tuple[Link, ...] = ()

    @property
    def authors(self) -> tuple[Link, ...]:
        return tuple(l for l in self.links if l.relation == "author")


@dataclass(frozen=True)
class TableColumn:
    name: str
    unit: str | None = None
    kind: str | None = None


@dataclass(frozen=True)
class Table:
    id: str | None = None
    columns: tuple[TableColumn, ...] = ()
    content_href: str | None = None
    links: tuple[Link, ...] = ()


@dataclass(frozen=True)
class TableSet:
    id: str | None = None
    description: str | None = None
    links: tuple[Link, ...] = ()


@dataclass(frozen=True)
class Band:
    """Wavelength of an image band, value in `unit`."""

    value: float
    unit: str


@dataclass(frozen=True)
class Image:
    id: str | None = None
    dimensions: tuple[int, ...] = ()
    band: Band | None = None
    center: SkyPosition | None = None
    format: str | None = None
    data_href: str | None = None
    thumbnail_href: str | None = None
    links: tuple[Link, ...] = ()


@dataclass(frozen=True)
class Person:
    id: str | None = None
    name: str | None = None
    affiliation: str | None = None
    email: str | None = None
    links: tuple[Link, ...] = ()


AmlObject = Union[Metadata, AstronomicalObject, Article, Table, TableSet, Image, Person]

OBJECT_TAGS = {
    Metadata: "metadata",
    AstronomicalObject: "astronomical-object",
    Article: "article",
    Table: "table",
    TableSet: "table-set",
    Image: "image",
    Person: "person",
}
# reserved for the planned set-of-images extension; parser names it in errors
RESERVED_TAGS = ("image-set",)


@dataclass(frozen=True)
class AmlDocument:
    objects: tuple[AmlObject, ...]
    docid: str | None = None

    def object_ids(self) -> list[str]:
        return [o.id for o in self.objects if o.id is not None]

    def find(self, object_id: str) -> AmlObject | None:
        for o in self.objects:
            if o.id == object_id:
                return o
        return None


# ---------------------------------------------------------------------------
# parsing

def _no_stray_text(el: ET.Element) -> None:
    if (el.text or "").strip() or any((c.tail or "").strip() for c in el):
        raise AmlParseError(f"unexpected text content in <{el.tag}>")


def _leaf_text(el: ET.Element) -> str:
    if len(el) > 0:
        raise AmlParseError(f"<{el.tag}> must not have child elements")
    return (el.text or "").strip()


def _float_attr(el: ET.Element, name: str, required: bool = True) -> float | None:
    raw = el.get(name)
    if raw is None:
        if required:
            raise AmlParseError(f"<{el.tag}> missing {name} attribute")
        return None
    try:
        return float(raw)
    except ValueError:
        raise AmlParseError(f"<{el.tag}> {name}={raw!r} is not a number") from None


def _parse_link(el: ET.Element) -> Link:
    try:
        return Link(ref=el.get("ref"), href=el.get("href"), relation=el.get("relation"))
    except ValueError as exc:
        raise AmlParseError(str(exc)) from None


def _parse_position(el: ET.Element) -> SkyPosition:
    system = el.get("system")
    if system is None:
        raise AmlParseError("<position> missing system attribute")
    try:
        return SkyPosition(system, _float_attr(el, "lon"), _float_attr(el, "lat"))
    except ValueError as exc:
        raise AmlParseError(f"bad position: {exc}") from None


def _parse_measurement(el: ET.Element) -> Measurement:
    name = el.get("name")
    unit = el.get("unit")
    if name is None or unit is None:
        raise AmlParseError("<measurement> needs name, value and unit attributes")
    value = _float_attr(el, "value")
    uncertainty = _float_attr(el, "uncertainty", required=False)
    if uncertainty is not None and uncertainty < 0:
        raise AmlParseError(f"negative uncertainty on measurement {name}")
    if not unit:
        raise AmlParseError(f"empty unit on measurement {name}")
    return Measurement(name, value, unit, uncertainty)


class _Children:
    """Dispatch helper: walks an object element's children by tag."""

    def __init__(self, el: ET.Element):
        _no_stray_text(el)
        self.el = el
        self.texts: dict[str, list[str]] = {}
        self.links: list[Link] = []
        self.positions: list[SkyPosition] = []
        self.measurements: list[Measurement] = []
        self.columns: list[TableColumn] = []
        self.bands: list[Band] = []
        self.other: list[ET.Element] = []

    def collect(self, *, text_tags: tuple[str, ...] = (), allow: tuple[str, ...] = ()) -> "_Children":
        for c in self.el:
            if c.tag in text_tags:
                self.texts.setdefault(c.tag, []).append(_leaf_text(c))
            elif c.tag == "link" and "link" in allow:
                self.links.append(_parse_link(c))
            elif c.tag == "position" and "position" in allow:
                self.positions.append(_parse_position(c))
            elif c.tag == "measurement" and "measurement" in allow:
                self.measurements.append(_parse_measurement(c))
            elif c.tag == "column" and "column" in allow:
                name = c.get("name")
                if name is None:
                    raise AmlParseError("<column> missing name attribute")
                self.columns.append(TableColumn(name, c.get("unit"), c.get("kind")))
            elif c.tag == "band" and "band" in allow:
                unit = c.get("unit")
                if unit is None:
                    raise AmlParseError("<band> missing unit attribute")
                self.bands.append(Band(_float_attr(c, "value"), unit))
            else:
                raise AmlParseError(f"unknown element <{c.tag}> in <{self.el.tag}>")
        return self

    def single(self, tag: str) -> str | None:
        vals = self.texts.get(tag, [])
        if len(vals) > 1:
            raise AmlParseError(f"duplicate <{tag}> in <{self.el.tag}>")
        return vals[0] if vals else None

    def many(self, tag: str) -> tuple[str, ...]:
        return tuple(self.texts.get(tag, []))

    def at_most_one(self, items: list, what: str):
        if len(items) > 1:
            raise AmlParseError(f"duplicate <{what}> in <{self.el.tag}>")
        return items[0] if items else None


def _parse_object(el: ET.Element) -> AmlObject:
    tag = el.tag
    oid = el.get("id")

    if tag == "metadata":
        ch = _Children(el).collect(
            text_tags=("title", "creator", "subject", "description", "date", "identifier"),
            allow=("link",),
        )
        return Metadata(
            id=oid,
            title=ch.single("title"),
            creators=ch.many("creator"),
            subjects=ch.many("subject"),
            description=ch.single("description"),
            date=ch.single("date"),
            identifier=ch.single("identifier"),
            links=tuple(ch.links),
        )

    if tag == "astronomical-object":
        ch = _Children(el).collect(text_tags=("identifier",), allow=("position", "measurement", "link"))
        identifiers = ch.many("identifier")
        if not identifiers:
            raise AmlParseError("astronomical-object requires at least one identifier")
        return AstronomicalObject(
            identifiers=identifiers,
            id=oid,
            object_type=el.get("object-type"),
            position=ch.at_most_one(ch.positions, "position"),
            measurements=tuple(ch.measurements),
            links=tuple(ch.links),
        )

    if tag == "article":
        ch = _Children(el).collect(text_tags=("title", "journal", "date"), allow=("link",))
        return Article(
            id=oid,
            title=ch.single("title"),
            journal=ch.single("journal"),
            date=ch.single("date"),
            href=el.get("href"),
            links=tuple(ch.links),
        )

    if tag == "table":
        ch = _Children(el).collect(allow=("column", "link"))
        return Table(
            id=oid,
            columns=tuple(ch.columns),
            content_href=el.get("content-href"),
            links=tuple(ch.links),
        )

    if tag == "table-set":
        ch = _Children(el).collect(text_tags=("description",), allow=("link",))
        if not ch.links:
            raise AmlParseError("table-set requires at least one table link")
        return TableSet(id=oid, description=ch.single("description"), links=tuple(ch.links))

    if tag == "image":
        ch = _Children(el).collect(allow=("band", "position", "link"))
        dims_raw = el.get("dimensions")
        dims: tuple[int, ...] = ()
        if dims_raw is not None:
            try:
                dims = tuple(int(v) for v in dims_raw.split())
            except ValueError:
                raise AmlParseError(f"bad image dimensions {dims_raw!r}") from None
            if any(d <= 0 for d in dims):
                raise AmlParseError(f"image dimensions must be positive: {dims_raw!r}")
        data_href = el.get("data-href")
        if data_href is None:
            raise AmlParseError("image requires a data-href attribute")
        return Image(
            id=oid,
            dimensions=dims,
            band=ch.at_most_one(ch.bands, "band"),
            center=ch.at_most_one(ch.positions, "position"),
            format=el.get("format"),
            data_href=data_href,
            thumbnail_href=el.get("thumbnail-href"),
            links=tuple(ch.links),
        )

    if tag == "person":
        ch = _Children(el).collect(allow=("link",))
        return Person(
            id=oid,
            name=el.get("name"),
            affiliation=el.get("affiliation"),
            email=el.get("email"),
            links=tuple(ch.links),
        )

    if tag in RESERVED_TAGS:
        raise AmlParseError(f"element <{tag}> is reserved and not yet supported")
    raise AmlParseError(f"unknown object element <{tag}>")


def parse_aml(text: str | bytes) -> AmlDocument:
    """Parse a record document, rejecting hard invariant breaks."""
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise AmlParseError(f"malformed markup: {exc}") from exc
    if root.tag != "aml":
        raise AmlParseError(f"expected <aml> root, got <{root.tag}>")
    _no_stray_text(root)
    objects = tuple(_parse_object(c) for c in root)
    if not objects:
        raise AmlParseError("document contains no objects")
    ids = [o.id for o in objects if o.id is not None]
    if len(ids) != len(set(ids)):
        raise AmlParseError("duplicate object ids in document")
    return AmlDocument(objects=objects, docid=root.get("docid"))


# ---------------------------------------------------------------------------
# serialization

def _a(name: str, value) -> str:
    return f' {name}="{escape(str(value), {chr(34): "&quot;"})}"'


def _leaf(tag: str, text: str | None, out: list[str]) -> None:
    if text is not None:
        out.append(f"<{tag}>{escape(text)}</{tag}>")


def _write_link(l: Link, out: list[str]) -> None:
    s = "<link"
    s += _a("ref", l.ref) if l.ref is not None else _a("href", l.href)
    if l.relation is not None:
        s += _a("relation", l.relation)
    out.append(s + "/>")


def _write_position(p: SkyPosition, out: list[str]) -> None:
    out.append(
        f"<position{_a('system', p.system)}{_a('lon', format_number(p.lon))}"
        f"{_a('lat', format_number(p.lat))}/>"
    )


def _write_object(o: AmlObject, out: list[str]) -> None:
    tag = OBJECT_TAGS[type(o)]
    attrs = _a("id", o.id) if o.id is not None else ""
    if isinstance(o, AstronomicalObject) and o.object_type is not None:
        attrs += _a("object-type", o.object_type)
    elif isinstance(o, Article) and o.href is not None:
        attrs += _a("href", o.href)
    elif isinstance(o, Table) and o.content_href is not None:
        attrs += _a("content-href", o.content_href)
    elif isinstance(o, Image):
        if o.dimensions:
            attrs += _a("dimensions", " ".join(str(d) for d in o.dimensions))
        if o.format is not None:
            attrs += _a("format", o.format)
        if o.data_href is not None:
            attrs += _a("data-href", o.data_href)
        if o.thumbnail_href is not None:
            attrs += _a("thumbnail-href", o.thumbnail_href)
    elif isinstance(o, Person):
        for name, value in (("name", o.name), ("affiliation", o.affiliation), ("email", o.email)):
            if value is not None:
                attrs += _a(name, value)

    body: list[str] = []
    if isinstance(o, Metadata):
        _leaf("title", o.title, body)
        for c in o.creators:
            _leaf("creator", c, body)
        for s in o.subjects:
            _leaf("subject", s, body)
        _leaf("description", o.description, body)
        _leaf("date", o.date, body)
        _leaf("identifier", o.identifier, body)
    elif isinstance(o, AstronomicalObject):
        for i in o.identifiers:
            _leaf("identifier", i, body)
        if o.position is not None:
            _write_position(o.position, body)
        for m in o.measurements:
            s = f"<measurement{_a('name', m.name)}{_a('value', format_number(m.value))}{_a('unit', m.unit)}"
            if m.uncertainty is not None:
                s += _a("uncertainty", format_number(m.uncertainty))
            body.append(s + "/>")
    elif isinstance(o, Article):
        _leaf("title", o.title, body)
        _leaf("journal", o.journal, body)
        _leaf("date", o.date, body)
    elif isinstance(o, Table):
        for col in o.columns:
            s = f"<column{_a('name', col.name)}"
            if col.unit is not None:
                s += _a("unit", col.unit)
            if col.kind is not None:
                s += _a("kind", col.kind)
            body.append(s + "/>")
    elif isinstance(o, TableSet):
        _leaf("description", o.description, body)
    elif isinstance(o, Image):
        if o.band is not None:
            body.append(f"<band{_a('value', format_number(o.band.value))}{_a('unit', o.band.unit)}/>")
        if o.center is not None:
            _write_position(o.center, body)

    for l in o.links:
        _write_link(l, body)

    if body:
        out.append(f"<{tag}{attrs}>")
        out.extend(body)
        out.append(f"</{tag}>")
    else:
        out.append(f"<{tag}{attrs}/>")


def serialize_aml(d: AmlDocument) -> str:
    """Canonical document text, objects in list order."""
    out = [f"<aml{_a('docid', d.docid) if d.docid is not None else ''}>"]
    for o in d.objects:
        _write_object(o, out)
    out.append("</aml>")
    return "".join(out)


# ---------------------------------------------------------------------------
# validation

_ISO_DATE = re.compile(r"^\d{4}(-\d{2}(-\d{2})?)?$")


def validate_aml(d: AmlDocument) -> ValidationReport:
    """Report invariant breaks and suspect content for a document."""
    violations: list[str] = []
    warnings: list[str] = []

    if not d.objects:
        violations.append("document contains no objects")
    ids = d.object_ids()
    for dup in sorted({i for i in ids if ids.count(i) > 1}):
        violations.append(f"duplicate object id {dup}")

    known_ids = set(ids)
    if not any(isinstance(o, Metadata) for o in d.objects):
        warnings.append("no metadata object present")

    for n, o in enumerate(d.objects):
        where = o.id or f"#{n}"
        if isinstance(o, AstronomicalObject):
            if not o.identifiers:
                violations.append(f"astronomical-object {where} has no identifiers")
            for m in o.measurements:
                if m.uncertainty is not None and m.uncertainty < 0:
                    violations.append(f"measurement {m.name} in {where} has negative uncertainty")
                if not m.unit:
                    violations.append(f"measurement {m.name} in {where} has an empty unit")
        elif isinstance(o, TableSet):
            if not o.links:
                violations.append(f"table-set {where} has no table links")
        elif isinstance(o, Image):
            if o.data_href is None:
                violations.append(f"image {where} has no data-href")
            if any(dim <= 0 for dim in o.dimensions):
                violations.append(f"image {where} has non-positive dimensions")
        if isinstance(o, (Metadata, Article)) and o.date is not None:
            if not _ISO_DATE.match(o.date):
                warnings.append(f"date {o.date!r} in {where} is not ISO 8601 syntax")
        for l in o.links:
            if l.internal and l.ref not in known_ids:
                warnings.append(f"unresolved ref {l.ref}")

    return ValidationReport(tuple(violations), tuple(warnings))


# ---------------------------------------------------------------------------
# analysis helpers

def extract_keywords(d: AmlDocument) -> set[str]:
    """Lowercased union of subjects, object types and object names."""
    words: set[str] = set()
    for o in d.objects:
        if isinstance(o, Metadata):
            words.update(s.lower() for s in o.subjects)
        elif isinstance(o, AstronomicalObject):
            if o.object_type is not None:
                words.add(o.object_type.lower())
            words.update(i.lower() for i in o.identifiers)
    return words


AML_SCHEME = "aml:"


@dataclass(frozen=True)
class ResolvedLink:
    """A link paired with where (if anywhere) it leads."""

    link: Link
    status: str  # internal | cross-document | external | unresolved
    target_docid: str | None = None
    target_object_id: str | None = None


def resolve_links(d: AmlDocument, corpus: Iterable[AmlDocument]) -> list[ResolvedLink]:
    """Classify every link in `d`, resolving aml: hrefs against the corpus."""
    by_docid: dict[str, AmlDocument] = {}
    for doc in corpus:
        if doc.docid is None:
            continue
        if doc.docid in by_docid and by_docid[doc.docid] != doc:
            raise ValueError(f"duplicate docid {doc.docid} in corpus")
        by_docid[doc.docid] = doc

    own_ids = set(d.object_ids())
    results: list[ResolvedLink] = []
    for o in d.objects:
        for l in o.links:
            if l.internal:
                if l.ref in own_ids:
                    results.append(ResolvedLink(l, "internal", d.docid, l.ref))
                else:
                    results.append(ResolvedLink(l, "unresolved"))
            elif l.href.startswith(AML_SCHEME):
                target = l.href[len(AML_SCHEME):]
                docid, _, objid = target.partition("#")
                doc = by_docid.get(docid)
                if doc is None or (objid and doc.find(objid) is None):
                    results.append(ResolvedLink(l, "unresolved", docid or None, objid or None))
                else:
                    results.append(ResolvedLink(l, "cross-document", docid, objid or None))
            else:
                results.append(ResolvedLink(l, "external"))
    return results
