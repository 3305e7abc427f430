"""Per-source adapters: query and record translation, plus mock data sources.

Two source kinds are supported.  A `kv-cgi` source models a provider with a
plain CGI form interface: it can only answer conjunctions of equality and
substring tests, expressed as a percent-encoded query string, and it hands
records back as flat `key: value` text.  A `pqf` source models a provider
with a full boolean protocol: prefix-notation queries and AML records.

The mock sources run in-process against fixture stores and answer native
queries under exactly the reference evaluator's semantics, which is what
makes translation testable end to end.
"""

from __future__ import annotations

import json
import re
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from urllib.parse import quote, unquote

from . import profiles as prof
from .aml import (
    AmlDocument,
    AstronomicalObject,
    Image,
    Metadata,
    parse_aml,
    serialize_aml,
    validate_aml,
)
from .fits import parse_fits
from .gasl import And, Not, Or, QueryNode, RecordFields, Term, eval_query
from .numfmt import format_number
from .skycoords import SkyPosition, parse_position, position_text

KV_CGI = "kv-cgi"
PQF = "pqf"

KV_TEXT = "kv-text"
AML = "aml"

FULL_CAPABILITIES = frozenset({"or", "not", "ordering", "cone"})


class UnsupportedQuery(ValueError):
    """The query cannot be expressed in the target source's native syntax."""


class NativeQueryError(ValueError):
    """A native query string does not parse under its kind's grammar."""


class IngestError(ValueError):
    """Project ingest rejected; the store is unchanged."""


@dataclass(frozen=True)
class SourceDescriptor:
    id: str
    kind: str
    endpoint: str
    profile_id: str
    capabilities: frozenset[str] = frozenset()
    native_record_format: str = KV_TEXT

    def __post_init__(self):
        if self.kind == KV_CGI:
            if self.capabilities or self.native_record_format != KV_TEXT:
                raise ValueError(f"kv-cgi source {self.id}: no capabilities, kv-text records")
        elif self.kind == PQF:
            if self.capabilities != FULL_CAPABILITIES or self.native_record_format != AML:
                raise ValueError(f"pqf source {self.id}: full capabilities, aml records")
        else:
            raise ValueError(f"unknown source kind {self.kind!r}")


def kv_descriptor(source_id: str, profile_id: str, endpoint: str = "") -> SourceDescriptor:
    return SourceDescriptor(
        source_id, KV_CGI, endpoint or f"/mock/{source_id}", profile_id,
        frozenset(), KV_TEXT,
    )


def pqf_descriptor(source_id: str, profile_id: str, endpoint: str = "") -> SourceDescriptor:
    return SourceDescriptor(
        source_id, PQF, endpoint or f"/mock/{source_id}", profile_id,
        FULL_CAPABILITIES, AML,
    )


@dataclass(frozen=True)
class NativeQuery:
    kind: str
    text: str


@dataclass(frozen=True)
class NativeRecord:
    format: str
    payload: bytes
    source_id: str
    index: int


# ---------------------------------------------------------------------------
# query translation

def _term_value(t: Term) -> str:
    # a unit marks the value as numeric; normalize to SI base so every
    # source compares in the same scale
    if t.unit is not None:
        return format_number(prof.to_si(float(t.value), t.unit))
    return t.value


def _kv_encode(value: str) -> str:
    # ~ is URL-unreserved but doubles as the contains marker, so force-encode it
    return quote(value, safe="").replace("~", "%7E")


def _flatten_and(q: QueryNode) -> list[QueryNode]:
    if isinstance(q, And):
        out: list[QueryNode] = []
        for c in q.children:
            out.extend(_flatten_and(c))
        return out
    return [q]


def translate_query_kv(q: QueryNode) -> NativeQuery:
    """Conjunctions of eq/contains terms only; anything else is unsupported."""
    parts = []
    for node in _flatten_and(q):
        if not isinstance(node, Term):
            op = "or" if isinstance(node, Or) else "not"
            raise UnsupportedQuery(f"kv-cgi source cannot express <{op}>")
        if node.rel == prof.EQ:
            sep = "="
        elif node.rel == prof.CONTAINS:
            sep = "=~"
        else:
            raise UnsupportedQuery(f"kv-cgi source cannot express relation {node.rel}")
        parts.append(f"{node.attr}{sep}{_kv_encode(_term_value(node))}")
    return NativeQuery(KV_CGI, "&".join(parts))


def _pqf_quote(value: str) -> str:
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _pqf_expr(q: QueryNode) -> str:
    if isinstance(q, Term):
        return f"@attr {q.attr} {q.rel} {_pqf_quote(_term_value(q))}"
    if isinstance(q, Not):
        return f"@not {_pqf_expr(q.child)}"
    op = "@and" if isinstance(q, And) else "@or"
    out = _pqf_expr(q.children[0])
    for c in q.children[1:]:
        out = f"{op} {out} {_pqf_expr(c)}"
    return out


def translate_query_pqf(q: QueryNode) -> NativeQuery:
    """Prefix notation, n-ary connectives folded left into binary ones."""
    return NativeQuery(PQF, _pqf_expr(q))


def translate_query(q: QueryNode, desc: SourceDescriptor) -> NativeQuery:
    if desc.kind == KV_CGI:
        return translate_query_kv(q)
    return translate_query_pqf(q)


# ---------------------------------------------------------------------------
# native query parsing (the mock sources' receiving end)

def _parse_kv_query(text: str) -> QueryNode:
    if not text:
        raise NativeQueryError("empty kv query")
    terms = []
    for part in text.split("&"):
        if "=~" in part:
            name, raw = part.split("=~", 1)
            rel = prof.CONTAINS
        elif "=" in part:
            name, raw = part.split("=", 1)
            rel = prof.EQ
        else:
            raise NativeQueryError(f"bad kv pair {part!r}")
        if not name:
            raise NativeQueryError(f"bad kv pair {part!r}")
        terms.append(Term(name, rel, unquote(raw)))
    return terms[0] if len(terms) == 1 else And(tuple(terms))


def _pqf_tokens(text: str) -> list[tuple[str, str]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == '"':
            i += 1
            buf = []
            while i < n and text[i] != '"':
                if text[i] == "\\" and i + 1 < n:
                    buf.append(text[i + 1])
                    i += 2
                else:
                    buf.append(text[i])
                    i += 1
            if i >= n:
                raise NativeQueryError("unterminated string in pqf query")
            i += 1
            tokens.append(("str", "".join(buf)))
        else:
            j = i
            while j < n and not text[j].isspace():
                j += 1
            tokens.append(("sym", text[i:j]))
            i = j
    return tokens


def _parse_pqf_query(text: str) -> QueryNode:
    tokens = _pqf_tokens(text)
    pos = 0

    def need(kind: str) -> str:
        nonlocal pos
        if pos >= len(tokens) or tokens[pos][0] != kind:
            raise NativeQueryError(f"malformed pqf query at token {pos}")
        value = tokens[pos][1]
        pos += 1
        return value

    def expr() -> QueryNode:
        op = need("sym")
        if op in ("@and", "@or"):
            left, right = expr(), expr()
            return And((left, right)) if op == "@and" else Or((left, right))
        if op == "@not":
            return Not(expr())
        if op == "@attr":
            name = need("sym")
            rel = need("sym")
            if rel not in prof.RELATIONS:
                raise NativeQueryError(f"unknown relation {rel!r}")
            return Term(name, rel, need("str"))
        raise NativeQueryError(f"unknown pqf operator {op!r}")

    q = expr()
    if pos != len(tokens):
        raise NativeQueryError("trailing tokens in pqf query")
    return q


def parse_native_query(nq: NativeQuery) -> QueryNode:
    if nq.kind == KV_CGI:
        return _parse_kv_query(nq.text)
    if nq.kind == PQF:
        return _parse_pqf_query(nq.text)
    raise NativeQueryError(f"unknown native query kind {nq.kind!r}")


# ---------------------------------------------------------------------------
# kv-text records

_KV_LINE = re.compile(r"^([a-z][a-z0-9-]*):\s*(.*)$")

_META_KEYS = ("title", "creator", "subject", "description", "date", "identifier")
_ASTRO_KEYS = ("object-name", "object-type", "position")


def render_kv_text(fields: RecordFields) -> str:
    """Flat `key: value` lines, one per field value, position last."""
    lines = []
    for name, values in fields.values.items():
        for v in values:
            lines.append(f"{name}: {v}")
    if fields.position is not None:
        lines.append(f"position: {position_text(fields.position)}")
    return "\n".join(lines) + "\n"


def parse_kv_text(payload: str | bytes) -> dict[str, list[str]]:
    if isinstance(payload, bytes):
        payload = payload.decode("utf-8")
    out: dict[str, list[str]] = {}
    for lineno, line in enumerate(payload.splitlines(), start=1):
        if not line.strip():
            continue
        m = _KV_LINE.match(line)
        if m is None:
            raise ValueError(f"malformed kv-text line {lineno}: {line!r}")
        out.setdefault(m.group(1), []).append(m.group(2))
    return out


def translate_record_kv(r: NativeRecord) -> AmlDocument:
    """Lift a kv-text record into an AML document.

    Bibliographic keys become the metadata object, object keys become an
    astronomical object, a data-href becomes an image.  Unrecognized keys
    are dropped; a record with no recognized key at all is an error.
    """
    if r.format != KV_TEXT:
        raise ValueError(f"expected a kv-text record, got {r.format!r}")
    fields = parse_kv_text(r.payload)

    objects = []
    if any(k in fields for k in _META_KEYS):
        objects.append(Metadata(
            id="meta",
            title=_first(fields, "title"),
            creators=tuple(fields.get("creator", ())),
            subjects=tuple(fields.get("subject", ())),
            description=_first(fields, "description"),
            date=_first(fields, "date"),
            identifier=_first(fields, "identifier"),
        ))
    names = tuple(fields.get("object-name", ()))
    if names:
        pos_text = _first(fields, "position")
        position = None
        if pos_text is not None:
            parsed = parse_position(pos_text)
            position = parsed if isinstance(parsed, SkyPosition) else parsed.center
        objects.append(AstronomicalObject(
            identifiers=names,
            id="obj",
            object_type=_first(fields, "object-type"),
            position=position,
        ))
    data_href = _first(fields, "data-href")
    if data_href is not None:
        objects.append(Image(id="img", format="fits", data_href=data_href))

    if not objects:
        raise ValueError("kv-text record carries no recognized keys")
    return AmlDocument(objects=tuple(objects))


def _first(fields: dict[str, list[str]], key: str) -> str | None:
    values = fields.get(key)
    return values[0] if values else None


# ---------------------------------------------------------------------------
# mock stores

@dataclass(frozen=True)
class StoreRecord:
    fields: RecordFields
    document: AmlDocument
    dataset_id: str | None = None


class MockStore:
    """In-process record store standing in for a remote provider.

    Reads see immutable snapshots; ingest swaps the whole record list under
    a lock, so concurrent readers observe either the old or the new store.
    """

    def __init__(
        self,
        profile_id: str,
        kind: str,
        source_id: str,
        records: list[StoreRecord] | None = None,
        datasets: dict[str, bytes] | None = None,
    ):
        if kind not in (KV_CGI, PQF):
            raise ValueError(f"unknown source kind {kind!r}")
        self.profile = prof.get_profile(profile_id)
        self.kind = kind
        self.source_id = source_id
        self._records: tuple[StoreRecord, ...] = tuple(records or ())
        self._datasets: dict[str, bytes] = dict(datasets or {})
        self._write_lock = threading.Lock()

    @property
    def records(self) -> tuple[StoreRecord, ...]:
        return self._records

    @property
    def record_format(self) -> str:
        return KV_TEXT if self.kind == KV_CGI else AML

    def record(self, index: int) -> StoreRecord:
        records = self._records
        if not 0 <= index < len(records):
            raise IndexError(f"no record {index} in {self.source_id}")
        return records[index]

    def native_record(self, index: int) -> NativeRecord:
        rec = self.record(index)
        if self.kind == KV_CGI:
            payload = render_kv_text(rec.fields).encode("utf-8")
        else:
            payload = serialize_aml(rec.document).encode("utf-8")
        return NativeRecord(self.record_format, payload, self.source_id, index)

    def search(self, nq: NativeQuery) -> list[int]:
        if nq.kind != self.kind:
            raise NativeQueryError(f"{self.source_id} does not speak {nq.kind}")
        q = parse_native_query(nq)
        records = self._records
        return [i for i, rec in enumerate(records) if eval_query(q, rec.fields, self.profile)]

    def dataset(self, dataset_id: str) -> bytes | None:
        return self._datasets.get(dataset_id)

    def dataset_ids(self) -> list[str]:
        return sorted(self._datasets)

    def ingest(self, project: AmlDocument, datasets: dict[str, bytes]) -> list[int]:
        """Add one store record per image of a validated project; atomic.

        Every image's upload: data-href must name a provided FITS blob; all
        checks run before the store is touched, so a failed ingest leaves
        it bit-identical.
        """
        report = validate_aml(project)
        if not report.ok:
            raise IngestError(f"project does not validate: {'; '.join(report.violations)}")

        images = [o for o in project.objects if isinstance(o, Image)]
        if not images:
            raise IngestError("project has no image objects")
        meta = next((o for o in project.objects if isinstance(o, Metadata)), None)
        astro_objects = [o for o in project.objects if isinstance(o, AstronomicalObject)]

        staged = []
        for img in images:
            href = img.data_href or ""
            if not href.startswith(_UPLOAD_SCHEME):
                raise IngestError(f"image {img.id or '?'}: data-href {href!r} is not an upload")
            blob_name = href[len(_UPLOAD_SCHEME):]
            if blob_name not in datasets:
                raise IngestError(f"no uploaded dataset named {blob_name!r}")
            blob = datasets[blob_name]
            try:
                parse_fits(blob)
            except ValueError as exc:
                raise IngestError(f"dataset {blob_name!r}: {exc}") from exc
            staged.append((img, blob))

        with self._write_lock:
            base = len(self._records)
            new_records = []
            new_datasets = dict(self._datasets)
            for offset, (img, blob) in enumerate(staged):
                dataset_id = f"{self.source_id}-{base + offset}"
                new_datasets[dataset_id] = blob
                obj = _image_subject(img, astro_objects)
                doc = _ingest_document(meta, obj, img, dataset_id)
                new_records.append(StoreRecord(_ingest_fields(meta, obj), doc, dataset_id))
            self._datasets = new_datasets
            self._records = self._records + tuple(new_records)
            return list(range(base, base + len(new_records)))


def mock_execute(store: MockStore, nq: NativeQuery) -> list[NativeRecord]:
    """Run a native query, returning full native records in store order."""
    return [store.native_record(i) for i in store.search(nq)]


# ---------------------------------------------------------------------------
# store fixture files

def load_store_file(path, kind: str, source_id: str) -> MockStore:
    """Load a JSON store fixture; dataset paths resolve relative to the file.

    Layout: {"profile": ID, "records": [{"fields": {name: [values]},
    "position": "SYS LON LAT"?, "document": AML-text, "dataset": path?}]}
    """
    path = Path(path)
    spec = json.loads(path.read_text("utf-8"))
    records = []
    datasets: dict[str, bytes] = {}
    for index, entry in enumerate(spec["records"]):
        position = None
        if entry.get("position"):
            parsed = parse_position(entry["position"])
            position = parsed if isinstance(parsed, SkyPosition) else parsed.center
        fields = RecordFields(
            {name: tuple(values) for name, values in entry["fields"].items()},
            position,
        )
        dataset_id = None
        if entry.get("dataset"):
            dataset_id = f"{source_id}-{index}"
            datasets[dataset_id] = (path.parent / entry["dataset"]).read_bytes()
        records.append(StoreRecord(fields, parse_aml(entry["document"]), dataset_id))
    return MockStore(spec["profile"], kind, source_id, records, datasets)


def save_store_file(path, profile_id: str, entries: list[dict]) -> None:
    """Write a store fixture; entries use the load_store_file layout."""
    Path(path).write_text(
        json.dumps({"profile": profile_id, "records": entries}, indent=1),
        "utf-8",
    )


class MockSource:
    """Executable source for the federator: descriptor plus store.

    `delay` adds an artificial pause before answering searches, to stand in
    for a slow provider.
    """

    def __init__(self, descriptor: SourceDescriptor, store: MockStore, delay: float = 0.0):
        if descriptor.kind != store.kind:
            raise ValueError(f"descriptor kind {descriptor.kind} != store kind {store.kind}")
        self.descriptor = descriptor
        self.store = store
        self.delay = delay

    def search(self, nq: NativeQuery) -> list[int]:
        if self.delay > 0.0:
            time.sleep(self.delay)
        return self.store.search(nq)

    def fetch(self, index: int) -> NativeRecord:
        return self.store.native_record(index)


# ---------------------------------------------------------------------------
# ingest

_UPLOAD_SCHEME = "upload:"


def ingest_project(
    store: MockStore,
    project: AmlDocument,
    datasets: dict[str, bytes],
) -> list[int]:
    return store.ingest(project, datasets)


def _image_subject(img: Image, astro_objects: list[AstronomicalObject]) -> AstronomicalObject | None:
    """The astronomical object an image depicts: linked by ref, else the only one."""
    for link in img.links:
        for obj in astro_objects:
            if obj.id is not None and link.ref == obj.id:
                return obj
    return astro_objects[0] if len(astro_objects) == 1 else None


def _ingest_fields(meta: Metadata | None, obj: AstronomicalObject | None) -> RecordFields:
    values: dict[str, tuple[str, ...]] = {}
    position = None
    if meta is not None:
        if meta.title:
            values["title"] = (meta.title,)
        if meta.creators:
            values["creator"] = meta.creators
        if meta.subjects:
            values["subject"] = meta.subjects
        if meta.date:
            values["date"] = (meta.date,)
        if meta.identifier:
            values["identifier"] = (meta.identifier,)
    if obj is not None:
        values["object-name"] = obj.identifiers
        if obj.object_type:
            values["object-type"] = (obj.object_type,)
        position = obj.position
    return RecordFields(values, position)


def _ingest_document(
    meta: Metadata | None,
    obj: AstronomicalObject | None,
    img: Image,
    dataset_id: str,
) -> AmlDocument:
    objects: list = []
    if meta is not None:
        objects.append(meta)
    if obj is not None:
        objects.append(obj)
    objects.append(Image(
        id=img.id,
        dimensions=img.dimensions,
        band=img.band,
        center=img.center,
        format=img.format or "fits",
        data_href=f"/data/{dataset_id}",
        thumbnail_href=f"/data/{dataset_id}/thumbnail?stride=4",
        links=img.links,
    ))
    return AmlDocument(objects=tuple(objects))
