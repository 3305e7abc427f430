"""Stateful federated search sessions over a set of configured sources.

Opening a session returns immediately; translation and execution run in one
background thread per source.  Each source moves pending -> complete or
pending -> error on its own, and a failing source never takes the session
down with it.  Records from completed sources are visible right away, so a
slow provider does not block browsing the fast ones.

Record numbering is dispatch-order-major and native-order-minor over the
sources that have completed so far.  Full records are translated to AML
lazily and cached per session.
"""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass

from . import profiles as prof
from .aml import AmlDocument, AstronomicalObject, Metadata, parse_aml
from .gasl import QueryNode, validate_query
from .sources import (
    KV_TEXT,
    NativeRecord,
    parse_kv_text,
    translate_query,
    translate_record_kv,
)

PENDING = "pending"
COMPLETE = "complete"
ERROR = "error"

DEFAULT_EXPIRY_SECONDS = 15 * 60.0

MAX_SHORT_OBJECT_NAMES = 3


class UnknownSessionError(ValueError):
    """No live session under that id (never existed, closed, or expired)."""


class InvalidQueryError(ValueError):
    pass


class UnknownSourceError(ValueError):
    pass


class RecordRangeError(ValueError):
    pass


@dataclass(frozen=True)
class SourceStatus:
    state: str
    count: int = 0
    reason: str | None = None


@dataclass(frozen=True)
class ShortRecord:
    recno: int
    source_id: str
    title: str | None
    object_names: tuple[str, ...]
    date: str | None
    format_hint: str

    def __post_init__(self):
        if len(self.object_names) > MAX_SHORT_OBJECT_NAMES:
            raise ValueError("short records carry at most 3 object names")


@dataclass(frozen=True)
class SessionInfo:
    id: str
    profile_id: str
    source_ids: tuple[str, ...]
    statuses: dict[str, SourceStatus]
    total: int
    created_at: float
    expires_at: float


@dataclass(frozen=True)
class _ShortData:
    """Per-record short fields, minus the session record number."""

    title: str | None
    object_names: tuple[str, ...]
    date: str | None
    format_hint: str


class _Session:
    def __init__(self, sid, query, profile_id, source_ids, created_at, expires_at):
        self.id = sid
        self.query = query
        self.profile_id = profile_id
        self.source_ids: tuple[str, ...] = tuple(source_ids)
        self.created_at = created_at
        self.expires_at = expires_at
        self.lock = threading.Lock()
        self.statuses: dict[str, SourceStatus] = {s: SourceStatus(PENDING) for s in source_ids}
        self.payloads: dict[tuple[str, int], NativeRecord] = {}
        self.shorts: dict[tuple[str, int], _ShortData] = {}
        self.documents: dict[tuple[str, int], AmlDocument] = {}
        self.indices: dict[str, list[int]] = {}

    def visible(self) -> list[tuple[str, int]]:
        """(source-id, native index) pairs for completed sources, in order."""
        out = []
        for sid in self.source_ids:
            if self.statuses[sid].state == COMPLETE:
                out.extend((sid, i) for i in self.indices[sid])
        return out


def _short_from_record(rec: NativeRecord) -> _ShortData:
    if rec.format == KV_TEXT:
        fields = parse_kv_text(rec.payload)
        names = tuple(fields.get("object-name", ()))
        return _ShortData(
            title=(fields.get("title") or [None])[0],
            object_names=names[:MAX_SHORT_OBJECT_NAMES],
            date=(fields.get("date") or [None])[0],
            format_hint="html",
        )
    doc = parse_aml(rec.payload.decode("utf-8"))
    title = date = None
    names: list[str] = []
    for o in doc.objects:
        if isinstance(o, Metadata) and title is None:
            title, date = o.title, o.date
        elif isinstance(o, AstronomicalObject):
            names.extend(o.identifiers)
    return _ShortData(title, tuple(names[:MAX_SHORT_OBJECT_NAMES]), date, "aml")


class Federator:
    """Session manager; safe for concurrent use by many clients."""

    def __init__(self, sources, expiry_seconds: float = DEFAULT_EXPIRY_SECONDS, clock=time.time):
        if hasattr(sources, "values"):
            sources = list(sources.values())
        self._sources = {s.descriptor.id: s for s in sources}
        self._expiry = expiry_seconds
        self._clock = clock
        self._sessions: dict[str, _Session] = {}
        self._lock = threading.Lock()

    @property
    def source_ids(self) -> tuple[str, ...]:
        return tuple(self._sources)

    def source(self, source_id: str):
        try:
            return self._sources[source_id]
        except KeyError:
            raise UnknownSourceError(f"unknown source {source_id!r}") from None

    # -- lifecycle ----------------------------------------------------------

    def open_session(self, q: QueryNode, profile_id: str, source_ids: list[str]) -> str:
        if not source_ids:
            raise UnknownSourceError("no sources requested")
        for sid in source_ids:
            if sid not in self._sources:
                raise UnknownSourceError(f"unknown source {sid!r}")
        profile = prof.get_profile(profile_id)
        report = validate_query(q, profile)
        if not report.ok:
            raise InvalidQueryError("; ".join(report.violations))

        now = self._clock()
        session = _Session(
            sid=secrets.token_hex(8),
            query=q,
            profile_id=profile_id,
            source_ids=source_ids,
            created_at=now,
            expires_at=now + self._expiry,
        )
        with self._lock:
            self._purge_expired()
            self._sessions[session.id] = session
        for sid in session.source_ids:
            worker = threading.Thread(
                target=self._run_source, args=(session, sid), daemon=True,
                name=f"federate-{session.id}-{sid}",
            )
            worker.start()
        return session.id

    def close_session(self, session_id: str) -> None:
        with self._lock:
            if session_id not in self._sessions:
                raise UnknownSessionError(f"unknown session {session_id!r}")
            del self._sessions[session_id]

    # -- queries ------------------------------------------------------------

    def session_status(self, session_id: str) -> dict[str, SourceStatus]:
        session = self._get(session_id)
        with session.lock:
            return dict(session.statuses)

    def session_info(self, session_id: str) -> SessionInfo:
        session = self._get(session_id)
        with session.lock:
            return SessionInfo(
                id=session.id,
                profile_id=session.profile_id,
                source_ids=session.source_ids,
                statuses=dict(session.statuses),
                total=len(session.visible()),
                created_at=session.created_at,
                expires_at=session.expires_at,
            )

    def fetch_short(self, session_id: str, start: int, count: int) -> list[ShortRecord]:
        if start < 0 or count < 1:
            raise ValueError(f"need start >= 0 and count >= 1, got {start}/{count}")
        session = self._get(session_id)
        with session.lock:
            window = session.visible()[start:start + count]
            out = []
            for offset, key in enumerate(window):
                data = session.shorts[key]
                out.append(ShortRecord(
                    recno=start + offset,
                    source_id=key[0],
                    title=data.title,
                    object_names=data.object_names,
                    date=data.date,
                    format_hint=data.format_hint,
                ))
            return out

    def fetch_full(self, session_id: str, recno: int) -> AmlDocument:
        session = self._get(session_id)
        with session.lock:
            visible = session.visible()
            if not 0 <= recno < len(visible):
                raise RecordRangeError(f"record {recno} not in session (have {len(visible)})")
            key = visible[recno]
            doc = session.documents.get(key)
            if doc is None:
                rec = session.payloads[key]
                if rec.format == KV_TEXT:
                    doc = translate_record_kv(rec)
                else:
                    doc = parse_aml(rec.payload.decode("utf-8"))
                session.documents[key] = doc
            return doc

    def wait(self, session_id: str, timeout: float = 10.0) -> dict[str, SourceStatus]:
        """Poll until no source is pending; returns the final status map."""
        deadline = time.monotonic() + timeout
        while True:
            statuses = self.session_status(session_id)
            if all(s.state != PENDING for s in statuses.values()):
                return statuses
            if time.monotonic() >= deadline:
                return statuses
            time.sleep(0.01)

    # -- internals ----------------------------------------------------------

    def _get(self, session_id: str) -> _Session:
        with self._lock:
            session = self._sessions.get(session_id)
            if session is not None and self._clock() >= session.expires_at:
                del self._sessions[session_id]
                session = None
            if session is None:
                raise UnknownSessionError(f"unknown session {session_id!r}")
            return session

    def _purge_expired(self) -> None:
        # caller holds self._lock
        now = self._clock()
        for sid in [s for s, sess in self._sessions.items() if now >= sess.expires_at]:
            del self._sessions[sid]

    def _run_source(self, session: _Session, source_id: str) -> None:
        source = self._sources[source_id]
        try:
            nq = translate_query(session.query, source.descriptor)
            indices = source.search(nq)
            records = [source.fetch(i) for i in indices]
            shorts = {(source_id, r.index): _short_from_record(r) for r in records}
        except Exception as exc:
            with session.lock:
                if session.statuses[source_id].state == PENDING:
                    session.statuses[source_id] = SourceStatus(
                        ERROR, 0, f"{type(exc).__name__}: {exc}"
                    )
            return
        with session.lock:
            if session.statuses[source_id].state != PENDING:
                return
            session.indices[source_id] = indices
            for r in records:
                session.payloads[(source_id, r.index)] = r
            session.shorts.update(shorts)
            session.statuses[source_id] = SourceStatus(COMPLETE, len(records))
