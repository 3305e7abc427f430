"""The HTTP face of the gateway: sessions, records, data browse, clustering.

Queries arrive as XML in the abstract search language, records leave as AML
(`application/aml+xml`) or as a server-rendered HTML view.  Everything else
speaks JSON.  Error bodies always carry a machine-readable `code` and a
human `message`.

State lives entirely in the federator's session table and the in-process
mock stores; two gateways loaded from the same config and fixtures answer
identical request sequences identically, session ids and clocks aside.
"""

from __future__ import annotations

import base64
import binascii
import dataclasses
import html
from dataclasses import dataclass
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # 3.10
    import tomli as tomllib

from fastapi import APIRouter, FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import HTMLResponse, JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import clustering as clus
from . import fits as fitsmod
from . import profiles as prof
from .aml import (
    AmlDocument,
    AmlParseError,
    AstronomicalObject,
    Image,
    Metadata,
    parse_aml,
    serialize_aml,
)
from .federator import (
    Federator,
    InvalidQueryError,
    RecordRangeError,
    UnknownSessionError,
    UnknownSourceError,
)
from .gasl import GaslParseError, parse_gasl
from .numfmt import format_number
from .skycoords import position_text, to_galactic
from .sources import (
    KV_CGI,
    IngestError,
    MockSource,
    NativeQuery,
    NativeQueryError,
    kv_descriptor,
    load_store_file,
    pqf_descriptor,
)

AML_MEDIA_TYPE = "application/aml+xml"
FITS_MEDIA_TYPE = "application/fits"

DEFAULT_HISTOGRAM_BINS = 32


class GatewayError(Exception):
    """Maps a domain failure onto an HTTP status and a stable error code."""

    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


# ---------------------------------------------------------------------------
# configuration

@dataclass(frozen=True)
class SourceConfig:
    id: str
    kind: str
    profile: str
    store: str
    delay: float = 0.0


@dataclass(frozen=True)
class GatewayConfig:
    host: str = "127.0.0.1"
    port: int = 8090
    session_expiry: float = 900.0
    profiles: tuple[str, ...] = ("bib-1.0", "astro-1.0")
    sources: tuple[SourceConfig, ...] = ()
    base_dir: Path = Path(".")

    def __post_init__(self):
        ids = [s.id for s in self.sources]
        if len(set(ids)) != len(ids):
            raise ValueError("source ids must be unique")
        if not self.profiles:
            raise ValueError("at least one profile is required")


def load_config(path) -> GatewayConfig:
    path = Path(path)
    data = tomllib.loads(path.read_text("utf-8"))
    host, port = "127.0.0.1", 8090
    listen = data.get("listen")
    if listen:
        host, _, port_text = listen.rpartition(":")
        port = int(port_text)
    sources = tuple(
        SourceConfig(
            id=entry["id"],
            kind=entry["kind"],
            profile=entry.get("profile", "astro-1.0"),
            store=entry["store"],
            delay=float(entry.get("delay", 0.0)),
        )
        for entry in data.get("source", ())
    )
    return GatewayConfig(
        host=host,
        port=port,
        session_expiry=float(data.get("session_expiry_seconds", 900.0)),
        profiles=tuple(data.get("profiles", ("bib-1.0", "astro-1.0"))),
        sources=sources,
        base_dir=path.parent,
    )


def build_sources(config: GatewayConfig) -> dict[str, MockSource]:
    sources = {}
    for sc in config.sources:
        store = load_store_file(config.base_dir / sc.store, sc.kind, sc.id)
        if sc.kind == KV_CGI:
            desc = kv_descriptor(sc.id, sc.profile)
        else:
            desc = pqf_descriptor(sc.id, sc.profile)
        sources[sc.id] = MockSource(desc, store, sc.delay)
    return sources


def build_app(config: GatewayConfig) -> FastAPI:
    sources = build_sources(config)
    return make_app(sources, expiry=config.session_expiry, profile_ids=config.profiles)


# ---------------------------------------------------------------------------
# json shapes

def _status_json(statuses) -> dict:
    return {
        sid: {"state": st.state, "count": st.count, "reason": st.reason}
        for sid, st in statuses.items()
    }


def _session_json(info) -> dict:
    return {
        "id": info.id,
        "profile": info.profile_id,
        "source_order": list(info.source_ids),
        "sources": _status_json(info.statuses),
        "total": info.total,
        "created_at": info.created_at,
        "expires_at": info.expires_at,
    }


def _short_json(rec) -> dict:
    return {
        "recno": rec.recno,
        "source": rec.source_id,
        "title": rec.title,
        "object_names": list(rec.object_names),
        "date": rec.date,
        "format_hint": rec.format_hint,
    }


def _profile_json(p: prof.Profile) -> dict:
    return {
        "id": p.id,
        "attributes": [
            {
                "name": a.name,
                "kind": a.value_kind,
                "relations": sorted(a.allowed_relations),
            }
            for a in sorted(p.attributes, key=lambda a: a.name)
        ],
    }


def _render_html(doc: AmlDocument) -> str:
    """A plain read-only view of one record, dual to the AML form."""
    parts = ["<!doctype html><meta charset='utf-8'><body>"]
    for o in doc.objects:
        if isinstance(o, Metadata):
            if o.title:
                parts.append(f"<h1>{html.escape(o.title)}</h1>")
            rows = []
            for label, value in (
                ("Creators", ", ".join(o.creators) or None),
                ("Subjects", ", ".join(o.subjects) or None),
                ("Date", o.date),
                ("Identifier", o.identifier),
                ("Description", o.description),
            ):
                if value:
                    rows.append(f"<dt>{label}</dt><dd>{html.escape(value)}</dd>")
            if rows:
                parts.append("<dl>" + "".join(rows) + "</dl>")
        elif isinstance(o, AstronomicalObject):
            parts.append(f"<h2>{html.escape(' / '.join(o.identifiers))}</h2>")
            if o.object_type:
                parts.append(f"<p>Type: {html.escape(o.object_type)}</p>")
            if o.position is not None:
                eq_or_gal = position_text(o.position)
                gal = position_text(to_galactic(o.position))
                parts.append(f"<p>Position: {html.escape(eq_or_gal)} ({html.escape(gal)})</p>")
            for m in o.measurements:
                text = f"{m.name}: {format_number(m.value)}"
                if m.uncertainty is not None:
                    text += f" &plusmn; {format_number(m.uncertainty)}"
                if m.unit:
                    text += f" {html.escape(m.unit)}"
                parts.append(f"<p>{text}</p>")
        elif isinstance(o, Image) and o.data_href:
            parts.append(f"<p>Image: <a href='{html.escape(o.data_href)}'>data</a></p>")
    parts.append("</body>")
    return "".join(parts)


# ---------------------------------------------------------------------------
# the application

def make_app(
    sources: dict[str, MockSource],
    expiry: float = 900.0,
    profile_ids: tuple[str, ...] = ("bib-1.0", "astro-1.0"),
    federator: Federator | None = None,
) -> FastAPI:
    fed = federator or Federator(sources, expiry_seconds=expiry)
    app = FastAPI(title="astrofed gateway", docs_url=None, redoc_url=None)
    app.state.federator = fed
    app.state.sources = sources

    # the browser client may be served from anywhere; everything here is public
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def find_store_with_dataset(dataset_id: str):
        for source in sources.values():
            blob = source.store.dataset(dataset_id)
            if blob is not None:
                return blob
        raise GatewayError(404, "unknown-dataset", f"no dataset {dataset_id!r}")

    def parse_dataset(dataset_id: str) -> fitsmod.FitsDataset:
        return fitsmod.parse_fits(find_store_with_dataset(dataset_id))

    # -- errors -------------------------------------------------------------

    @app.exception_handler(GatewayError)
    async def gateway_error(_req, exc: GatewayError):
        return JSONResponse({"code": exc.code, "message": exc.message}, exc.status)

    @app.exception_handler(StarletteHTTPException)
    async def http_error(_req, exc: StarletteHTTPException):
        return JSONResponse(
            {"code": "not-found" if exc.status_code == 404 else "http-error",
             "message": str(exc.detail)},
            exc.status_code,
        )

    @app.exception_handler(RequestValidationError)
    async def validation_error(_req, exc: RequestValidationError):
        return JSONResponse({"code": "bad-parameters", "message": str(exc)}, 400)

    # -- discovery ----------------------------------------------------------

    @app.get("/")
    def index():
        return {
            "service": "astrofed gateway",
            "profiles": list(profile_ids),
            "sources": sorted(sources),
        }

    @app.get("/profiles")
    def list_profiles():
        return {"profiles": [_profile_json(prof.get_profile(pid)) for pid in profile_ids]}

    # -- sessions -----------------------------------------------------------

    @app.post("/sessions", status_code=201)
    async def open_session(request: Request):
        body = await request.body()
        try:
            profile_id, query = parse_gasl(body)
        except GaslParseError as exc:
            raise GatewayError(400, "malformed-gasl", str(exc))
        raw = request.query_params.get("sources")
        source_ids = [s for s in raw.split(",") if s] if raw else sorted(sources)
        try:
            sid = fed.open_session(query, profile_id, source_ids)
        except UnknownSourceError as exc:
            raise GatewayError(404, "unknown-source", str(exc))
        except prof.UnknownProfileError as exc:
            raise GatewayError(400, "unknown-profile", str(exc))
        except InvalidQueryError as exc:
            raise GatewayError(400, "invalid-query", str(exc))
        return _session_json(fed.session_info(sid))

    @app.get("/sessions/{sid}")
    def session_status(sid: str):
        try:
            return _session_json(fed.session_info(sid))
        except UnknownSessionError as exc:
            raise GatewayError(404, "unknown-session", str(exc))

    @app.get("/sessions/{sid}/records")
    def short_records(sid: str, start: int = 0, count: int = 25):
        try:
            records = fed.fetch_short(sid, start, count)
            info = fed.session_info(sid)
        except UnknownSessionError as exc:
            raise GatewayError(404, "unknown-session", str(exc))
        except ValueError as exc:
            raise GatewayError(400, "bad-parameters", str(exc))
        return {"total": info.total, "records": [_short_json(r) for r in records]}

    @app.get("/sessions/{sid}/records/{recno}")
    def full_record(sid: str, recno: int, form: str = "aml"):
        try:
            doc = fed.fetch_full(sid, recno)
        except UnknownSessionError as exc:
            raise GatewayError(404, "unknown-session", str(exc))
        except RecordRangeError as exc:
            raise GatewayError(404, "record-range", str(exc))
        except Exception as exc:  # upstream translation/store failure
            raise GatewayError(502, "upstream-failure", str(exc))
        if form == "aml":
            return Response(serialize_aml(doc), media_type=AML_MEDIA_TYPE)
        if form == "html":
            return HTMLResponse(_render_html(doc))
        raise GatewayError(400, "bad-parameters", f"unknown form {form!r}")

    @app.delete("/sessions/{sid}", status_code=204)
    def close_session(sid: str):
        try:
            fed.close_session(sid)
        except UnknownSessionError as exc:
            raise GatewayError(404, "unknown-session", str(exc))
        return Response(status_code=204)

    # -- data browse --------------------------------------------------------

    @app.get("/data/{dataset_id}/header")
    def data_header(dataset_id: str):
        d = parse_dataset(dataset_id)
        return {
            "naxis1": d.naxis1,
            "naxis2": d.naxis2,
            "bitpix": d.bitpix,
            "cards": [
                {"keyword": c.keyword, "value": c.value, "comment": c.comment}
                for c in d.header
            ],
        }

    @app.get("/data/{dataset_id}/cutout")
    def data_cutout(dataset_id: str, bbox: str):
        d = parse_dataset(dataset_id)
        try:
            coords = [int(v) for v in bbox.split(",")]
            if len(coords) != 4:
                raise ValueError(f"bbox wants x0,y0,x1,y1, got {bbox!r}")
            box = fitsmod.BBox(*coords)
            sub = fitsmod.cutout(d, box)
        except ValueError as exc:
            raise GatewayError(400, "bad-parameters", str(exc))
        return Response(fitsmod.serialize_fits(sub), media_type=FITS_MEDIA_TYPE)

    @app.get("/data/{dataset_id}/histogram")
    def data_histogram(
        dataset_id: str,
        bins: int = DEFAULT_HISTOGRAM_BINS,
        lo: float | None = None,
        hi: float | None = None,
    ):
        d = parse_dataset(dataset_id)
        if lo is None or hi is None:
            obs_lo, obs_hi = fitsmod.physical_range(d)
            lo = obs_lo if lo is None else lo
            hi = obs_hi if hi is None else hi
            if not lo < hi:
                hi = lo + 1.0
        try:
            h = fitsmod.histogram(d, bins, lo, hi)
        except ValueError as exc:
            raise GatewayError(400, "bad-parameters", str(exc))
        return {
            "nbins": h.nbins,
            "lo": h.lo,
            "hi": h.hi,
            "counts": list(h.counts),
            "out_of_range": h.out_of_range,
        }

    @app.get("/data/{dataset_id}/thumbnail")
    def data_thumbnail(dataset_id: str, stride: int = 4):
        d = parse_dataset(dataset_id)
        try:
            thumb = fitsmod.thumbnail(d, stride)
        except ValueError as exc:
            raise GatewayError(400, "bad-parameters", str(exc))
        return Response(fitsmod.serialize_fits(thumb), media_type=FITS_MEDIA_TYPE)

    # -- clustering ---------------------------------------------------------

    @app.post("/cluster")
    async def cluster_records(request: Request):
        try:
            body = await request.json()
        except Exception:
            raise GatewayError(400, "bad-parameters", "body must be JSON")
        docs: list[AmlDocument] = []
        if "documents" in body:
            try:
                docs = [parse_aml(text) for text in body["documents"]]
            except AmlParseError as exc:
                raise GatewayError(400, "malformed-aml", str(exc))
        elif "session" in body:
            sid = body["session"]
            try:
                total = fed.session_info(sid).total
                recnos = body.get("records")
                if recnos is None:
                    recnos = list(range(total))
                for n in recnos:
                    doc = fed.fetch_full(sid, int(n))
                    if doc.docid is None:
                        doc = dataclasses.replace(doc, docid=str(n))
                    docs.append(doc)
            except UnknownSessionError as exc:
                raise GatewayError(404, "unknown-session", str(exc))
            except (RecordRangeError, ValueError) as exc:
                raise GatewayError(400, "bad-parameters", str(exc))
        else:
            raise GatewayError(400, "bad-parameters", "need 'documents' or 'session'")
        try:
            part = clus.cluster(
                docs,
                w_link=float(body.get("w_link", clus.DEFAULT_W_LINK)),
                w_kw=float(body.get("w_kw", clus.DEFAULT_W_KW)),
                min_similarity=float(body.get("min_similarity", clus.DEFAULT_MIN_SIMILARITY)),
                max_block=int(body.get("max_block", clus.DEFAULT_MAX_BLOCK)),
            )
        except ValueError as exc:
            raise GatewayError(400, "bad-parameters", str(exc))
        return {"blocks": [list(b) for b in part.blocks]}

    # -- ingest -------------------------------------------------------------

    @app.post("/ingest/{source_id}", status_code=201)
    async def ingest(source_id: str, request: Request):
        source = sources.get(source_id)
        if source is None:
            raise GatewayError(404, "unknown-source", f"no source {source_id!r}")
        try:
            body = await request.json()
        except Exception:
            raise GatewayError(400, "bad-parameters", "body must be JSON")
        if "project" not in body:
            raise GatewayError(400, "bad-parameters", "need an AML 'project'")
        try:
            project = parse_aml(body["project"])
        except AmlParseError as exc:
            raise GatewayError(400, "malformed-aml", str(exc))
        try:
            datasets = {
                name: base64.b64decode(encoded, validate=True)
                for name, encoded in body.get("datasets", {}).items()
            }
        except (binascii.Error, TypeError, AttributeError) as exc:
            raise GatewayError(400, "bad-parameters", f"datasets must be base64: {exc}")
        try:
            indices = source.store.ingest(project, datasets)
        except IngestError as exc:
            raise GatewayError(400, "ingest-rejected", str(exc))
        return {
            "records": indices,
            "datasets": [f"{source_id}-{n}" for n in indices],
        }

    app.include_router(mock_router(sources))
    return app


# ---------------------------------------------------------------------------
# mock source wire (shared by the gateway and the standalone mock server)

def mock_router(sources: dict[str, MockSource]) -> APIRouter:
    router = APIRouter()

    def get_source(source_id: str) -> MockSource:
        source = sources.get(source_id)
        if source is None:
            raise GatewayError(404, "unknown-source", f"no source {source_id!r}")
        return source

    @router.get("/mock/{source_id}/search")
    def mock_search(source_id: str, request: Request):
        source = get_source(source_id)
        if source.descriptor.kind == KV_CGI:
            text = request.url.query
        else:
            text = request.query_params.get("q", "")
        try:
            indices = source.store.search(NativeQuery(source.descriptor.kind, text))
        except NativeQueryError as exc:
            raise GatewayError(400, "bad-query", str(exc))
        return {"indices": indices}

    @router.get("/mock/{source_id}/record/{index}")
    def mock_record(source_id: str, index: int):
        source = get_source(source_id)
        try:
            rec = source.store.native_record(index)
        except IndexError as exc:
            raise GatewayError(404, "record-range", str(exc))
        media = "text/plain; charset=utf-8" if rec.format == "kv-text" else AML_MEDIA_TYPE
        return Response(rec.payload, media_type=media)

    return router


def make_mock_app(sources: dict[str, MockSource]) -> FastAPI:
    """Only the native-protocol endpoints, as a separate server."""
    app = FastAPI(title="astrofed mock sources", docs_url=None, redoc_url=None)

    @app.exception_handler(GatewayError)
    async def gateway_error(_req, exc: GatewayError):
        return JSONResponse({"code": exc.code, "message": exc.message}, exc.status)

    app.include_router(mock_router(sources))
    return app
