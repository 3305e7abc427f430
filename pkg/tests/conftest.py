from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from astrofed.aml import AmlDocument, Link, Metadata
from astrofed.sources import (
    MockSource,
    MockStore,
    StoreRecord,
    kv_descriptor,
    load_store_file,
    pqf_descriptor,
)

FIXTURES = Path(__file__).parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def kv_store() -> MockStore:
    return load_store_file(FIXTURES / "store_kv.json", "kv-cgi", "adil-kv")


@pytest.fixture(scope="session")
def pqf_store() -> MockStore:
    return load_store_file(FIXTURES / "store_pqf.json", "pqf", "adil-pqf")


@pytest.fixture()
def two_sources(kv_store, pqf_store):
    """Fresh adapters over the shared fixture stores, no artificial delay."""
    return [
        MockSource(kv_descriptor("adil-kv", kv_store.profile.id), kv_store),
        MockSource(pqf_descriptor("adil-pqf", pqf_store.profile.id), pqf_store),
    ]


def make_store(profile_id: str, kind: str, source_id: str, rows) -> MockStore:
    """Small inline store; rows are (fields-dict, document) pairs."""
    from astrofed.gasl import RecordFields

    records = tuple(
        StoreRecord(RecordFields.of(**fields), document) for fields, document in rows
    )
    return MockStore(profile_id, kind, source_id, records)


# ---------------------------------------------------------------------------
# planted clustering corpus: two keyword cliques of four bridged by one link

CLIQUE_A = ("a0", "a1", "a2", "a3")
CLIQUE_B = ("b0", "b1", "b2", "b3")

_A_COMMON = ("hi", "rotation", "disk")
_B_COMMON = ("quasar", "radio", "jet")
_A_UNIQUE = ("warp", "tidal tail", "bar", "halo")
_B_UNIQUE = ("lobe", "core", "hotspot", "counterjet")


def _planted_doc(docid: str, common, unique: str, links=()) -> AmlDocument:
    return AmlDocument(
        (
            Metadata(
                id="meta",
                title=f"study {docid}",
                subjects=common + (unique,),
                links=tuple(links),
            ),
        ),
        docid=docid,
    )


@pytest.fixture(scope="session")
def planted_corpus() -> list[AmlDocument]:
    """Eight documents in interleaving-hostile order: every intra-clique pair
    has Jaccard 3/5, cliques share no keywords, and a3 links to b0 so the
    planted 4/4 cut weighs exactly 1.0 while isolating any node cuts >= 1.8."""
    docs = []
    for k, docid in enumerate(CLIQUE_A):
        links = (Link(href="aml:b0", relation="related"),) if docid == "a3" else ()
        docs.append(_planted_doc(docid, _A_COMMON, _A_UNIQUE[k], links))
    for k, docid in enumerate(CLIQUE_B):
        docs.append(_planted_doc(docid, _B_COMMON, _B_UNIQUE[k]))
    return docs
