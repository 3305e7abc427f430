"""Regenerate the committed fixtures under fixtures/.

Deterministic: same seed, same bytes.  Run from the repository root:

    python3 tools/gen_fixtures.py
"""

from __future__ import annotations

import json
import random
from pathlib import Path

import numpy as np

from astrofed.aml import (
    AmlDocument,
    AstronomicalObject,
    Image,
    Link,
    Measurement,
    Metadata,
    serialize_aml,
)
from astrofed.fits import Card, from_pixels, serialize_fits
from astrofed.numfmt import format_number
from astrofed.skycoords import SkyPosition, position_text

SEED = 19990601

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"

# name(s), type, (ra, dec) J2000-ish, to taste
CATALOG = [
    (["M31", "NGC 224"], "galaxy", (10.68, 41.27)),
    (["M33", "NGC 598"], "galaxy", (23.46, 30.66)),
    (["M51", "NGC 5194"], "galaxy", (202.47, 47.20)),
    (["M81", "NGC 3031"], "galaxy", (148.89, 69.07)),
    (["M82", "NGC 3034"], "galaxy", (148.97, 69.68)),
    (["NGC 253"], "galaxy", (11.89, -25.29)),
    (["NGC 891"], "galaxy", (35.64, 42.35)),
    (["NGC 1275"], "galaxy", (49.95, 41.51)),
    (["NGC 2403"], "galaxy", (114.21, 65.60)),
    (["NGC 4258", "M106"], "galaxy", (184.74, 47.30)),
    (["NGC 5128", "Centaurus A"], "galaxy", (201.37, -43.02)),
    (["NGC 6946"], "galaxy", (308.72, 60.15)),
    (["NGC 7331"], "galaxy", (339.27, 34.42)),
    (["IC 342"], "galaxy", (56.70, 68.10)),
    (["Orion KL"], "molecular-cloud", (83.81, -5.38)),
    (["Sgr B2"], "molecular-cloud", (266.83, -28.38)),
    (["W3(OH)"], "hii-region", (36.76, 61.87)),
    (["Cas A"], "supernova-remnant", (350.85, 58.82)),
    (["Crab", "M1", "NGC 1952"], "supernova-remnant", (83.63, 22.01)),
    (["Cyg A", "3C 405"], "galaxy", (299.87, 40.73)),
    (["3C 273"], "quasar", (187.28, 2.05)),
    (["3C 48"], "quasar", (24.42, 33.16)),
    (["30 Doradus"], "hii-region", (84.68, -69.10)),
    (["Tycho SNR"], "supernova-remnant", (6.34, 64.13)),
]

SUBJECTS = [
    "hi", "co", "continuum", "survey", "polarization", "radio jet",
    "star formation", "kinematics", "atlas", "spectroscopy", "interferometry",
    "masers", "dust",
]

CREATORS = [
    "R. Blake", "S. Okafor", "J. Marchetti", "L. Nguyen", "A. Petrov",
    "D. Whitfield", "M. Castellanos", "E. Lindqvist", "T. Barrow",
]

# label, SI meters
BANDS = [
    ("21 cm", 0.21),
    ("6 cm", 0.06),
    ("2.6 mm", 0.0026),
    ("850 um", 8.5e-4),
    ("2.2 um", 2.2e-6),
    ("500 nm", 5e-7),
]


def make_entry(rng: random.Random, index: int, source_tag: str, dataset: str | None) -> dict:
    names, obj_type, (ra, dec) = CATALOG[index % len(CATALOG)]
    subjects = sorted(rng.sample(SUBJECTS, rng.randint(1, 3)))
    creators = rng.sample(CREATORS, rng.randint(1, 2))
    band_label, band_m = rng.choice(BANDS)
    year = rng.randint(1993, 1999)
    date = f"{year}" if rng.random() < 0.5 else f"{year}-{rng.randint(1, 12):02d}"
    identifier = f"adil-{year % 100:02d}-{source_tag}{index:03d}"
    title = rng.choice([
        f"{subjects[0].capitalize()} observations of {names[0]}",
        f"A {band_label} survey of {names[0]}",
        f"{names[0]} imaged at {band_label}",
    ])
    pos = SkyPosition("eq", ra + rng.uniform(-0.01, 0.01), dec + rng.uniform(-0.01, 0.01))

    fields = {
        "title": [title],
        "creator": creators,
        "subject": subjects,
        "date": [date],
        "identifier": [identifier],
        "object-name": list(names),
        "object-type": [obj_type],
        "wavelength": [format_number(band_m)],
    }

    measurements = ()
    if source_tag == "p" and index == 20:
        # the worked flux-density example several clients display (3C 273)
        measurements = (Measurement("flux-density", 2.3, "Jy", 0.1),)
    elif rng.random() < 0.25:
        measurements = (Measurement(
            "flux-density", round(rng.uniform(0.1, 40.0), 2), "Jy",
            round(rng.uniform(0.01, 0.5), 2),
        ),)

    objects = [
        Metadata(
            id="meta", title=title, creators=tuple(creators),
            subjects=tuple(subjects), date=date, identifier=identifier,
        ),
        AstronomicalObject(
            identifiers=tuple(names), id="obj", object_type=obj_type,
            position=pos, measurements=measurements,
        ),
    ]
    if dataset is not None:
        objects.append(Image(
            id="img", format="fits",
            data_href=f"/data/{'mock-kv' if source_tag == 'k' else 'mock-pqf'}-{index}",
            thumbnail_href=None,
        ))
    docid = identifier if source_tag == "p" else None
    doc = AmlDocument(tuple(objects), docid=docid)

    entry = {
        "fields": fields,
        "position": position_text(pos),
        "document": serialize_aml(doc),
    }
    if dataset is not None:
        entry["dataset"] = dataset
    return entry


def add_links(entries: list[dict]) -> None:
    """Thread a few cross-document links through the pqf store."""
    docids = []
    for entry in entries:
        doc_text = entry["document"]
        start = doc_text.find('docid="') + len('docid="')
        docids.append(doc_text[start:doc_text.find('"', start)])
    # atlas-style references: record i points at i+1 and i+2 for a few i
    for i in (3, 9, 15, 21, 30, 41):
        targets = [docids[(i + 1) % len(entries)], docids[(i + 2) % len(entries)]]
        links = "".join(
            f'<link href="aml:{t}#obj" relation="related"/>' for t in targets
        )
        entry = entries[i]
        entry["document"] = entry["document"].replace(
            "</metadata>", links + "</metadata>", 1
        )


def write_datasets(rng: np.random.Generator) -> dict[int, str]:
    """Small FITS files; returns {record index: relative path} per store."""
    datasets_dir = FIXTURES / "datasets"
    datasets_dir.mkdir(parents=True, exist_ok=True)
    specs = [
        ("disk_i16.fits", np.int16, (24, 32), 16),
        ("field_f32.fits", np.float32, (20, 20), -32),
        ("scan_u8.fits", np.uint8, (8, 40), 8),
        ("deep_f64.fits", np.float64, (16, 16), -64),
        ("wide_i32.fits", np.int32, (12, 28), 32),
    ]
    for filename, dtype, shape, _bitpix in specs:
        if dtype is np.uint8:
            pixels = rng.integers(0, 256, size=shape).astype(np.uint8)
            d = from_pixels(pixels)
        elif np.issubdtype(dtype, np.integer):
            pixels = rng.integers(-1000, 1000, size=shape).astype(dtype)
            d = from_pixels(pixels, bscale=0.5, bzero=100.0,
                            extra_cards=(Card("OBJECT", "fixture field"),))
        else:
            pixels = (rng.normal(10.0, 3.0, size=shape)).astype(dtype)
            d = from_pixels(pixels, extra_cards=(Card("BUNIT", "Jy/beam"),))
        (datasets_dir / filename).write_bytes(serialize_fits(d))
    files = [s[0] for s in specs]
    # indices chosen to sit inside the first page of typical search results
    return {2: files[0], 5: files[1], 11: files[2], 19: files[3], 23: files[4]}


def write_project() -> None:
    obj = AstronomicalObject(
        identifiers=("NGC 891",), id="obj", object_type="galaxy",
        position=SkyPosition("eq", 35.64, 42.35),
    )
    meta = Metadata(
        id="meta", title="NGC 891 HI synthesis deposit",
        creators=("R. Blake",), subjects=("hi", "edge-on"),
        date="1999-04", identifier="adil-99-dep1",
    )
    images = [
        Image(id=f"img{n}", format="fits", data_href=f"upload:img{n}",
              links=(Link(ref="obj", relation="depicts"),))
        for n in (1, 2)
    ]
    project = AmlDocument((meta, obj, *images), docid="adil-99-dep1")
    (FIXTURES / "project_ngc891.xml").write_text(serialize_aml(project) + "\n", "utf-8")

    uploads = FIXTURES / "uploads"
    uploads.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(SEED + 2)
    for n in (1, 2):
        pixels = rng.integers(-500, 500, size=(10 + 2 * n, 16)).astype(np.int16)
        blob = serialize_fits(from_pixels(pixels, bscale=1.0, bzero=0.0))
        (uploads / f"ngc891_{'ab'[n - 1]}.fits").write_bytes(blob)


CONFIG = """\
listen = "127.0.0.1:8090"
session_expiry_seconds = 900
profiles = ["bib-1.0", "astro-1.0"]

[[source]]
id = "mock-kv"
kind = "kv-cgi"
profile = "astro-1.0"
store = "store_kv.json"

[[source]]
id = "mock-pqf"
kind = "pqf"
profile = "astro-1.0"
store = "store_pqf.json"
"""


def main() -> None:
    FIXTURES.mkdir(exist_ok=True)
    datasets = write_datasets(np.random.default_rng(SEED + 1))

    rng = random.Random(SEED)
    kv_entries = [
        make_entry(rng, i, "k", f"datasets/{datasets[i]}" if i in datasets else None)
        for i in range(55)
    ]
    pqf_entries = [
        make_entry(rng, i, "p", f"datasets/{datasets[i]}" if i in datasets else None)
        for i in range(55)
    ]
    add_links(pqf_entries)

    for name, entries in (("store_kv.json", kv_entries), ("store_pqf.json", pqf_entries)):
        (FIXTURES / name).write_text(
            json.dumps({"profile": "astro-1.0", "records": entries}, indent=1) + "\n",
            "utf-8",
        )
    (FIXTURES / "gateway.toml").write_text(CONFIG, "utf-8")
    write_project()
    print(f"wrote fixtures under {FIXTURES}")


if __name__ == "__main__":
    main()
