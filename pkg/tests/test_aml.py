import random

import pytest

from astrofed.aml import (
    AmlDocument,
    AmlParseError,
    AstronomicalObject,
    Image,
    Link,
    Measurement,
    Metadata,
    Person,
    TableSet,
    extract_keywords,
    parse_aml,
    resolve_links,
    serialize_aml,
    validate_aml,
)
from astrofed.skycoords import SkyPosition

from oracles import random_aml_document

M31_DOC = AmlDocument(
    (
        Metadata(id="meta", title="An HI survey of M31", subjects=("spiral galaxy",)),
        AstronomicalObject(
            identifiers=("M31", "NGC 224"),
            id="obj",
            object_type="galaxy",
            position=SkyPosition("eq", 10.68, 41.27),
        ),
    ),
    docid="docA",
)


class TestParse:
    def test_minimal_astronomical_object(self):
        d = parse_aml(
            '<aml><astronomical-object object-type="galaxy">'
            "<identifier>M31</identifier></astronomical-object></aml>"
        )
        assert len(d.objects) == 1
        obj = d.objects[0]
        assert obj.identifiers == ("M31",)
        assert obj.object_type == "galaxy"

    def test_empty_document_rejected(self):
        with pytest.raises(AmlParseError):
            parse_aml("<aml></aml>")

    def test_internal_link_parses_and_resolves(self):
        d = parse_aml(
            '<aml><metadata id="meta"><title>t</title>'
            '<link ref="img" relation="describes"/></metadata>'
            '<image id="img" data-href="http://example.org/x.fits"/></aml>'
        )
        assert len(d.objects) == 2
        [rl] = resolve_links(d, [])
        assert rl.status == "internal"
        assert rl.target_object_id == "img"

    @pytest.mark.parametrize(
        "text",
        [
            "<aml><astronomical-object/></aml>",  # zero identifiers
            '<aml><astronomical-object><identifier>M1</identifier>'
            '<measurement name="flux" value="1" unit="Jy" uncertainty="-0.1"/>'
            "</astronomical-object></aml>",
            '<aml><image id="i"/></aml>',  # no data-href
            "<aml><table-set/></aml>",  # no table links
            "<aml><widget/></aml>",
            '<aml><metadata id="a"/><person id="a"/></aml>',  # duplicate ids
            "<aml",
            "<record/>",
        ],
    )
    def test_rejects(self, text):
        with pytest.raises(AmlParseError):
            parse_aml(text)

    def test_reserved_image_set_element(self):
        with pytest.raises(AmlParseError, match="reserved"):
            parse_aml("<aml><image-set/></aml>")


class TestSerialize:
    def test_measurement_canonical_form(self):
        doc = AmlDocument(
            (
                AstronomicalObject(
                    identifiers=("M31",),
                    measurements=(Measurement("flux", 2.3, "Jy", 0.1),),
                ),
            )
        )
        assert (
            '<measurement name="flux" value="2.3" unit="Jy" uncertainty="0.1"/>'
            in serialize_aml(doc)
        )

    def test_person_omits_absent_attributes(self):
        text = serialize_aml(AmlDocument((Person(name="R. Blake"),)))
        assert '<person name="R. Blake"/>' in text
        assert "affiliation" not in text and "email" not in text

    def test_round_trip_m31(self):
        assert parse_aml(serialize_aml(M31_DOC)) == M31_DOC

    def test_round_trip_random_documents(self):
        for seed in range(200):
            doc = random_aml_document(random.Random(seed), docid=f"d{seed}")
            assert parse_aml(serialize_aml(doc)) == doc

    def test_serialize_parse_idempotent_on_canonical_text(self):
        for seed in range(50):
            doc = random_aml_document(random.Random(seed))
            text = serialize_aml(doc)
            assert serialize_aml(parse_aml(text)) == text

    def test_parser_accepts_only_validator_clean_invariants(self):
        # hard invariants agree between parser and validator
        for seed in range(200):
            doc = random_aml_document(random.Random(seed))
            assert validate_aml(parse_aml(serialize_aml(doc))).violations == ()


class TestValidate:
    def test_clean_document(self):
        report = validate_aml(M31_DOC)
        assert report.ok and report.warnings == ()

    def test_tableset_without_links(self):
        report = validate_aml(AmlDocument((Metadata(title="t"), TableSet(id="ts"))))
        assert any("table-set" in v and "no table links" in v for v in report.violations)

    def test_unresolved_ref_warns(self):
        doc = AmlDocument(
            (Metadata(title="t", links=(Link(ref="obj9", relation="describes"),)),)
        )
        report = validate_aml(doc)
        assert report.ok
        assert any("unresolved ref obj9" in w for w in report.warnings)

    def test_missing_metadata_warns(self):
        doc = AmlDocument((AstronomicalObject(identifiers=("M31",)),))
        report = validate_aml(doc)
        assert report.ok
        assert any("no metadata object" in w for w in report.warnings)

    def test_negative_uncertainty_flagged(self):
        doc = AmlDocument(
            (
                AstronomicalObject(
                    identifiers=("M31",),
                    measurements=(Measurement("flux", 1.0, "Jy", -0.5),),
                ),
            )
        )
        assert not validate_aml(doc).ok

    def test_odd_date_syntax_warns(self):
        doc = AmlDocument((Metadata(title="t", date="June 1999"),))
        report = validate_aml(doc)
        assert report.ok
        assert any("ISO 8601" in w for w in report.warnings)


class TestKeywords:
    def test_m31_union(self):
        assert extract_keywords(M31_DOC) == {"spiral galaxy", "galaxy", "m31", "ngc 224"}

    def test_empty_without_relevant_objects(self):
        doc = AmlDocument((Person(name="R. Blake"),))
        assert extract_keywords(doc) == set()

    def test_invariant_under_reordering(self):
        for seed in range(50):
            doc = random_aml_document(random.Random(seed))
            shuffled = list(doc.objects)
            random.Random(seed + 1).shuffle(shuffled)
            assert extract_keywords(doc) == extract_keywords(AmlDocument(tuple(shuffled)))

    def test_shared_subject_intersection(self):
        a = AmlDocument((Metadata(subjects=("radio continuum", "survey")),))
        b = AmlDocument((Metadata(subjects=("radio continuum", "hi")),))
        assert extract_keywords(a) & extract_keywords(b) == {"radio continuum"}


class TestResolveLinks:
    def test_cross_document_with_fragment(self):
        doc_b = AmlDocument(
            (Image(id="img1", data_href="http://example.org/b.fits"),), docid="docB"
        )
        doc = AmlDocument(
            (Metadata(title="t", links=(Link(href="aml:docB#img1"),)),), docid="docA"
        )
        [rl] = resolve_links(doc, [doc, doc_b])
        assert rl.status == "cross-document"
        assert rl.target_docid == "docB"
        assert rl.target_object_id == "img1"

    def test_cross_document_without_fragment(self):
        doc_b = AmlDocument((Metadata(title="b"),), docid="docB")
        doc = AmlDocument((Metadata(title="t", links=(Link(href="aml:docB"),)),))
        [rl] = resolve_links(doc, [doc_b])
        assert rl.status == "cross-document"
        assert rl.target_docid == "docB"

    def test_aml_href_misses(self):
        doc_b = AmlDocument((Metadata(title="b"),), docid="docB")
        doc = AmlDocument(
            (
                Metadata(
                    title="t",
                    links=(Link(href="aml:docC"), Link(href="aml:docB#nope")),
                ),
            )
        )
        statuses = [rl.status for rl in resolve_links(doc, [doc_b])]
        assert statuses == ["unresolved", "unresolved"]

    def test_external_stays_external(self):
        doc = AmlDocument((Metadata(title="t", links=(Link(href="http://example.org/x.fits"),)),))
        [rl] = resolve_links(doc, [])
        assert rl.status == "external"

    def test_duplicate_corpus_docids_rejected(self):
        a = AmlDocument((Metadata(title="a"),), docid="dup")
        b = AmlDocument((Metadata(title="b"),), docid="dup")
        with pytest.raises(ValueError):
            resolve_links(a, [a, b])
