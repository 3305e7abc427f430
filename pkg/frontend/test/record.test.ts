import { describe, expect, it } from "vitest";

import { parseAml } from "../src/aml.js";
import { escapeHtml, renderInvalidRecord, renderRecord } from "../src/record.js";
import { RECORD_3C273 } from "./fixtures.js";

const render = (text: string) => renderRecord(parseAml(text), text);

describe("renderRecord", () => {
  const html = render(RECORD_3C273);

  it("shows the measurement with its uncertainty and unit", () => {
    expect(html).toContain("2.3 ± 0.1 Jy");
    expect(html).toContain("<th>flux-density</th>");
  });

  it("shows the position in both frames", () => {
    expect(html).toContain("eq 187.2728 2.0523 (gal 289.9393 64.3589)");
  });

  it("loses no field of the fixture record", () => {
    for (const piece of [
      "adil-96-p020",
      "A 6 cm survey of 3C 273",
      "A. Petrov, R. Blake",
      "continuum",
      "1996-06",
      "3C 273",
      "quasar",
    ]) {
      expect(html).toContain(piece);
    }
  });

  it("carries the fetched text in an expandable raw section", () => {
    expect(html).toContain("<details><summary>raw record</summary><pre>");
    expect(html).toContain(escapeHtml(RECORD_3C273));
  });

  it("emits a hydration placeholder for image data", () => {
    const text =
      '<aml><image id="im" dimensions="32 24" format="fits" ' +
      'data-href="/data/disk_i16" thumbnail-href="/data/disk_i16/thumbnail?stride=2">' +
      '<band value="6" unit="cm"/><position system="gal" lon="10" lat="20"/></image></aml>';
    const out = render(text);
    expect(out).toContain('<canvas class="dataset-thumb" data-dataset="disk_i16"></canvas>');
    expect(out).toContain("32 x 24");
    expect(out).toContain("6 cm");
    expect(out).toContain("gal 10.0000 20.0000");
  });

  it("renders the remaining object kinds", () => {
    const text =
      "<aml>" +
      '<article id="a" href="https://j.example/1"><title>Jets</title><journal>ApJ</journal></article>' +
      '<table id="t" content-href="/data/tbl"><column name="freq" unit="GHz" kind="float"/></table>' +
      "<table-set><description>runs</description><link ref=\"t\" relation=\"member\"/></table-set>" +
      '<person name="R. Blake" email="rb@example.edu"/>' +
      "</aml>";
    const out = render(text);
    expect(out).toContain('<a href="https://j.example/1">');
    expect(out).toContain("freq GHz float");
    expect(out).toContain("member: #t");
    expect(out).toContain("R. Blake");
    expect(out).toContain('<h3 id="a">');
  });

  it("escapes markup hiding in field values", () => {
    const text = "<aml><metadata><title>&lt;b&gt; &amp; &quot;more&quot;</title></metadata></aml>";
    const out = render(text);
    expect(out).toContain("&lt;b&gt; &amp; &quot;more&quot;</h2>");
    expect(out).not.toContain("<b>");
  });
});

describe("renderInvalidRecord", () => {
  it("falls back to raw text plus the diagnostic", () => {
    const out = renderInvalidRecord("<aml><broken>", "tag broken is not a record object");
    expect(out).toContain("does not parse as a record");
    expect(out).toContain("tag broken is not a record object");
    expect(out).toContain("&lt;aml&gt;&lt;broken&gt;");
  });
});
