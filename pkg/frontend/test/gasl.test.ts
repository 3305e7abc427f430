import { describe, expect, it } from "vitest";

import { and, GaslError, not, or, parseGasl, serializeGasl, term } from "../src/gasl.js";
import { CANONICAL_M31 } from "./fixtures.js";

describe("serializeGasl", () => {
  it("matches the gateway serializer byte for byte on the M31 conjunction", () => {
    const q = and([term("object-name", "eq", "M31"), term("object-type", "eq", "galaxy")]);
    expect(serializeGasl(q, "astro-1.0")).toBe(CANONICAL_M31);
  });

  it("puts the unit attribute after rel", () => {
    expect(serializeGasl(term("wavelength", "lt", "600", "nm"), "astro-1.0")).toBe(
      '<query profile="astro-1.0"><term attr="wavelength" rel="lt" unit="nm">600</term></query>',
    );
  });

  it("escapes markup characters the way the server does", () => {
    const q = term("title", "contains", 'a & b < "c" > d');
    expect(serializeGasl(q, "bib-1.0")).toBe(
      '<query profile="bib-1.0"><term attr="title" rel="contains">' +
        'a &amp; b &lt; "c" &gt; d</term></query>',
    );
  });

  it("nests groups without any whitespace", () => {
    const q = or([not(term("subject", "eq", "x")), term("subject", "eq", "y")]);
    expect(serializeGasl(q, "bib-1.0")).toBe(
      '<query profile="bib-1.0"><or><not><term attr="subject" rel="eq">x</term></not>' +
        '<term attr="subject" rel="eq">y</term></or></query>',
    );
  });

  it("rejects under-populated groups at construction", () => {
    expect(() => and([term("title", "eq", "x")])).toThrow(GaslError);
    expect(() => or([])).toThrow(GaslError);
  });
});

describe("parseGasl", () => {
  it("round trips the canonical fixture", () => {
    const { profileId, query } = parseGasl(CANONICAL_M31);
    expect(profileId).toBe("astro-1.0");
    expect(serializeGasl(query, profileId)).toBe(CANONICAL_M31);
  });

  it("round trips units and escapes", () => {
    const q = and([
      term("wavelength", "ge", "2.2", "um"),
      not(term("title", "contains", "<scary> & \"quoted\"")),
    ]);
    const text = serializeGasl(q, "astro-1.0");
    const back = parseGasl(text);
    expect(back.query).toEqual(q);
    expect(serializeGasl(back.query, back.profileId)).toBe(text);
  });

  it("accepts whitespace between elements", () => {
    const { query } = parseGasl(
      '<query profile="bib-1.0">\n  <and>\n    <term attr="title" rel="eq">a</term>\n' +
        '    <term attr="date" rel="eq">b</term>\n  </and>\n</query>',
    );
    expect(query.kind).toBe("and");
  });

  it.each([
    ["<notquery/>", "root"],
    ["<query><term attr='a' rel='eq'>x</term></query>", "profile"],
    ['<query profile="p"></query>', "one expression"],
    ['<query profile="p"><and><term attr="a" rel="eq">x</term></and></query>', "arity"],
    ['<query profile="p"><not></not></query>', "arity"],
    ['<query profile="p"><term rel="eq">x</term></query>', "attr"],
    ['<query profile="p"><weird/></query>', "unknown"],
    ["not xml at all", "malformed"],
  ])("rejects %s", (doc) => {
    expect(() => parseGasl(doc)).toThrow(GaslError);
  });
});
