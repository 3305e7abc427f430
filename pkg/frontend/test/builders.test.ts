import { describe, expect, it } from "vitest";

import {
  buildQuerySimple,
  Draft,
  draftProblems,
  finishDraft,
  newGroupDraft,
  newTermDraft,
  positionValue,
  TermDraft,
} from "../src/builders.js";
import { GaslError, serializeGasl } from "../src/gasl.js";
import { ASTRO_PROFILE, CANONICAL_M31 } from "./fixtures.js";

function termDraft(attr: string, rel: string, value: string, unit = ""): TermDraft {
  return { kind: "term", attr, rel, value, unit };
}

describe("buildQuerySimple", () => {
  it("conjoins subject-contains terms", () => {
    const q = buildQuerySimple(["radio", "jet"]);
    expect(serializeGasl(q, "astro-1.0")).toBe(
      '<query profile="astro-1.0"><and>' +
        '<term attr="subject" rel="contains">radio</term>' +
        '<term attr="subject" rel="contains">jet</term>' +
        "</and></query>",
    );
  });

  it("keeps a lone keyword as a bare term", () => {
    const q = buildQuerySimple([" nebula "]);
    expect(serializeGasl(q, "astro-1.0")).toBe(
      '<query profile="astro-1.0"><term attr="subject" rel="contains">nebula</term></query>',
    );
  });

  it("drops blank entries and rejects an empty list", () => {
    expect(serializeGasl(buildQuerySimple(["", "  ", "x"]), "p")).toContain(">x</term>");
    expect(() => buildQuerySimple([])).toThrow(GaslError);
    expect(() => buildQuerySimple(["", "   "])).toThrow(GaslError);
  });
});

describe("draftProblems", () => {
  const check = (d: Draft) => draftProblems(d, ASTRO_PROFILE);

  it("accepts the finished M31 conjunction", () => {
    const d: Draft = {
      kind: "and",
      children: [
        termDraft("object-name", "eq", "M31"),
        termDraft("object-type", "eq", "galaxy"),
      ],
    };
    expect(check(d)).toEqual([]);
  });

  it("walks a blank term through its stages", () => {
    const d = newTermDraft();
    expect(check(d)).toEqual(["query: choose an attribute"]);
    d.attr = "object-name";
    expect(check(d)).toEqual(["query: choose a relation", "query: value is empty"]);
    d.rel = "eq";
    expect(check(d)).toEqual(["query: value is empty"]);
    d.value = "M31";
    expect(check(d)).toEqual([]);
  });

  it.each([
    [termDraft("flux", "eq", "x"), "unknown attribute"],
    [termDraft("object-name", "within", "x"), "not allowed"],
    [termDraft("wavelength", "le", "six"), "must be a number"],
    [termDraft("title", "eq", "x", "m"), "unit not allowed"],
  ])("flags %o", (d, fragment) => {
    const problems = check(d);
    expect(problems).toHaveLength(1);
    expect(problems[0]).toContain(fragment);
  });

  it("allows a unit on the numeric attribute", () => {
    expect(check(termDraft("wavelength", "le", "6", "cm"))).toEqual([]);
    expect(check(termDraft("wavelength", "le", "0.21"))).toEqual([]);
  });

  it("validates the position term value", () => {
    const pos = (v: string) => check(termDraft("sky-position", "within", v));
    expect(pos("gal 121.17 -21.57 0.5")).toEqual([]);
    expect(pos("121.17 -21.57 0.5")).toEqual(['query: position needs "SYS LON LAT RADIUS"']);
    expect(pos("ecl 10 20 1")).toEqual(["query: system must be eq or gal"]);
    expect(pos("eq ten 20 1")).toEqual(["query: position numbers must be numeric"]);
    expect(pos("eq 10 95 1")).toEqual(["query: latitude out of [-90, 90]"]);
    expect(pos("eq 10 20 181")).toEqual(["query: radius out of [0, 180]"]);
  });

  it("enforces group arity and labels nested paths", () => {
    const lone = newGroupDraft("and");
    lone.children.push(termDraft("subject", "contains", "x"));
    expect(check(lone)).toEqual(["query: and needs at least two children"]);

    const neg = newGroupDraft("not");
    expect(check(neg)).toEqual(["query: not needs exactly one child"]);
    neg.children.push(termDraft("subject", "eq", "a"), termDraft("subject", "eq", "b"));
    expect(check(neg)).toEqual(["query: not needs exactly one child"]);

    const nested: Draft = {
      kind: "or",
      children: [
        termDraft("subject", "contains", "x"),
        { kind: "and", children: [termDraft("subject", "eq", "y"), newTermDraft()] },
      ],
    };
    expect(check(nested)).toEqual(["query.1.1: choose an attribute"]);
  });
});

describe("finishDraft", () => {
  it("produces the canonical M31 bytes once clean", () => {
    const d: Draft = {
      kind: "and",
      children: [
        termDraft("object-name", "eq", "M31"),
        termDraft("object-type", "eq", "galaxy"),
      ],
    };
    expect(serializeGasl(finishDraft(d), "astro-1.0")).toBe(CANONICAL_M31);
  });

  it("keeps units and trims values", () => {
    const q = finishDraft(termDraft("wavelength", "le", " 6 ", "cm"));
    expect(serializeGasl(q, "astro-1.0")).toBe(
      '<query profile="astro-1.0"><term attr="wavelength" rel="le" unit="cm">6</term></query>',
    );
  });

  it("wraps not around its single child", () => {
    const d: Draft = { kind: "not", children: [termDraft("subject", "eq", "x")] };
    expect(serializeGasl(finishDraft(d), "p")).toContain("<not><term");
  });

  it.each([
    [newTermDraft()],
    [termDraft("subject", "", "x")],
    [{ kind: "not", children: [] } as Draft],
    [{ kind: "or", children: [termDraft("subject", "eq", "x")] } as Draft],
  ])("throws while the draft is incomplete: %o", (d) => {
    expect(() => finishDraft(d)).toThrow(GaslError);
  });
});

describe("positionValue", () => {
  it("joins the widget fields into the term value", () => {
    expect(positionValue(" gal ", "121.17", " -21.57", "0.5 ")).toBe("gal 121.17 -21.57 0.5");
  });
});
