/* Query construction: the one-box keyword form and the advanced tree editor.
 *
 * Drafts are editable trees with holes; draftProblems reports everything
 * that blocks submission, using the profile data fetched from /profiles so
 * the UI can only emit queries the gateway will validate.
 */

import { and, GaslError, not, or, Query, term } from "./gasl.js";
import { AttributeInfo, ProfileInfo } from "./api.js";

/** And over subject-contains terms; a single keyword stays a bare term. */
export function buildQuerySimple(keywords: string[]): Query {
  const words = keywords.map((k) => k.trim()).filter((k) => k !== "");
  if (words.length === 0) throw new GaslError("at least one keyword required");
  const terms = words.map((k) => term("subject", "contains", k));
  return terms.length === 1 ? terms[0] : and(terms);
}

export interface TermDraft {
  kind: "term";
  attr: string;
  rel: string;
  value: string;
  unit: string; // empty means no unit attribute
}

export interface GroupDraft {
  kind: "and" | "or" | "not";
  children: Draft[];
}

export type Draft = TermDraft | GroupDraft;

export function newTermDraft(): TermDraft {
  return { kind: "term", attr: "", rel: "", value: "", unit: "" };
}

export function newGroupDraft(kind: "and" | "or" | "not"): GroupDraft {
  return { kind, children: [] };
}

function attributeOf(profile: ProfileInfo, name: string): AttributeInfo | undefined {
  return profile.attributes.find((a) => a.name === name);
}

const POSITION_SYSTEMS = ["eq", "gal"];

function positionProblems(value: string, path: string): string[] {
  const parts = value.trim().split(/\s+/);
  if (parts.length !== 4) {
    return [`${path}: position needs "SYS LON LAT RADIUS"`];
  }
  const problems: string[] = [];
  if (!POSITION_SYSTEMS.includes(parts[0])) {
    problems.push(`${path}: system must be eq or gal`);
  }
  const nums = parts.slice(1).map(Number);
  if (nums.some((n) => Number.isNaN(n))) {
    problems.push(`${path}: position numbers must be numeric`);
    return problems;
  }
  const [, lat, radius] = nums;
  if (!(lat >= -90 && lat <= 90)) problems.push(`${path}: latitude out of [-90, 90]`);
  if (!(radius >= 0 && radius <= 180)) problems.push(`${path}: radius out of [0, 180]`);
  return problems;
}

function termProblems(d: TermDraft, profile: ProfileInfo, path: string): string[] {
  const problems: string[] = [];
  if (d.attr === "") {
    problems.push(`${path}: choose an attribute`);
    return problems;
  }
  const attr = attributeOf(profile, d.attr);
  if (!attr) {
    problems.push(`${path}: unknown attribute ${d.attr}`);
    return problems;
  }
  if (d.rel === "") {
    problems.push(`${path}: choose a relation`);
  } else if (!attr.relations.includes(d.rel)) {
    problems.push(`${path}: relation ${d.rel} not allowed for ${d.attr}`);
  }
  if (d.value.trim() === "") {
    problems.push(`${path}: value is empty`);
    return problems;
  }
  if (attr.kind === "number+unit") {
    if (Number.isNaN(Number(d.value.trim()))) {
      problems.push(`${path}: value must be a number`);
    }
  } else if (d.unit !== "") {
    problems.push(`${path}: unit not allowed for ${d.attr}`);
  }
  if (attr.kind === "sky-position") {
    problems.push(...positionProblems(d.value, path));
  }
  return problems;
}

/** Everything blocking submission, as readable one-line complaints. */
export function draftProblems(d: Draft, profile: ProfileInfo, path = "query"): string[] {
  if (d.kind === "term") return termProblems(d, profile, path);
  const problems: string[] = [];
  if (d.kind === "not") {
    if (d.children.length !== 1) problems.push(`${path}: not needs exactly one child`);
  } else if (d.children.length < 2) {
    problems.push(`${path}: ${d.kind} needs at least two children`);
  }
  d.children.forEach((c, i) => {
    problems.push(...draftProblems(c, profile, `${path}.${i}`));
  });
  return problems;
}

/** Convert a clean draft to a query tree; throws while problems remain. */
export function finishDraft(d: Draft): Query {
  if (d.kind === "term") {
    if (d.attr === "" || d.rel === "") throw new GaslError("incomplete term");
    return term(d.attr, d.rel, d.value.trim(), d.unit === "" ? null : d.unit);
  }
  const children = d.children.map(finishDraft);
  if (d.kind === "not") {
    if (children.length !== 1) throw new GaslError("not needs exactly one child");
    return not(children[0]);
  }
  return d.kind === "and" ? and(children) : or(children);
}

/** The four-field position widget's term value: "SYS LON LAT RADIUS". */
export function positionValue(system: string, lon: string, lat: string, radius: string): string {
  return [system, lon, lat, radius].map((v) => v.trim()).join(" ");
}
