/* Profile-bound boolean queries: AST, canonical text and parsing.
 *
 * The canonical serialization here must stay byte-identical to the
 * gateway's own serializer: one line, no inter-element whitespace,
 * attributes in attr/rel/unit order, & < > escaped in text and also
 * " in attribute values.
 */

import { parseXml, XmlElement, XmlError } from "./xml.js";

export class GaslError extends Error {}

export interface TermNode {
  kind: "term";
  attr: string;
  rel: string;
  value: string;
  unit: string | null;
}

export interface AndNode {
  kind: "and";
  children: Query[];
}

export interface OrNode {
  kind: "or";
  children: Query[];
}

export interface NotNode {
  kind: "not";
  child: Query;
}

export type Query = TermNode | AndNode | OrNode | NotNode;

export function term(attr: string, rel: string, value: string, unit: string | null = null): TermNode {
  return { kind: "term", attr, rel, value, unit };
}

export function and(children: Query[]): AndNode {
  if (children.length < 2) throw new GaslError("and needs at least two children");
  return { kind: "and", children };
}

export function or(children: Query[]): OrNode {
  if (children.length < 2) throw new GaslError("or needs at least two children");
  return { kind: "or", children };
}

export function not(child: Query): NotNode {
  return { kind: "not", child };
}

// ---------------------------------------------------------------------------
// serialization

function escapeText(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function escapeAttr(s: string): string {
  return escapeText(s).replace(/"/g, "&quot;");
}

function writeExpr(q: Query, out: string[]): void {
  if (q.kind === "term") {
    const unit = q.unit !== null ? ` unit="${escapeAttr(q.unit)}"` : "";
    out.push(
      `<term attr="${escapeAttr(q.attr)}" rel="${escapeAttr(q.rel)}"${unit}>` +
        `${escapeText(q.value)}</term>`,
    );
    return;
  }
  out.push(`<${q.kind}>`);
  const children = q.kind === "not" ? [q.child] : q.children;
  for (const c of children) writeExpr(c, out);
  out.push(`</${q.kind}>`);
}

/** Canonical document text for a query tree. */
export function serializeGasl(q: Query, profileId: string): string {
  const out: string[] = [`<query profile="${escapeAttr(profileId)}">`];
  writeExpr(q, out);
  out.push("</query>");
  return out.join("");
}

// ---------------------------------------------------------------------------
// parsing

function parseExpr(el: XmlElement): Query {
  if (el.tag === "term") {
    if (el.children.length > 0) throw new GaslError("<term> must not have child elements");
    const attr = el.attrs["attr"];
    const rel = el.attrs["rel"];
    if (attr === undefined) throw new GaslError("<term> missing attr attribute");
    if (rel === undefined) throw new GaslError("<term> missing rel attribute");
    return term(attr, rel, el.text, el.attrs["unit"] ?? null);
  }
  if (el.text.trim() !== "") throw new GaslError(`unexpected text content in <${el.tag}>`);
  const children = el.children.map(parseExpr);
  if (el.tag === "and" || el.tag === "or") {
    if (children.length < 2) throw new GaslError(`<${el.tag}> needs at least two children`);
    return el.tag === "and" ? and(children) : or(children);
  }
  if (el.tag === "not") {
    if (children.length !== 1) throw new GaslError("<not> needs exactly one child");
    return not(children[0]);
  }
  throw new GaslError(`unknown query element <${el.tag}>`);
}

export function parseGasl(text: string): { profileId: string; query: Query } {
  let root: XmlElement;
  try {
    root = parseXml(text);
  } catch (e) {
    if (e instanceof XmlError) throw new GaslError(`malformed markup: ${e.message}`);
    throw e;
  }
  if (root.tag !== "query") throw new GaslError(`expected <query> root, got <${root.tag}>`);
  const profileId = root.attrs["profile"];
  if (!profileId) throw new GaslError("query element missing profile attribute");
  if (root.children.length !== 1) throw new GaslError("query must contain exactly one expression");
  if (root.text.trim() !== "") throw new GaslError("unexpected text content in <query>");
  return { profileId, query: parseExpr(root.children[0]) };
}
