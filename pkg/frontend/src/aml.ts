/* Record documents: the seven object kinds and a strict parser.
 *
 * This is the client's reading of the same format the gateway serves as
 * application/aml+xml.  Structural rules match the server parser; a
 * document the server would reject renders through the raw-text fallback
 * instead of this model.
 */

import { parseXml, XmlElement, XmlError } from "./xml.js";
import { makePosition, SkyPosition, SkySystem } from "./skycoords.js";

export class AmlError extends Error {}

export interface AmlLink {
  ref: string | null;
  href: string | null;
  relation: string | null;
}

export interface Measurement {
  name: string;
  value: number;
  unit: string;
  uncertainty: number | null;
}

export interface Metadata {
  kind: "metadata";
  id: string | null;
  title: string | null;
  creators: string[];
  subjects: string[];
  description: string | null;
  date: string | null;
  identifier: string | null;
  links: AmlLink[];
}

export interface AstronomicalObject {
  kind: "astronomical-object";
  id: string | null;
  objectType: string | null;
  identifiers: string[];
  position: SkyPosition | null;
  measurements: Measurement[];
  links: AmlLink[];
}

export interface Article {
  kind: "article";
  id: string | null;
  title: string | null;
  journal: string | null;
  date: string | null;
  href: string | null;
  links: AmlLink[];
}

export interface TableColumn {
  name: string;
  unit: string | null;
  columnKind: string | null;
}

export interface Table {
  kind: "table";
  id: string | null;
  columns: TableColumn[];
  contentHref: string | null;
  links: AmlLink[];
}

export interface TableSet {
  kind: "table-set";
  id: string | null;
  description: string | null;
  links: AmlLink[];
}

export interface Band {
  value: number;
  unit: string;
}

export interface AmlImage {
  kind: "image";
  id: string | null;
  dimensions: number[];
  band: Band | null;
  center: SkyPosition | null;
  format: string | null;
  dataHref: string;
  thumbnailHref: string | null;
  links: AmlLink[];
}

export interface Person {
  kind: "person";
  id: string | null;
  name: string | null;
  affiliation: string | null;
  email: string | null;
  links: AmlLink[];
}

export type AmlObject =
  | Metadata
  | AstronomicalObject
  | Article
  | Table
  | TableSet
  | AmlImage
  | Person;

export interface AmlDocument {
  docid: string | null;
  objects: AmlObject[];
}

// ---------------------------------------------------------------------------
// parsing

function noStrayText(el: XmlElement): void {
  if (el.text.trim() !== "") throw new AmlError(`unexpected text content in <${el.tag}>`);
}

function leafText(el: XmlElement): string {
  if (el.children.length > 0) throw new AmlError(`<${el.tag}> must not have child elements`);
  return el.text;
}

function floatAttr(el: XmlElement, name: string): number {
  const raw = el.attrs[name];
  if (raw === undefined) throw new AmlError(`<${el.tag}> missing ${name} attribute`);
  const v = Number(raw);
  if (raw.trim() === "" || Number.isNaN(v)) {
    throw new AmlError(`<${el.tag}> ${name} is not a number: ${JSON.stringify(raw)}`);
  }
  return v;
}

function parseLink(el: XmlElement): AmlLink {
  if (el.children.length > 0 || el.text.trim() !== "") {
    throw new AmlError("<link> carries attributes only");
  }
  const ref = el.attrs["ref"] ?? null;
  const href = el.attrs["href"] ?? null;
  if ((ref === null) === (href === null)) {
    throw new AmlError("link needs exactly one of ref or href");
  }
  return { ref, href, relation: el.attrs["relation"] ?? null };
}

function parsePosition(el: XmlElement): SkyPosition {
  const system = el.attrs["system"];
  if (system !== "eq" && system !== "gal") {
    throw new AmlError(`<position> system must be eq or gal, got ${JSON.stringify(system)}`);
  }
  try {
    return makePosition(system as SkySystem, floatAttr(el, "lon"), floatAttr(el, "lat"));
  } catch (e) {
    throw new AmlError(`bad <position>: ${(e as Error).message}`);
  }
}

function parseMeasurement(el: XmlElement): Measurement {
  const name = el.attrs["name"];
  const unit = el.attrs["unit"];
  if (!name) throw new AmlError("<measurement> missing name attribute");
  if (!unit) throw new AmlError("<measurement> missing unit attribute");
  const uncertainty = el.attrs["uncertainty"] !== undefined ? floatAttr(el, "uncertainty") : null;
  return { name, value: floatAttr(el, "value"), unit, uncertainty };
}

/** Collected children of one object element, keyed by what each tag may be. */
class Children {
  texts = new Map<string, string[]>();
  links: AmlLink[] = [];
  positions: SkyPosition[] = [];
  measurements: Measurement[] = [];
  columns: TableColumn[] = [];
  bands: Band[] = [];

  constructor(
    private readonly el: XmlElement,
    textTags: string[],
    allow: string[],
  ) {
    noStrayText(el);
    for (const c of el.children) {
      if (textTags.includes(c.tag)) {
        const list = this.texts.get(c.tag) ?? [];
        list.push(leafText(c));
        this.texts.set(c.tag, list);
      } else if (c.tag === "link" && allow.includes("link")) {
        this.links.push(parseLink(c));
      } else if (c.tag === "position" && allow.includes("position")) {
        this.positions.push(parsePosition(c));
      } else if (c.tag === "measurement" && allow.includes("measurement")) {
        this.measurements.push(parseMeasurement(c));
      } else if (c.tag === "column" && allow.includes("column")) {
        const name = c.attrs["name"];
        if (!name) throw new AmlError("<column> missing name attribute");
        this.columns.push({
          name,
          unit: c.attrs["unit"] ?? null,
          columnKind: c.attrs["kind"] ?? null,
        });
      } else if (c.tag === "band" && allow.includes("band")) {
        const unit = c.attrs["unit"];
        if (!unit) throw new AmlError("<band> missing unit attribute");
        this.bands.push({ value: floatAttr(c, "value"), unit });
      } else {
        throw new AmlError(`unknown element <${c.tag}> in <${el.tag}>`);
      }
    }
  }

  single(tag: string): string | null {
    const vals = this.texts.get(tag) ?? [];
    if (vals.length > 1) throw new AmlError(`duplicate <${tag}> in <${this.el.tag}>`);
    return vals.length ? vals[0] : null;
  }

  many(tag: string): string[] {
    return this.texts.get(tag) ?? [];
  }

  atMostOne<T>(items: T[], what: string): T | null {
    if (items.length > 1) throw new AmlError(`duplicate <${what}> in <${this.el.tag}>`);
    return items.length ? items[0] : null;
  }
}

function parseObject(el: XmlElement): AmlObject {
  const tag = el.tag;
  const id = el.attrs["id"] ?? null;

  if (tag === "metadata") {
    const ch = new Children(
      el,
      ["title", "creator", "subject", "description", "date", "identifier"],
      ["link"],
    );
    return {
      kind: "metadata",
      id,
      title: ch.single("title"),
      creators: ch.many("creator"),
      subjects: ch.many("subject"),
      description: ch.single("description"),
      date: ch.single("date"),
      identifier: ch.single("identifier"),
      links: ch.links,
    };
  }

  if (tag === "astronomical-object") {
    const ch = new Children(el, ["identifier"], ["position", "measurement", "link"]);
    const identifiers = ch.many("identifier");
    if (identifiers.length === 0) {
      throw new AmlError("astronomical-object requires at least one identifier");
    }
    return {
      kind: "astronomical-object",
      id,
      objectType: el.attrs["object-type"] ?? null,
      identifiers,
      position: ch.atMostOne(ch.positions, "position"),
      measurements: ch.measurements,
      links: ch.links,
    };
  }

  if (tag === "article") {
    const ch = new Children(el, ["title", "journal", "date"], ["link"]);
    return {
      kind: "article",
      id,
      title: ch.single("title"),
      journal: ch.single("journal"),
      date: ch.single("date"),
      href: el.attrs["href"] ?? null,
      links: ch.links,
    };
  }

  if (tag === "table") {
    const ch = new Children(el, [], ["column", "link"]);
    return {
      kind: "table",
      id,
      columns: ch.columns,
      contentHref: el.attrs["content-href"] ?? null,
      links: ch.links,
    };
  }

  if (tag === "table-set") {
    const ch = new Children(el, ["description"], ["link"]);
    if (ch.links.length === 0) throw new AmlError("table-set requires at least one table link");
    return { kind: "table-set", id, description: ch.single("description"), links: ch.links };
  }

  if (tag === "image") {
    const ch = new Children(el, [], ["band", "position", "link"]);
    const dimsRaw = el.attrs["dimensions"];
    let dimensions: number[] = [];
    if (dimsRaw !== undefined) {
      dimensions = dimsRaw.split(/\s+/).filter((v) => v !== "").map((v) => {
        const n = Number(v);
        if (!Number.isInteger(n)) throw new AmlError(`bad image dimensions ${JSON.stringify(dimsRaw)}`);
        return n;
      });
      if (dimensions.some((d) => d <= 0)) {
        throw new AmlError(`image dimensions must be positive: ${JSON.stringify(dimsRaw)}`);
      }
    }
    const dataHref = el.attrs["data-href"];
    if (dataHref === undefined) throw new AmlError("image requires a data-href attribute");
    return {
      kind: "image",
      id,
      dimensions,
      band: ch.atMostOne(ch.bands, "band"),
      center: ch.atMostOne(ch.positions, "position"),
      format: el.attrs["format"] ?? null,
      dataHref,
      thumbnailHref: el.attrs["thumbnail-href"] ?? null,
      links: ch.links,
    };
  }

  if (tag === "person") {
    const ch = new Children(el, [], ["link"]);
    return {
      kind: "person",
      id,
      name: el.attrs["name"] ?? null,
      affiliation: el.attrs["affiliation"] ?? null,
      email: el.attrs["email"] ?? null,
      links: ch.links,
    };
  }

  throw new AmlError(`unknown object element <${tag}>`);
}

export function parseAml(text: string): AmlDocument {
  let root: XmlElement;
  try {
    root = parseXml(text);
  } catch (e) {
    if (e instanceof XmlError) throw new AmlError(`malformed markup: ${e.message}`);
    throw e;
  }
  if (root.tag !== "aml") throw new AmlError(`expected <aml> root, got <${root.tag}>`);
  noStrayText(root);
  const objects = root.children.map(parseObject);
  const seen = new Set<string>();
  for (const o of objects) {
    if (o.id !== null) {
      if (seen.has(o.id)) throw new AmlError(`duplicate object id ${JSON.stringify(o.id)}`);
      seen.add(o.id);
    }
  }
  return { docid: root.attrs["docid"] ?? null, objects };
}
