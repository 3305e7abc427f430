/* Full-record view: one AML document rendered to HTML.
 *
 * Rendering is lossless for valid documents: every field of every object
 * appears, and the fetched text itself sits in an expandable raw section.
 * Documents that do not parse fall back to the raw text plus the
 * diagnostic.
 *
 * Image objects are emitted as <canvas> placeholders carrying data-dataset
 * attributes; the page hydrates them with decoded thumbnails afterwards,
 * since the server serves image data in its native format, not as browser
 * images.
 */

import { AmlDocument, AmlImage, AmlLink, AmlObject } from "./aml.js";
import { datasetIdFromHref } from "./api.js";
import { formatBand, formatMeasurement, formatPositionBoth } from "./format.js";

export function escapeHtml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function row(label: string, value: string | null): string {
  if (value === null || value === "") return "";
  return `<tr><th>${escapeHtml(label)}</th><td>${escapeHtml(value)}</td></tr>`;
}

function rawRow(label: string, html: string): string {
  return `<tr><th>${escapeHtml(label)}</th><td>${html}</td></tr>`;
}

function linkText(l: AmlLink): string {
  const target = l.ref !== null ? `#${l.ref}` : `${l.href}`;
  return l.relation !== null ? `${l.relation}: ${target}` : target;
}

function linksRow(links: AmlLink[]): string {
  if (links.length === 0) return "";
  return row("Links", links.map(linkText).join(", "));
}

function heading(kind: string, id: string | null): string {
  const anchor = id !== null ? ` id="${escapeHtml(id)}"` : "";
  const idNote = id !== null ? ` <small>#${escapeHtml(id)}</small>` : "";
  return `<h3${anchor}>${escapeHtml(kind)}${idNote}</h3>`;
}

function imageBody(o: AmlImage): string {
  const datasetId = datasetIdFromHref(o.dataHref);
  const rows = [
    row("Dimensions", o.dimensions.length ? o.dimensions.join(" x ") : null),
    row("Band", o.band ? formatBand(o.band) : null),
    row("Center", o.center ? formatPositionBoth(o.center) : null),
    row("Format", o.format),
    row("Data", o.dataHref),
    row("Thumbnail", o.thumbnailHref),
    linksRow(o.links),
  ].join("");
  const canvas =
    datasetId !== null
      ? `<canvas class="dataset-thumb" data-dataset="${escapeHtml(datasetId)}"></canvas>`
      : "";
  return `${canvas}<table>${rows}</table>`;
}

function objectHtml(o: AmlObject): string {
  switch (o.kind) {
    case "metadata": {
      const title = o.title !== null ? `<h2>${escapeHtml(o.title)}</h2>` : "";
      const rows = [
        row("Creators", o.creators.join(", ") || null),
        row("Subjects", o.subjects.join(", ") || null),
        row("Date", o.date),
        row("Identifier", o.identifier),
        row("Description", o.description),
        linksRow(o.links),
      ].join("");
      return `<section>${heading("metadata", o.id)}${title}<table>${rows}</table></section>`;
    }
    case "astronomical-object": {
      const rows = [
        row("Names", o.identifiers.join(", ")),
        row("Type", o.objectType),
        row("Position", o.position ? formatPositionBoth(o.position) : null),
        ...o.measurements.map((m) => row(m.name, formatMeasurement(m))),
        linksRow(o.links),
      ].join("");
      return `<section>${heading("astronomical object", o.id)}<table>${rows}</table></section>`;
    }
    case "article": {
      const href =
        o.href !== null
          ? rawRow("Href", `<a href="${escapeHtml(o.href)}">${escapeHtml(o.href)}</a>`)
          : "";
      const rows = [row("Title", o.title), row("Journal", o.journal), row("Date", o.date), href, linksRow(o.links)].join("");
      return `<section>${heading("article", o.id)}<table>${rows}</table></section>`;
    }
    case "table": {
      const cols = o.columns
        .map((c) => [c.name, c.unit, c.columnKind].filter((v) => v !== null).join(" "))
        .join(", ");
      const rows = [row("Columns", cols || null), row("Content", o.contentHref), linksRow(o.links)].join("");
      return `<section>${heading("table", o.id)}<table>${rows}</table></section>`;
    }
    case "table-set": {
      const rows = [row("Description", o.description), linksRow(o.links)].join("");
      return `<section>${heading("table set", o.id)}<table>${rows}</table></section>`;
    }
    case "image":
      return `<section>${heading("image", o.id)}${imageBody(o)}</section>`;
    case "person": {
      const rows = [row("Name", o.name), row("Affiliation", o.affiliation), row("Email", o.email), linksRow(o.links)].join("");
      return `<section>${heading("person", o.id)}<table>${rows}</table></section>`;
    }
  }
}

/** The record view body; rawText feeds the expandable source section. */
export function renderRecord(doc: AmlDocument, rawText: string): string {
  const docid = doc.docid !== null ? `<p class="docid">${escapeHtml(doc.docid)}</p>` : "";
  const body = doc.objects.map(objectHtml).join("");
  const raw = `<details><summary>raw record</summary><pre>${escapeHtml(rawText)}</pre></details>`;
  return `<article class="record">${docid}${body}${raw}</article>`;
}

/** Fallback for documents that do not parse: diagnostic plus raw text. */
export function renderInvalidRecord(rawText: string, error: string): string {
  return (
    `<article class="record invalid"><p class="error">does not parse as a record: ` +
    `${escapeHtml(error)}</p><pre>${escapeHtml(rawText)}</pre></article>`
  );
}
