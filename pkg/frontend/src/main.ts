/* Page wiring: the conversation loop of query, status, records, images.
 *
 * All state shown here is reconstructed from gateway responses; the page
 * itself only remembers which session, record and dataset are in view.
 */

import { GatewayClient, GatewayError, ProfileInfo, SessionInfo } from "./api.js";
import { parseAml } from "./aml.js";
import { bboxParam, dragToBBox } from "./bbox.js";
import {
  Draft,
  draftProblems,
  buildQuerySimple,
  finishDraft,
  GroupDraft,
  newGroupDraft,
  newTermDraft,
  positionValue,
  TermDraft,
} from "./builders.js";
import { parseFits, toGray, FitsImage } from "./fits.js";
import { serializeGasl } from "./gasl.js";
import { renderInvalidRecord, renderRecord } from "./record.js";
import { SessionPoller } from "./session.js";
import { histogramBars, shortRecordLine, statusBadges } from "./view.js";

const UNITS = ["", "m", "mm", "um", "nm", "angstrom"];
const PAGE_SIZE = 25;
const THUMB_SCALE = 4; // css magnification of thumbnail cells

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  node.append(...children);
  return node;
}

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

// ---------------------------------------------------------------------------
// application state

let client = new GatewayClient(defaultBase());
let profiles: ProfileInfo[] = [];
let sourceIds: string[] = [];
let activeProfile = "astro-1.0";
let draft: Draft = exampleDraft();
let poller: SessionPoller | null = null;
let session: SessionInfo | null = null;
let pageStart = 0;
let activeDataset: string | null = null;

function defaultBase(): string {
  // served from the gateway itself when deployed there; a dev server needs the input
  return window.location.port ? window.location.origin : "http://127.0.0.1:8090";
}

function exampleDraft(): GroupDraft {
  const a = newTermDraft();
  a.attr = "object-name";
  a.rel = "eq";
  a.value = "M31";
  const b = newTermDraft();
  b.attr = "object-type";
  b.rel = "eq";
  b.value = "galaxy";
  const g = newGroupDraft("and");
  g.children = [a, b];
  return g;
}

function note(text: string, isError = false): void {
  const bar = byId<HTMLElement>("statusbar");
  bar.textContent = text;
  bar.className = isError ? "error" : "";
}

function reportError(err: unknown): void {
  if (err instanceof GatewayError) note(`${err.code}: ${err.message}`, true);
  else note(String(err), true);
}

// ---------------------------------------------------------------------------
// connection

async function connect(): Promise<void> {
  const base = byId<HTMLInputElement>("gateway-url").value.trim();
  client = new GatewayClient(base);
  try {
    const index = await client.root();
    profiles = await client.profiles();
    sourceIds = index.sources;
    if (!profiles.some((p) => p.id === activeProfile) && profiles.length) {
      activeProfile = profiles[profiles.length - 1].id;
    }
    note(`connected: ${index.service}, sources ${sourceIds.join(", ")}`);
    renderSourceBoxes();
    renderProfileSelect();
    renderDraft();
  } catch (err) {
    reportError(err);
  }
}

function renderSourceBoxes(): void {
  const host = byId<HTMLElement>("source-boxes");
  host.replaceChildren(
    ...sourceIds.map((id) => {
      const box = el("input", { type: "checkbox", checked: "" }) as HTMLInputElement;
      box.dataset.source = id;
      return el("label", {}, box, ` ${id}`);
    }),
  );
}

function chosenSources(): string[] {
  const boxes = byId<HTMLElement>("source-boxes").querySelectorAll<HTMLInputElement>("input");
  return [...boxes].filter((b) => b.checked).map((b) => b.dataset.source ?? "");
}

function renderProfileSelect(): void {
  const select = byId<HTMLSelectElement>("profile-select");
  select.replaceChildren(
    ...profiles.map((p) => el("option", p.id === activeProfile ? { selected: "" } : {}, p.id)),
  );
  select.onchange = () => {
    activeProfile = select.value;
    renderDraft();
  };
}

// ---------------------------------------------------------------------------
// advanced query editor

function currentProfile(): ProfileInfo | null {
  return profiles.find((p) => p.id === activeProfile) ?? null;
}

function termRow(d: TermDraft, onEdit: () => void): HTMLElement {
  const profile = currentProfile();
  const attrSelect = el("select") as HTMLSelectElement;
  attrSelect.append(el("option", { value: "" }, "attribute"));
  for (const a of profile?.attributes ?? []) {
    attrSelect.append(el("option", d.attr === a.name ? { selected: "" } : {}, a.name));
  }
  attrSelect.value = d.attr;
  const attrInfo = profile?.attributes.find((a) => a.name === d.attr);

  const relSelect = el("select") as HTMLSelectElement;
  relSelect.append(el("option", { value: "" }, "relation"));
  for (const r of attrInfo?.relations ?? []) {
    relSelect.append(el("option", d.rel === r ? { selected: "" } : {}, r));
  }
  relSelect.value = d.rel;

  const row = el("div", { class: "term" }, attrSelect, relSelect);

  attrSelect.onchange = () => {
    d.attr = attrSelect.value;
    const info = currentProfile()?.attributes.find((a) => a.name === d.attr);
    if (info && !info.relations.includes(d.rel)) {
      d.rel = info.relations.length === 1 ? info.relations[0] : "";
    }
    if (info?.kind !== "number+unit") d.unit = "";
    onEdit();
  };
  relSelect.onchange = () => {
    d.rel = relSelect.value;
    onEdit();
  };

  if (attrInfo?.kind === "sky-position") {
    // four-field widget; the term value is its assembled text
    const parts = d.value.split(/\s+/);
    const sys = el("select") as HTMLSelectElement;
    sys.append(el("option", {}, "eq"), el("option", {}, "gal"));
    sys.value = parts[0] === "gal" ? "gal" : "eq";
    const lon = el("input", { placeholder: "lon", value: parts[1] ?? "" }) as HTMLInputElement;
    const lat = el("input", { placeholder: "lat", value: parts[2] ?? "" }) as HTMLInputElement;
    const radius = el("input", { placeholder: "radius", value: parts[3] ?? "" }) as HTMLInputElement;
    const update = () => {
      d.value = positionValue(sys.value, lon.value, lat.value, radius.value);
      onEdit();
    };
    for (const w of [sys, lon, lat, radius]) w.onchange = update;
    row.append(sys, lon, lat, radius);
  } else {
    const value = el("input", { placeholder: "value", value: d.value }) as HTMLInputElement;
    value.oninput = () => {
      d.value = value.value;
      onEdit();
    };
    row.append(value);
    if (attrInfo?.kind === "number+unit") {
      const unit = el("select") as HTMLSelectElement;
      for (const u of UNITS) {
        unit.append(el("option", d.unit === u ? { selected: "" } : {}, u === "" ? "(SI)" : u));
      }
      unit.value = d.unit;
      unit.onchange = () => {
        d.unit = unit.value;
        onEdit();
      };
      row.append(unit);
    }
  }
  return row;
}

function draftNode(d: Draft, parent: GroupDraft | null, onEdit: () => void): HTMLElement {
  const remove = el("button", { type: "button", class: "small" }, "x");
  remove.onclick = () => {
    if (parent) {
      parent.children = parent.children.filter((c) => c !== d);
      onEdit();
    }
  };

  if (d.kind === "term") {
    const row = termRow(d, onEdit);
    if (parent) row.append(remove);
    return row;
  }

  const children = d.children.map((c) => draftNode(c, d, onEdit));
  const addTerm = el("button", { type: "button", class: "small" }, "+ term");
  addTerm.onclick = () => {
    d.children.push(newTermDraft());
    onEdit();
  };
  const addGroup = (kind: "and" | "or" | "not") => {
    const b = el("button", { type: "button", class: "small" }, `+ ${kind}`);
    b.onclick = () => {
      d.children.push(newGroupDraft(kind));
      onEdit();
    };
    return b;
  };
  const head = el("div", { class: "group-head" }, el("strong", {}, d.kind), addTerm, addGroup("and"), addGroup("or"), addGroup("not"));
  if (parent) head.append(remove);
  return el("div", { class: `group ${d.kind}` }, head, ...children);
}

function renderDraft(): void {
  const host = byId<HTMLElement>("draft-editor");
  host.replaceChildren(draftNode(draft, null, renderDraft));

  const profile = currentProfile();
  const problemHost = byId<HTMLElement>("draft-problems");
  const preview = byId<HTMLElement>("gasl-preview");
  const submit = byId<HTMLButtonElement>("advanced-search");
  if (!profile) {
    problemHost.textContent = "not connected";
    submit.disabled = true;
    return;
  }
  const problems = draftProblems(draft, profile);
  problemHost.replaceChildren(...problems.map((p) => el("li", {}, p)));
  submit.disabled = problems.length > 0;
  preview.textContent =
    problems.length === 0 ? serializeGasl(finishDraft(draft), activeProfile) : "";
}

// ---------------------------------------------------------------------------
// sessions and records

async function openSession(gasl: string): Promise<void> {
  poller?.stop();
  try {
    const info = await client.openSession(gasl, chosenSources());
    session = info;
    pageStart = 0;
    note(`session ${info.id} opened`);
    poller = new SessionPoller(client, info.id, onSessionUpdate, reportError);
    poller.start();
    renderSession();
  } catch (err) {
    reportError(err);
  }
}

function onSessionUpdate(info: SessionInfo): void {
  session = info;
  renderSession();
  void renderRecords();
}

function renderSession(): void {
  const host = byId<HTMLElement>("session-status");
  if (!session) {
    host.replaceChildren();
    return;
  }
  const badges = statusBadges(session).map((b) =>
    el("span", { class: `badge ${b.state}` }, b.label),
  );
  host.replaceChildren(...badges, el("span", { class: "total" }, `total ${session.total}`));
}

async function renderRecords(): Promise<void> {
  const host = byId<HTMLElement>("record-list");
  if (!session) return;
  try {
    const page = await client.records(session.id, pageStart, PAGE_SIZE);
    const items = page.records.map((r) => {
      const link = el("a", { href: "#" }, `[${r.recno}] ${shortRecordLine(r)}`);
      link.onclick = (ev) => {
        ev.preventDefault();
        void showRecord(r.recno);
      };
      return el("li", {}, link, el("small", {}, ` ${r.source}`));
    });
    host.replaceChildren(...items);
    byId<HTMLElement>("page-label").textContent =
      `${pageStart}..${pageStart + page.records.length} of ${page.total}`;
  } catch (err) {
    reportError(err);
  }
}

function pageBy(delta: number): void {
  if (!session) return;
  pageStart = Math.max(0, pageStart + delta);
  void renderRecords();
}

async function showRecord(recno: number): Promise<void> {
  if (!session) return;
  const host = byId<HTMLElement>("record-view");
  try {
    const text = await client.recordAml(session.id, recno);
    let html: string;
    try {
      html = renderRecord(parseAml(text), text);
    } catch (err) {
      html = renderInvalidRecord(text, String(err));
    }
    host.innerHTML = html;
    hydrateThumbnails(host);
  } catch (err) {
    reportError(err);
  }
}

// ---------------------------------------------------------------------------
// dataset views

function paintImage(canvas: HTMLCanvasElement, img: FitsImage): void {
  canvas.width = img.naxis1;
  canvas.height = img.naxis2;
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const gray = toGray(img);
  const rgba = new ImageData(img.naxis1, img.naxis2);
  for (let i = 0; i < gray.length; i++) {
    rgba.data[i * 4] = gray[i];
    rgba.data[i * 4 + 1] = gray[i];
    rgba.data[i * 4 + 2] = gray[i];
    rgba.data[i * 4 + 3] = 255;
  }
  ctx.putImageData(rgba, 0, 0);
}

function hydrateThumbnails(host: HTMLElement): void {
  for (const canvas of host.querySelectorAll<HTMLCanvasElement>("canvas.dataset-thumb")) {
    const datasetId = canvas.dataset.dataset;
    if (!datasetId) continue;
    void (async () => {
      try {
        const stride = currentStride();
        const img = parseFits(await client.thumbnail(datasetId, stride));
        paintImage(canvas, img);
        canvas.style.width = `${img.naxis1 * THUMB_SCALE}px`;
        attachDrag(canvas, datasetId, stride);
        canvas.onclick = () => void selectDataset(datasetId);
        if (activeDataset === null) void selectDataset(datasetId);
      } catch (err) {
        reportError(err);
      }
    })();
  }
}

function currentStride(): number {
  return Number(byId<HTMLSelectElement>("stride-select").value);
}

function attachDrag(canvas: HTMLCanvasElement, datasetId: string, stride: number): void {
  let start: { x: number; y: number } | null = null;

  const toCell = (ev: MouseEvent) => {
    const rect = canvas.getBoundingClientRect();
    return {
      x: ((ev.clientX - rect.left) / rect.width) * canvas.width,
      y: ((ev.clientY - rect.top) / rect.height) * canvas.height,
    };
  };

  canvas.onmousedown = (ev) => {
    start = toCell(ev);
    ev.preventDefault();
  };
  canvas.onmouseup = (ev) => {
    if (!start) return;
    const end = toCell(ev);
    void requestCutout(datasetId, stride, start, end);
    start = null;
  };
  canvas.onmouseleave = () => {
    start = null;
  };
}

async function requestCutout(
  datasetId: string,
  stride: number,
  a: { x: number; y: number },
  b: { x: number; y: number },
): Promise<void> {
  try {
    const header = await client.header(datasetId);
    const box = dragToBBox(
      { x0: a.x, y0: a.y, x1: b.x, y1: b.y },
      stride,
      header.naxis1,
      header.naxis2,
    );
    if (!box) return; // degenerate drag
    const param = bboxParam(box);
    byId<HTMLElement>("bbox-label").textContent = `bbox=${param}`;
    const bytes = await client.cutout(datasetId, param);
    paintImage(byId<HTMLCanvasElement>("cutout-canvas"), parseFits(bytes));
    const download = byId<HTMLAnchorElement>("cutout-download");
    download.href = URL.createObjectURL(new Blob([bytes], { type: "application/fits" }));
    download.download = `${datasetId}-${param.replace(/,/g, "_")}.fits`;
    download.hidden = false;
  } catch (err) {
    reportError(err);
  }
}

async function selectDataset(datasetId: string): Promise<void> {
  activeDataset = datasetId;
  byId<HTMLElement>("dataset-label").textContent = datasetId;
  try {
    // probe once for the observed range, then keep the controls' values
    const probe = await client.histogram(datasetId);
    byId<HTMLInputElement>("hist-bins").value = String(probe.nbins);
    byId<HTMLInputElement>("hist-lo").value = String(probe.lo);
    byId<HTMLInputElement>("hist-hi").value = String(probe.hi);
    renderHistogram(probe);
  } catch (err) {
    reportError(err);
  }
}

async function refreshHistogram(): Promise<void> {
  if (!activeDataset) return;
  try {
    const h = await client.histogram(activeDataset, {
      bins: Number(byId<HTMLInputElement>("hist-bins").value),
      lo: Number(byId<HTMLInputElement>("hist-lo").value),
      hi: Number(byId<HTMLInputElement>("hist-hi").value),
    });
    renderHistogram(h);
  } catch (err) {
    reportError(err);
  }
}

function renderHistogram(h: import("./api.js").HistogramData): void {
  const host = byId<HTMLElement>("histogram");
  const bars = histogramBars(h).map((b) => {
    const bar = el("div", {
      class: "bar",
      title: `[${b.left.toFixed(2)}, ${b.right.toFixed(2)}): ${b.count}`,
    });
    bar.style.height = `${Math.round(b.frac * 100)}%`;
    return bar;
  });
  host.replaceChildren(...bars);
  byId<HTMLElement>("hist-outside").textContent = `out of range: ${h.out_of_range}`;
}

// ---------------------------------------------------------------------------
// clustering

async function runClustering(): Promise<void> {
  if (!session) return;
  const host = byId<HTMLElement>("cluster-output");
  try {
    const result = await client.clusterSession(session.id);
    host.replaceChildren(
      ...result.blocks.map((b, i) => el("li", {}, `cluster ${i}: ${b.join(", ")}`)),
    );
  } catch (err) {
    reportError(err);
  }
}

// ---------------------------------------------------------------------------
// boot

function wire(): void {
  byId<HTMLButtonElement>("connect").onclick = () => void connect();
  byId<HTMLButtonElement>("simple-search").onclick = () => {
    const words = byId<HTMLInputElement>("keywords").value.split(/\s+/).filter((w) => w !== "");
    try {
      void openSession(serializeGasl(buildQuerySimple(words), activeProfile));
    } catch (err) {
      reportError(err);
    }
  };
  byId<HTMLButtonElement>("advanced-search").onclick = () => {
    const profile = currentProfile();
    if (!profile || draftProblems(draft, profile).length) return;
    void openSession(serializeGasl(finishDraft(draft), activeProfile));
  };
  byId<HTMLButtonElement>("page-prev").onclick = () => pageBy(-PAGE_SIZE);
  byId<HTMLButtonElement>("page-next").onclick = () => pageBy(PAGE_SIZE);
  byId<HTMLButtonElement>("cluster-run").onclick = () => void runClustering();
  byId<HTMLButtonElement>("hist-refresh").onclick = () => void refreshHistogram();
  byId<HTMLInputElement>("gateway-url").value = client.base;

  for (const [id, show] of [
    ["tab-simple", "simple-form"],
    ["tab-advanced", "advanced-form"],
  ] as const) {
    byId<HTMLButtonElement>(id).onclick = () => {
      byId<HTMLElement>("simple-form").hidden = show !== "simple-form";
      byId<HTMLElement>("advanced-form").hidden = show !== "advanced-form";
    };
  }

  renderDraft();
  void connect();
}

wire();
