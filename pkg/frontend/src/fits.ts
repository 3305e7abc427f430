/* Reader for the 2-D images the gateway serves: cutouts and thumbnails.
 *
 * 80-byte header cards in 2880-byte blocks, then big-endian pixels per
 * BITPIX.  Raw values are kept as stored; physical values apply
 * BZERO + BSCALE * raw, same split the server uses.
 */

export class FitsError extends Error {}

export interface Card {
  keyword: string;
  value: boolean | number | string | null;
  comment: string | null;
}

export interface FitsImage {
  header: Card[];
  naxis1: number;
  naxis2: number;
  bitpix: number;
  bscale: number;
  bzero: number;
  /** Raw stored values, row-major: raw[y * naxis1 + x]. */
  raw: Float64Array;
}

const BLOCK = 2880;
const CARD = 80;

function ascii(bytes: Uint8Array, start: number, end: number): string {
  let s = "";
  for (let i = start; i < end; i++) s += String.fromCharCode(bytes[i]);
  return s;
}

function parseCardValue(body: string): { value: Card["value"]; comment: string | null } {
  let s = body;
  if (s.startsWith("'")) {
    // quoted string; '' is an escaped quote
    let out = "";
    let i = 1;
    for (;;) {
      const q = s.indexOf("'", i);
      if (q < 0) throw new FitsError(`unterminated string in card: ${body.trim()}`);
      if (s[q + 1] === "'") {
        out += s.slice(i, q + 1);
        i = q + 2;
      } else {
        out += s.slice(i, q);
        s = s.slice(q + 1);
        break;
      }
    }
    const slash = s.indexOf("/");
    const comment = slash >= 0 ? s.slice(slash + 1).trim() : null;
    return { value: out.trimEnd(), comment };
  }
  const slash = s.indexOf("/");
  const comment = slash >= 0 ? s.slice(slash + 1).trim() : null;
  const field = (slash >= 0 ? s.slice(0, slash) : s).trim();
  if (field === "") return { value: null, comment };
  if (field === "T") return { value: true, comment };
  if (field === "F") return { value: false, comment };
  const num = Number(field.replace(/[dD]/, "E"));
  if (Number.isNaN(num)) throw new FitsError(`unreadable card value: ${body.trim()}`);
  return { value: num, comment };
}

function intCard(cards: Card[], keyword: string): number {
  const c = cards.find((c) => c.keyword === keyword);
  if (!c || typeof c.value !== "number" || !Number.isInteger(c.value)) {
    throw new FitsError(`missing or non-integer ${keyword} card`);
  }
  return c.value;
}

function numCard(cards: Card[], keyword: string, fallback: number): number {
  const c = cards.find((c) => c.keyword === keyword);
  if (!c) return fallback;
  if (typeof c.value !== "number") throw new FitsError(`non-numeric ${keyword} card`);
  return c.value;
}

export function parseFits(data: ArrayBuffer): FitsImage {
  const bytes = new Uint8Array(data);
  if (bytes.length % BLOCK !== 0) {
    throw new FitsError(`size ${bytes.length} is not a multiple of ${BLOCK}`);
  }
  const cards: Card[] = [];
  let pos = 0;
  let ended = false;
  while (pos + CARD <= bytes.length) {
    const image = ascii(bytes, pos, pos + CARD);
    pos += CARD;
    const keyword = image.slice(0, 8).trimEnd();
    if (keyword === "END") {
      cards.push({ keyword: "END", value: null, comment: null });
      ended = true;
      break;
    }
    if (image.slice(8, 10) === "= ") {
      const { value, comment } = parseCardValue(image.slice(10));
      cards.push({ keyword, value, comment });
    } else {
      const text = image.slice(8).trim();
      cards.push({ keyword, value: text === "" ? null : text, comment: null });
    }
  }
  if (!ended) throw new FitsError("no END card");
  const dataStart = Math.ceil(pos / BLOCK) * BLOCK;

  const first = cards[0];
  if (!first || first.keyword !== "SIMPLE" || first.value !== true) {
    throw new FitsError("not a SIMPLE FITS file");
  }
  const bitpix = intCard(cards, "BITPIX");
  if (intCard(cards, "NAXIS") !== 2) throw new FitsError("expected a 2-D image");
  const naxis1 = intCard(cards, "NAXIS1");
  const naxis2 = intCard(cards, "NAXIS2");
  const bscale = numCard(cards, "BSCALE", 1);
  const bzero = numCard(cards, "BZERO", 0);

  const n = naxis1 * naxis2;
  const view = new DataView(data, dataStart);
  const itemSize = Math.abs(bitpix) / 8;
  if (dataStart + n * itemSize > bytes.length) {
    throw new FitsError("truncated pixel data");
  }
  const raw = new Float64Array(n);
  switch (bitpix) {
    case 8:
      for (let i = 0; i < n; i++) raw[i] = view.getUint8(i);
      break;
    case 16:
      for (let i = 0; i < n; i++) raw[i] = view.getInt16(i * 2, false);
      break;
    case 32:
      for (let i = 0; i < n; i++) raw[i] = view.getInt32(i * 4, false);
      break;
    case -32:
      for (let i = 0; i < n; i++) raw[i] = view.getFloat32(i * 4, false);
      break;
    case -64:
      for (let i = 0; i < n; i++) raw[i] = view.getFloat64(i * 8, false);
      break;
    default:
      throw new FitsError(`unsupported BITPIX ${bitpix}`);
  }
  return { header: cards, naxis1, naxis2, bitpix, bscale, bzero, raw };
}

/** Physical value at (x, y): BZERO + BSCALE * raw. */
export function pixel(img: FitsImage, x: number, y: number): number {
  if (!(x >= 0 && x < img.naxis1 && y >= 0 && y < img.naxis2)) {
    throw new FitsError(`pixel (${x}, ${y}) out of bounds for ${img.naxis1}x${img.naxis2}`);
  }
  return img.bzero + img.bscale * img.raw[y * img.naxis1 + x];
}

/** [min, max] of the physical values. */
export function physicalRange(img: FitsImage): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (let i = 0; i < img.raw.length; i++) {
    const v = img.bzero + img.bscale * img.raw[i];
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return [lo, hi];
}

/**
 * Linear grayscale stretch over the physical range, one byte per pixel,
 * for painting onto a canvas.  A constant image maps to mid-gray.
 */
export function toGray(img: FitsImage): Uint8ClampedArray {
  const [lo, hi] = physicalRange(img);
  const span = hi - lo;
  const out = new Uint8ClampedArray(img.raw.length);
  for (let i = 0; i < img.raw.length; i++) {
    const v = img.bzero + img.bscale * img.raw[i];
    out[i] = span > 0 ? Math.round(((v - lo) / span) * 255) : 128;
  }
  return out;
}
