/* Minimal strict XML reader for the gateway's canonical documents.
 *
 * The server emits a narrow dialect: elements, attributes, character data,
 * the five named entities and numeric references.  This parser accepts that
 * dialect (plus comments, a prolog and CDATA for tolerance) and rejects
 * everything else loudly; a DOM implementation is deliberately not assumed
 * so the same code runs in the page and under node-based tests.
 */

export class XmlError extends Error {}

export interface XmlElement {
  tag: string;
  attrs: Record<string, string>;
  children: XmlElement[];
  /** Concatenated character data directly inside this element. */
  text: string;
}

const NAME_START = /[A-Za-z_:]/;
const NAME_CHAR = /[\w.:-]/;

const NAMED_ENTITIES: Record<string, string> = {
  amp: "&",
  lt: "<",
  gt: ">",
  quot: '"',
  apos: "'",
};

function decodeEntity(body: string): string {
  if (body.startsWith("#x") || body.startsWith("#X")) {
    const code = parseInt(body.slice(2), 16);
    if (Number.isNaN(code)) throw new XmlError(`bad character reference &${body};`);
    return String.fromCodePoint(code);
  }
  if (body.startsWith("#")) {
    const code = parseInt(body.slice(1), 10);
    if (Number.isNaN(code)) throw new XmlError(`bad character reference &${body};`);
    return String.fromCodePoint(code);
  }
  const ch = NAMED_ENTITIES[body];
  if (ch === undefined) throw new XmlError(`unknown entity &${body};`);
  return ch;
}

/** Decode entities in a run of character data or an attribute value. */
function decodeText(raw: string): string {
  let out = "";
  let i = 0;
  while (i < raw.length) {
    const amp = raw.indexOf("&", i);
    if (amp < 0) {
      out += raw.slice(i);
      break;
    }
    out += raw.slice(i, amp);
    const semi = raw.indexOf(";", amp + 1);
    if (semi < 0) throw new XmlError("unterminated entity reference");
    out += decodeEntity(raw.slice(amp + 1, semi));
    i = semi + 1;
  }
  return out;
}

class Reader {
  private i = 0;

  constructor(private readonly s: string) {}

  atEnd(): boolean {
    return this.i >= this.s.length;
  }

  private fail(msg: string): never {
    throw new XmlError(`${msg} at offset ${this.i}`);
  }

  private startsWith(prefix: string): boolean {
    return this.s.startsWith(prefix, this.i);
  }

  private skipPast(terminator: string, what: string): void {
    const end = this.s.indexOf(terminator, this.i);
    if (end < 0) this.fail(`unterminated ${what}`);
    this.i = end + terminator.length;
  }

  /** Skip whitespace, comments, processing instructions and a doctype. */
  skipMisc(): void {
    for (;;) {
      while (!this.atEnd() && /\s/.test(this.s[this.i])) this.i++;
      if (this.startsWith("<!--")) this.skipPast("-->", "comment");
      else if (this.startsWith("<?")) this.skipPast("?>", "processing instruction");
      else if (this.startsWith("<!DOCTYPE")) this.skipPast(">", "doctype");
      else return;
    }
  }

  private name(): string {
    if (this.atEnd() || !NAME_START.test(this.s[this.i])) this.fail("expected a name");
    const start = this.i;
    this.i++;
    while (!this.atEnd() && NAME_CHAR.test(this.s[this.i])) this.i++;
    return this.s.slice(start, this.i);
  }

  element(): XmlElement {
    if (this.s[this.i] !== "<") this.fail("expected an element");
    this.i++;
    const tag = this.name();
    const attrs: Record<string, string> = {};

    for (;;) {
      const hadSpace = /\s/.test(this.s[this.i] ?? "");
      while (!this.atEnd() && /\s/.test(this.s[this.i])) this.i++;
      if (this.atEnd()) this.fail(`unterminated <${tag}>`);
      const c = this.s[this.i];
      if (c === ">" || c === "/") break;
      if (!hadSpace) this.fail("expected whitespace before attribute");
      const attr = this.name();
      if (attr in attrs) this.fail(`duplicate attribute ${attr}`);
      if (this.s[this.i] !== "=") this.fail(`expected = after attribute ${attr}`);
      this.i++;
      const quote = this.s[this.i];
      if (quote !== '"' && quote !== "'") this.fail(`expected quoted value for ${attr}`);
      this.i++;
      const end = this.s.indexOf(quote, this.i);
      if (end < 0) this.fail(`unterminated value for ${attr}`);
      const raw = this.s.slice(this.i, end);
      if (raw.includes("<")) this.fail(`raw < in value for ${attr}`);
      attrs[attr] = decodeText(raw);
      this.i = end + 1;
    }

    if (this.s[this.i] === "/") {
      if (this.s[this.i + 1] !== ">") this.fail(`malformed <${tag}/>`);
      this.i += 2;
      return { tag, attrs, children: [], text: "" };
    }
    this.i++; // past ">"

    const children: XmlElement[] = [];
    let text = "";
    for (;;) {
      const lt = this.s.indexOf("<", this.i);
      if (lt < 0) this.fail(`unterminated <${tag}>`);
      text += decodeText(this.s.slice(this.i, lt));
      this.i = lt;
      if (this.startsWith("</")) {
        this.i += 2;
        const closing = this.name();
        if (closing !== tag) this.fail(`mismatched </${closing}> closing <${tag}>`);
        while (!this.atEnd() && /\s/.test(this.s[this.i])) this.i++;
        if (this.s[this.i] !== ">") this.fail(`malformed </${tag}>`);
        this.i++;
        return { tag, attrs, children, text };
      }
      if (this.startsWith("<!--")) {
        this.skipPast("-->", "comment");
      } else if (this.startsWith("<![CDATA[")) {
        const end = this.s.indexOf("]]>", this.i);
        if (end < 0) this.fail("unterminated CDATA section");
        text += this.s.slice(this.i + 9, end);
        this.i = end + 3;
      } else if (this.startsWith("<?")) {
        this.skipPast("?>", "processing instruction");
      } else {
        children.push(this.element());
      }
    }
  }
}

export function parseXml(source: string): XmlElement {
  const r = new Reader(source);
  r.skipMisc();
  if (r.atEnd()) throw new XmlError("empty document");
  const root = r.element();
  r.skipMisc();
  if (!r.atEnd()) throw new XmlError("content after the document element");
  return root;
}
