import { afterAll, beforeAll, beforeEach, describe, expect, it } from "vitest";
import http from "node:http";

import { datasetIdFromHref, GatewayClient, GatewayError } from "../src/api.js";
import { ASTRO_PROFILE, RECORD_3C273 } from "./fixtures.js";

interface Seen {
  method: string;
  url: string;
  contentType: string | undefined;
  body: string;
}

/* A canned gateway: every test asserts both the decoded response and the
 * request the client actually put on the wire.
 */
const seen: Seen[] = [];
let server: http.Server;
let base: string;

const SESSION = {
  id: "s-1",
  profile: "astro-1.0",
  source_order: ["adil"],
  sources: { adil: { state: "complete", count: 2, reason: null } },
  total: 2,
  created_at: 100,
  expires_at: 700,
};

function respond(req: http.IncomingMessage, res: http.ServerResponse): void {
  const url = req.url ?? "";
  const json = (status: number, body: unknown) => {
    res.writeHead(status, { "content-type": "application/json" });
    res.end(JSON.stringify(body));
  };
  if (url === "/" && req.method === "GET") {
    json(200, { service: "astrofed gateway", profiles: ["astro-1.0"], sources: ["adil", "ned"] });
  } else if (url === "/profiles") {
    json(200, { profiles: [ASTRO_PROFILE] });
  } else if (url.startsWith("/sessions") && req.method === "POST") {
    json(200, SESSION);
  } else if (url === "/sessions/s-1" && req.method === "DELETE") {
    res.writeHead(204);
    res.end();
  } else if (url === "/sessions/s-1") {
    json(200, SESSION);
  } else if (url.startsWith("/sessions/s-1/records/3")) {
    res.writeHead(200, { "content-type": "application/aml+xml" });
    res.end(RECORD_3C273);
  } else if (url.startsWith("/sessions/s-1/records")) {
    json(200, { total: 2, records: [] });
  } else if (url === "/data/disk_i16/header") {
    json(200, { naxis1: 32, naxis2: 24, bitpix: 16, cards: [] });
  } else if (url.startsWith("/data/disk_i16/histogram")) {
    json(200, { nbins: 8, lo: -400, hi: 599, counts: [0, 0, 0, 0, 0, 0, 0, 768], out_of_range: 0 });
  } else if (url.startsWith("/data/disk_i16/cutout")) {
    res.writeHead(200, { "content-type": "application/fits" });
    res.end(Buffer.from([1, 2, 3, 4, 5]));
  } else if (url === "/cluster" && req.method === "POST") {
    json(200, { blocks: [["adil-96-p020", "adil-96-p021"]] });
  } else if (url === "/oops") {
    res.writeHead(500, { "content-type": "text/plain" });
    res.end("wrecked");
  } else {
    json(404, { code: "no-such-session", message: `nothing at ${url}` });
  }
}

beforeAll(async () => {
  server = http.createServer((req, res) => {
    const chunks: Buffer[] = [];
    req.on("data", (c) => chunks.push(c));
    req.on("end", () => {
      seen.push({
        method: req.method ?? "",
        url: req.url ?? "",
        contentType: req.headers["content-type"],
        body: Buffer.concat(chunks).toString("utf-8"),
      });
      respond(req, res);
    });
  });
  await new Promise<void>((resolve) => server.listen(0, "127.0.0.1", resolve));
  const addr = server.address() as { port: number };
  base = `http://127.0.0.1:${addr.port}`;
});

afterAll(async () => {
  await new Promise<void>((resolve, reject) =>
    server.close((e) => (e ? reject(e) : resolve())),
  );
});

beforeEach(() => {
  seen.length = 0;
});

const client = () => new GatewayClient(base + "/", fetch);

describe("GatewayClient", () => {
  it("strips trailing slashes from the base", async () => {
    const idx = await client().root();
    expect(idx.sources).toEqual(["adil", "ned"]);
    expect(seen[0].url).toBe("/");
  });

  it("unwraps the profiles envelope", async () => {
    const ps = await client().profiles();
    expect(ps).toHaveLength(1);
    expect(ps[0].id).toBe("astro-1.0");
    expect(seen[0].url).toBe("/profiles");
  });

  it("posts the query text verbatim as XML", async () => {
    const info = await client().openSession('<query profile="astro-1.0"></query>', ["adil", "ned"]);
    expect(info.id).toBe("s-1");
    expect(seen[0]).toEqual({
      method: "POST",
      url: "/sessions?sources=adil,ned",
      contentType: "application/xml",
      body: '<query profile="astro-1.0"></query>',
    });
  });

  it("omits the sources parameter when none are picked", async () => {
    await client().openSession("<query/>");
    expect(seen[0].url).toBe("/sessions");
  });

  it("pages records with start and count", async () => {
    const page = await client().records("s-1", 50, 25);
    expect(page.total).toBe(2);
    expect(seen[0].url).toBe("/sessions/s-1/records?start=50&count=25");
  });

  it("fetches one record as markup text", async () => {
    const text = await client().recordAml("s-1", 3);
    expect(text).toBe(RECORD_3C273);
    expect(seen[0].url).toBe("/sessions/s-1/records/3?form=aml");
  });

  it("closes sessions via DELETE", async () => {
    await client().closeSession("s-1");
    expect(seen[0]).toMatchObject({ method: "DELETE", url: "/sessions/s-1" });
  });

  it("passes histogram bounds through as query parameters", async () => {
    const h = await client().histogram("disk_i16", { bins: 8, lo: -400, hi: 599 });
    expect(h.counts[7]).toBe(768);
    expect(seen[0].url).toBe("/data/disk_i16/histogram?bins=8&lo=-400&hi=599");
  });

  it("asks for the plain histogram with no parameters at all", async () => {
    await client().histogram("disk_i16");
    expect(seen[0].url).toBe("/data/disk_i16/histogram");
  });

  it("returns cutout bytes as an ArrayBuffer", async () => {
    const buf = await client().cutout("disk_i16", "0,0,3,3");
    expect(new Uint8Array(buf)).toEqual(new Uint8Array([1, 2, 3, 4, 5]));
    expect(seen[0].url).toBe("/data/disk_i16/cutout?bbox=0,0,3,3");
  });

  it("posts session clustering as JSON", async () => {
    const result = await client().clusterSession("s-1", [1, 2], { w_link: 0.5 });
    expect(result.blocks).toEqual([["adil-96-p020", "adil-96-p021"]]);
    expect(seen[0].method).toBe("POST");
    expect(seen[0].contentType).toBe("application/json");
    expect(JSON.parse(seen[0].body)).toEqual({ session: "s-1", records: [1, 2], w_link: 0.5 });
  });

  it("posts document clustering without a session", async () => {
    await client().clusterDocuments(["<aml/>"], { max_block: 4 });
    expect(JSON.parse(seen[0].body)).toEqual({ documents: ["<aml/>"], max_block: 4 });
  });

  it("turns gateway error envelopes into GatewayError", async () => {
    const err = await client().session("gone").then(
      () => null,
      (e: unknown) => e,
    );
    expect(err).toBeInstanceOf(GatewayError);
    const ge = err as GatewayError;
    expect(ge.status).toBe(404);
    expect(ge.code).toBe("no-such-session");
    expect(ge.message).toContain("/sessions/gone");
  });

  it("falls back to the status line for unshaped errors", async () => {
    const err = await client().fetchBinary(base + "/oops").then(
      () => null,
      (e: unknown) => e,
    );
    const ge = err as GatewayError;
    expect(ge.code).toBe("http-error");
    expect(ge.status).toBe(500);
  });
});

describe("datasetIdFromHref", () => {
  it.each([
    ["/data/disk_i16", "disk_i16"],
    ["/data/disk_i16/thumbnail?stride=2", "disk_i16"],
    ["http://host:8090/data/abc-1", "abc-1"],
    ["/records/7", null],
  ])("%s -> %s", (href, want) => {
    expect(datasetIdFromHref(href)).toBe(want);
  });
});
